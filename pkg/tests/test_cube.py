from fractions import Fraction
from itertools import product

import pytest

from khlee.corpus import corpus
from khlee.cube import (LEE_A, MINUS, PLUS, FrobeniusAlgebra, apply_on_factor,
                        build_complex, lee_canonical_cycle, simplify)
from khlee.diagram import braid_closure, mirror, torus_link, unknot, unlink
from khlee.filtration import (DPolynomial, graded_homology_dims, homology_dims, kh_dims,
                              s_filtration)
from khlee.tangle import scan_complex
from oracles import euler_characteristic, jones_unnormalised

SMALL = {k: v for k, v in corpus().items() if len(v.crossings) <= 8}


@pytest.mark.parametrize("a", [Fraction(0), LEE_A])
def test_frobenius_axioms(a):
    A = FrobeniusAlgebra(a)
    basis = [PLUS, MINUS]
    # associativity, coassociativity and the Frobenius identity on basis tensors
    for x, y, z in product(basis, repeat=3):
        t = {(x, y, z): Fraction(1)}
        left = A.m(apply_on_factor(lambda k: A.mult(*k), t, 0, 2))
        right = A.m(apply_on_factor(lambda k: A.mult(*k), t, 1, 2))
        assert left == right
    for x in basis:
        d = A.delta({(x,): Fraction(1)})
        assert apply_on_factor(lambda k: A.comult(*k), d, 0, 1) == apply_on_factor(lambda k: A.comult(*k), d, 1, 1)
    for x, y in product(basis, repeat=2):
        t = {(x, y): Fraction(1)}
        mid = A.delta(A.m(t))
        lhs = apply_on_factor(lambda k: A.mult(*k), apply_on_factor(lambda k: A.comult(*k), t, 0, 1), 1, 2)
        assert mid == lhs


def test_lee_algebra_relation():
    A = FrobeniusAlgebra(LEE_A)
    assert A.mult(MINUS, MINUS) == {(PLUS,): LEE_A}
    assert A.comult(MINUS) == {(MINUS, MINUS): 1, (PLUS, PLUS): LEE_A}


@pytest.mark.parametrize("name", sorted(SMALL))
def test_d_squared_zero(name):
    for a in (0, LEE_A):
        assert build_complex(SMALL[name], a).d_squared_is_zero()
        assert scan_complex(SMALL[name], a).d_squared_is_zero()


@pytest.mark.parametrize("name", sorted(SMALL))
def test_euler_characteristic_is_jones(name):
    d = SMALL[name]
    want = jones_unnormalised(d.crossings, d.loops, d.n_plus, d.n_minus)
    assert euler_characteristic(kh_dims(d)) == want


def test_trefoil_khovanov():
    assert kh_dims(torus_link(2, 3)) == {(0, 1): 1, (0, 3): 1, (2, 5): 1, (3, 9): 1}


def test_unknot_and_unlink():
    assert kh_dims(unknot()) == {(0, -1): 1, (0, 1): 1}
    assert kh_dims(unlink(2)) == {(0, -2): 1, (0, 0): 2, (0, 2): 1}


def test_hopf_khovanov():
    assert kh_dims(torus_link(2, 2)) == {(0, 0): 1, (0, 2): 1, (2, 4): 1, (2, 6): 1}


def test_mirror_khovanov():
    kh = kh_dims(torus_link(2, 3))
    assert kh_dims(mirror(torus_link(2, 3))) == {(-h, -q): v for (h, q), v in kh.items()}


@pytest.mark.parametrize("name", sorted(SMALL))
def test_engines_agree(name):
    d = SMALL[name]
    raw = graded_homology_dims(build_complex(d, 0))
    assert graded_homology_dims(scan_complex(d, 0)) == raw
    assert graded_homology_dims(simplify(build_complex(d, 0), track=False)) == raw
    lee = [DPolynomial.from_table(s_filtration(c)) for c in
           (build_complex(d, LEE_A), scan_complex(d, LEE_A), simplify(build_complex(d, LEE_A)))]
    assert lee[0] == lee[1] == lee[2]


def test_lee_filtered():
    for d in (torus_link(2, 3), torus_link(3, 3), braid_closure(3, [1, -2, 1, -2])):
        c = build_complex(d, LEE_A)
        assert c.is_filtered()
        assert c.entry_shifts() <= {0, 4}
        assert scan_complex(d, LEE_A).is_filtered()


@pytest.mark.parametrize("name", sorted(SMALL))
def test_canonical_cycles_are_cycles(name):
    d = SMALL[name]
    c = build_complex(d, LEE_A)
    for o in d.orientations():
        z = lee_canonical_cycle(d, o, c)
        assert not c.differential(z.h).apply(z.vector)


def test_lee_total_dimension():
    for d in SMALL.values():
        assert sum(homology_dims(build_complex(d, LEE_A)).values()) == 2 ** d.n_components
