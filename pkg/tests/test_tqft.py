import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from khlee.linalg import SparseMatrix
from khlee.tqft import (Cobordism, CobordismError, Handle, OneManifold, OrientationVector,
                        compose, elementary_map, equal_up_to_sign, lee_dictionary_check,
                        mod4_grading, parse_handles, random_handles)
from khlee.verify import res_identities, tqft_sample_ok


def test_parse_handles():
    hs = parse_handles("birth c3; merge c1 c3 -> c1; split c1 -> c1 c4; death c2")
    assert [h.kind for h in hs] == ["birth", "merge", "split", "death"]
    assert str(hs[1]) == "merge c1 c3 -> c1"
    with pytest.raises(CobordismError):
        parse_handles("merge c1 -> c2")
    with pytest.raises(CobordismError):
        parse_handles("twist c1")


def test_bad_sequences():
    X = OneManifold.circles(2)
    with pytest.raises(CobordismError):
        Cobordism.parse(X, "death c3")
    with pytest.raises(CobordismError):
        Cobordism.parse(X, "merge c1 c1 -> c1")
    with pytest.raises(CobordismError):
        Cobordism.parse(X, "birth c2")


def test_topology():
    X = OneManifold.circles(1)
    A = Cobordism.parse(X, "split c1 -> c1 c2; merge c1 c2 -> c1")
    assert A.euler_characteristic == -2
    assert A.n_components == 1
    assert A.genus(0) == 1
    disc = Cobordism.parse(OneManifold(()), "birth a")
    assert disc.euler_characteristic == 1


def test_split_then_merge_is_diag():
    # torus with two boundary circles: o -> o, ō -> -ō
    A = Cobordism.parse(OneManifold.circles(1), "split c1 -> c1 c2; merge c1 c2 -> c1")
    assert A.induced_map().to_dense() == [[1, 0], [0, -1]]


def test_birth_then_death():
    A = Cobordism.parse(OneManifold(()), "birth a; death a")
    assert A.induced_map().to_dense() == [[0]]
    sphere = Cobordism.parse(OneManifold(()), "birth a; split a -> a b; death a; death b")
    assert sphere.induced_map().to_dense() == [[0]]
    torus = Cobordism.parse(OneManifold(()), "birth a; split a -> a b; merge a b -> a; death a")
    assert torus.induced_map().to_dense() in ([[2]], [[-2]])


def test_lee_dictionary():
    assert all(lee_dictionary_check().values())


def test_res_identities():
    assert res_identities(4)


def test_mod4_grading():
    X = OneManifold.circles(2)
    b = OrientationVector.basis(X, (1, 1))
    assert mod4_grading(b + b.reverse()) == 2
    assert mod4_grading(b - b.reverse()) == 0
    assert mod4_grading(b) is None


def test_compose_checks_boundaries():
    A = Cobordism.parse(OneManifold.circles(1), "birth c2")
    B = Cobordism.parse(OneManifold.circles(1), "death c1")
    with pytest.raises(CobordismError):
        compose(A, B)
    C = Cobordism.parse(OneManifold(("c1", "c2")), "merge c1 c2 -> c1")
    assert equal_up_to_sign(compose(A, C).induced_map(), C.induced_map() @ A.induced_map())


def test_elementary_split():
    M = elementary_map(Handle("split", ("a",), ("a", "b")), OneManifold(("a",)), OneManifold(("a", "b")))
    assert M == SparseMatrix(4, 2, [(0, 0, 1), (3, 1, 1)])


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 3), st.integers(1, 8), st.integers(0, 2 ** 32 - 1))
def test_random_cobordisms(n0, n_handles, seed):
    rng = random.Random(seed)
    X = OneManifold.circles(n0)
    A = Cobordism(X, random_handles(X, n_handles, rng, 6))
    assert all(len(level) <= 6 for level in A.levels)
    funct, homog, handles = tqft_sample_ok(A, rng.randint(0, len(A.handles)))
    assert funct and homog and handles
