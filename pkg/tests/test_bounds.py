from fractions import Fraction

import pytest

from khlee.bounds import (QPolynomial, TORUS_TABLE, cable_formula, cobordism_feasible,
                          diameter, genus_report, min_genus_bound, parse_pretty, pnk,
                          split_genus_bound, support_genus_bound, tnn_pattern, torus_table)
from khlee.corpus import corpus
from khlee.diagram import cable_two_zero, torus_link, unknot, unlink
from khlee.filtration import DPolynomial, d_polynomial
from khlee.verify import mod4_census_ok


def test_pnk_small():
    assert pnk(0, 0) == QPolynomial({0: 1})
    assert pnk(1, 0) == QPolynomial({0: Fraction(1, 2), -1: Fraction(1, 2)})
    assert pnk(2, 1) == QPolynomial({0: 1, -1: 1})
    assert pnk(3, -1) == QPolynomial()
    with pytest.raises(ValueError):
        pnk(2, 2)


@pytest.mark.parametrize("n", range(1, 7))
def test_pattern_matches_table(n):
    assert tnn_pattern(n) == torus_table(n)


@pytest.mark.parametrize("n", range(1, 9))
def test_pattern_mass_and_census(n):
    p = tnn_pattern(n)
    assert p.total() == 2 ** n
    if n <= 5:
        assert mod4_census_ok(p, torus_link(n, n))


def test_table_parsing():
    assert torus_table(1) == DPolynomial({(0, -1): 1, (0, 1): 1})
    for text in TORUS_TABLE.values():
        assert parse_pretty(text).pretty().replace(" ", "") == text.replace(" ", "")
    with pytest.raises(ValueError):
        parse_pretty("[q+]")


def test_cable_formula():
    assert cable_formula(1) == DPolynomial({(0, -2): 1, (0, 0): 2, (0, 2): 1})
    assert cable_formula(3) == DPolynomial({(0, 0): 1, (0, 2): 2, (0, 4): 1})


def test_feasibility_reflexive_and_monotone():
    for d in corpus().values():
        dp = d_polynomial(d)
        assert cobordism_feasible(dp, dp, 0)
        assert cobordism_feasible(dp, dp, -2)


def test_monotone_in_chi():
    a = d_polynomial(unlink(2))
    b = d_polynomial(cable_two_zero(3))
    feas = [cobordism_feasible(a, b, -2 * g) for g in range(4)]
    assert feas == sorted(feas)


def test_min_genus_symmetric():
    pairs = [(unlink(2), cable_two_zero(3)), (torus_link(2, 3), unknot()), (torus_link(2, 5), unknot())]
    for x, y in pairs:
        a, b = d_polynomial(x), d_polynomial(y)
        assert min_genus_bound(a, b) == min_genus_bound(b, a)
    # s(T(2,5)) = 4 forces genus 2
    assert min_genus_bound(d_polynomial(torus_link(2, 5)), d_polynomial(unknot())) == 2


def test_hopf_vs_unlink():
    h, u = d_polynomial(torus_link(2, 2)), d_polynomial(unlink(2))
    # KhL of the Hopf link lives in two homological degrees, the unlink's in one
    assert min_genus_bound(h, u) is None
    assert support_genus_bound(h, u) == 1
    assert diameter(h) == 2 and diameter(u) == 4
    rep = genus_report(h, u)
    assert rep.bound is None and rep.support_bound == 1 and not rep.concordance_feasible


@pytest.mark.parametrize("m", range(1, 7))
def test_split_bound(m):
    assert split_genus_bound(None, m) == m // 2


def test_split_bound_by_diameters():
    # Hopf is thin; unlinks of m components realise the diameter 2m
    h = d_polynomial(torus_link(2, 2))
    for m in (1, 2, 3):
        assert support_genus_bound(h, d_polynomial(unlink(m))) == split_genus_bound(1, m)
