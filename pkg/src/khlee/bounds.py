"""Genus bounds from d-polynomials, and the conjectural T(n,n) pattern."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import ceil

from .filtration import DPolynomial


class QPolynomial:
    """Laurent polynomial in q with rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs: dict[int, Fraction] = {}
        for e, c in dict(coeffs or {}).items():
            c = Fraction(c)
            if c:
                self.coeffs[int(e)] = c

    @classmethod
    def monomial(cls, e: int, c=1) -> "QPolynomial":
        return cls({e: c})

    def __add__(self, other: "QPolynomial") -> "QPolynomial":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return QPolynomial(out)

    def __mul__(self, other) -> "QPolynomial":
        if not isinstance(other, QPolynomial):
            return QPolynomial({e: c * Fraction(other) for e, c in self.coeffs.items()})
        out: dict[int, Fraction] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return QPolynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QPolynomial({0: other})
        return isinstance(other, QPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def of_q_squared(self) -> "QPolynomial":
        return QPolynomial({2 * e: c for e, c in self.coeffs.items()})

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            mono = "" if e == 0 else ("q" if e == 1 else f"q^{e}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)


@lru_cache(maxsize=None)
def pnk(n: int, k: int) -> QPolynomial:
    """The q-binomial-like recurrence: P(0,0) = 1 and, for n >= 1,
    P(n,k) = q P(n-1,k-1) + q^-1 P(n-1,k)            if 2k+2 <= n
           = q P(n-1,k-1) + (1+q^-1)/2 P(n-1,k)      if 2k+1 == n
           = 2 P(n-1,k-1)                            if 2k == n
    with P(n,k) = 0 for k < 0."""
    if k < 0:
        return QPolynomial()
    if n < 0 or 2 * k > n:
        raise ValueError(f"pnk({n}, {k}) outside 0 <= 2k <= n")
    if n == 0:
        return QPolynomial({0: 1})
    q, qinv = QPolynomial.monomial(1), QPolynomial.monomial(-1)
    if 2 * k + 2 <= n:
        return q * pnk(n - 1, k - 1) + qinv * pnk(n - 1, k)
    if 2 * k + 1 == n:
        half = QPolynomial({0: Fraction(1, 2), -1: Fraction(1, 2)})
        return q * pnk(n - 1, k - 1) + half * pnk(n - 1, k)
    return pnk(n - 1, k - 1) * 2


def tnn_pattern(n: int) -> DPolynomial:
    """sum_k (tq^3)^{2k(n-k)} q^{(n-2k)^2} P(n, min(k, n-k))(q^2)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    acc: dict[tuple[int, int], Fraction] = {}
    for k in range(n + 1):
        h = 2 * k * (n - k)
        P = pnk(n, min(k, n - k)).of_q_squared()
        for e, c in P.coeffs.items():
            key = (h, 3 * h + (n - 2 * k) ** 2 + e)
            acc[key] = acc.get(key, 0) + c
    for key, c in acc.items():
        if c.denominator != 1 or c < 0:
            raise ArithmeticError(f"pattern coefficient {c} at {key} is not a non-negative integer")
    return DPolynomial({k: int(c) for k, c in acc.items()})


def cable_formula(p: int) -> DPolynomial:
    """1 + q^2 + q^{2p-4} + q^{2p-2}, all in homological degree 0."""
    d: dict[tuple[int, int], int] = {}
    for s in (0, 2, 2 * p - 4, 2 * p - 2):
        d[(0, s)] = d.get((0, s), 0) + 1
    return DPolynomial(d)


_BLOCK_RE = re.compile(r"(?:\(tq\^3\)(?:\^(-?\d+))?)?\[([^\]]*)\]")
_TERM_RE = re.compile(r"^(\d*)(?:q(?:\^(-?\d+))?)?$")


def parse_pretty(text: str) -> DPolynomial:
    """Inverse of DPolynomial.pretty, e.g. ``[1+q^2] + (tq^3)^2[q^-2+1]``."""
    out: dict[tuple[int, int], int] = {}
    pos = 0
    text = text.replace(" ", "")
    for m in _BLOCK_RE.finditer(text):
        if text[pos:m.start()] not in ("", "+"):
            raise ValueError(f"cannot parse {text!r}")
        pos = m.end()
        h = 0 if m.group(0).startswith("[") else int(m.group(1) or 1)
        for term in m.group(2).split("+"):
            tm = _TERM_RE.match(term)
            if not term or not tm:
                raise ValueError(f"bad term {term!r}")
            coeff = int(tm.group(1)) if tm.group(1) else 1
            if "q" in term:
                e = int(tm.group(2)) if tm.group(2) is not None else 1
            else:
                e = 0
            key = (h, 3 * h + e)
            out[key] = out.get(key, 0) + coeff
    if text[pos:]:
        raise ValueError(f"trailing text {text[pos:]!r}")
    return DPolynomial(out)


# Published d-polynomials of T(n,n), all components oriented alike.
TORUS_TABLE = {
    1: "[q^-1+q]",
    2: "[1+q^2] + (tq^3)^2[q^-2+1]",
    3: "[q^3+q^5] + (tq^3)^4[q^-3+3q^-1+2q]",
    4: "[q^8+q^10] + (tq^3)^6[q^-2+4+3q^2] + (tq^3)^8[q^-4+3q^-2+2]",
    5: "[q^15+q^17] + (tq^3)^8[q+5q^3+4q^5] + (tq^3)^12[q^-5+5q^-3+9q^-1+5q]",
    6: "[q^24+q^26] + (tq^3)^10[q^6+6q^8+5q^10] + (tq^3)^16[q^-4+6q^-2+14+9q^2]"
       " + (tq^3)^18[q^-6+5q^-4+9q^-2+5]",
}


def torus_table(n: int) -> DPolynomial:
    return parse_pretty(TORUS_TABLE[n])


# ---- genus bounds -------------------------------------------------------------------

def _one_way(d1: DPolynomial, d2: DPolynomial, chi: int) -> bool:
    for (h, a) in d1.terms:
        if d1.upper_sum(h, a) > d2.upper_sum(h, a + chi):
            return False
    return True


def cobordism_feasible(d1: DPolynomial, d2: DPolynomial, chi: int) -> bool:
    """Whether sum_{s>=a} d1(h,s) <= sum_{s>=a+chi} d2(h,s) for all h, a, and
    the same with d1 and d2 exchanged (the cobordism read backwards)."""
    return _one_way(d1, d2, chi) and _one_way(d2, d1, chi)


def _h_totals(d: DPolynomial) -> dict[int, int]:
    out: dict[int, int] = {}
    for (h, _), v in d.terms.items():
        out[h] = out.get(h, 0) + v
    return out


def min_genus_bound(d1: DPolynomial, d2: DPolynomial) -> int | None:
    """Least g >= 0 with cobordism_feasible(d1, d2, -2g), or None when no
    genus passes (the per-h totals differ, so no component-preserving
    cobordism exists at all)."""
    if _h_totals(d1) != _h_totals(d2):
        return None
    g = 0
    while not cobordism_feasible(d1, d2, -2 * g):
        g += 1
    return g


def diameter(d: DPolynomial, h: int = 0) -> int | None:
    ss = [s for (hh, s) in d.terms if hh == h]
    return max(ss) - min(ss) if ss else None


def support_genus_bound(d1: DPolynomial, d2: DPolynomial, h: int = 0) -> int | None:
    """Genus bound from the filtration diameters in degree h: maps in both
    directions are isomorphisms on degree-h pieces lowering the filtration
    by at most 2g each way, so |diam1 - diam2| <= 4g."""
    a, b = diameter(d1, h), diameter(d2, h)
    if a is None or b is None:
        return None
    return ceil(abs(a - b) / 4)


def split_genus_bound(thin_q0: int | None, m: int) -> int:
    """Bound for a Kh-thin link (diameter 2 in degree 0) against a link split
    into m pieces (diameter >= 2m): ceil((2m - 2)/4) = floor(m/2)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return ceil((2 * m - 2) / 4)


@dataclass
class GenusBoundReport:
    bound: int | None
    concordance_feasible: bool
    slack: dict[int, int] = field(default_factory=dict)
    support_bound: int | None = None
    note: str = ""

    def to_json(self) -> dict:
        return {
            "bound": self.bound,
            "concordance_feasible": self.concordance_feasible,
            "slack": {str(h): v for h, v in sorted(self.slack.items())},
            "support_bound": self.support_bound,
            "note": self.note,
        }


def _slack(d1: DPolynomial, d2: DPolynomial, chi: int) -> dict[int, int]:
    """Per h, the least margin of the two-sided inequalities at chi."""
    out: dict[int, int] = {}
    for x, y in ((d1, d2), (d2, d1)):
        for (h, a) in x.terms:
            m = y.upper_sum(h, a + chi) - x.upper_sum(h, a)
            out[h] = min(out.get(h, m), m)
    return out


def genus_report(d1: DPolynomial, d2: DPolynomial) -> GenusBoundReport:
    g = min_genus_bound(d1, d2)
    chi = -2 * g if g is not None else 0
    note = ""
    if g is None:
        note = ("homological degrees carry different total dimensions, so the "
                "inequalities fail at every genus: no component-preserving "
                "cobordism exists")
    return GenusBoundReport(
        bound=g,
        concordance_feasible=cobordism_feasible(d1, d2, 0),
        slack=_slack(d1, d2, chi),
        support_bound=support_genus_bound(d1, d2),
        note=note,
    )
