"""Homology, the s-filtration on Lee homology and the invariants built on it."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from .cube import (LEE_A, FilteredComplex, LeeCycle, build_complex,
                   lee_canonical_cycle, simplify)
from .diagram import LinkDiagram, Orientation, lk_total
from .linalg import Reducer, rank, rank_profile
from .tangle import scan_complex


def homology_dims(c: FilteredComplex) -> dict[int, int]:
    out = {}
    for h in c.degrees():
        dim = c.dim(h) - rank(c.differential(h)) - rank(c.differential(h - 1))
        if dim:
            out[h] = dim
    return out


def graded_homology_dims(c: FilteredComplex) -> dict[tuple[int, int], int]:
    """Bigraded homology of a complex whose differential preserves q."""
    if any(s != 0 for s in c.entry_shifts()):
        raise ValueError("differential does not preserve q; use s_filtration")
    out = {}
    for h in c.degrees():
        for q in sorted(set(c.qs[h])):
            n = sum(1 for x in c.qs[h] if x == q)
            dim = n - _block_rank(c, h, q) - _block_rank(c, h - 1, q)
            if dim:
                out[(h, q)] = dim
    return out


def _block_rank(c: FilteredComplex, h: int, q: int) -> int:
    if h not in c.d:
        return 0
    src = [j for j, x in enumerate(c.qs[h]) if x == q]
    return rank_profile(c.d[h].cols[j] for j in src)[-1] if src else 0


@dataclass
class FiltrationTable:
    """dim F_s KhL^h at the probe values of s (the q-gradings present in
    degree h); F_s is constant between consecutive probes."""

    levels: dict[int, list[tuple[int, int]]]

    def dim(self, h: int, s: int) -> int:
        lv = self.levels.get(h)
        if not lv:
            return 0
        for probe, dim in lv:
            if s <= probe:
                return dim
        return 0

    def total(self, h: int) -> int:
        lv = self.levels.get(h)
        return lv[0][1] if lv else 0


class DPolynomial:
    """Finitely supported (h, s) -> non-negative int."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict[tuple[int, int], int] = {}
        for k, v in dict(terms or {}).items():
            if v:
                self.terms[(int(k[0]), int(k[1]))] = int(v)

    @classmethod
    def from_table(cls, t: FiltrationTable) -> "DPolynomial":
        out = {}
        for h, lv in t.levels.items():
            for i, (s, dim) in enumerate(lv):
                nxt = lv[i + 1][1] if i + 1 < len(lv) else 0
                if dim - nxt:
                    out[(h, s)] = dim - nxt
        return cls(out)

    def __eq__(self, other):
        return isinstance(other, DPolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __getitem__(self, key) -> int:
        return self.terms.get(key, 0)

    def items(self):
        return sorted(self.terms.items())

    def total(self) -> int:
        return sum(self.terms.values())

    def degrees(self) -> list[int]:
        return sorted({h for h, _ in self.terms})

    def __mul__(self, other: "DPolynomial") -> "DPolynomial":
        out: dict = defaultdict(int)
        for (h1, s1), a in self.terms.items():
            for (h2, s2), b in other.terms.items():
                out[(h1 + h2, s1 + s2)] += a * b
        return DPolynomial(out)

    def mirror(self) -> "DPolynomial":
        return DPolynomial({(-h, -s): v for (h, s), v in self.terms.items()})

    def shift(self, dh: int, ds: int) -> "DPolynomial":
        return DPolynomial({(h + dh, s + ds): v for (h, s), v in self.terms.items()})

    def upper_sum(self, h: int, a: int) -> int:
        """sum_{s >= a} d(h, s)."""
        return sum(v for (hh, s), v in self.terms.items() if hh == h and s >= a)

    def __repr__(self):
        return f"DPolynomial({self.pretty()})"

    def pretty(self) -> str:
        """tq^3-factored form, e.g. ``[1+q^2] + (tq^3)^2[q^-2+1]``."""
        if not self.terms:
            return "0"
        blocks = []
        for h in self.degrees():
            inner = [(s - 3 * h, v) for (hh, s), v in sorted(self.terms.items()) if hh == h]
            body = "+".join(_mono(v, e) for e, v in inner)
            prefix = "" if h == 0 else ("(tq^3)" if h == 1 else f"(tq^3)^{h}")
            blocks.append(f"{prefix}[{body}]")
        return " + ".join(blocks)

    def to_json(self) -> dict:
        return {"terms": [{"h": h, "s": s, "dim": v} for (h, s), v in self.items()]}

    @classmethod
    def from_json(cls, doc: dict) -> "DPolynomial":
        return cls({(t["h"], t["s"]): t["dim"] for t in doc["terms"]})


def _mono(coeff: int, e: int) -> str:
    if e == 0:
        return str(coeff)
    var = "q" if e == 1 else f"q^{e}"
    return var if coeff == 1 else f"{coeff}{var}"


def s_filtration(c: FilteredComplex) -> FiltrationTable:
    """dim im(H^h(F_s C) -> H^h(C)) at every generator q-grading.

    With Z_s the cycles supported in q >= s and B the boundaries,
    dim (Z_s + B)/B = dim Z_s - dim(B n C_{>=s}), and both terms are rank
    computations:  dim Z_s = N_{>=s} - rank(d restricted to q >= s), and
    dim(B n C_{>=s}) = rank d_{h-1} - rank(pi_{<s} d_{h-1}).
    """
    levels = {}
    for h in c.degrees():
        qs = c.qs[h]
        probes = sorted(set(qs))
        dh, dprev = c.differential(h), c.differential(h - 1)
        desc = sorted(range(len(qs)), key=lambda j: -qs[j])
        prof_cols = rank_profile(dh.cols[j] for j in desc)
        prev_rows = dprev.rows()
        asc = sorted(range(len(qs)), key=lambda i: qs[i])
        prof_rows = rank_profile(prev_rows[i] for i in asc)
        rank_b = prof_rows[-1] if prof_rows else 0
        lv = []
        for s in probes:
            n_up = sum(1 for q in qs if q >= s)
            n_low = len(qs) - n_up
            r_up = prof_cols[n_up - 1] if n_up else 0
            r_low = prof_rows[n_low - 1] if n_low else 0
            lv.append((s, n_up - r_up - (rank_b - r_low)))
        while lv and lv[-1][1] == 0:
            lv.pop()
        if lv:
            levels[h] = lv
    return FiltrationTable(levels)


def lee_complex(d: LinkDiagram, engine: str = "scan") -> FilteredComplex:
    """The a = 1/4 complex of ``d``: ``scan`` (local simplification),
    ``cube`` (full cube, globally simplified) or ``raw`` (full cube)."""
    if engine == "scan":
        return scan_complex(d, LEE_A)
    c = build_complex(d, LEE_A)
    if engine == "cube":
        return simplify(c, track=False)
    if engine == "raw":
        return c
    raise ValueError(f"unknown engine {engine!r}")


def d_polynomial(d: LinkDiagram, engine: str = "scan") -> DPolynomial:
    return DPolynomial.from_table(s_filtration(lee_complex(d, engine)))


def kh_dims(d: LinkDiagram, engine: str = "scan") -> dict[tuple[int, int], int]:
    """Bigraded Khovanov homology (a = 0)."""
    c = scan_complex(d, 0) if engine == "scan" else simplify(build_complex(d, 0), track=False)
    return graded_homology_dims(c)


def s_class(c: FilteredComplex, z) -> int:
    """Largest s with [z] in the image of H(F_s C) -> H(C)."""
    if isinstance(z, LeeCycle):
        h, vec = z.h, z.vector
    else:
        h, vec = z
    if c.differential(h).apply(vec):
        raise ValueError("chain is not a cycle")
    qs = c.qs.get(h, [])
    bcols = c.differential(h - 1).cols
    if Reducer(bcols).contains(vec):
        raise ValueError("chain is a boundary; its s-value is infinite")
    best = None
    for s in sorted(set(qs)):
        low = {i for i, q in enumerate(qs) if q < s}
        red = Reducer({i: v for i, v in col.items() if i in low} for col in bcols)
        if red.contains({i: v for i, v in vec.items() if i in low}):
            best = s
        else:
            break
    return best


class CanonicalClasses:
    """Lee's canonical cycles of a diagram, pushed into a simplified
    complex, with s-values of arbitrary combinations."""

    def __init__(self, d: LinkDiagram):
        self.diagram = d
        self.raw = build_complex(d, LEE_A)
        self.complex = simplify(self.raw)

    def cycle(self, o: Orientation) -> LeeCycle:
        return self.complex.transport.push_cycle(lee_canonical_cycle(self.diagram, o, self.raw))

    def combo(self, coeffs: dict[Orientation, object]) -> LeeCycle:
        """sum of c_o * cycle(o) (all in one homological degree)."""
        out = None
        for o, c in coeffs.items():
            z = self.cycle(o).scale(Fraction(c))
            out = z if out is None else out + z
        return out

    def s(self, coeffs) -> int:
        if isinstance(coeffs, Orientation):
            coeffs = {coeffs: 1}
        return s_class(self.complex, self.combo(coeffs))

    def pair_values(self, o: Orientation) -> tuple[int, int]:
        """(s(o + ō), s(o - ō))."""
        ob = o.reverse()
        return self.s({o: 1, ob: 1}), self.s({o: 1, ob: -1})

    def rebase_shift(self, o: Orientation) -> int:
        """Filtration shift from the stored orientation to ``o``: the
        complex is the same, only q moves by 3(lk(o) - lk(stored))."""
        return 3 * (lk_total(self.diagram, o) - lk_total(self.diagram))

    def based_values(self, o: Orientation) -> tuple[int, int, int]:
        """(s(o), s(o+ō), s(o-ō)) with ``o`` itself as the orientation of L.

        Under the new base the sum is the one in q = -|L| mod 4, which can
        swap the labels of pair_values when the shift is 2 mod 4."""
        sh = self.rebase_shift(o)
        a, b = (v + sh for v in self.pair_values(o))
        if abs(a - b) != 2:
            raise AssertionError(f"s(o+ō)={a} and s(o-ō)={b} do not differ by 2")
        if (a + self.diagram.n_components) % 4:
            a, b = b, a
        return self.s(o) + sh, a, b

    def s_oriented(self, o: Orientation) -> int:
        """s(L, o): the midpoint of the two levels of span{o, ō}, with L
        oriented by o."""
        _, plus, minus = self.based_values(o)
        return (plus + minus) // 2


def s_oriented(d: LinkDiagram, o: Orientation | None = None) -> int:
    if o is None:
        o = Orientation.stored(d.n_components)
    return CanonicalClasses(d).s_oriented(o)


def kh_thin(d: LinkDiagram) -> int | None:
    """q0 when Kh is supported on exactly the diagonals q - 2h = q0 +- 1."""
    diag = {q - 2 * h for (h, q) in kh_dims(d)}
    if len(diag) != 2:
        return None
    lo, hi = sorted(diag)
    return lo + 1 if hi - lo == 2 else None


def shortcut_support(d: LinkDiagram) -> DPolynomial | None:
    """The d-polynomial read off Kh when dim Kh^h = dim KhL^h for every h."""
    kh = kh_dims(d)
    per_h: dict[int, int] = defaultdict(int)
    for (h, _), v in kh.items():
        per_h[h] += v
    if dict(per_h) != homology_dims(lee_complex(d)):
        return None
    return DPolynomial(kh)


def lk_normalized(dp: DPolynomial, d: LinkDiagram, o: Orientation | None = None) -> DPolynomial:
    """(h, s) -> d(h + lk, s + 3 lk) as a polynomial; independent of o."""
    lk = lk_total(d, o)
    return dp.shift(-lk, -3 * lk)


def orientation_census(d: LinkDiagram) -> dict[int, int]:
    """h -> number of orientations o1 with lk(o1) - lk(o) = -h."""
    base = lk_total(d)
    out: dict[int, int] = defaultdict(int)
    for o in d.orientations():
        out[base - lk_total(d, o)] += 1
    return dict(out)
