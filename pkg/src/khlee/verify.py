"""Verification suites shared by the CLI and the test-suite."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .bounds import cable_formula, tnn_pattern, torus_table
from .corpus import corpus, crossing_change_pairs, union_pairs
from .diagram import (LinkDiagram, cable_two_zero, crossing_change, disjoint_union,
                      mirror, reorient, torus_link)
from .tqft import (Cobordism, OneManifold, OrientationVector, equal_up_to_sign,
                   lee_dictionary_check, mod4_grading, random_handles, res_component,
                   res_component_via_merge, res_relative, res_relative_via_cobordism,
                   reversal_map)
from .filtration import (CanonicalClasses, DPolynomial, d_polynomial, homology_dims, lee_complex,
                         lk_normalized, orientation_census, shortcut_support)


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'}  {self.name}" + (f"  ({self.detail})" if self.detail else "")

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


def pattern_checks(max_n: int = 4) -> list[Check]:
    out = []
    for n in range(1, 7):
        p = tnn_pattern(n)
        out.append(Check(f"pattern n={n} vs table", p == torus_table(n), p.pretty()))
    for n in range(1, max_n + 1):
        p = tnn_pattern(n)
        got = d_polynomial(torus_link(n, n))
        out.append(Check(f"pattern n={n} vs computed", p == got, got.pretty()))
    return out


def table_checks(max_n: int = 4, cable_ps=(1, 3)) -> list[Check]:
    out = []
    for n in range(1, min(max_n, 6) + 1):
        got = d_polynomial(torus_link(n, n))
        out.append(Check(f"T({n},{n}) table", got == torus_table(n), got.pretty()))
    for p in cable_ps:
        got = d_polynomial(cable_two_zero(p))
        out.append(Check(f"cable p={p}", got == cable_formula(p), got.pretty()))
    return out


def mod4_census_ok(dp: DPolynomial, d: LinkDiagram) -> bool:
    census = orientation_census(d)
    n = d.n_components
    for h in set(census) | set(dp.degrees()):
        for k in range(4):
            tot = sum(v for (hh, s), v in dp.terms.items() if hh == h and (s - n - k) % 4 == 0)
            want = 0 if k % 2 else census.get(h, 0) // 2
            if tot != want:
                return False
    return True


def link_property_checks(name: str, d: LinkDiagram) -> list[Check]:
    dp = d_polynomial(d)
    out = [
        Check(f"{name}: total = 2^|L|", dp.total() == 2 ** d.n_components, str(dp.total())),
        Check(f"{name}: per-h dims = orientation census",
              homology_dims(lee_complex(d)) == orientation_census(d)),
        Check(f"{name}: mod-4 census", mod4_census_ok(dp, d)),
        Check(f"{name}: mirror", d_polynomial(mirror(d)) == dp.mirror()),
    ]
    base = lk_normalized(dp, d)
    same = True
    for o in d.orientations():
        r = reorient(d, o)
        if lk_normalized(d_polynomial(r), r) != base:
            same = False
    out.append(Check(f"{name}: orientation shift", same))
    sc = shortcut_support(d)
    if sc is not None:
        out.append(Check(f"{name}: shortcut agrees", sc == dp))
    return out


def property_checks() -> list[Check]:
    out = []
    for name, d in corpus().items():
        out.extend(link_property_checks(name, d))
    for name, a, b in union_pairs():
        got = d_polynomial(disjoint_union(a, b))
        out.append(Check(f"{name}: convolution", got == d_polynomial(a) * d_polynomial(b), got.pretty()))
    out.extend(crossing_checks())
    out.extend(tqft_checks())
    return out


def crossing_change_checks(name: str, d1: LinkDiagram, x: int) -> list[Check]:
    """Crossing-change inequalities between d1 and d1 with crossing x changed.

    For each orientation o, with L oriented by o on both sides:
    (1) s2(psi v) >= s1(v) - 2 for v = o, o+ō, o-ō, where psi swaps the sum
        and the difference;
    (2) s2(v) >= s1(v) for the same v when x is negative in d1 under o, and
        the reverse inequality when x is positive (so negative in d2).
    """
    d2 = crossing_change(d1, x)
    c1, c2 = CanonicalClasses(d1), CanonicalClasses(d2)
    bad1, bad2 = [], []
    for o in d1.orientations():
        s1, p1, m1 = c1.based_values(o)
        s2, p2, m2 = c2.based_values(o)
        tag = "".join("+" if v > 0 else "-" for v in o)
        if not (s2 >= s1 - 2 and m2 >= p1 - 2 and p2 >= m1 - 2):
            bad1.append(tag)
        if d1.signs_under(o)[x] < 0:
            ok = s2 >= s1 and p2 >= p1 and m2 >= m1
        else:
            ok = s1 >= s2 and p1 >= p2 and m1 >= m2
        if not ok:
            bad2.append(tag)
    return [Check(f"{name}: degree -2 after sign twist", not bad1, ",".join(bad1)),
            Check(f"{name}: negative-to-positive is filtered", not bad2, ",".join(bad2))]


def crossing_checks() -> list[Check]:
    out = []
    for name, d, x in crossing_change_pairs():
        out.extend(crossing_change_checks(name, d, x))
    return out


def _homogeneous_basis(X: OneManifold) -> list[OrientationVector]:
    out = []
    for o in X.orientations():
        if not o or o[0] == 1:
            b = OrientationVector.basis(X, o)
            out.extend([b + b.reverse(), b - b.reverse()] if o else [b])
    return out


def tqft_sample_ok(A: Cobordism, cut: int) -> tuple[bool, bool, bool]:
    """(functoriality, mod-4 homogeneity, handle-by-handle agreement)."""
    M = A.induced_map()
    first = Cobordism(A.source, A.handles[:cut])
    second = Cobordism(first.target, A.handles[cut:])
    funct = equal_up_to_sign(M, second.induced_map() @ first.induced_map())
    homog = True
    chi = A.euler_characteristic
    for v in _homogeneous_basis(A.source):
        w = A.apply(v)
        if w.is_zero():
            continue
        gv, gw = mod4_grading(v), mod4_grading(w)
        if gw is None or (gw - gv - chi) % 4:
            homog = False
    return funct, homog, equal_up_to_sign(M, A.handle_map())


def res_identities(max_circles: int = 4) -> bool:
    for n in range(2, max_circles + 1):
        X = OneManifold.circles(n)
        for i in range(n):
            for s in (1, -1):
                if not equal_up_to_sign(res_component_via_merge(X, i, s), res_component(X, i, s)):
                    return False
            for j in range(n):
                if i == j:
                    continue
                C = res_relative_via_cobordism(X, i, j)
                if not equal_up_to_sign(C, res_relative(X, i, j, 1)):
                    return False
                R = reversal_map(X, j)
                if not equal_up_to_sign(R @ C @ R, res_relative(X, i, j, -1)):
                    return False
    return True


def tqft_checks(samples: int = 1000, seed: int = 0, max_circles: int = 6) -> list[Check]:
    rng = random.Random(seed)
    bad = {"functoriality": 0, "mod-4 homogeneity": 0, "handle composition": 0}
    for _ in range(samples):
        X = OneManifold.circles(rng.randint(0, 3))
        A = Cobordism(X, random_handles(X, rng.randint(1, 8), rng, max_circles))
        for key, ok in zip(bad, tqft_sample_ok(A, rng.randint(0, len(A.handles)))):
            bad[key] += not ok
    out = [Check(f"tqft {k} ({samples} random cobordisms)", v == 0, f"{v} failures" if v else "")
           for k, v in bad.items()]
    out.append(Check("tqft Res operators via cobordisms", res_identities()))
    lee = lee_dictionary_check()
    out.append(Check("tqft handle maps = Lee maps at a=1/4", all(lee.values()),
                     ",".join(k for k, v in lee.items() if not v)))
    return out
