"""Command-line interface."""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import __version__
from .bounds import genus_report
from .diagram import (DiagramError, LinkDiagram, Orientation, cable_two_zero,
                      disjoint_union, mirror, parse_braid, parse_pd, torus_link,
                      unlink)
from .filtration import (CanonicalClasses, d_polynomial,
                         homology_dims, kh_dims, lee_complex, s_filtration,
                         shortcut_support)
from .report import ResultDocument, bigraded_json, kh_pretty
from .tqft import Cobordism, CobordismError, OneManifold
from .verify import pattern_checks, property_checks, table_checks


class _InputAction(argparse.Action):
    def __call__(self, parser, ns, values, option_string=None):
        lst = list(getattr(ns, "inputs", None) or [])
        lst.append((self.dest, values))
        ns.inputs = lst


def _add_inputs(p: argparse.ArgumentParser):
    g = p.add_argument_group("link input (repeatable; order is kept)")
    g.add_argument("--pd", dest="pd", action=_InputAction, metavar="CODE", help="PD code, e.g. 'PD[X[1,3,2,4],X[3,1,4,2]]'")
    g.add_argument("--braid", dest="braid", action=_InputAction, metavar="'N: WORD'", help="braid closure, e.g. '2: 1 1 1'")
    g.add_argument("--torus", dest="torus", action=_InputAction, nargs=2, type=int, metavar=("N", "M"))
    g.add_argument("--cable2zero", dest="cable2zero", action=_InputAction, type=int, metavar="P")
    g.add_argument("--unlink", dest="unlink", action=_InputAction, type=int, metavar="N")
    p.add_argument("--mirror", action="store_true", help="mirror every input")
    p.add_argument("--union", action="store_true", help="take the disjoint union of all inputs")
    p.set_defaults(inputs=[])


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--json", metavar="PATH", help="write the result document ('-' for stdout)")
    p.add_argument("--threads", type=int, default=1, metavar="N",
                   help="accepted for compatibility; computations run on one thread")


def _build(kind: str, value) -> tuple[str, LinkDiagram]:
    if kind == "pd":
        return value, parse_pd(value)
    if kind == "braid":
        return f"braid {value}", parse_braid(value)
    if kind == "torus":
        n, m = value
        return f"torus {n} {m}", torus_link(n, m)
    if kind == "cable2zero":
        return f"cable2zero {value}", cable_two_zero(value)
    return f"unlink {value}", unlink(value)


def _links(ns) -> list[tuple[str, LinkDiagram]]:
    if not ns.inputs:
        raise SystemExit("error: no link given (use --pd, --braid, --torus, --cable2zero or --unlink)")
    out = [_build(k, v) for k, v in ns.inputs]
    if ns.mirror:
        out = [(f"mirror({lab})", mirror(d)) for lab, d in out]
    if ns.union and len(out) > 1:
        lab = " u ".join(l for l, _ in out)
        d = out[0][1]
        for _, e in out[1:]:
            d = disjoint_union(d, e)
        out = [(lab, d)]
    return out


def _single(ns) -> tuple[str, LinkDiagram]:
    links = _links(ns)
    if len(links) != 1:
        raise SystemExit("error: this command takes one link (use --union to combine inputs)")
    return links[0]


def _flags(ns, *names) -> dict:
    out = {n: getattr(ns, n) for n in names}
    out["mirror"] = ns.mirror
    out["union"] = ns.union
    return out


def cmd_kh(ns) -> ResultDocument:
    label, d = _single(ns)
    a = Fraction(ns.a)
    res: dict = {"components": d.n_components, "crossings": len(d.crossings)}
    if a == 0:
        dims = kh_dims(d)
        res["kh"] = bigraded_json(dims)
        res["pretty"] = kh_pretty(dims)
        print(f"Kh({label}) = {res['pretty']}")
    else:
        c = lee_complex(d)
        hd = homology_dims(c)
        table = s_filtration(c)
        res["khl"] = {str(h): v for h, v in sorted(hd.items())}
        res["filtration"] = {str(h): [[s, v] for s, v in lv] for h, lv in sorted(table.levels.items())}
        print(f"KhL({label}) dims by h: {dict(sorted(hd.items()))}")
    return ResultDocument("kh", [label], _flags(ns, "a"), res)


def cmd_dpoly(ns) -> ResultDocument:
    label, d = _single(ns)
    engine = "raw" if ns.no_simplify else "scan"
    dp = d_polynomial(d, engine)
    res: dict = {"dpoly": dp.to_json(), "pretty": dp.pretty(), "engine": engine}
    ok = True
    print(f"d({label}) = {dp.pretty()}")
    if ns.shortcut:
        sc = shortcut_support(d)
        res["shortcut"] = {"applicable": sc is not None, "agrees": sc == dp if sc is not None else None}
        if sc is None:
            print("shortcut: not applicable (dim Kh^h != dim KhL^h for some h)")
        else:
            ok = sc == dp
            print(f"shortcut: {'agrees' if ok else 'DISAGREES'}")
    return ResultDocument("dpoly", [label], _flags(ns, "shortcut", "no_simplify"), res, ok)


def _parse_orientation(text: str, n: int) -> Orientation:
    signs = tuple(1 if ch == "+" else -1 for ch in text if ch in "+-")
    if len(signs) != n:
        raise SystemExit(f"error: orientation needs {n} signs")
    return Orientation(signs)


def cmd_sinv(ns) -> ResultDocument:
    label, d = _single(ns)
    cc = CanonicalClasses(d)
    if ns.orientation:
        os = [_parse_orientation(ns.orientation, d.n_components)]
    else:
        os = d.orientations()
    # values are read with L oriented by o (see CanonicalClasses.based_values)
    rows = []
    for o in os:
        single, plus, minus = cc.based_values(o)
        s = (plus + minus) // 2
        row = {"orientation": "".join("+" if x > 0 else "-" for x in o),
               "s_single": single,
               "s_sum": plus, "s_difference": minus, "s": s,
               "stored_base": {"h": cc.cycle(o).h, "s_single": cc.s(o),
                               "pair": list(cc.pair_values(o))}}
        rows.append(row)
        print(f"{row['orientation']}: s(o)={single} s(o+ō)={plus} s(o-ō)={minus} s(L,o)={s}")
    return ResultDocument("sinv", [label], _flags(ns, "orientation"), {"orientations": rows})


def cmd_genus_bound(ns) -> ResultDocument:
    links = _links(ns)
    if len(links) != 2:
        raise SystemExit("error: genus-bound takes exactly two links")
    (l1, d1), (l2, d2) = links
    if d1.n_components != d2.n_components:
        raise SystemExit("error: component-preserving cobordisms need equal component counts; "
                         "merge-allowed cobordisms are outside this bound")
    p1, p2 = d_polynomial(d1), d_polynomial(d2)
    rep = genus_report(p1, p2)
    res = rep.to_json()
    res["dpoly"] = [p1.pretty(), p2.pretty()]
    if rep.bound is None:
        print(f"genus bound: none finite ({rep.note})")
    else:
        print(f"genus bound: g >= {rep.bound}")
    print(f"degree-0 diameter bound: {rep.support_bound}")
    print(f"concordance feasible: {rep.concordance_feasible}")
    return ResultDocument("genus-bound", [l1, l2], _flags(ns), res)


def cmd_tqft(ns) -> ResultDocument:
    X = OneManifold(tuple(ns.manifold.split())) if ns.manifold else OneManifold.circles(ns.circles)
    try:
        A = Cobordism.parse(X, ns.handles)
    except CobordismError as e:
        raise SystemExit(f"error: {e}")
    M = A.induced_map()
    dense = [[str(x) for x in row] for row in M.to_dense()]
    res = {"source": list(X.labels), "target": list(A.target.labels),
           "euler_characteristic": A.euler_characteristic, "components": A.n_components,
           "matrix": dense, "note": "defined up to an overall sign"}
    print(f"{' '.join(X.labels) or '(empty)'} -> {' '.join(A.target.labels) or '(empty)'}, chi = {A.euler_characteristic}")
    for row in dense:
        print("  " + " ".join(f"{x:>3}" for x in row))
    return ResultDocument("tqft", [ns.handles], {"manifold": list(X.labels)}, res)


def cmd_verify(ns) -> ResultDocument:
    if ns.suite == "pattern":
        checks = pattern_checks(ns.max_n)
    elif ns.suite == "paper-tables":
        checks = table_checks(ns.max_n, tuple(p for p in (1, 3, 5, 7) if p <= ns.max_p))
    else:
        checks = property_checks()
    for c in checks:
        print(c.line())
    ok = all(c.ok for c in checks)
    print(f"{sum(c.ok for c in checks)}/{len(checks)} passed")
    return ResultDocument("verify", [ns.suite], {"max_n": ns.max_n, "max_p": ns.max_p},
                          {"checks": [c.to_json() for c in checks]}, ok)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="khlee", description="Khovanov and Lee homology, the s-filtration and concordance bounds.")
    p.add_argument("--version", action="version", version=f"khlee {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    k = sub.add_parser("kh", help="Khovanov (a=0) or Lee (a=1/4) homology")
    _add_inputs(k)
    _add_common(k)
    k.add_argument("--a", choices=["0", "1/4"], default="0")
    k.set_defaults(func=cmd_kh)

    dp = sub.add_parser("dpoly", help="the d-polynomial of the s-filtration")
    _add_inputs(dp)
    _add_common(dp)
    dp.add_argument("--shortcut", action="store_true", help="cross-check against Kh when dim Kh^h = dim KhL^h")
    dp.add_argument("--no-simplify", action="store_true", help="use the full cube complex")
    dp.set_defaults(func=cmd_dpoly)

    s = sub.add_parser("sinv", help="s-values of canonical classes and s(L,o)")
    _add_inputs(s)
    _add_common(s)
    s.add_argument("--orientation", metavar="SIGNS", help="e.g. '+-' (default: every orientation)")
    s.set_defaults(func=cmd_sinv)

    g = sub.add_parser("genus-bound", help="genus bound for component-preserving cobordisms")
    _add_inputs(g)
    _add_common(g)
    g.set_defaults(func=cmd_genus_bound)

    t = sub.add_parser("tqft", help="orientation TQFT map of a handle sequence")
    t.add_argument("--circles", type=int, default=0, help="source circles c1..cN")
    t.add_argument("--manifold", help="source circle labels, e.g. 'a b c'")
    t.add_argument("--handles", required=True, help="e.g. 'birth c3; merge c1 c3 -> c1; death c2'")
    _add_common(t)
    t.set_defaults(func=cmd_tqft)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=["pattern", "properties", "paper-tables"])
    v.add_argument("--max-n", type=int, default=4)
    v.add_argument("--max-p", type=int, default=3)
    _add_common(v)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    if ns.threads < 1:
        raise SystemExit("error: --threads must be positive")
    try:
        doc = ns.func(ns)
    except DiagramError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if ns.json:
        text = doc.dumps()
        if ns.json == "-":
            sys.stdout.write(text)
        else:
            with open(ns.json, "w") as fh:
                fh.write(text)
    return 0 if doc.ok else 1


if __name__ == "__main__":
    sys.exit(main())
