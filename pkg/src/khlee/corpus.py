"""A small fixed corpus of links (at most 10 crossings) for property checks."""

from __future__ import annotations

from .diagram import (LinkDiagram, Orientation, braid_closure, disjoint_union,
                      mirror, parse_pd, reorient, torus_link, unknot, unlink)

WHITEHEAD_PD = "PD[X[6,1,7,2],X[10,7,5,8],X[4,5,1,6],X[2,10,3,9],X[8,4,9,3]]"


def corpus() -> dict[str, LinkDiagram]:
    hopf = torus_link(2, 2)
    tref = torus_link(2, 3)
    out = {
        "unknot": unknot(),
        "unknot-kink": braid_closure(2, [1]),
        "unlink2": unlink(2),
        "unlink3": unlink(3),
        "hopf": hopf,
        "hopf-neg": mirror(hopf),
        "hopf-reversed": reorient(hopf, Orientation((1, -1))),
        "trefoil": tref,
        "trefoil-left": mirror(tref),
        "figure8": braid_closure(3, [1, -2, 1, -2]),
        "T(2,4)": torus_link(2, 4),
        "T(2,4)-antiparallel": reorient(torus_link(2, 4), Orientation((1, -1))),
        "T(2,5)": torus_link(2, 5),
        "T(2,6)": torus_link(2, 6),
        "T(2,7)": torus_link(2, 7),
        "T(3,3)": torus_link(3, 3),
        "T(3,3)-mirror": mirror(torus_link(3, 3)),
        "T(3,4)": torus_link(3, 4),
        "whitehead": parse_pd(WHITEHEAD_PD),
        "borromean": braid_closure(3, [1, -2, 1, -2, 1, -2]),
        "hopf+unknot": disjoint_union(hopf, unknot()),
        "trefoil+unknot": disjoint_union(tref, unknot()),
        "hopf+hopf": disjoint_union(hopf, hopf),
        "trefoil+hopf": disjoint_union(tref, hopf),
        "hopf+trefoil-left": disjoint_union(hopf, mirror(tref)),
    }
    return out


# pairs for the convolution property: (name, first, second)
def union_pairs() -> list[tuple[str, LinkDiagram, LinkDiagram]]:
    hopf, tref = torus_link(2, 2), torus_link(2, 3)
    return [
        ("unknot+unknot", unknot(), unknot()),
        ("hopf+unknot", hopf, unknot()),
        ("trefoil+unknot", tref, unknot()),
        ("hopf+hopf", hopf, hopf),
        ("trefoil+hopf", tref, hopf),
        ("hopf+trefoil-left", hopf, mirror(tref)),
        ("figure8+unknot", braid_closure(3, [1, -2, 1, -2]), unknot()),
    ]


def crossing_change_pairs() -> list[tuple[str, LinkDiagram, int]]:
    """(name, diagram, crossing index) for crossing-change checks."""
    return [
        ("trefoil/unknot", torus_link(2, 3), 0),
        ("T(2,5)/T(2,3)", torus_link(2, 5), 2),
        ("hopf/unlink", torus_link(2, 2), 0),
        ("figure8", braid_closure(3, [1, -2, 1, -2]), 1),
        ("T(2,4)", torus_link(2, 4), 1),
        ("T(3,3)", torus_link(3, 3), 0),
        ("trefoil-left/unknot", mirror(torus_link(2, 3)), 0),
    ]
