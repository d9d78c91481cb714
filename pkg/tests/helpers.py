"""Small constructions shared by the tests."""

import itertools

from spcalc.base import FINSET
from spcalc.category import FiniteCategory


def parallel_pair(base=FINSET):
    """0 ==s,t==> 1."""
    homs = {(0, 0): ("i0",), (1, 1): ("i1",), (0, 1): ("s", "t")}
    ids = {0: "i0", 1: "i1"}
    comp = {}
    for a, b, c in itertools.product((0, 1), repeat=3):
        for f in homs.get((a, b), ()):
            for g in homs.get((b, c), ()):
                comp[(a, b, c, g, f)] = f if g == ids[b] else g
    return FiniteCategory(base, [0, 1], homs, comp, ids, name="pair")


def span(base=FINSET):
    """l <- m -> r."""
    return FiniteCategory.from_preorder(base, ["m", "l", "r"], lambda a, b: a == b or a == "m", name="span")


def naive_classes(elements, pairs):
    """Connected components by repeated relabelling, no union-find."""
    label = {x: i for i, x in enumerate(elements)}
    changed = True
    while changed:
        changed = False
        for x, y in pairs:
            lo = min(label[x], label[y])
            for z in (x, y):
                if label[z] != lo:
                    old = label[z]
                    for w in elements:
                        if label[w] == old:
                            label[w] = lo
                    changed = True
    return len(set(label.values()))
