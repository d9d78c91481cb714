"""Seeded random finite categories, lattices, posets, maps and presheaves.

Categories are concrete: each object carries a small set and arrows are
functions between them, closed under composition, so the tables are
associative by construction.  Lattices are the closed sets of random closure
systems; posets are transitive closures of random DAGs.
"""

from __future__ import annotations

import itertools
import random

from .base import BOOL2, FINSET
from .category import EnrichedFunctor, FiniteCategory
from .presheaf import SmallPresheaf, canonicalize, coproduct, representable


def rng_for(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def _compose(g, f):
    return tuple(g[i] for i in f)


def random_category(seed, max_objects=4, max_carrier=2, density=0.4, base=FINSET, name=None):
    """A finite category whose arrows are functions between small sets."""
    rng = rng_for(seed)
    n = rng.randint(1, max_objects)
    objs = list(range(n))
    size = {a: rng.randint(1, max_carrier) for a in objs}
    homs = {(a, b): set() for a in objs for b in objs}
    for a in objs:
        homs[(a, a)].add(tuple(range(size[a])))
    for a, b in itertools.product(objs, repeat=2):
        for f in itertools.product(range(size[b]), repeat=size[a]):
            if rng.random() < density:
                homs[(a, b)].add(f)
    changed = True
    while changed:
        changed = False
        for a, b, c in itertools.product(objs, repeat=3):
            for f in list(homs[(a, b)]):
                for g in list(homs[(b, c)]):
                    h = _compose(g, f)
                    if h not in homs[(a, c)]:
                        homs[(a, c)].add(h)
                        changed = True
    homs = {key: tuple(sorted(v)) for key, v in homs.items() if v}
    comp = {}
    for a, b, c in itertools.product(objs, repeat=3):
        for f in homs.get((a, b), ()):
            for g in homs.get((b, c), ()):
                comp[(a, b, c, g, f)] = _compose(g, f)
    ids = {a: tuple(range(size[a])) for a in objs}
    return FiniteCategory(base, objs, homs, comp, ids, name=name or f"rand{n}")


def random_presheaf(seed, k, max_terms=3, name="F"):
    """A random subpresheaf of a coproduct of representables."""
    rng = rng_for(seed)
    objs = list(k.objects())
    terms = [representable(k, rng.choice(objs)) for _ in range(rng.randint(0, max_terms))]
    full = canonicalize(coproduct(terms)) if terms else None
    if full is None:
        return SmallPresheaf(k, [], {}, name=name)
    gens = [(b, x) for b in full.support for x in full.values[b].carrier if rng.random() < 0.6]
    keep = {b: set() for b in full.support}
    stack = list(gens)
    while stack:
        b, x = stack.pop()
        if x in keep[b]:
            continue
        keep[b].add(x)
        for a in full.support:
            for u in k.hom(a, b).carrier:
                stack.append((a, full.restrict_act(a, b, u, x)))
    support = [b for b in full.support if keep[b]]
    values = {b: sorted(keep[b], key=repr) for b in support}
    action = {(a, b, u): {x: full.restrict_act(a, b, u, x) for x in values[b]}
              for a in support for b in support for u in k.hom(a, b).carrier}
    return SmallPresheaf(k, support, values, action, name=name)


# ---------------------------------------------------------------------------


def random_closure_lattice(seed, max_size=5, ground=3):
    """Closed sets of a random closure system, ordered by inclusion."""
    rng = rng_for(seed)
    universe = frozenset(range(ground))
    want = rng.randint(1, max_size)
    while True:
        family = {universe}
        for _ in range(rng.randint(0, 6)):
            family.add(frozenset(x for x in universe if rng.random() < 0.5))
        changed = True
        while changed:
            changed = False
            for s, t in itertools.combinations(list(family), 2):
                if s & t not in family:
                    family.add(s & t)
                    changed = True
        if len(family) == want:
            return sorted(family, key=lambda s: (len(s), sorted(s)))


def lattice_category(closed_sets, base=FINSET, name="L"):
    n = len(closed_sets)
    return FiniteCategory.from_preorder(base, range(n), lambda a, b: closed_sets[a] <= closed_sets[b], name=name)


def lattice_family(seed, count=60, max_size=5, base=FINSET):
    rng = rng_for(seed)
    return [lattice_category(random_closure_lattice(rng, max_size), base, name=f"L{i}") for i in range(count)]


def random_poset(seed, max_size=6, p=0.35, base=BOOL2, name="P"):
    """Transitive closure of a random DAG on 0..n-1."""
    rng = rng_for(seed)
    n = rng.randint(1, max_size)
    le = {(i, i) for i in range(n)}
    for i, j in itertools.combinations(range(n), 2):
        if rng.random() < p:
            le.add((i, j))
    for m in range(n):
        for i, j in itertools.product(range(n), repeat=2):
            if (i, m) in le and (m, j) in le:
                le.add((i, j))
    return FiniteCategory.from_preorder(base, range(n), lambda a, b: (a, b) in le, name=name)


def poset_family(seed, count=100, max_size=6, base=BOOL2):
    rng = rng_for(seed)
    return [random_poset(rng, max_size, base=base, name=f"P{i}") for i in range(count)]


def random_monotone_map(seed, source, target, name="f"):
    """A random order-preserving map between thin finite categories with a top."""
    rng = rng_for(seed)
    src = list(source.objects())
    tgt = list(target.objects())

    def le(k, a, b):
        return bool(k.hom(a, b).carrier)

    order = sorted(src, key=lambda x: sum(le(source, y, x) for y in src))
    image = {}
    for x in order:
        lower = [image[y] for y in image if le(source, y, x)]
        cands = [t for t in tgt if all(le(target, s, t) for s in lower)]
        image[x] = rng.choice(cands)
    return EnrichedFunctor(source, target, dict(image), name=name)


__all__ = [
    "rng_for", "random_category", "random_presheaf", "random_closure_lattice", "lattice_category",
    "lattice_family", "random_poset", "poset_family", "random_monotone_map",
]
