"""Cones over diagrams in K, solution sets, and their saturation.

A diagram here is an EnrichedFunctor ``S: C -> K`` with C finite.  A cone with
vertex A is a family of legs ``A -> S(c)`` compatible with every ``S(u)``; the
limit of Y.S is the presheaf ``A |-> cones(A)``.

Saturation follows the construction B_0 <= B_1 <= ...: at each stage every
pair of cones with vertices in B_n defines an extension S' of S to the index
category with two freely adjoined cone vertices, and a solution set for S' is
added.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .category import FAMILIES, EnrichedFunctor, FiniteCategory, register_family
from .config import DEFAULT_BOUNDS, Bounds
from .csp import solve_functional
from .serial import jsonable

SOLUTION_SET, NO, UNKNOWN = "SolutionSet", "No", "Unknown"


@dataclass(frozen=True)
class Cone:
    vertex: object
    legs: tuple  # in the order of the diagram's index objects

    def to_json(self):
        return {"vertex": jsonable(self.vertex), "legs": jsonable(self.legs)}


@dataclass
class ConeSolutionSet:
    kind: str
    cones: list = field(default_factory=list)
    trace: list = field(default_factory=list)  # B_0, B_1, ... as object lists
    stable: bool = False
    bounds: Bounds = DEFAULT_BOUNDS
    reason: str = ""
    decided_by: str = "search"

    @property
    def vertices(self):
        out = []
        for c in self.cones:
            if c.vertex not in out:
                out.append(c.vertex)
        return out

    def to_json(self):
        out = {"verdict": self.kind, "bounds": self.bounds.to_json(), "decided_by": self.decided_by}
        if self.kind != NO:
            out["cones"] = [c.to_json() for c in self.cones]
            out["trace"] = jsonable(self.trace)
            out["stable"] = self.stable
        if self.reason:
            out["reason"] = self.reason
        return out


class _Vertex:
    """An adjoined cone vertex, distinct from every object of the original index."""

    __slots__ = ("i",)

    def __init__(self, i):
        self.i = i

    def __eq__(self, other):
        return isinstance(other, _Vertex) and other.i == self.i

    def __hash__(self):
        return hash(("_Vertex", self.i))

    def __repr__(self):
        return f"v{self.i}"


def index_objects(s):
    return list(s.source.objects())


def cones_at(s, a, budget=None):
    k, c = s.target, s.source
    objs = index_objects(s)
    domains = {x: k.hom(a, s(x)).carrier for x in objs}
    cons = []
    for x, x2 in itertools.product(objs, repeat=2):
        for u in c.hom(x, x2).carrier:
            su = s.fmap(x, x2, u)
            cons.append((x, x2, (lambda f, x=x, x2=x2, su=su: k.compose(a, s(x), s(x2), su, f))))
    kw = {} if budget is None else {"budget": budget}
    return [Cone(a, tuple(sol[x] for x in objs)) for sol in solve_functional(objs, domains, cons, **kw)]


def factorizations(s, alpha, beta):
    """Arrows f: alpha.vertex -> beta.vertex with beta . f == alpha."""
    k = s.target
    objs = index_objects(s)
    a, b = alpha.vertex, beta.vertex
    out = []
    for f in k.hom(a, b).carrier:
        if all(k.compose(a, b, s(x), bl, f) == al for x, al, bl in zip(objs, alpha.legs, beta.legs)):
            out.append(f)
    return out


def factors(s, alpha, beta):
    return bool(factorizations(s, alpha, beta))


def _reduce(s, cones):
    chosen = []
    for alpha in cones:
        if not any(factors(s, alpha, beta) for beta in chosen):
            chosen.append(alpha)
    for beta in list(reversed(chosen)):
        rest = [g for g in chosen if g != beta]
        if any(factors(s, beta, g) for g in rest):
            chosen = rest
    return chosen


def _images(s):
    return [s(x) for x in index_objects(s)]


# registered cone decisions: return (NO, reason) or (SOLUTION_SET, vertices)


def _discrete_cones(k, s):
    imgs = _images(s)
    if not imgs:
        return NO, "the empty diagram has every object as a cone vertex, and no object receives arrows from the others"
    return SOLUTION_SET, sorted(set(imgs), key=k.position)[:1] if len(set(imgs)) == 1 else []


def _chain_cones(k, s):
    imgs = _images(s)
    if not imgs:
        return NO, "every object is a cone vertex over the empty diagram and no object lies above all of them"
    return SOLUTION_SET, [min(imgs)]


def _op_chain_cones(k, s):
    imgs = _images(s)
    return SOLUTION_SET, [max(imgs) if imgs else 0]


register_family("DiscreteNat", cone_decision=_discrete_cones)
register_family("op(DiscreteNat)", cone_decision=_discrete_cones)
register_family("OmegaChain", cone_decision=_chain_cones)
register_family("op(OmegaChain)", cone_decision=_op_chain_cones)


def solution_set(s, bounds=DEFAULT_BOUNDS):
    """Condition (i) only: a finite set of cones through which every cone factors."""
    k = s.target
    budget = bounds.iso_budget
    if k.is_finite:
        cones = [c for a in k.objects() for c in cones_at(s, a, budget)]
        return ConeSolutionSet(SOLUTION_SET, _reduce(s, cones), bounds=bounds, decided_by="finite")
    info = FAMILIES.get(k.family)
    if info is not None and info.cone_decision is not None:
        kind, data = info.cone_decision(k, s)
        if kind == NO:
            return ConeSolutionSet(NO, bounds=bounds, reason=data, decided_by=k.family)
        cones = [c for a in data for c in cones_at(s, a, budget)]
        return ConeSolutionSet(SOLUTION_SET, _reduce(s, cones), bounds=bounds, decided_by=k.family)
    probes = list(k.objects(bounds.probes))
    for a in _images(s):
        if a not in probes:
            probes.append(a)
    cones = [c for a in probes for c in cones_at(s, a, budget)]
    return ConeSolutionSet(UNKNOWN, _reduce(s, cones), bounds=bounds,
                           reason="no decision procedure for this family; cones only searched on probes")


def extend_with_cones(s, beta, beta2):
    """S': D' -> K sending the two adjoined vertices to the cones' vertices."""
    c, k = s.source, s.target
    objs = list(c.objects())
    v0, v1 = _Vertex(0), _Vertex(1)
    homs = {(x, y): c.hom(x, y).carrier for x in objs for y in objs}
    comp = dict(c.composition_table())
    ids = {x: c.identity(x) for x in objs}
    for v in (v0, v1):
        homs[(v, v)] = ("id",)
        ids[v] = "id"
        for x in objs:
            homs[(v, x)] = (("leg", v.i, x),)
        for x, y in itertools.product(objs, repeat=2):
            for u in homs[(x, y)]:
                comp[(v, x, y, u, ("leg", v.i, x))] = ("leg", v.i, y)
    d = FiniteCategory(c.base, objs + [v0, v1], homs, comp, ids, name=f"{c.name}'")
    obj_map = {x: s(x) for x in objs}
    obj_map[v0], obj_map[v1] = beta.vertex, beta2.vertex
    legs = {v0: dict(zip(objs, beta.legs)), v1: dict(zip(objs, beta2.legs))}

    def on_arrows(x, y, u):
        if isinstance(x, _Vertex):
            if isinstance(y, _Vertex):
                return k.identity(obj_map[x])
            return legs[x][y]
        return s.fmap(x, y, u)

    return EnrichedFunctor(d, k, obj_map.__getitem__, on_arrows, name=f"{s.name}'")


def _signature(s):
    objs = index_objects(s)
    c = s.source
    arrows = tuple(
        (repr(x), repr(y), repr(u), s.fmap(x, y, u))
        for x in objs for y in objs for u in c.hom(x, y).carrier
    )
    return (tuple(s(x) for x in objs), arrows)


def solution_set_search(s, bounds=DEFAULT_BOUNDS):
    """Solution set for S, saturated up to ``bounds.depth`` stages."""
    k = s.target
    first = solution_set(s, bounds)
    if first.kind == NO:
        return first
    stage = k.sorted(first.vertices) if first.vertices else []
    trace = [list(stage)]
    memo = {}
    stable = False
    kind = first.kind
    for _ in range(bounds.depth):
        cones = [c for a in stage for c in cones_at(s, a, bounds.iso_budget)]
        new = set(stage)
        for beta, beta2 in itertools.product(cones, repeat=2):
            ext = extend_with_cones(s, beta, beta2)
            sig = _signature(ext)
            sub = memo.get(sig)
            if sub is None:
                sub = solution_set(ext, bounds)
                memo[sig] = sub
            if sub.kind == UNKNOWN:
                kind = UNKNOWN
            new.update(sub.vertices)
        nxt = k.sorted(new)
        if nxt == stage:
            stable = True
            break
        stage = nxt
        trace.append(list(stage))
    return ConeSolutionSet(kind, first.cones, trace, stable, bounds, first.reason, first.decided_by)


def limit_cone(s, bounds=DEFAULT_BOUNDS):
    """A limit cone for S in K, or None.  Returns (status, cone) where status is
    "exists", "none" or "unknown"."""
    k = s.target
    sol = solution_set(s, bounds)
    if sol.kind == NO:
        return "none", None
    if k.is_finite:
        vertices = list(k.objects())
    else:
        vertices = list(k.objects(bounds.probes))
        for a in sol.vertices + _images(s):
            if a not in vertices:
                vertices.append(a)
    all_cones = [c for a in vertices for c in cones_at(s, a, bounds.iso_budget)]
    candidates = all_cones if k.is_finite else sol.cones + all_cones
    for lam in candidates:
        if all(len(factorizations(s, alpha, lam)) == 1 for alpha in all_cones):
            return ("exists" if sol.kind == SOLUTION_SET else "unknown"), lam
    if k.is_finite:
        return "none", None
    # Registered families are thin, so a limit would be one of the decided
    # solution-set cones.
    if sol.kind == SOLUTION_SET and sol.decided_by != "search":
        return "none", None
    return "unknown", None
