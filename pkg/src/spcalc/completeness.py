"""Completeness of PK, limit classes, and bounded closures under a class.

Only three classes are built in.  The saturation of a class is not computed;
``phi_closure`` produces bounded approximations of the closure of the
representables and says whether it stabilized.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .category import EnrichedFunctor, FiniteCategory
from .cones import limit_cone, solution_set_search
from .config import DEFAULT_BOUNDS, Bounds
from .errors import SpcalcError
from .presheaf import (
    PresheafDiagram, Weight, coproduct, empty_presheaf, hom_element_to_morphism, iso_presheaf,
    presheaf_hom, representable, yoneda_diagram,
)
from .serial import jsonable
from .smallness import NOT_SMALL, UNKNOWN, limit_presheaf, pointwise_limit

LIMIT_CLASSES = ("FiniteProducts", "FiniteLimits", "FiniteConnectedLimits")
COLIMIT_CLASSES = ("FiniteCoproducts",)


@dataclass
class Report:
    check: str
    verdict: str
    witness: dict | None = None
    details: dict = field(default_factory=dict)
    bounds: Bounds = DEFAULT_BOUNDS

    def to_json(self):
        out = {"check": self.check, "verdict": self.verdict, "bounds": self.bounds.to_json()}
        if self.witness is not None:
            out["witness"] = jsonable(self.witness)
        if self.details:
            out["details"] = jsonable(self.details)
        return out


def _connected(c):
    objs = list(c.objects())
    if not objs:
        return False
    seen = {objs[0]}
    stack = [objs[0]]
    while stack:
        a = stack.pop()
        for b in objs:
            if b not in seen and (c.hom(a, b).carrier or c.hom(b, a).carrier):
                seen.add(b)
                stack.append(b)
    return len(seen) == len(objs)


def _discrete(c):
    return all(not c.hom(a, b).carrier for a in c.objects() for b in c.objects() if a != b) and all(
        len(c.hom(a, a)) == 1 for a in c.objects())


class LimitClass:
    """A class of finite weights.  Membership: conical weights on discrete
    domains (products), on connected domains (connected limits), or any
    finite weight (finite limits)."""

    def __init__(self, tag):
        if tag not in LIMIT_CLASSES:
            raise SpcalcError(f"unknown limit class {tag!r}; choose one of {', '.join(LIMIT_CLASSES)}")
        self.tag = tag

    def __repr__(self):
        return self.tag

    def contains(self, w):
        if self.tag == "FiniteLimits":
            return True
        conical = all(len(w.values[c]) == 1 for c in w.domain.objects())
        if not conical:
            return False
        if self.tag == "FiniteProducts":
            return _discrete(w.domain)
        return _connected(w.domain)

    def shapes(self, base):
        out = []
        if self.tag in ("FiniteProducts", "FiniteLimits"):
            out += [FiniteCategory.discrete(base, [], name="empty"),
                    FiniteCategory.discrete(base, ["x"], name="one"),
                    FiniteCategory.discrete(base, ["x", "y"], name="pair")]
        if self.tag in ("FiniteConnectedLimits", "FiniteLimits"):
            if self.tag == "FiniteConnectedLimits":
                out.append(FiniteCategory.discrete(base, ["x"], name="one"))
            if not base.truncate:  # Bool2-categories are preorders: no parallel pairs
                out.append(FiniteCategory(base, ("s", "t"), {("s", "s"): ("1s",), ("t", "t"): ("1t",), ("s", "t"): ("f", "g")},
                                          {}, {"s": "1s", "t": "1t"}, name="parallel"))
            out.append(FiniteCategory.from_preorder(base, ["x", "y", "z"],
                                                    lambda a, b: a == b or b == "z", name="cospan"))
        return out


def _generators(c):
    """Non-identity arrows of a shape; none of the built-in shapes has composites."""
    return [(a, b, u) for a in c.objects() for b in c.objects() for u in c.hom(a, b).carrier
            if not (a == b and u == c.identity(a))]


def shape_diagrams(k, shape, objects, limit=None):
    """Every functor ``shape -> K`` with object images drawn from ``objects``."""
    objs = list(shape.objects())
    gens = _generators(shape)
    count = 0
    for images in itertools.product(objects, repeat=len(objs)):
        omap = dict(zip(objs, images))
        choices = [k.hom(omap[a], omap[b]).carrier for a, b, _ in gens]
        for arrows in itertools.product(*choices):
            amap = {g: f for g, f in zip(gens, arrows)}
            yield EnrichedFunctor(
                shape, k, omap.__getitem__,
                lambda a, b, u, amap=amap, omap=omap: k.identity(omap[a]) if (a, b, u) not in amap else amap[(a, b, u)],
                name=f"{shape.name}{list(images)}", referenced=images,
            )
            count += 1
            if limit is not None and count >= limit:
                return


def _sample_objects(k, bounds):
    return list(k.objects()) if k.is_finite else list(k.objects(bounds.sample))


def _describe(s):
    return {"shape": s.source.name, "objects": [s(x) for x in s.source.objects()]}


def completeness_check(k, bounds=DEFAULT_BOUNDS, classes=("FiniteLimits",), max_diagrams=None, exhaustive=False):
    """Is PK complete?  Finite K always is; procedural K is probed with
    conical limits of representables.  ``exhaustive`` runs the probes on
    finite K too, over every diagram of the class's shapes."""
    if k.is_finite and not exhaustive:
        return Report("complete", "Complete", bounds=bounds, details={"reason": "finite supports are closed under limits"})
    sampled = 0
    unknown = None
    for tag in classes:
        for shape in LimitClass(tag).shapes(k.base):
            for s in shape_diagrams(k, shape, _sample_objects(k, bounds), max_diagrams):
                sampled += 1
                res = pointwise_limit(Weight.unit(shape, "co"), yoneda_diagram(s, k), bounds)
                if res.verdict.kind == NOT_SMALL:
                    return Report("complete", "Incomplete", bounds=bounds,
                                  witness={"diagram": _describe(s), "limit": res.verdict.to_json()},
                                  details={"sampled": sampled})
                if res.verdict.kind == UNKNOWN and unknown is None:
                    unknown = _describe(s)
    if unknown is not None:
        return Report("complete", "Unknown", bounds=bounds, details={"sampled": sampled, "first_unknown": unknown})
    if k.is_finite:
        return Report("complete", "Complete", bounds=bounds, details={"sampled": sampled, "classes": list(classes)})
    return Report("complete", "Complete-on-probes", bounds=bounds, details={"sampled": sampled, "classes": list(classes)})


def solution_set_agreement(k, bounds=DEFAULT_BOUNDS, classes=("FiniteLimits",)):
    """Run the solution-set search over the same diagrams completeness_check samples.
    Returns the first diagram without a solution set, or None."""
    for tag in classes:
        for shape in LimitClass(tag).shapes(k.base):
            for s in shape_diagrams(k, shape, _sample_objects(k, bounds)):
                if solution_set_search(s, bounds).kind == "No":
                    return _describe(s)
    return None


def phi_complete_check(k, phi, bounds=DEFAULT_BOUNDS, side="K", max_diagrams=None):
    """Existence of conical limits of the class's shapes, in K itself
    (``side="K"``) or in PK (``side="PK"``)."""
    cls = phi if isinstance(phi, LimitClass) else LimitClass(phi)
    sampled = 0
    unknown = None
    for shape in cls.shapes(k.base):
        for s in shape_diagrams(k, shape, _sample_objects(k, bounds), max_diagrams):
            sampled += 1
            if side == "K":
                status, cone = limit_cone(s, bounds)
                if status == "none":
                    return Report(f"phi-complete {side}", "NotComplete", bounds=bounds,
                                  witness={"diagram": _describe(s), "reason": "no limit cone"},
                                  details={"class": cls.tag, "sampled": sampled})
                bad = status == "unknown"
            else:
                res = pointwise_limit(Weight.unit(shape, "co"), yoneda_diagram(s, k), bounds)
                if res.verdict.kind == NOT_SMALL:
                    return Report(f"phi-complete {side}", "NotComplete", bounds=bounds,
                                  witness={"diagram": _describe(s), "limit": res.verdict.to_json()},
                                  details={"class": cls.tag, "sampled": sampled})
                bad = res.verdict.kind == UNKNOWN
            if bad and unknown is None:
                unknown = _describe(s)
    if unknown is not None:
        return Report(f"phi-complete {side}", "Unknown", bounds=bounds,
                      details={"class": cls.tag, "sampled": sampled, "first_unknown": unknown})
    verdict = "Complete" if k.is_finite else "Complete-on-probes"
    return Report(f"phi-complete {side}", verdict, bounds=bounds, details={"class": cls.tag, "sampled": sampled})


# ---------------------------------------------------------------------------


@dataclass
class Closure:
    members: list
    stable: bool
    rounds: int

    def to_json(self):
        return {"classes": len(self.members), "stable": self.stable, "rounds": self.rounds,
                "sizes": [[len(f.value(a)) for a in f.ambient.objects()] for f in self.members]}


def _product_candidates(c, members, bounds):
    pt = FiniteCategory.discrete(c.base, [], name="empty")
    yield limit_presheaf(Weight.unit(pt, "co"), PresheafDiagram(pt, {}), bounds, ambient=c)
    two = FiniteCategory.discrete(c.base, ["x", "y"], name="pair")
    for i, j in itertools.combinations_with_replacement(range(len(members)), 2):
        yield limit_presheaf(Weight.unit(two, "co"), PresheafDiagram(two, {"x": members[i], "y": members[j]}), bounds)


def _connected_candidates(c, members, bounds):
    shapes = {s.name: s for s in LimitClass("FiniteConnectedLimits").shapes(c.base)}
    par, cospan = shapes.get("parallel"), shapes["cospan"]
    for x, y in itertools.product(members, repeat=2) if par is not None else ():
        homs = presheaf_hom(x, y, bounds.iso_budget).carrier
        for e1, e2 in itertools.combinations(homs, 2):
            d = PresheafDiagram(par, {"s": x, "t": y}, {
                ("s", "t", "f"): hom_element_to_morphism(x, y, e1),
                ("s", "t", "g"): hom_element_to_morphism(x, y, e2),
            })
            yield limit_presheaf(Weight.unit(par, "co"), d, bounds)
    for x, y, z in itertools.product(members, repeat=3):
        for e1 in presheaf_hom(x, z, bounds.iso_budget).carrier:
            for e2 in presheaf_hom(y, z, bounds.iso_budget).carrier:
                d = PresheafDiagram(cospan, {"x": x, "y": y, "z": z}, {
                    ("x", "z", "*"): hom_element_to_morphism(x, z, e1),
                    ("y", "z", "*"): hom_element_to_morphism(y, z, e2),
                })
                yield limit_presheaf(Weight.unit(cospan, "co"), d, bounds)


def _coproduct_candidates(c, members, bounds):
    yield empty_presheaf(c)
    for i, j in itertools.combinations_with_replacement(range(len(members)), 2):
        yield coproduct([members[i], members[j]])


def phi_closure(c, phi, bound, bounds=DEFAULT_BOUNDS, max_size=None):
    """Close the representables of the finite category ``c`` under the class.

    ``phi`` is a limit class (closure under those limits in Pc) or
    ``"FiniteCoproducts"`` (closure under finite coproducts).  Stops with
    ``stable=False`` as soon as a new iso class would exceed ``bound``.
    With ``max_size``, candidates having a value larger than that are
    dropped, and dropping any marks the closure as not stable.
    """
    if not c.is_finite:
        raise SpcalcError("phi_closure needs a finite category")
    tag = phi.tag if isinstance(phi, LimitClass) else phi
    gens = []
    if tag in ("FiniteProducts", "FiniteLimits"):
        gens.append(_product_candidates)
    if tag in ("FiniteConnectedLimits", "FiniteLimits"):
        gens.append(_connected_candidates)
    if tag == "FiniteCoproducts":
        gens.append(_coproduct_candidates)
    if not gens:
        raise SpcalcError(f"unknown class {tag!r}")
    members = []
    dropped = False

    def too_big(f):
        return max_size is not None and any(len(f.value(a)) > max_size for a in c.objects())

    for a in c.objects():
        y = representable(c, a)
        if too_big(y):
            dropped = True
            continue
        if any(iso_presheaf(y, m, bounds.iso_budget) for m in members):
            continue
        if len(members) >= bound:
            return Closure(members, False, 0)
        members.append(y)
    rounds = 0
    while True:
        rounds += 1
        grew = False
        snapshot = list(members)
        for gen in gens:
            for cand in gen(c, snapshot, bounds):
                if too_big(cand):
                    dropped = True
                    continue
                if any(iso_presheaf(cand, m, bounds.iso_budget) for m in members):
                    continue
                if len(members) >= bound:
                    return Closure(members, False, rounds)
                members.append(cand)
                grew = True
        if not grew:
            return Closure(members, not dropped, rounds)
