"""Smallness certification for presheaf views and pointwise weighted limits.

A view is certified Small by exhibiting a finite support B such that the
canonical map Lan_B(view|B)(a) -> view(a) is a bijection on every probe
object.  NotSmall is only ever issued by a decision procedure registered for
the ambient's family; a failed search yields Unknown.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .base import set_quotient
from .category import FAMILIES, register_family
from .config import DEFAULT_BOUNDS, Bounds
from .csp import solve_functional
from .errors import AmbientMismatch, BackendMismatch, InvalidDiagram, InvalidTarget
from .presheaf import (
    PointwisePresheaf, PresheafDiagram, SmallPresheaf, Weight, _require_set_like, restrict_to, same_domain,
)
from .serial import jsonable, presheaf_json

SMALL, NOT_SMALL, UNKNOWN = "Small", "NotSmall", "Unknown"


@dataclass
class SmallnessVerdict:
    kind: str
    certificate: SmallPresheaf | None = None
    probes: tuple = ()
    witness: dict | None = None
    bounds: Bounds = DEFAULT_BOUNDS
    decided_by: str = "search"
    notes: list = field(default_factory=list)

    @property
    def small(self):
        return self.kind == SMALL

    def to_json(self):
        out = {"verdict": self.kind, "probes": jsonable(list(self.probes)), "bounds": self.bounds.to_json(),
               "decided_by": self.decided_by}
        if self.certificate is not None:
            out["certificate"] = presheaf_json(self.certificate)
        if self.witness is not None:
            out["witness"] = jsonable(self.witness)
        if self.notes:
            out["notes"] = list(self.notes)
        return out


@dataclass
class FamilyDecision:
    kind: str  # SMALL or NOT_SMALL
    hint: tuple = ()  # support candidates when SMALL
    extra_probes: tuple = ()
    witness: dict | None = None


# ---------------------------------------------------------------------------


def kan_defect(view, support, a):
    """True when Lan_B(view|B)(a) -> view(a) fails to be a bijection."""
    k = view.ambient
    summands, pairs = [], []
    for b in support:
        for w in k.hom(a, b).carrier:
            for x in view.value(b).carrier:
                summands.append((b, w, x))
    for b, b2 in itertools.product(support, repeat=2):
        for u in k.hom(b, b2).carrier:
            for w in k.hom(a, b).carrier:
                uw = k.compose(a, b, b2, u, w)
                for x in view.value(b2).carrier:
                    pairs.append(((b2, uw, x), (b, w, view.act(b, b2, u, x))))
    reps, _ = set_quotient(summands, pairs, k.base.truncate)
    target = view.value(a).carrier
    if k.base.truncate:
        return bool(reps) != bool(target)
    if len(reps) != len(target):
        return True
    images = {view.act(a, b, w, x) for b, w, x in reps}
    return len(images) != len(target)


def _grow_support(view, probes, start=()):
    support = list(start)
    changed = True
    while changed:
        changed = False
        for a in probes:
            if a not in support and kan_defect(view, support, a):
                support.append(a)
                changed = True
    return support


def _minimize(view, support, probes):
    support = list(support)
    for b in reversed(list(support)):
        trial = [x for x in support if x != b]
        if not any(kan_defect(view, trial, a) for a in probes):
            support = trial
    return support


def _probe_list(k, bounds, extra=()):
    objs = list(k.objects(bounds.probes))
    for a in extra:
        if a not in objs:
            objs.append(a)
    return objs


def certify(view, bounds=DEFAULT_BOUNDS, name=None):
    """Produce a SmallnessVerdict for ``view``."""
    k = view.ambient
    _require_set_like(k)
    name = name or getattr(view, "name", "P")
    if k.is_finite:
        probes = list(k.objects())
        support = _minimize(view, _grow_support(view, probes), probes)
        cert = restrict_to(view, k.sorted(support), name=name)
        return SmallnessVerdict(SMALL, cert, tuple(probes), bounds=bounds, decided_by="finite")

    info = FAMILIES.get(k.family)
    refs = view.referenced
    if info is not None and info.presheaf_decision is not None and refs is not None:
        dec = info.presheaf_decision(view, k, refs, bounds)
        if dec.kind == NOT_SMALL:
            return SmallnessVerdict(NOT_SMALL, None, tuple(_probe_list(k, bounds, dec.extra_probes)),
                                    witness=dec.witness, bounds=bounds, decided_by=k.family)
        probes = _probe_list(k, bounds, tuple(k.sorted(refs)) + tuple(dec.extra_probes))
        support = _grow_support(view, probes, list(dec.hint))
        support = _minimize(view, support, probes)
        if any(kan_defect(view, support, a) for a in probes):
            return SmallnessVerdict(UNKNOWN, None, tuple(probes), bounds=bounds,
                                    notes=["family decision and probe verification disagree"])
        cert = restrict_to(view, k.sorted(support), name=name)
        return SmallnessVerdict(SMALL, cert, tuple(probes), bounds=bounds, decided_by=k.family)

    extra = tuple(k.sorted(refs)) if refs is not None else ()
    probes = _probe_list(k, bounds, extra)
    support = _minimize(view, _grow_support(view, probes), probes)
    held_out = [k.enumerate(i) for i in range(bounds.probes, 2 * bounds.probes)]
    held_out = [a for a in held_out if a not in probes]
    if any(kan_defect(view, support, a) for a in held_out):
        return SmallnessVerdict(UNKNOWN, None, tuple(probes + held_out), bounds=bounds,
                                notes=["no support found that is stable beyond the probe window"])
    cert = restrict_to(view, k.sorted(support), name=name)
    return SmallnessVerdict(SMALL, cert, tuple(probes + held_out), bounds=bounds,
                            notes=["verified on probes only"])


# ---------------------------------------------------------------------------
# registered decisions
#
# Views built by the engine are uniform in the objects they do not reference:
# on a discrete family every unreferenced object is interchangeable, and on
# the chains every object above the referenced ones sits in the same
# position relative to all of them.


def _first_unreferenced(k, refs):
    i = 0
    while True:
        a = k.enumerate(i)
        if a not in refs:
            return a
        i += 1


def _decide_discrete(view, k, refs, bounds):
    g = _first_unreferenced(k, refs)
    n = len(view.value(g))
    if n:
        return FamilyDecision(NOT_SMALL, extra_probes=(g,), witness={
            "family": k.family, "generic_object": g, "value_size": n,
            "reason": "every object outside the referenced set carries this nonempty value, "
                      "so the presheaf has infinite support on a discrete family",
        })
    return FamilyDecision(SMALL, hint=tuple(r for r in k.sorted(refs) if len(view.value(r))), extra_probes=(g,))


def _decide_chain(view, k, refs, bounds):
    g = max(refs) + 1 if refs else 0
    n = len(view.value(g))
    if n:
        return FamilyDecision(NOT_SMALL, extra_probes=(g,), witness={
            "family": k.family, "generic_object": g, "value_size": n,
            "reason": "the value is nonempty above every referenced object, but a presheaf on the "
                      "chain with finite support vanishes above its largest support object",
        })
    return FamilyDecision(SMALL, hint=tuple(k.sorted(refs)), extra_probes=(g, g + 1))


def _decide_op_chain(view, k, refs, bounds):
    top = max(refs) + 1 if refs else 0
    return FamilyDecision(SMALL, hint=tuple(k.sorted(refs)) + (top,), extra_probes=(top, top + 1, top + 2))


register_family("DiscreteNat", presheaf_decision=_decide_discrete)
register_family("op(DiscreteNat)", presheaf_decision=_decide_discrete)
register_family("OmegaChain", presheaf_decision=_decide_chain)
register_family("op(OmegaChain)", presheaf_decision=_decide_op_chain)


# ---------------------------------------------------------------------------
# pointwise limits


@dataclass
class LimitResult:
    view: PointwisePresheaf
    verdict: SmallnessVerdict

    def value_at(self, a):
        return self.view.value(a)


def limit_view(w, diagram, ambient=None, budget=None, name=None):
    """{w, S} computed pointwise, as a view on the ambient."""
    if w.variance != "co":
        raise InvalidDiagram("a limit weight is covariant on the index category")
    if not same_domain(w.domain, diagram.domain):
        raise InvalidDiagram("weight and diagram have different domains")
    k = diagram.ambient or ambient
    if k is None:
        raise InvalidDiagram("an empty diagram needs an explicit ambient")
    if ambient is not None and diagram.ambient is not None and ambient is not diagram.ambient:
        raise AmbientMismatch("diagram lives on another ambient")
    _require_set_like(k)
    c = w.domain
    if c.base != k.base:
        raise BackendMismatch("weight and ambient use different bases")
    idx = list(c.objects())
    variables = [(x, p) for x in idx for p in w.values[x].carrier]
    arrows = [(x, x2, u) for x in idx for x2 in idx for u in c.hom(x, x2).carrier]

    def value(a):
        domains = {v: diagram[v[0]].value(a).carrier for v in variables}
        cons = [((x, p), (x2, w.act(x, x2, u, p)), (lambda y, x=x, x2=x2, u=u: diagram.at(x, x2, u, a, y)))
                for x, x2, u in arrows for p in w.values[x].carrier]
        kw = {} if budget is None else {"budget": budget}
        sols = solve_functional(variables, domains, cons, **kw)
        return k.base.obj(tuple(tuple(s[v] for v in variables) for s in sols))

    def act(a, a2, t, fam):
        return tuple(diagram[v[0]].act(a, a2, t, y) for v, y in zip(variables, fam))

    return PointwisePresheaf(k, value, act, referenced=diagram.referenced, name=name or f"{{{w.name},{diagram.name}}}")


def pointwise_limit(w, diagram, bounds=DEFAULT_BOUNDS, ambient=None, name=None):
    view = limit_view(w, diagram, ambient, bounds.iso_budget, name)
    return LimitResult(view, certify(view, bounds, name=view.name))


def limit_presheaf(w, diagram, bounds=DEFAULT_BOUNDS, ambient=None, name=None):
    """The limit as a SmallPresheaf, or None when it is not certified small."""
    res = pointwise_limit(w, diagram, bounds, ambient, name)
    return res.verdict.certificate if res.verdict.small else None


def base_cotensor(g, f, bounds=DEFAULT_BOUNDS, name=None):
    """[g, f(-)] pointwise, re-certified."""
    k = f.ambient
    if not k.base.owns(g):
        raise BackendMismatch(f"{getattr(g, 'backend', g)} is not an object of {k.base.name}")

    def value(a):
        return k.base.hom(g, f.value(a))

    def act(a, a2, t, h):
        return tuple((p, f.act(a, a2, t, y)) for p, y in h)

    view = PointwisePresheaf(k, value, act, referenced=f.referenced, name=name or f"[g,{f.name}]")
    return LimitResult(view, certify(view, bounds, name=view.name))


@dataclass
class ProbeReport:
    probe: object
    verdict: SmallnessVerdict

    def to_json(self):
        return {"probe": jsonable(self.probe), **self.verdict.to_json()}


def representably_small_check(s, probes, bounds=DEFAULT_BOUNDS):
    """For S: K^op -> [C, V] given as a diagram C -> PK (or a single presheaf
    when C is the point), check that [C, V](M, S-) is small for each probe M.

    Probes are covariant weights on C, or base objects when ``s`` is a single
    presheaf.
    """
    from .category import FiniteCategory

    if isinstance(s, SmallPresheaf):
        point = FiniteCategory.terminal(s.ambient.base)
        diagram = PresheafDiagram(point, {point.objects()[0]: s}, name=s.name)
        probes = [p if isinstance(p, Weight) else Weight(point, {point.objects()[0]: p}, variance="co", name="M")
                  for p in probes]
    elif isinstance(s, PresheafDiagram):
        diagram = s
    else:
        raise InvalidTarget("representable smallness needs a presheaf or a diagram into presheaves")
    if not diagram.domain.is_finite:
        raise InvalidTarget("the target must be a functor category on a finite index category")
    out = []
    for m in probes:
        if not isinstance(m, Weight) or not same_domain(m.domain, diagram.domain) or m.variance != "co":
            raise InvalidTarget("each probe must be a covariant functor on the target's index category")
        out.append(ProbeReport(m.name, pointwise_limit(m, diagram, bounds).verdict))
    return out


def certificate_element(cert, view, a, y):
    """The element of ``cert.value(a)`` sent to ``y`` by the canonical
    comparison with the view ``cert`` was certified from."""
    table = cert.__dict__.setdefault("_to_cert", {})
    inv = table.get(a)
    if inv is None:
        inv = {view.act(a, b, w, x): (b, w, x) for b, w, x in cert.value(a).carrier}
        table[a] = inv
    return inv[y]
