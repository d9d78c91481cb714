"""Left Kan extension along functors (P F), restriction, continuity and flatness."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .base import set_limit, set_quotient
from .category import compose_functors, full_subcategory
from .completeness import LimitClass, Report, completeness_check, phi_complete_check, shape_diagrams
from .cones import cones_at, factorizations, limit_cone
from .config import DEFAULT_BOUNDS
from .errors import AmbientMismatch, PremiseViolated, SpcalcError
from .presheaf import (
    PointwisePresheaf, PresheafDiagram, PresheafMorphism, SmallPresheaf, Weight, empty_presheaf,
    iso_presheaf, presheaf_hom, weighted_colimit, yoneda_diagram,
)
from .serial import jsonable, presheaf_json
from .smallness import NOT_SMALL, SMALL, UNKNOWN, certificate_element, certify, pointwise_limit


def left_kan_along(f, g, name=None):
    """P F (g): support F(B), value at l the coend over B of L(l, F b) x R(b)."""
    k, l = f.source, f.target
    if g.ambient is not k:
        raise AmbientMismatch(f"{g.name} lives on {g.ambient.name}, not on {k.name}")
    support = l.sorted(f(b) for b in g.support)
    values, classify = {}, {}
    for t in support:
        summands = [(b, w, x) for b in g.support for w in l.hom(t, f(b)).carrier for x in g.values[b].carrier]
        pairs = []
        for b, b2 in itertools.product(g.support, repeat=2):
            for u in k.hom(b, b2).carrier:
                fu = f.fmap(b, b2, u)
                for w in l.hom(t, f(b)).carrier:
                    fw = l.compose(t, f(b), f(b2), fu, w)
                    for x in g.values[b2].carrier:
                        pairs.append(((b2, fw, x), (b, w, g.restrict_act(b, b2, u, x))))
        values[t], classify[t] = set_quotient(summands, pairs, l.base.truncate)
    action = {}
    for t, t2 in itertools.product(support, repeat=2):
        for v in l.hom(t, t2).carrier:
            action[(t, t2, v)] = {r: classify[t][(r[0], l.compose(t, t2, f(r[0]), r[1], v), r[2])] for r in values[t2]}
    return SmallPresheaf(l, support, values, action, name=name or f"{f.name}!{g.name}")


def hom_into_image(f, b):
    """The view L(F-, b) on the source of F."""
    k, l = f.source, f.target

    def value(a):
        return l.hom(f(a), b)

    def act(a, a2, t, w):
        return l.compose(f(a), f(a2), b, w, f.fmap(a, a2, t))

    return PointwisePresheaf(k, value, act, referenced=f.referenced, name=f"{l.name}({f.name}-,{b})")


@dataclass
class RestrictResult:
    kind: str
    presheaf: SmallPresheaf | None = None
    witness: dict | None = None
    verdicts: dict = field(default_factory=dict)

    def to_json(self):
        out = {"verdict": self.kind, "checks": {jsonable(b) if isinstance(b, str) else str(b): v.to_json()
                                                 for b, v in self.verdicts.items()}}
        if self.presheaf is not None:
            out["certificate"] = presheaf_json(self.presheaf)
        if self.witness is not None:
            out["witness"] = jsonable(self.witness)
        return out


def restrict_along(f, h, bounds=DEFAULT_BOUNDS, name=None):
    """h . F, provided every L(F-, b) for b in h's support is small."""
    k, l = f.source, f.target
    if h.ambient is not l:
        raise AmbientMismatch(f"{h.name} lives on {h.ambient.name}, not on {l.name}")
    views, certs, verdicts = {}, {}, {}
    for b in h.support:
        views[b] = hom_into_image(f, b)
        v = certify(views[b], bounds)
        verdicts[b] = v
        if v.kind == NOT_SMALL:
            return RestrictResult(NOT_SMALL, witness={"object": b, "presheaf": views[b].name, **(v.witness or {})},
                                  verdicts=verdicts)
        if v.kind == UNKNOWN:
            return RestrictResult(UNKNOWN, witness={"object": b}, verdicts=verdicts)
        certs[b] = v.certificate
    name = name or f"{h.name}.{f.name}"
    if not h.support:
        return RestrictResult(SMALL, empty_presheaf(k, name), verdicts=verdicts)
    sub, _ = full_subcategory(l, h.support)
    w = Weight(sub, {b: h.values[b] for b in h.support}, dict(h.action), variance="contra", name=h.name)
    arrows = {}
    for b, b2 in itertools.product(h.support, repeat=2):
        for u in l.hom(b, b2).carrier:
            src, tgt = certs[b], certs[b2]
            comps = {
                a: {x: certificate_element(tgt, views[b2], a, l.compose(f(a), b, b2, u, x)) for x in src.values[a].carrier}
                for a in src.support
            }
            arrows[(b, b2, u)] = PresheafMorphism(src, tgt, comps, check=False)
    diagram = PresheafDiagram(sub, certs, arrows, name=f"{l.name}({f.name}-,B)")
    return RestrictResult(SMALL, weighted_colimit(w, diagram, ambient=k, name=name), verdicts=verdicts)


def adjunction_check(f, corpus_k, corpus_l, bounds=DEFAULT_BOUNDS):
    """PK(F! g, h) = PK(g, h.F) for every pair of the corpora."""
    failures, checked = [], 0
    base = f.target.base
    for g, h in itertools.product(corpus_k, corpus_l):
        checked += 1
        try:
            r = restrict_along(f, h, bounds)
            if r.kind != SMALL:
                failures.append({"pair": [g.name, h.name], "reason": f"restriction is {r.kind}"})
                continue
            left = presheaf_hom(left_kan_along(f, g), h, bounds.iso_budget)
            right = presheaf_hom(g, r.presheaf, bounds.iso_budget)
            if not base.is_iso(left, right):
                failures.append({"pair": [g.name, h.name], "reason": f"hom sizes {len(left)} and {len(right)} differ"})
        except SpcalcError as e:
            failures.append({"pair": [g.name, h.name], "reason": str(e)})
    verdict = "Adjoint" if not failures else "Fails"
    return Report("adjunction", verdict, witness=failures[0] if failures else None,
                  details={"pairs": checked, "failures": failures}, bounds=bounds)


# ---------------------------------------------------------------------------


def _preserves_limit(f, s, bounds):
    """Does F send the limit cone of S to a limit cone of F.S?  None if S has no limit."""
    status, lam = limit_cone(s, bounds)
    if status != "exists":
        return None
    fs = compose_functors(f, s)
    l = f.target
    image = type(lam)(f(lam.vertex), tuple(f.fmap(lam.vertex, s(x), leg) for x, leg in zip(s.source.objects(), lam.legs)))
    vertices = list(l.objects()) if l.is_finite else list(l.objects(bounds.probes))
    for a in vertices:
        for alpha in cones_at(fs, a, bounds.iso_budget):
            if len(factorizations(fs, alpha, image)) != 1:
                return False
    return True


def continuity_check(f, phi="FiniteLimits", bounds=DEFAULT_BOUNDS, max_diagrams=None):
    """Per sampled limit: does F preserve it, and does P F preserve the
    corresponding limit of representables?  The two answers should agree."""
    k, l = f.source, f.target
    for cat in (k, l):
        rep = completeness_check(cat, bounds)
        if rep.verdict not in ("Complete", "Complete-on-probes"):
            raise PremiseViolated(f"{cat.name} is not complete on probes ({rep.verdict})")
    cls = phi if isinstance(phi, LimitClass) else LimitClass(phi)
    samples = []
    objs = list(k.objects()) if k.is_finite else list(k.objects(bounds.sample))
    for shape in cls.shapes(k.base):
        for s in shape_diagrams(k, shape, objs, max_diagrams):
            f_pres = _preserves_limit(f, s, bounds)
            if f_pres is None:
                continue
            w = Weight.unit(shape, "co")
            lim_k = pointwise_limit(w, yoneda_diagram(s, k), bounds).verdict
            lim_l = pointwise_limit(w, yoneda_diagram(compose_functors(f, s), l), bounds).verdict
            if not (lim_k.small and lim_l.small):
                continue
            pf_pres = iso_presheaf(left_kan_along(f, lim_k.certificate), lim_l.certificate, bounds.iso_budget)
            samples.append({"diagram": {"shape": shape.name, "objects": [s(x) for x in shape.objects()]},
                            "F_preserves": f_pres, "PF_preserves": pf_pres, "agree": f_pres == pf_pres})
    disagreements = [x for x in samples if not x["agree"]]
    verdict = "Agree" if not disagreements else "Disagree"
    return Report("continuity", verdict, witness=disagreements[0] if disagreements else None,
                  details={"class": cls.tag, "samples": samples,
                           "F_continuous_on_probes": all(x["F_preserves"] for x in samples),
                           "PF_continuous_on_probes": all(x["PF_preserves"] for x in samples)},
                  bounds=bounds)


# ---------------------------------------------------------------------------


def weighted_colimit_in_base(g, x):
    """G * X for G: K -> V given as a presheaf on K^op and X small on K.

    Returns (object, classify) where classify names the class of ``(b, x, y)``.
    """
    k = x.ambient
    if g.ambient is not k.opposite():
        raise AmbientMismatch("the weight must be a presheaf on the opposite of X's ambient")
    summands = [(b, e, y) for b in x.support for e in x.values[b].carrier for y in g.value(b).carrier]
    pairs = []
    for b, b2 in itertools.product(x.support, repeat=2):
        for u in k.hom(b, b2).carrier:
            for e2 in x.values[b2].carrier:
                for y in g.value(b).carrier:
                    pairs.append(((b, x.restrict_act(b, b2, u, e2), y), (b2, e2, g.act(b2, b, u, y))))
    reps, classify = set_quotient(summands, pairs, k.base.truncate)
    return k.base.obj(reps), classify


def _colimit_map(g, m, src_cls, tgt_cls):
    """G * m : G * X -> G * X' on representatives."""
    def fn(r):
        b, e, y = r
        b2, w, e2 = m.components[b][e]
        return tgt_cls[(b2, e2, g.act(b2, b, w, y))]
    return fn


def flatness_check(g, phi="FiniteProducts", bounds=DEFAULT_BOUNDS, corpus=(), max_diagrams=None):
    """Does G * - : PK -> V preserve the sampled limits?  Uses (Lan_Y G) X = X * G."""
    k = g.ambient.opposite()
    rep = phi_complete_check(k, phi, bounds, side="PK")
    if rep.verdict not in ("Complete", "Complete-on-probes"):
        raise PremiseViolated(f"P{k.name} is not complete for {phi} on probes ({rep.verdict})")
    cls = phi if isinstance(phi, LimitClass) else LimitClass(phi)
    base = k.base
    objs = list(k.objects()) if k.is_finite else list(k.objects(bounds.sample))
    diagrams = []
    for shape in cls.shapes(base):
        for s in shape_diagrams(k, shape, objs, max_diagrams):
            diagrams.append((shape, yoneda_diagram(s, k)))
    if corpus and cls.tag in ("FiniteProducts", "FiniteLimits"):
        pair = [sh for sh in cls.shapes(base) if sh.name == "pair"][0]
        for x, y in itertools.combinations_with_replacement(list(corpus), 2):
            diagrams.append((pair, PresheafDiagram(pair, {"x": x, "y": y})))
    diagrams.sort(key=lambda sd: not sd[0].objects())  # the empty limit last
    checked = 0
    for shape, d in diagrams:
        res = pointwise_limit(Weight.unit(shape, "co"), d, bounds, ambient=k)
        if not res.verdict.small:
            continue
        checked += 1
        lim_obj, _ = weighted_colimit_in_base(g, res.verdict.certificate)
        idx = list(shape.objects())
        parts = {c: weighted_colimit_in_base(g, d[c]) for c in idx}
        arrows = []
        for c, c2 in itertools.product(idx, repeat=2):
            for u in shape.hom(c, c2).carrier:
                m = d.arrows[(c, c2, u)]
                if not isinstance(m, PresheafMorphism):
                    continue
                arrows.append((c, c2, _colimit_map(g, m, parts[c][1], parts[c2][1])))
        expected = base.obj(set_limit(idx, {c: parts[c][0].carrier for c in idx}, arrows))
        if not base.is_iso(lim_obj, expected):
            return Report("flat", "NotFlat", witness={
                "diagram": {"shape": shape.name, "objects": [d[c].name for c in idx]},
                "colimit_of_limit": len(lim_obj), "limit_of_colimits": len(expected)},
                details={"class": cls.tag, "checked": checked}, bounds=bounds)
    return Report("flat", "Flat" if k.is_finite else "Flat-on-probes",
                  details={"class": cls.tag, "checked": checked,
                           "lemma": "(Lan_Y G) X = X * G, so G is flat iff X |-> X * G preserves these limits"},
                  bounds=bounds)
