"""Isbell conjugation between PK and P(K^op)^op.

O(F)(A) = PK(F, Y A) is a presheaf on K^op; Spec(G)(A) = P(K^op)(G, Z A)
is the same construction read on the other side, so one routine serves both.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .completeness import Report, completeness_check
from .config import DEFAULT_BOUNDS
from .errors import InvalidTarget, SpcalcError
from .presheaf import (
    PointwisePresheaf, PresheafMorphism, SmallPresheaf, empty_presheaf, iso_presheaf, presheaf_hom,
    representable, yoneda_arrow,
)
from .serial import jsonable
from .smallness import NOT_SMALL, SMALL, certificate_element, certify


@dataclass
class ConjugateResult:
    kind: str
    direction: str
    presheaf: SmallPresheaf | None = None
    view: PointwisePresheaf | None = None
    verdict: object = None

    @property
    def small(self):
        return self.kind == SMALL

    def to_json(self):
        out = {"direction": self.direction, **self.verdict.to_json()}
        return out


def conjugate_view(f, name=None):
    """A |-> PK(f, Y A) as a view on the opposite of f's ambient."""
    k = f.ambient
    kop = k.opposite()
    reps = {}

    def rep(a):
        if a not in reps:
            reps[a] = representable(k, a)
        return reps[a]

    def value(a):
        return presheaf_hom(f, rep(a))

    def act(a, a2, t, phi):
        # t: a -> a2 on the opposite side is t: a2 -> a in k
        m = yoneda_arrow(k, a2, a, t, rep(a2), rep(a))
        return tuple((v, m.at(v[0], y)) for v, y in phi)

    return PointwisePresheaf(kop, value, act, referenced=f.referenced, name=name or f"O({f.name})")


def _conjugate(f, bounds, direction, name):
    view = conjugate_view(f, name)
    v = certify(view, bounds, name=view.name)
    return ConjugateResult(v.kind, direction, v.certificate, view, v)


def left_conjugate(f, bounds=DEFAULT_BOUNDS, name=None):
    """O(f) on K^op, certified."""
    return _conjugate(f, bounds, "left", name or f"O({f.name})")


def right_conjugate(g, bounds=DEFAULT_BOUNDS, name=None):
    """Spec(g) on K for g a presheaf on K^op."""
    return _conjugate(g, bounds, "right", name or f"Spec({g.name})")


def corepresentable(k, a):
    """Z a = K(a, -) as a presheaf on K^op."""
    return representable(k.opposite(), a, name=f"Z({a})")


# ---------------------------------------------------------------------------


def unit_morphism(f, o, spec):
    """eta: F -> Spec(O F), x at b sent to (A, phi) |-> phi_b(x) in K(b, A)."""
    k = f.ambient
    kop = k.opposite()
    cert_o, cert_s, view_s = o.presheaf, spec.presheaf, spec.view
    zs = {}
    comps = {}
    for b in f.support:
        zb = zs.setdefault(b, representable(kop, b))
        comps[b] = {}
        for x in f.values[b].carrier:
            psi = []
            for a in cert_o.support:
                for phi in cert_o.values[a].carrier:
                    comp = dict(phi)
                    a_, w, y = comp[(b, x)]  # an element of Y(a) at b
                    arrow = k.compose(b, a_, a, y, w)
                    psi.append(((a, phi), zb.inject(a, b, arrow, kop.identity(b))))
            comps[b][x] = certificate_element(cert_s, view_s, b, tuple(psi))
    return PresheafMorphism(f, cert_s, comps, check=False)


def closure(f, bounds=DEFAULT_BOUNDS):
    """(O F, Spec O F) or None when either conjugate is not certified."""
    o = left_conjugate(f, bounds)
    if not o.small:
        return None
    s = right_conjugate(o.presheaf, bounds, name=f"SpecO({f.name})")
    if not s.small:
        return None
    return o, s


def conjugation_adjunction_check(corpus, co_corpus=(), bounds=DEFAULT_BOUNDS, fault=None):
    """Hom-iso, unit comparisons and idempotence of Spec O on a corpus.

    ``fault`` (components -> components) corrupts the unit before it is
    checked; it exists so the check itself can be tested.
    """
    corpus = list(corpus)
    if not corpus:
        raise InvalidTarget("the corpus is empty")
    k = corpus[0].ambient
    failures, checked = [], 0
    closures = {}
    for f in corpus:
        c = closure(f, bounds)
        if c is None:
            failures.append({"law": "premise", "presheaf": f.name, "reason": "conjugate not certified small"})
            continue
        o, s = c
        closures[f.name] = (f, o, s)
        eta = unit_morphism(f, o, s)
        if fault is not None:
            eta = PresheafMorphism(f, s.presheaf, fault(eta.components), check=False)
        checked += 1
        try:
            PresheafMorphism(f, s.presheaf, eta.components, check=True)
        except SpcalcError:
            failures.append({"law": "unit", "presheaf": f.name})
            continue
        again = closure(s.presheaf, bounds)
        if again is None or not iso_presheaf(again[1].presheaf, s.presheaf, bounds.iso_budget):
            failures.append({"law": "idempotence", "presheaf": f.name})
        for g in co_corpus:
            sg = right_conjugate(g, bounds)
            if not sg.small:
                continue
            left = presheaf_hom(g, o.presheaf, bounds.iso_budget)
            right = presheaf_hom(f, sg.presheaf, bounds.iso_budget)
            checked += 1
            if not k.base.is_iso(left, right):
                failures.append({"law": "hom-iso", "presheaf": f.name, "copresheaf": g.name})
    # monotonicity, order by existence of morphisms
    for (_, (f, _, s)), (_, (f2, _, s2)) in itertools.product(closures.items(), repeat=2):
        if presheaf_hom(f, f2, bounds.iso_budget).carrier and not presheaf_hom(s.presheaf, s2.presheaf).carrier:
            failures.append({"law": "monotone", "presheaf": f.name, "other": f2.name})
    return Report("isbell-adjunction", "Fails" if failures else "Adjoint", witness=failures[0] if failures else None,
                  details={"corpus": len(corpus), "checked": checked, "failures": failures}, bounds=bounds)


# ---------------------------------------------------------------------------
# Dedekind-MacNeille over Bool2


def _require_poset(k):
    if not k.is_finite or not k.base.truncate:
        raise InvalidTarget("a finite category over Bool2 is needed")


def leq(k, a, b):
    return bool(k.hom(a, b).carrier)


def downsets(k):
    _require_poset(k)
    objs = list(k.objects())
    out = []
    for mask in range(1 << len(objs)):
        d = [x for i, x in enumerate(objs) if mask >> i & 1]
        if all(y in d for x in d for y in objs if leq(k, y, x)):
            out.append(frozenset(d))
    return sorted(out, key=lambda d: (len(d), sorted(objs.index(x) for x in d)))


def downset_presheaf(k, d, name=None):
    unit = k.base.unit()
    return SmallPresheaf(k, k.sorted(d), {b: unit for b in d}, name=name or "D{" + ",".join(map(str, k.sorted(d))) + "}")


def nonempty_set(f):
    return frozenset(a for a in f.ambient.objects() if f.value(a).carrier)


def dedekind_macneille_fixed_points(k, bounds=DEFAULT_BOUNDS):
    """Downsets fixed by Spec O, in enumeration order."""
    fixed = []
    for d in downsets(k):
        c = closure(downset_presheaf(k, d), bounds)
        if c is not None and nonempty_set(c[1].presheaf) == d:
            fixed.append(d)
    return fixed


def dm_cuts_oracle(elements, le):
    """Brute force: the distinct sets L(U(X)) over all subsets X."""
    elements = list(elements)
    cuts = set()
    for r in range(len(elements) + 1):
        for xs in itertools.combinations(elements, r):
            ups = [p for p in elements if all(le(x, p) for x in xs)]
            cuts.add(frozenset(q for q in elements if all(le(q, p) for p in ups)))
    return cuts


def dm_report(k, bounds=DEFAULT_BOUNDS):
    fixed = dedekind_macneille_fixed_points(k, bounds)
    return {"count": len(fixed), "fixed_points": [jsonable(k.sorted(d)) for d in fixed]}


# ---------------------------------------------------------------------------


def global_existence_gate(k, bounds=DEFAULT_BOUNDS, corpus=None):
    """Cross-check completeness of P(K^op) against the left conjugates of a corpus."""
    comp = completeness_check(k.opposite(), bounds)
    if corpus is None:
        objs = list(k.objects()) if k.is_finite else list(k.objects(bounds.sample))
        corpus = [empty_presheaf(k)] + [representable(k, a) for a in objs]
    verdicts = {}
    witness = None
    for f in corpus:
        r = left_conjugate(f, bounds)
        verdicts[f.name] = r.kind
        if r.kind == NOT_SMALL and witness is None:
            witness = {"presheaf": f.name, **(r.verdict.witness or {})}
    not_small = witness is not None
    incomplete = comp.verdict in ("Incomplete", "NotComplete")
    if comp.verdict == "Unknown" or "Unknown" in verdicts.values():
        verdict = "Unknown"
    else:
        verdict = "Consistent" if not_small == incomplete else "Inconsistent"
    return Report("isbell-gate", verdict, witness=witness,
                  details={"completeness": comp.verdict, "conjugates": verdicts}, bounds=bounds)


__all__ = [
    "ConjugateResult", "conjugate_view", "left_conjugate", "right_conjugate", "corepresentable", "unit_morphism",
    "closure", "conjugation_adjunction_check", "downsets", "downset_presheaf", "dedekind_macneille_fixed_points",
    "dm_cuts_oracle", "dm_report", "global_existence_gate", "nonempty_set",
]
