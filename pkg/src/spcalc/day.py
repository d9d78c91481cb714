"""Promonoidal structures, Day convolution and internal homs on PK.

Structures enter through a MonoidalStructure (P(-; A, B) = Y(A (x) B)) or as
a directed colimit of such (approximately monoidal).  Convolution is

    F (x) G = coend_{A, B} P(-; A, B) x F A x G B

which, F and G being Lan of their restrictions, reduces to a weighted colimit
over the product of their supports.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .base import set_limit
from .category import FiniteCategory, builtin_procedural, full_subcategory, tensor_product_category
from .completeness import Report, completeness_check
from .config import DEFAULT_BOUNDS
from .errors import AmbientMismatch, InvalidMonoidal, NotDirected
from .presheaf import (
    PointwisePresheaf, PresheafDiagram, PresheafMorphism, ViewMorphism, Weight, colimit_leg,
    hom_element_to_morphism, iso_presheaf, presheaf_hom, representable, weighted_colimit, yoneda_arrow,
)
from .serial import jsonable
from .smallness import NOT_SMALL, SMALL, UNKNOWN, certify, pointwise_limit


class MonoidalStructure:
    """A tensor on K with an optional unit.

    ``tensor_arr(a, a2, u, b, b2, v)`` gives ``u (x) v: a(x)b -> a2(x)b2``; it may
    be omitted when the needed homs are singletons.  ``referenced`` lists the
    objects the tensor singles out (None if unknown), for family decisions.
    """

    def __init__(self, k, tensor_obj, tensor_arr=None, unit=None, name="m", referenced=()):
        self.k = k
        self.name = name
        self._obj = tensor_obj
        self._arr = tensor_arr
        self.unit = unit
        self.referenced = None if referenced is None else frozenset(referenced)
        self._cache = {}

    def tensor(self, a, b):
        key = (a, b)
        if key not in self._cache:
            self._cache[key] = self._obj(a, b)
        return self._cache[key]

    def tensor_arrow(self, a, a2, u, b, b2, v):
        k = self.k
        if self._arr is not None:
            return self._arr(a, a2, u, b, b2, v)
        if a == a2 and b == b2 and u == k.identity(a) and v == k.identity(b):
            return k.identity(self.tensor(a, b))
        h = k.hom(self.tensor(a, b), self.tensor(a2, b2)).carrier
        if len(h) != 1:
            raise InvalidMonoidal(f"{self.name}: no arrow given for {u!r} (x) {v!r}")
        return h[0]

    def probe_objects(self, bounds=DEFAULT_BOUNDS):
        k = self.k
        return list(k.objects()) if k.is_finite else list(k.objects(bounds.sample))

    def validate(self, bounds=DEFAULT_BOUNDS):
        """Failures of functoriality, strict associativity and unit laws on probes."""
        k = self.k
        objs = self.probe_objects(bounds)
        failures = []
        for a, b in itertools.product(objs, repeat=2):
            if not k.has_object(self.tensor(a, b)):
                failures.append(f"{a!r} (x) {b!r} is not an object")
                return failures
        for a, b, c in itertools.product(objs, repeat=3):
            left, right = self.tensor(self.tensor(a, b), c), self.tensor(a, self.tensor(b, c))
            if left != right:
                failures.append(f"associativity fails at ({a!r}, {b!r}, {c!r}): {left!r} != {right!r}")
        if self.unit is not None:
            for a in objs:
                if self.tensor(self.unit, a) != a or self.tensor(a, self.unit) != a:
                    failures.append(f"unit law fails at {a!r}")
        for a, a2, b, b2 in itertools.product(objs, repeat=4):
            for u in k.hom(a, a2).carrier:
                for v in k.hom(b, b2).carrier:
                    try:
                        w = self.tensor_arrow(a, a2, u, b, b2, v)
                    except InvalidMonoidal as e:
                        failures.append(str(e))
                        continue
                    if w not in k.hom(self.tensor(a, b), self.tensor(a2, b2)).carrier:
                        failures.append(f"{u!r} (x) {v!r} is not an arrow")
        for a, a2, a3, b, b2, b3 in itertools.product(objs, repeat=6) if k.is_finite and len(objs) <= 3 else ():
            for u, u2 in itertools.product(k.hom(a, a2).carrier, k.hom(a2, a3).carrier):
                for v, v2 in itertools.product(k.hom(b, b2).carrier, k.hom(b2, b3).carrier):
                    lhs = self.tensor_arrow(a, a3, k.compose(a, a2, a3, u2, u), b, b3, k.compose(b, b2, b3, v2, v))
                    rhs = k.compose(self.tensor(a, b), self.tensor(a2, b2), self.tensor(a3, b3),
                                    self.tensor_arrow(a2, a3, u2, b2, b3, v2), self.tensor_arrow(a, a2, u, b, b2, v))
                    if lhs != rhs:
                        failures.append(f"tensor is not functorial at ({u!r}, {v!r}), ({u2!r}, {v2!r})")
        return failures


# built-in structures


def xor_structure(base=None):
    """The discrete category {0, 1} with addition mod 2."""
    from .base import FINSET

    k = FiniteCategory.discrete(base or FINSET, [0, 1], name="Z2")
    return MonoidalStructure(k, lambda a, b: a ^ b, unit=0, name="xor")


def max_structure(k=None, base=None):
    """max on op(OmegaChain), unit 0."""
    from .base import FINSET

    k = k or builtin_procedural("OmegaChain", base or FINSET).opposite()
    return MonoidalStructure(k, max, unit=0, name="max")


def min_structure(k=None, base=None):
    """min on DiscreteNat; it has no unit."""
    from .base import FINSET

    k = k or builtin_procedural("DiscreteNat", base or FINSET)
    return MonoidalStructure(k, min, unit=None, name="min")


def monoid_structure(k, name="monoid"):
    """The one-object category of a commutative monoid, tensored by multiplication."""
    (obj,) = k.objects()
    return MonoidalStructure(k, lambda a, b: obj, lambda a, a2, u, b, b2, v: k.compose(obj, obj, obj, u, v),
                             unit=obj, name=name)


def meet_structure(k, meet, top=None, name="meet"):
    return MonoidalStructure(k, meet, unit=top, name=name)


# ---------------------------------------------------------------------------


class Promonoidal:
    """P(-; A, B) as small presheaves with their actions, and the unit J."""

    def __init__(self, k, p_obj, p_arrow, unit=None, structures=(), name="P"):
        self.k = k
        self._p_obj = p_obj
        self._p_arrow = p_arrow
        self.unit = unit
        self.structures = tuple(structures)
        self.name = name
        self._cache = {}

    def p(self, a, b):
        key = (a, b)
        if key not in self._cache:
            self._cache[key] = self._p_obj(a, b)
        return self._cache[key]

    def p_arrow(self, a, a2, u, b, b2, v):
        """P(-; u, v): P(-; a, b) -> P(-; a2, b2)."""
        return self._p_arrow(a, a2, u, b, b2, v)

    def referenced(self):
        refs = [m.referenced for m in self.structures]
        if any(r is None for r in refs):
            return None
        out = frozenset().union(*refs) if refs else frozenset()
        for m in self.structures:
            if m.unit is not None:
                out |= {m.unit}
        return out


def from_monoidal(m, validate=True, bounds=DEFAULT_BOUNDS):
    if validate:
        failures = m.validate(bounds)
        if failures:
            raise InvalidMonoidal(f"{m.name}: {failures[0]}")
    k = m.k
    reps = {}

    def rep(c):
        if c not in reps:
            reps[c] = representable(k, c)
        return reps[c]

    def p_obj(a, b):
        return rep(m.tensor(a, b))

    def p_arrow(a, a2, u, b, b2, v):
        c, c2 = m.tensor(a, b), m.tensor(a2, b2)
        return yoneda_arrow(k, c, c2, m.tensor_arrow(a, a2, u, b, b2, v), rep(c), rep(c2))

    unit = rep(m.unit) if m.unit is not None else None
    return Promonoidal(k, p_obj, p_arrow, unit, structures=[m], name=f"Y({m.name})")


# ---------------------------------------------------------------------------


def convolve(f, g, p, name=None):
    k = p.k
    if f.ambient is not k or g.ambient is not k:
        raise AmbientMismatch("convolution of presheaves on another ambient")
    sub_f, _ = full_subcategory(k, f.support, name="BF")
    sub_g, _ = full_subcategory(k, g.support, name="BG")
    dom = tensor_product_category(sub_f, sub_g, name="BFxBG")
    values = {(a, b): k.base.tensor(f.values[a], g.values[b]) for a, b in dom.objects()}
    action, arrows = {}, {}
    for (a, b), (a2, b2) in itertools.product(dom.objects(), repeat=2):
        for u, v in dom.hom((a, b), (a2, b2)).carrier:
            action[((a, b), (a2, b2), (u, v))] = {
                (x, y): (f.restrict_act(a, a2, u, x), g.restrict_act(b, b2, v, y)) for x, y in values[(a2, b2)].carrier
            }
            arrows[((a, b), (a2, b2), (u, v))] = p.p_arrow(a, a2, u, b, b2, v)
    w = Weight(dom, values, action, variance="contra", name=f"{f.name}x{g.name}")
    d = PresheafDiagram(dom, {(a, b): p.p(a, b) for a, b in dom.objects()}, arrows, name=p.name)
    return weighted_colimit(w, d, ambient=k, name=name or f"{f.name}(x){g.name}")


def _precompose(phi, x_src, x_tgt, h, m, s_support):
    """phi: x_tgt -> h as a hom element, m: x_src -> x_tgt; returns phi . m."""
    pm = hom_element_to_morphism(x_tgt, h, phi)
    return tuple(((s, e), pm.at(s, m.components[s][e])) for s in s_support for e in x_src.values[s].carrier)


def _exponent_view(p, h, b, side, budget):
    """E_b(a) = PK(P(-; a, b), H) for side "right", PK(P(-; b, a), H) for "left"."""
    k = p.k

    def pab(a):
        return p.p(a, b) if side == "right" else p.p(b, a)

    def value(a):
        return presheaf_hom(pab(a), h, budget)

    def act(a, a2, t, phi):
        if side == "right":
            m = p.p_arrow(a, a2, t, b, b, k.identity(b))
        else:
            m = p.p_arrow(b, b, k.identity(b), a, a2, t)
        src = pab(a)
        return _precompose(phi, src, pab(a2), h, m, src.support)

    refs = p.referenced()
    refs = None if refs is None or h.referenced is None else refs | h.referenced | {b}
    return PointwisePresheaf(k, value, act, referenced=refs, name=f"E_{b}")


@dataclass
class InternalHomResult:
    kind: str
    presheaf: object = None
    verdict: object = None
    witness: dict | None = None
    components: dict = field(default_factory=dict)

    def to_json(self):
        out = {"verdict": self.kind}
        if self.verdict is not None:
            out["limit"] = self.verdict.to_json()
        if self.witness is not None:
            out["witness"] = jsonable(self.witness)
        out["components"] = {str(b): v.kind for b, v in self.components.items()}
        return out


def _internal_hom(g, h, p, bounds, side):
    k = p.k
    if g.ambient is not k or h.ambient is not k:
        raise AmbientMismatch("internal hom of presheaves on another ambient")
    views, verdicts = {}, {}
    for b in g.support:
        views[b] = _exponent_view(p, h, b, side, bounds.iso_budget)
        v = certify(views[b], bounds)
        verdicts[b] = v
        if v.kind != SMALL:
            return InternalHomResult(v.kind, verdict=v, witness={"object": b, **(v.witness or {})}, components=verdicts)
    sub, _ = full_subcategory(k, g.support, name="BG")
    dom = sub.opposite()
    w = Weight(dom, {b: g.values[b] for b in g.support},
               {(b2, b, u): {x: g.restrict_act(b, b2, u, x) for x in g.values[b2].carrier}
                for b, b2 in itertools.product(g.support, repeat=2) for u in k.hom(b, b2).carrier},
               variance="co", name=g.name)
    arrows = {}
    for b, b2 in itertools.product(g.support, repeat=2):
        for u in k.hom(b, b2).carrier:
            # u: b -> b2 in K is an arrow b2 -> b of the opposite; E_{b2} -> E_b
            def fn(a, phi, b=b, b2=b2, u=u):
                if side == "right":
                    m = p.p_arrow(a, a, k.identity(a), b, b2, u)
                else:
                    m = p.p_arrow(b, b2, u, a, a, k.identity(a))
                src = p.p(a, b) if side == "right" else p.p(b, a)
                tgt = p.p(a, b2) if side == "right" else p.p(b2, a)
                return _precompose(phi, src, tgt, h, m, src.support)
            arrows[(b2, b, u)] = ViewMorphism(views[b2], views[b], fn)
    d = PresheafDiagram(dom, views, arrows, name="E")
    res = pointwise_limit(w, d, bounds, ambient=k, name=f"[{g.name},{h.name}]")
    if not res.verdict.small:
        return InternalHomResult(res.verdict.kind, verdict=res.verdict, witness=res.verdict.witness, components=verdicts)
    return InternalHomResult(SMALL, res.verdict.certificate, res.verdict, components=verdicts)


def internal_hom_right(g, h, p, bounds=DEFAULT_BOUNDS):
    """[G, H] with PK(F (x) G, H) = PK(F, [G, H])."""
    return _internal_hom(g, h, p, bounds, "right")


def internal_hom_left(g, h, p, bounds=DEFAULT_BOUNDS):
    """The hom with PK(G (x) F, H) = PK(F, [G, H]_l)."""
    return _internal_hom(g, h, p, bounds, "left")


# ---------------------------------------------------------------------------


def _criterion_view(m, b, d, side):
    """K(- (x) B, D) or K(B (x) -, D)."""
    k = m.k

    def value(a):
        return k.hom(m.tensor(a, b) if side == "right" else m.tensor(b, a), d)

    def act(a, a2, t, w):
        if side == "right":
            arr = m.tensor_arrow(a, a2, t, b, b, k.identity(b))
            return k.compose(m.tensor(a, b), m.tensor(a2, b), d, w, arr)
        arr = m.tensor_arrow(b, b, k.identity(b), a, a2, t)
        return k.compose(m.tensor(b, a), m.tensor(b, a2), d, w, arr)

    refs = None if m.referenced is None else m.referenced | {b, d} | ({m.unit} if m.unit is not None else set())
    label = f"K(-(x){b},{d})" if side == "right" else f"K({b}(x)-,{d})"
    return PointwisePresheaf(k, value, act, referenced=refs, name=label)


def closedness_check(structures, bounds=DEFAULT_BOUNDS):
    """Is PK closed under convolution?  Checks smallness of K(- (x)_i B, D)
    and K(B (x)_i -, D) for probed B, D and each structure."""
    if isinstance(structures, MonoidalStructure):
        structures = [structures]
    elif isinstance(structures, ApproximatelyMonoidal):
        structures = list(structures.structures)
    k = structures[0].k
    premise = completeness_check(k, bounds)
    objs = structures[0].probe_objects(bounds)
    unknown = None
    checked = 0
    for m in structures:
        for b, d in itertools.product(objs, repeat=2):
            for side in ("right", "left"):
                checked += 1
                v = certify(_criterion_view(m, b, d, side), bounds)
                if v.kind == NOT_SMALL:
                    return Report("closed", "ConditionFails", witness={
                        "B": b, "D": d, "structure": m.name, "side": side, **(v.witness or {})},
                        details={"premise_complete": premise.verdict, "checked": checked}, bounds=bounds)
                if v.kind == UNKNOWN and unknown is None:
                    unknown = {"B": b, "D": d, "structure": m.name, "side": side}
    if unknown is not None:
        return Report("closed", "Unknown", witness=unknown,
                      details={"premise_complete": premise.verdict, "checked": checked}, bounds=bounds)
    return Report("closed", "Closed" if k.is_finite else "Closed-on-probes",
                  details={"premise_complete": premise.verdict, "checked": checked}, bounds=bounds)


def coherence_spot_check(p, corpus, bounds=DEFAULT_BOUNDS):
    """Associativity and unit laws of convolution, up to iso, on a corpus."""
    failures = []
    corpus = list(corpus)
    for f, g, h in itertools.product(corpus, repeat=3):
        left = convolve(convolve(f, g, p), h, p)
        right = convolve(f, convolve(g, h, p), p)
        if not iso_presheaf(left, right, bounds.iso_budget):
            failures.append({"law": "associativity", "triple": [f.name, g.name, h.name]})
            break
    if p.unit is not None:
        for f in corpus:
            if not iso_presheaf(convolve(p.unit, f, p), f, bounds.iso_budget):
                failures.append({"law": "left unit", "presheaf": f.name})
            if not iso_presheaf(convolve(f, p.unit, p), f, bounds.iso_budget):
                failures.append({"law": "right unit", "presheaf": f.name})
    return Report("coherence", "Coherent-on-corpus" if not failures else "Fails",
                  witness=failures[0] if failures else None,
                  details={"corpus": len(corpus), "failures": failures}, bounds=bounds)


def tensor_hom_adjunction(f, g, h, p, bounds=DEFAULT_BOUNDS):
    """PK(F (x) G, H) = PK(F, [G, H]) as base objects; None when [G, H] is not small."""
    r = internal_hom_right(g, h, p, bounds)
    if r.kind != SMALL:
        return None
    left = presheaf_hom(convolve(f, g, p), h, bounds.iso_budget)
    right = presheaf_hom(f, r.presheaf, bounds.iso_budget)
    return p.k.base.is_iso(left, right)


# ---------------------------------------------------------------------------


class ApproximatelyMonoidal:
    """A finite directed family of monoidal structures on one K.

    ``index`` is a thin finite category; ``comparison(i, j, a, b)`` is the
    arrow ``a (x)_i b -> a (x)_j b`` for ``i <= j`` (inferred when unique).
    """

    def __init__(self, index, structures, comparison=None, name="approx"):
        self.index = index
        self.structures = list(structures)
        self.k = self.structures[0].k
        self._comparison = comparison
        self.name = name
        objs = list(index.objects())
        if len(objs) != len(self.structures):
            raise NotDirected("one structure per index object is needed")
        for i, j in itertools.product(objs, repeat=2):
            if not any(index.hom(i, t).carrier and index.hom(j, t).carrier for t in objs):
                raise NotDirected(f"indices {i!r} and {j!r} have no common upper bound")
        self._by_index = dict(zip(objs, self.structures))

    def structure(self, i):
        return self._by_index[i]

    def comparison(self, i, j, a, b):
        if self._comparison is not None:
            return self._comparison(i, j, a, b)
        k = self.k
        src, tgt = self.structure(i).tensor(a, b), self.structure(j).tensor(a, b)
        if i == j:
            return k.identity(src)
        h = k.hom(src, tgt).carrier
        if len(h) != 1:
            raise InvalidMonoidal(f"no comparison arrow {src!r} -> {tgt!r}")
        return h[0]


def approximate_colimit(fam):
    """P(-; A, B) = colim_i Y(A (x)_i B)."""
    k, idx = fam.k, fam.index
    w = Weight.unit(idx, "contra")
    objs = list(idx.objects())
    reps = {}

    def rep(c):
        if c not in reps:
            reps[c] = representable(k, c)
        return reps[c]

    diagrams = {}

    def diagram(a, b):
        key = (a, b)
        if key not in diagrams:
            tens = {i: fam.structure(i).tensor(a, b) for i in objs}
            arrows = {}
            for i, j in itertools.product(objs, repeat=2):
                for u in idx.hom(i, j).carrier:
                    arrows[(i, j, u)] = yoneda_arrow(k, tens[i], tens[j], fam.comparison(i, j, a, b),
                                                     rep(tens[i]), rep(tens[j]))
            diagrams[key] = PresheafDiagram(idx, {i: rep(tens[i]) for i in objs}, arrows)
        return diagrams[key]

    def p_obj(a, b):
        return weighted_colimit(w, diagram(a, b), ambient=k, name=f"P(-;{a},{b})")

    promon = None

    def p_arrow(a, a2, u, b, b2, v):
        src, tgt = promon.p(a, b), promon.p(a2, b2)
        d_src, d_tgt = diagram(a, b), diagram(a2, b2)
        legs = {}
        comps = {}
        for s in src.support:
            comps[s] = {}
            for x in src.values[s].carrier:
                i, q, y = x
                m = fam.structure(i)
                arr = yoneda_arrow(k, m.tensor(a, b), m.tensor(a2, b2), m.tensor_arrow(a, a2, u, b, b2, v),
                                   d_src[i], d_tgt[i])
                leg = legs.get(i)
                if leg is None:
                    leg = legs[i] = colimit_leg(tgt, w, d_tgt, i, q)
                comps[s][x] = leg.at(s, arr.at(s, y))
        return PresheafMorphism(src, tgt, comps, check=False)

    units = [m.unit for m in fam.structures]
    unit = None
    if all(u is not None for u in units):
        arrows = {}
        compatible = True
        for i, j in itertools.product(objs, repeat=2):
            for u in idx.hom(i, j).carrier:
                h = k.hom(units[objs.index(i)], units[objs.index(j)]).carrier
                if len(h) != 1:
                    compatible = False
                    break
                arrows[(i, j, u)] = yoneda_arrow(k, units[objs.index(i)], units[objs.index(j)], h[0])
        if compatible:
            unit = weighted_colimit(w, PresheafDiagram(idx, {i: rep(units[n]) for n, i in enumerate(objs)}, arrows),
                                    ambient=k, name="J")
    promon = Promonoidal(k, p_obj, p_arrow, unit, structures=fam.structures, name=f"colim({fam.name})")
    return promon


def ihom_matches_limit(fam, p, h, b, bounds=DEFAULT_BOUNDS):
    """The approximate simplification: PK(P(-; a, B), H) = lim_i H(a (x)_i B), checked by size on probes."""
    k = fam.k
    objs = list(k.objects()) if k.is_finite else list(k.objects(bounds.sample))
    idx = list(fam.index.objects())
    for a in objs:
        lhs = presheaf_hom(p.p(a, b), h, bounds.iso_budget)
        parts = {i: h.value(fam.structure(i).tensor(a, b)).carrier for i in idx}
        cons = []
        for i, j in itertools.product(idx, repeat=2):
            for u in fam.index.hom(i, j).carrier:
                src, tgt = fam.structure(i).tensor(a, b), fam.structure(j).tensor(a, b)
                c = fam.comparison(i, j, a, b)
                # H is contravariant: H(tgt) -> H(src)
                cons.append((j, i, (lambda y, src=src, tgt=tgt, c=c: h.act(src, tgt, c, y))))
        rhs = set_limit(idx, parts, cons)
        if not k.base.is_iso(lhs, k.base.obj(rhs)):
            return False
    return True


__all__ = [
    "MonoidalStructure", "Promonoidal", "ApproximatelyMonoidal", "from_monoidal", "convolve",
    "internal_hom_right", "internal_hom_left", "closedness_check", "coherence_spot_check",
    "approximate_colimit", "tensor_hom_adjunction", "xor_structure", "max_structure", "min_structure",
    "monoid_structure", "meet_structure", "ihom_matches_limit",
]
