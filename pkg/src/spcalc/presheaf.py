"""Small presheaves as Kan-extension certificates.

A SmallPresheaf stores a finite support B of its ambient K and a restriction
R: B^op -> V.  The presheaf it denotes is Lan R, so

    evaluate(f, a) = coend_{b in B} K(a, b) x R(b)

Elements of an evaluation are representative summands ``(b, w, x)`` with
``w: a -> b`` and ``x`` in ``R(b)``.

Anything with ``ambient``, ``value(a)``, ``act(a, a2, t, y)`` (for ``t: a -> a2``,
mapping ``value(a2) -> value(a)``) and ``referenced`` is a *view*; limits and
conjugates produce views that may or may not be small.
"""

from __future__ import annotations

import itertools

from .base import set_quotient
from .csp import DEFAULT_BUDGET, solve_functional
from .errors import AmbientMismatch, BackendMismatch, InvalidDiagram, UnsupportedBase


def _require_set_like(k):
    if not getattr(k.base, "set_like", False):
        raise UnsupportedBase(f"presheaf computations need a FinSet or Bool2 base, not {k.base.name}")


def sort_key(x):
    return (type(x).__name__, repr(x))


def same_domain(c, d):
    """Index categories agree when they are the same finite table."""
    if c is d:
        return True
    if not (c.is_finite and d.is_finite) or c.base != d.base or c.objects() != d.objects():
        return False
    return all(c.hom(a, b) == d.hom(a, b) for a in c.objects() for b in c.objects())


def same_ambient(*views):
    k = views[0].ambient
    for v in views[1:]:
        if v.ambient is not k:
            raise AmbientMismatch(f"presheaves live on {k.name} and {v.ambient.name}")
    return k


class SmallPresheaf:
    """Lan of ``values``/``action`` along the inclusion of ``support``.

    ``action[(b, b2, u)]`` for ``u: b -> b2`` maps ``values[b2]`` to ``values[b]``.
    Identity actions may be omitted, as may actions forced by a singleton or
    empty carrier.
    """

    def __init__(self, ambient, support, values, action=None, name="P"):
        _require_set_like(ambient)
        self.ambient = ambient
        self.name = name
        base = ambient.base
        sup = []
        for b in support:
            ambient.require(b)
            if b not in sup:
                sup.append(b)
        self.support = tuple(sup)
        self.values = {}
        for b in self.support:
            v = values[b]
            if not base.owns(v):
                if hasattr(v, "backend"):
                    raise BackendMismatch(f"{v.backend} value in a presheaf over {base.name}")
                v = base.obj(v)
            self.values[b] = v
        action = dict(action or {})
        self.action = {}
        for b, b2 in itertools.product(self.support, repeat=2):
            for u in ambient.hom(b, b2).carrier:
                m = action.get((b, b2, u))
                src, tgt = self.values[b2].carrier, self.values[b].carrier
                if m is None:
                    if b == b2 and u == ambient.identity(b):
                        m = {x: x for x in src}
                    elif len(tgt) == 1 or not src:
                        m = {x: tgt[0] for x in src}
                    else:
                        raise InvalidDiagram(f"{name}: no action given for {u!r}: {b!r} -> {b2!r}")
                m = dict(m)
                for x in src:
                    if m.get(x) not in tgt:
                        raise InvalidDiagram(f"{name}: action of {u!r} is not a map into the value at {b!r}")
                self.action[(b, b2, u)] = m
        self._check_functorial()
        self._eval = {}

    @property
    def referenced(self):
        return frozenset(self.support)

    def _check_functorial(self):
        k = self.ambient
        for a, b, c in itertools.product(self.support, repeat=3):
            for f in k.hom(a, b).carrier:
                for g in k.hom(b, c).carrier:
                    gf = k.compose(a, b, c, g, f)
                    for x in self.values[c].carrier:
                        if self.action[(a, b, f)][self.action[(b, c, g)][x]] != self.action[(a, c, gf)][x]:
                            raise InvalidDiagram(f"{self.name}: restriction is not functorial at {g!r} o {f!r}")
        for b in self.support:
            i = k.identity(b)
            if any(self.action[(b, b, i)][x] != x for x in self.values[b].carrier):
                raise InvalidDiagram(f"{self.name}: identity of {b!r} does not act as identity")

    def restrict_act(self, b, b2, u, x):
        return self.action[(b, b2, u)][x]

    def _evaluation(self, a):
        hit = self._eval.get(a)
        if hit is not None:
            return hit
        k = self.ambient
        k.require(a)
        summands = []
        for b in self.support:
            for w in k.hom(a, b).carrier:
                for x in self.values[b].carrier:
                    summands.append((b, w, x))
        pairs = []
        for b, b2 in itertools.product(self.support, repeat=2):
            for u in k.hom(b, b2).carrier:
                act = self.action[(b, b2, u)]
                for w in k.hom(a, b).carrier:
                    uw = k.compose(a, b, b2, u, w)
                    for x in self.values[b2].carrier:
                        pairs.append(((b2, uw, x), (b, w, act[x])))
        reps, classify = set_quotient(summands, pairs, k.base.truncate)
        hit = (k.base.obj(reps), classify)
        self._eval[a] = hit
        return hit

    def value(self, a):
        return self._evaluation(a)[0]

    def inject(self, a, b, w, x):
        """The element of ``self(a)`` named by ``w: a -> b`` and ``x`` in ``R(b)``."""
        return self._evaluation(a)[1][(b, w, x)]

    def act(self, a, a2, t, y):
        b, w, x = y
        return self.inject(a, b, self.ambient.compose(a, a2, b, w, t), x)

    def structure(self):
        acts = tuple(
            (key, tuple(sorted(m.items(), key=sort_key)))
            for key, m in sorted(self.action.items(), key=sort_key)
        )
        return (
            self.ambient.name, self.support,
            tuple((b, self.values[b].carrier) for b in self.support), acts,
        )

    def __repr__(self):
        return f"<SmallPresheaf {self.name} on {self.ambient.name} support={list(self.support)}>"


class PointwisePresheaf:
    """A view given by value and action callables; values are memoized."""

    def __init__(self, ambient, value_fn, act_fn, referenced=None, name="V"):
        self.ambient = ambient
        self._value_fn = value_fn
        self._act_fn = act_fn
        self.referenced = None if referenced is None else frozenset(referenced)
        self.name = name
        self._cache = {}

    def value(self, a):
        v = self._cache.get(a)
        if v is None:
            self.ambient.require(a)
            v = self._value_fn(a)
            self._cache[a] = v
        return v

    def act(self, a, a2, t, y):
        return self._act_fn(a, a2, t, y)

    def __repr__(self):
        return f"<view {self.name} on {self.ambient.name}>"


def evaluate(f, a):
    return f.value(a)


def representable(k, a, name=None):
    k.require(a)
    values = {a: k.hom(a, a)}
    action = {(a, a, u): {x: k.compose(a, a, a, x, u) for x in k.hom(a, a).carrier} for u in k.hom(a, a).carrier}
    return SmallPresheaf(k, [a], values, action, name=name or f"Y({a})")


def empty_presheaf(k, name="0"):
    return SmallPresheaf(k, [], {}, {}, name=name)


# ---------------------------------------------------------------------------
# morphisms


class PresheafMorphism:
    """Components over the source support: ``components[b][x]`` is an element of
    ``target.value(b)`` for ``x`` in the restriction at ``b``."""

    def __init__(self, source, target, components, check=True):
        same_ambient(source, target)
        self.source = source
        self.target = target
        self.components = {b: dict(components[b]) for b in source.support}
        if check:
            self._check()

    def _check(self):
        src, tgt = self.source, self.target
        k = src.ambient
        for b in src.support:
            carrier = tgt.value(b).carrier
            for x in src.values[b].carrier:
                if self.components[b].get(x) not in carrier:
                    raise InvalidDiagram(f"component at {b!r} does not land in the target value")
        for b, b2 in itertools.product(src.support, repeat=2):
            for u in k.hom(b, b2).carrier:
                for x in src.values[b2].carrier:
                    if self.components[b][src.restrict_act(b, b2, u, x)] != tgt.act(b, b2, u, self.components[b2][x]):
                        raise InvalidDiagram(f"morphism is not natural at {u!r}: {b!r} -> {b2!r}")

    def at(self, a, y):
        b, w, x = y
        return self.target.act(a, b, w, self.components[b][x])


class ViewMorphism:
    def __init__(self, source, target, fn):
        self.source = source
        self.target = target
        self._fn = fn

    def at(self, a, y):
        return self._fn(a, y)


def identity_morphism(f):
    if isinstance(f, SmallPresheaf):
        k = f.ambient
        comps = {b: {x: f.inject(b, b, k.identity(b), x) for x in f.values[b].carrier} for b in f.support}
        return PresheafMorphism(f, f, comps, check=False)
    return ViewMorphism(f, f, lambda a, y: y)


def yoneda_arrow(k, a, a2, u, source=None, target=None):
    """Y(u): Y(a) -> Y(a2) for ``u: a -> a2``."""
    src = source or representable(k, a)
    tgt = target or representable(k, a2)
    comps = {a: {x: tgt.inject(a, a2, k.compose(a, a, a2, u, x), k.identity(a2)) for x in k.hom(a, a).carrier}}
    return PresheafMorphism(src, tgt, comps, check=False)


def compose_morphisms(g, f):
    """g o f."""
    if isinstance(f, PresheafMorphism):
        comps = {b: {x: g.at(b, y) for x, y in m.items()} for b, m in f.components.items()}
        return PresheafMorphism(f.source, g.target, comps, check=False)
    return ViewMorphism(f.source, g.target, lambda a, y: g.at(a, f.at(a, y)))


# ---------------------------------------------------------------------------
# homs and isomorphism


def _nat_search(f, g, objs, value_f, act_f, groups=False, budget=DEFAULT_BUDGET, first=False):
    k = f.ambient
    variables = [(b, x) for b in objs for x in value_f(b)]
    domains = {v: g.value(v[0]).carrier for v in variables}
    cons = []
    for b, b2 in itertools.product(objs, repeat=2):
        for u in k.hom(b, b2).carrier:
            for x in value_f(b2):
                cons.append(((b2, x), (b, act_f(b, b2, u, x)), (lambda y, b=b, b2=b2, u=u: g.act(b, b2, u, y))))
    grp = {v: v[0] for v in variables} if groups else None
    sols = solve_functional(variables, domains, cons, groups=grp, budget=budget, first=first)
    return variables, sols


def presheaf_hom(f, g, budget=DEFAULT_BUDGET):
    """PK(f, g) as the end over f's support of [R_f(b), g(b)]."""
    k = same_ambient(f, g)
    variables, sols = _nat_search(
        f, g, f.support, lambda b: f.values[b].carrier, f.restrict_act, budget=budget
    )
    return k.base.obj(tuple(tuple((v, s[v]) for v in variables) for s in sols))


def hom_element_to_morphism(f, g, element):
    comps = {b: {} for b in f.support}
    for (b, x), y in element:
        comps[b][x] = y
    return PresheafMorphism(f, g, comps, check=False)


def morphism_to_hom_element(m):
    f = m.source
    return tuple(((b, x), m.components[b][x]) for b in f.support for x in f.values[b].carrier)


def identity_element(f):
    return morphism_to_hom_element(identity_morphism(f))


def iso_presheaf(f, g, budget=DEFAULT_BUDGET):
    """Decide f = g by searching for a natural bijection on the union of supports.

    Both presheaves are left Kan extensions from that union, so an iso of the
    restrictions extends uniquely.
    """
    k = same_ambient(f, g)
    objs = k.sorted(set(f.support) | set(g.support))
    for b in objs:
        if not k.base.is_iso(f.value(b), g.value(b)):
            return False
    _, sols = _nat_search(
        f, g, objs, lambda b: f.value(b).carrier, f.act, groups=True, budget=budget, first=True
    )
    return bool(sols)


def canonicalize(f, name=None):
    """Replace the restriction by the evaluation on the (sorted, deduplicated)
    support, naming each class by a restriction element it contains."""
    k = f.ambient
    support = k.sorted(f.support)
    labels = {}
    for b in support:
        reps, classify = f._evaluation(b)
        idb = k.identity(b)
        lab = {}
        for x in f.values[b].carrier:
            lab.setdefault(classify[(b, idb, x)], x)
        labels[b] = lab
    values = {b: sorted(labels[b].values(), key=sort_key) for b in support}
    action = {}
    for b, b2 in itertools.product(support, repeat=2):
        for u in k.hom(b, b2).carrier:
            back = {x: r for r, x in labels[b2].items()}
            action[(b, b2, u)] = {x: labels[b][f.act(b, b2, u, back[x])] for x in values[b2]}
    return SmallPresheaf(k, support, values, action, name=name or f.name)


def restrict_to(view, support, name=None):
    """The certificate with restriction ``view|support``."""
    k = view.ambient
    support = list(support)
    values = {b: view.value(b) for b in support}
    action = {}
    for b, b2 in itertools.product(support, repeat=2):
        for u in k.hom(b, b2).carrier:
            action[(b, b2, u)] = {y: view.act(b, b2, u, y) for y in values[b2].carrier}
    return SmallPresheaf(k, support, values, action, name=name or getattr(view, "name", "P"))


# ---------------------------------------------------------------------------
# weights and diagrams


class Weight:
    """A functor ``domain -> V`` (variance "co") or ``domain^op -> V`` ("contra").

    ``action[(c, c2, u)]`` maps ``w(c) -> w(c2)`` for co and ``w(c2) -> w(c)``
    for contra.
    """

    def __init__(self, domain, values, action=None, variance="contra", name="W"):
        if variance not in ("co", "contra"):
            raise ValueError("variance must be 'co' or 'contra'")
        self.domain = domain
        self.variance = variance
        self.name = name
        base = domain.base
        self.values = {c: (v if base.owns(v) else base.obj(v)) for c, v in values.items()}
        for c in domain.objects():
            if c not in self.values:
                raise InvalidDiagram(f"weight {name} has no value at {c!r}")
        action = dict(action or {})
        self.action = {}
        for c, c2 in itertools.product(domain.objects(), repeat=2):
            for u in domain.hom(c, c2).carrier:
                src, tgt = (c, c2) if variance == "co" else (c2, c)
                m = action.get((c, c2, u))
                s, t = self.values[src].carrier, self.values[tgt].carrier
                if m is None:
                    if c == c2 and u == domain.identity(c):
                        m = {x: x for x in s}
                    elif len(t) == 1 or not s:
                        m = {x: t[0] for x in s}
                    else:
                        raise InvalidDiagram(f"weight {name}: no action for {u!r}: {c!r} -> {c2!r}")
                m = dict(m)
                if any(m.get(x) not in t for x in s):
                    raise InvalidDiagram(f"weight {name}: action of {u!r} is not a map")
                self.action[(c, c2, u)] = m
        self._check()

    def act(self, c, c2, u, p):
        return self.action[(c, c2, u)][p]

    def _check(self):
        d = self.domain
        for a, b, c in itertools.product(d.objects(), repeat=3):
            for f in d.hom(a, b).carrier:
                for g in d.hom(b, c).carrier:
                    gf = d.compose(a, b, c, g, f)
                    if self.variance == "co":
                        for p in self.values[a].carrier:
                            if self.act(b, c, g, self.act(a, b, f, p)) != self.act(a, c, gf, p):
                                raise InvalidDiagram(f"weight {self.name} is not functorial")
                    else:
                        for p in self.values[c].carrier:
                            if self.act(a, b, f, self.act(b, c, g, p)) != self.act(a, c, gf, p):
                                raise InvalidDiagram(f"weight {self.name} is not functorial")

    @classmethod
    def unit(cls, domain, variance="contra", name="1"):
        """The conical weight."""
        star = domain.base.unit()
        return cls(domain, {c: star for c in domain.objects()}, variance=variance, name=name)


class PresheafDiagram:
    """A functor from a finite index category into PK, given on objects by
    views and on arrows by morphisms (identities may be omitted)."""

    def __init__(self, domain, objects, arrows=None, name="S"):
        self.domain = domain
        self.name = name
        self.objects = dict(objects)
        objs = list(domain.objects())
        for c in objs:
            if c not in self.objects:
                raise InvalidDiagram(f"diagram {name} has no value at {c!r}")
        self.ambient = same_ambient(*self.objects.values()) if objs else None
        arrows = dict(arrows or {})
        self.arrows = {}
        for c, c2 in itertools.product(objs, repeat=2):
            for u in domain.hom(c, c2).carrier:
                m = arrows.get((c, c2, u))
                if m is None:
                    if c == c2 and u == domain.identity(c):
                        m = identity_morphism(self.objects[c])
                    else:
                        raise InvalidDiagram(f"diagram {name} has no image for {u!r}: {c!r} -> {c2!r}")
                self.arrows[(c, c2, u)] = m

    def __getitem__(self, c):
        return self.objects[c]

    def at(self, c, c2, u, a, y):
        return self.arrows[(c, c2, u)].at(a, y)

    @property
    def referenced(self):
        refs = [v.referenced for v in self.objects.values()]
        if any(r is None for r in refs):
            return None
        return frozenset().union(*refs)


def yoneda_diagram(functor, ambient=None, name="S"):
    """Y o S for a functor ``S: C -> K``; ``functor`` may be an EnrichedFunctor
    or a plain dict on objects when every needed arrow is forced."""
    if isinstance(functor, dict):
        raise TypeError("pass an EnrichedFunctor")
    c, k = functor.source, functor.target
    reps = {}
    objs = {}
    for x in c.objects():
        a = functor(x)
        if a not in reps:
            reps[a] = representable(k, a)
        objs[x] = reps[a]
    arrows = {}
    for x, x2 in itertools.product(c.objects(), repeat=2):
        for u in c.hom(x, x2).carrier:
            a, a2 = functor(x), functor(x2)
            arrows[(x, x2, u)] = yoneda_arrow(k, a, a2, functor.fmap(x, x2, u), reps[a], reps[a2])
    d = PresheafDiagram(c, objs, arrows, name=name)
    if not c.objects():
        d.ambient = ambient or k
    return d


def empty_diagram(k, name="empty"):
    from .category import FiniteCategory

    d = PresheafDiagram(FiniteCategory.empty(k.base), {}, name=name)
    d.ambient = k
    return d


# ---------------------------------------------------------------------------
# colimits


def weighted_colimit(w, diagram, ambient=None, name=None):
    """w * S with w contravariant on the index category.  Always small."""
    if w.variance != "contra":
        raise InvalidDiagram("a colimit weight is contravariant on the index category")
    if not same_domain(w.domain, diagram.domain):
        raise InvalidDiagram("weight and diagram have different domains")
    k = diagram.ambient or ambient
    if k is None:
        raise InvalidDiagram("an empty diagram needs an explicit ambient")
    _require_set_like(k)
    idx = list(w.domain.objects())
    for c in idx:
        if not isinstance(diagram[c], SmallPresheaf):
            raise InvalidDiagram("colimits are taken of small presheaves")
    support = k.sorted(b for c in idx for b in diagram[c].support)
    values, classify = {}, {}
    for b in support:
        summands = [(c, p, y) for c in idx for p in w.values[c].carrier for y in diagram[c].value(b).carrier]
        pairs = []
        for c, c2 in itertools.product(idx, repeat=2):
            for u in w.domain.hom(c, c2).carrier:
                for p in w.values[c2].carrier:
                    q = w.act(c, c2, u, p)
                    for y in diagram[c].value(b).carrier:
                        pairs.append(((c, q, y), (c2, p, diagram.at(c, c2, u, b, y))))
        values[b], classify[b] = set_quotient(summands, pairs, k.base.truncate)
    action = {}
    for b, b2 in itertools.product(support, repeat=2):
        for v in k.hom(b, b2).carrier:
            action[(b, b2, v)] = {r: classify[b][(r[0], r[1], diagram[r[0]].act(b, b2, v, r[2]))] for r in values[b2]}
    result = SmallPresheaf(k, support, values, action, name=name or f"{w.name}*{diagram.name}")
    result.colimit_classes = classify
    return result


def colimit_leg(result, w, diagram, c, p):
    """The map S(c) -> w*S picked out by ``p`` in ``w(c)``."""
    k = result.ambient
    src = diagram[c]
    comps = {
        b: {x: result.inject(b, b, k.identity(b), result.colimit_classes[b][(c, p, src.inject(b, b, k.identity(b), x))])
            for x in src.values[b].carrier}
        for b in src.support
    }
    return PresheafMorphism(src, result, comps, check=False)


def coproduct(presheaves, name=None):
    from .category import FiniteCategory

    presheaves = list(presheaves)
    k = same_ambient(*presheaves) if presheaves else None
    base = presheaves[0].ambient.base if presheaves else None
    idx = FiniteCategory.discrete(base, range(len(presheaves)), name="disc")
    w = Weight.unit(idx, "contra")
    d = PresheafDiagram(idx, dict(enumerate(presheaves)))
    return weighted_colimit(w, d, ambient=k, name=name or "+".join(p.name for p in presheaves))


def base_tensor(g, f, name=None):
    """g (x) f, pointwise on the canonical certificate."""
    k = f.ambient
    if not k.base.owns(g):
        raise BackendMismatch(f"{getattr(g, 'backend', g)} is not an object of {k.base.name}")
    c = canonicalize(f)
    values = {b: k.base.tensor(g, c.values[b]) for b in c.support}
    action = {key: {(p, x): (p, m[x]) for p in g.carrier for x in m} for key, m in c.action.items()}
    return SmallPresheaf(k, c.support, values, action, name=name or f"g.{f.name}")
