"""Enrichment bases: FinSet, the two-element lattice Bool2, and FinPresheaf(G).

Bool2 is modelled as the full subcategory of FinSet on the subsingletons
(false = empty carrier, true = one element).  Products, function sets and
subsets of subsingletons are again subsingletons, so the only operation that
differs from FinSet is the colimit, which is truncated to at most one class.
This keeps one element-level code path for both set-like backends.

FinPresheaf(G) objects are finite presheaves on a finite ordinary category G,
with the pointwise cartesian monoidal structure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

from .csp import DEFAULT_BUDGET, solve_functional, solve_relational
from .errors import BackendMismatch, InvalidDiagram
from .unionfind import UnionFind

STAR = "*"


def _dedupe(items):
    seen = set()
    out = []
    for x in items:
        if x not in seen:
            seen.add(x)
            out.append(x)
    return tuple(out)


@dataclass(frozen=True)
class BaseObject:
    backend: str
    carrier: tuple = ()
    # FinPresheaf payload: ((g, carrier), ...) and (((g, g2, u), ((y, x), ...)), ...)
    # where u: g -> g2 acts from the section at g2 to the section at g.
    sections: tuple = ()
    actions: tuple = ()
    _sec: dict = field(default=None, compare=False, repr=False, hash=False)
    _act: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_sec", dict(self.sections))
        object.__setattr__(self, "_act", {k: dict(v) for k, v in self.actions})

    def __len__(self):
        return len(self.carrier)

    def __iter__(self):
        return iter(self.carrier)

    def __contains__(self, x):
        return x in self.carrier

    @property
    def size(self):
        if self.sections:
            return tuple(len(c) for _, c in self.sections)
        return len(self.carrier)

    def section(self, g):
        return self._sec[g]

    def act(self, g, g2, u, y):
        return self._act[(g, g2, u)][y]


@dataclass(frozen=True)
class BaseMorphism:
    source: BaseObject
    target: BaseObject
    # set-like: ((x, y), ...); FinPresheaf: ((g, ((x, y), ...)), ...)
    table: tuple
    _fn: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if self.source.sections or self.target.sections:
            fn = {g: dict(pairs) for g, pairs in self.table}
        else:
            fn = dict(self.table)
        object.__setattr__(self, "_fn", fn)

    def apply(self, x, g=None):
        if g is None:
            return self._fn[x]
        return self._fn[g][x]

    def __call__(self, x, g=None):
        return self.apply(x, g)


class Universal(NamedTuple):
    """A (co)limit object together with its projections or injections."""

    obj: BaseObject
    legs: dict


@dataclass(frozen=True)
class BaseDiagram:
    """A functor from a finite index category into a base.

    ``arrows`` maps ``(c, c2, u)`` for ``u`` in ``index.hom(c, c2)`` to a
    BaseMorphism ``objects[c] -> objects[c2]``.  Identity arrows may be left
    out.
    """

    objects: dict
    arrows: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Bifunctor:
    """T: d^op (x) d -> V given by its values and its two partial actions.

    ``lmap(u, a, b, c)`` for ``u: a -> b`` is ``T(b, c) -> T(a, c)``;
    ``rmap(c, u, a, b)`` for ``u: a -> b`` is ``T(c, a) -> T(c, b)``.
    """

    value: Callable
    lmap: Callable
    rmap: Callable


def _index_arrows(index):
    objs = list(index.objects())
    for a in objs:
        for b in objs:
            for u in index.hom(a, b).carrier:
                yield a, b, u


# ---------------------------------------------------------------------------
# set-level kernels shared by every backend


def set_quotient(summands, pairs, truncate=False):
    uf = UnionFind(summands)
    for x, y in pairs:
        uf.union(x, y)
    if truncate:
        uf.collapse()
    reps = tuple(uf.representatives())
    classify = {x: uf.find(x) for x in summands}
    return reps, classify


def set_limit(objs, carriers, arrows, budget=DEFAULT_BUDGET):
    """Families (x_c) with fn(x_a) == x_b for every (a, b, fn) in arrows."""
    cons = [(a, b, fn) for a, b, fn in arrows]
    sols = solve_functional(list(objs), {c: carriers[c] for c in objs}, cons, budget=budget)
    return tuple(tuple(s[c] for c in objs) for s in sols)


def set_end(objs, diag, constraints, budget=DEFAULT_BUDGET):
    """Families x_c in diag[c] with left(x_a) == right(x_b) for each
    (a, b, left, right) in constraints; checked as soon as both ends are set."""
    by_var = {}
    position = {c: i for i, c in enumerate(objs)}
    for a, b, left, right in constraints:
        later = a if position[a] >= position[b] else b
        by_var.setdefault(later, []).append((a, b, left, right))

    def check(asg, v):
        for a, b, left, right in by_var.get(v, ()):
            if left(asg[a]) != right(asg[b]):
                return False
        return True

    sols = solve_relational(list(objs), {c: diag[c] for c in objs}, check, budget=budget)
    return tuple(tuple(s[c] for c in objs) for s in sols)


# ---------------------------------------------------------------------------


class SetBase:
    """FinSet (``truncate=False``) or Bool2 (``truncate=True``)."""

    set_like = True

    def __init__(self, name, truncate):
        self.name = name
        self.truncate = truncate

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, SetBase) and other.name == self.name

    def __hash__(self):
        return hash(self.name)

    # construction

    def obj(self, elements=()):
        carrier = _dedupe(elements)
        if self.truncate and len(carrier) > 1:
            raise ValueError(f"Bool2 objects have at most one element, got {len(carrier)}")
        return BaseObject(self.name, carrier)

    def unit(self):
        return self.obj((STAR,))

    def initial(self):
        return self.obj(())

    terminal = unit

    def truth(self, flag):
        return self.unit() if flag else self.initial()

    def owns(self, x):
        return isinstance(x, BaseObject) and x.backend == self.name

    def morphism(self, source, target, mapping):
        table = tuple((x, mapping[x]) for x in source.carrier)
        for _, y in table:
            if y not in target.carrier:
                raise InvalidDiagram(f"map value {y!r} not in target carrier")
        return BaseMorphism(source, target, table)

    def identity(self, x):
        return BaseMorphism(x, x, tuple((e, e) for e in x.carrier))

    def elements(self, x):
        return x.carrier

    # monoidal closed structure

    def tensor(self, x, y):
        return self.obj((a, b) for a in x.carrier for b in y.carrier)

    def hom(self, x, y):
        xs = x.carrier
        return self.obj(tuple(zip(xs, ys)) for ys in itertools.product(y.carrier, repeat=len(xs)))

    def evaluation(self, x, y):
        """[x, y] (x) x -> y."""
        h = self.hom(x, y)
        src = self.tensor(h, x)
        return BaseMorphism(src, y, tuple(((f, a), dict(f)[a]) for f, a in src.carrier))

    # (co)limits

    def _maps(self, index, diagram):
        maps = {}
        for a, b, u in _index_arrows(index):
            m = diagram.arrows.get((a, b, u))
            if m is None:
                if a == b and u == index.identity(a):
                    m = self.identity(diagram.objects[a])
                else:
                    raise InvalidDiagram(f"diagram has no image for arrow {u}: {a} -> {b}")
            maps[(a, b, u)] = m
        return maps

    def _validate(self, index, diagram):
        for c in index.objects():
            x = diagram.objects.get(c)
            if x is None:
                raise InvalidDiagram(f"diagram has no value at {c}")
            if not self.owns(x):
                raise BackendMismatch(f"{x.backend} object in a {self.name} diagram")
        maps = self._maps(index, diagram)
        objs = list(index.objects())
        for c in objs:
            idm = maps[(c, c, index.identity(c))]
            if any(idm.apply(x) != x for x in diagram.objects[c].carrier):
                raise InvalidDiagram(f"identity of {c} does not act as identity")
        for a, b, c in itertools.product(objs, repeat=3):
            for f in index.hom(a, b).carrier:
                for h in index.hom(b, c).carrier:
                    comp = maps[(a, c, index.compose(a, b, c, h, f))]
                    mf, mh = maps[(a, b, f)], maps[(b, c, h)]
                    for x in diagram.objects[a].carrier:
                        if mh.apply(mf.apply(x)) != comp.apply(x):
                            raise InvalidDiagram(f"functoriality fails for {h} o {f} on {a}->{b}->{c}")
        return maps

    def colimit(self, index, diagram):
        maps = self._validate(index, diagram)
        objs = list(index.objects())
        summands = [(c, x) for c in objs for x in diagram.objects[c].carrier]
        pairs = [((a, x), (b, m.apply(x))) for (a, b, _), m in maps.items() for x in diagram.objects[a].carrier]
        reps, classify = set_quotient(summands, pairs, self.truncate)
        obj = self.obj(reps)
        legs = {
            c: BaseMorphism(diagram.objects[c], obj, tuple((x, classify[(c, x)]) for x in diagram.objects[c].carrier))
            for c in objs
        }
        return Universal(obj, legs)

    def limit(self, index, diagram):
        maps = self._validate(index, diagram)
        objs = list(index.objects())
        arrows = [(a, b, m.apply) for (a, b, _), m in maps.items()]
        elems = set_limit(objs, {c: diagram.objects[c].carrier for c in objs}, arrows)
        obj = self.obj(elems)
        legs = {
            c: BaseMorphism(obj, diagram.objects[c], tuple((e, e[i]) for e in elems))
            for i, c in enumerate(objs)
        }
        return Universal(obj, legs)

    # ends and coends

    def end(self, d, t: Bifunctor, budget=DEFAULT_BUDGET):
        objs = list(d.objects())
        diag = {c: t.value(c, c).carrier for c in objs}
        for c in objs:
            if not self.owns(t.value(c, c)):
                raise BackendMismatch("bifunctor lands in another backend")
        constraints = []
        for a, b, u in _index_arrows(d):
            right = t.rmap(a, u, a, b).apply
            left = t.lmap(u, a, b, b).apply
            constraints.append((a, b, right, left))
        return self.obj(set_end(objs, diag, constraints, budget))

    def coend(self, d, t: Bifunctor):
        objs = list(d.objects())
        summands = [(c, x) for c in objs for x in t.value(c, c).carrier]
        pairs = []
        for a, b, u in _index_arrows(d):
            left = t.lmap(u, a, b, a)
            right = t.rmap(b, u, a, b)
            for y in t.value(b, a).carrier:
                pairs.append(((a, left.apply(y)), (b, right.apply(y))))
        reps, _ = set_quotient(summands, pairs, self.truncate)
        return self.obj(reps)

    def is_iso(self, x, y, budget=None):
        if self.truncate:
            return bool(x.carrier) == bool(y.carrier)
        return len(x.carrier) == len(y.carrier)


FINSET = SetBase("FinSet", truncate=False)
BOOL2 = SetBase("Bool2", truncate=True)


class FinPresheafBase:
    """Finite presheaves on a finite ordinary category G, cartesian closed."""

    set_like = False

    def __init__(self, g, name=None, iso_budget=DEFAULT_BUDGET):
        self.g = g
        self.name = f"FinPresheaf({name or getattr(g, 'name', 'G')})"
        self.iso_budget = iso_budget
        self._stages = list(g.objects())
        self._arrows = list(_index_arrows(g))

    def __repr__(self):
        return self.name

    def owns(self, x):
        return isinstance(x, BaseObject) and x.backend == self.name

    def _check(self, *xs):
        for x in xs:
            if not self.owns(x):
                raise BackendMismatch(f"{getattr(x, 'backend', x)!r} is not a {self.name} object")

    def obj(self, sections, actions=None):
        """sections: g -> elements; actions: (g, g2, u) -> {y: x} for u: g -> g2."""
        actions = dict(actions or {})
        secs = tuple((g, _dedupe(sections[g])) for g in self._stages)
        sec = dict(secs)
        acts = []
        for g, g2, u in self._arrows:
            m = actions.get((g, g2, u))
            if m is None:
                if g == g2 and u == self.g.identity(g):
                    m = {y: y for y in sec[g]}
                else:
                    raise InvalidDiagram(f"no action given for {u}: {g} -> {g2}")
            for y in sec[g2]:
                if m.get(y) not in sec[g]:
                    raise InvalidDiagram(f"action of {u} is not total into the section at {g}")
            acts.append(((g, g2, u), tuple((y, m[y]) for y in sec[g2])))
        x = BaseObject(self.name, (), secs, tuple(acts))
        self._validate_functorial(x)
        return x

    def _validate_functorial(self, x):
        gcat = self.g
        for a, b, c in itertools.product(self._stages, repeat=3):
            for f in gcat.hom(a, b).carrier:
                for h in gcat.hom(b, c).carrier:
                    comp = gcat.compose(a, b, c, h, f)
                    for y in x.section(c):
                        if x.act(a, b, f, x.act(b, c, h, y)) != x.act(a, c, comp, y):
                            raise InvalidDiagram(f"presheaf action not functorial at {h} o {f}")

    def _build(self, sections, act_fn):
        actions = {}
        for g, g2, u in self._arrows:
            actions[(g, g2, u)] = {y: act_fn(g, g2, u, y) for y in sections[g2]}
        return self.obj(sections, actions)

    def unit(self):
        return self._build({g: (STAR,) for g in self._stages}, lambda g, g2, u, y: y)

    terminal = unit

    def initial(self):
        return self._build({g: () for g in self._stages}, lambda g, g2, u, y: y)

    def morphism(self, source, target, mapping):
        """mapping: g -> {x: y}; naturality is checked."""
        table = tuple((g, tuple((x, mapping[g][x]) for x in source.section(g))) for g in self._stages)
        m = BaseMorphism(source, target, table)
        for g, g2, u in self._arrows:
            for y in source.section(g2):
                if m.apply(source.act(g, g2, u, y), g) != target.act(g, g2, u, m.apply(y, g2)):
                    raise InvalidDiagram(f"morphism is not natural at {u}: {g} -> {g2}")
        return m

    def identity(self, x):
        return BaseMorphism(x, x, tuple((g, tuple((e, e) for e in x.section(g))) for g in self._stages))

    def elements(self, x):
        """Global elements 1 -> x."""
        return tuple(
            tuple(s[g] for g in self._stages)
            for s in solve_functional(
                self._stages,
                {g: x.section(g) for g in self._stages},
                [(g2, g, (lambda y, g=g, g2=g2, u=u: x.act(g, g2, u, y))) for g, g2, u in self._arrows],
            )
        )

    def tensor(self, x, y):
        self._check(x, y)
        secs = {g: tuple((a, b) for a in x.section(g) for b in y.section(g)) for g in self._stages}
        return self._build(secs, lambda g, g2, u, p: (x.act(g, g2, u, p[0]), y.act(g, g2, u, p[1])))

    def hom(self, x, y):
        """[x, y](g) = Nat(G(-, g) x x, y)."""
        self._check(x, y)
        gcat = self.g
        secs = {}
        for g in self._stages:
            variables = [(h, w, e) for h in self._stages for w in gcat.hom(h, g).carrier for e in x.section(h)]
            domains = {v: y.section(v[0]) for v in variables}
            cons = []
            for h2, h, v in self._arrows:  # v: h2 -> h
                for w in gcat.hom(h, g).carrier:
                    wv = gcat.compose(h2, h, g, w, v)
                    for e in x.section(h):
                        cons.append(((h, w, e), (h2, wv, x.act(h2, h, v, e)), (lambda z, h2=h2, h=h, v=v: y.act(h2, h, v, z))))
            sols = solve_functional(variables, domains, cons)
            secs[g] = tuple(tuple((v, s[v]) for v in variables) for s in sols)

        def act(g, g2, u, phi):
            f = dict(phi)
            return tuple(
                ((h, w, e), f[(h, gcat.compose(h, g, g2, u, w), e)])
                for h in self._stages
                for w in gcat.hom(h, g).carrier
                for e in x.section(h)
            )

        return self._build(secs, act)

    # pointwise (co)limits

    def _stage_maps(self, index, diagram):
        maps = {}
        for a, b, u in _index_arrows(index):
            m = diagram.arrows.get((a, b, u))
            if m is None:
                if a == b and u == index.identity(a):
                    m = self.identity(diagram.objects[a])
                else:
                    raise InvalidDiagram(f"diagram has no image for arrow {u}: {a} -> {b}")
            maps[(a, b, u)] = m
        return maps

    def colimit(self, index, diagram):
        for x in diagram.objects.values():
            self._check(x)
        maps = self._stage_maps(index, diagram)
        objs = list(index.objects())
        classify = {}
        secs = {}
        for g in self._stages:
            summands = [(c, x) for c in objs for x in diagram.objects[c].section(g)]
            pairs = [((a, x), (b, m.apply(x, g))) for (a, b, _), m in maps.items() for x in diagram.objects[a].section(g)]
            secs[g], classify[g] = set_quotient(summands, pairs)
        obj = self._build(secs, lambda g, g2, u, r: classify[g][(r[0], diagram.objects[r[0]].act(g, g2, u, r[1]))])
        legs = {
            c: BaseMorphism(
                diagram.objects[c], obj,
                tuple((g, tuple((x, classify[g][(c, x)]) for x in diagram.objects[c].section(g))) for g in self._stages),
            )
            for c in objs
        }
        return Universal(obj, legs)

    def limit(self, index, diagram):
        for x in diagram.objects.values():
            self._check(x)
        maps = self._stage_maps(index, diagram)
        objs = list(index.objects())
        secs = {}
        for g in self._stages:
            arrows = [(a, b, (lambda x, m=m, g=g: m.apply(x, g))) for (a, b, _), m in maps.items()]
            secs[g] = set_limit(objs, {c: diagram.objects[c].section(g) for c in objs}, arrows)
        obj = self._build(
            secs, lambda g, g2, u, fam: tuple(diagram.objects[c].act(g, g2, u, x) for c, x in zip(objs, fam))
        )
        legs = {
            c: BaseMorphism(obj, diagram.objects[c], tuple((g, tuple((e, e[i]) for e in secs[g])) for g in self._stages))
            for i, c in enumerate(objs)
        }
        return Universal(obj, legs)

    def end(self, d, t: Bifunctor, budget=DEFAULT_BUDGET):
        objs = list(d.objects())
        secs = {}
        for g in self._stages:
            diag = {c: t.value(c, c).section(g) for c in objs}
            constraints = []
            for a, b, u in _index_arrows(d):
                right, left = t.rmap(a, u, a, b), t.lmap(u, a, b, b)
                constraints.append((a, b, (lambda x, m=right, g=g: m.apply(x, g)), (lambda x, m=left, g=g: m.apply(x, g))))
            secs[g] = set_end(objs, diag, constraints, budget)
        return self._build(
            secs, lambda g, g2, u, fam: tuple(t.value(c, c).act(g, g2, u, x) for c, x in zip(objs, fam))
        )

    def coend(self, d, t: Bifunctor):
        objs = list(d.objects())
        secs, classify = {}, {}
        for g in self._stages:
            summands = [(c, x) for c in objs for x in t.value(c, c).section(g)]
            pairs = []
            for a, b, u in _index_arrows(d):
                left, right = t.lmap(u, a, b, a), t.rmap(b, u, a, b)
                for y in t.value(b, a).section(g):
                    pairs.append(((a, left.apply(y, g)), (b, right.apply(y, g))))
            secs[g], classify[g] = set_quotient(summands, pairs)
        return self._build(secs, lambda g, g2, u, r: classify[g][(r[0], t.value(r[0], r[0]).act(g, g2, u, r[1]))])

    def is_iso(self, x, y, budget=None):
        self._check(x, y)
        if x.size != y.size:
            return False
        variables = [(g, e) for g in self._stages for e in x.section(g)]
        domains = {v: y.section(v[0]) for v in variables}
        cons = []
        for g, g2, u in self._arrows:
            for e in x.section(g2):
                cons.append(((g2, e), (g, x.act(g, g2, u, e)), (lambda z, g=g, g2=g2, u=u: y.act(g, g2, u, z))))
        groups = {v: v[0] for v in variables}
        sols = solve_functional(variables, domains, cons, groups=groups, budget=budget or self.iso_budget, first=True)
        return bool(sols)


# ---------------------------------------------------------------------------
# operation surface


def _same(base, *xs):
    for x in xs:
        if not base.owns(x):
            raise BackendMismatch(f"{getattr(x, 'backend', type(x).__name__)} object used with base {base.name}")


def tensor_objects(base, x, y):
    _same(base, x, y)
    return base.tensor(x, y)


def hom_object(base, x, y):
    _same(base, x, y)
    return base.hom(x, y)


def finite_colimit(base, index, diagram: BaseDiagram) -> Universal:
    return base.colimit(index, diagram)


def finite_limit(base, index, diagram: BaseDiagram) -> Universal:
    return base.limit(index, diagram)


def end_over_finite(base, d, t: Bifunctor, budget=DEFAULT_BUDGET):
    return base.end(d, t, budget)


def coend_over_finite(base, d, t: Bifunctor):
    return base.coend(d, t)


def iso_check(base, x, y, budget=None):
    _same(base, x, y)
    return base.is_iso(x, y, budget)


def base_by_name(name):
    if name == "FinSet":
        return FINSET
    if name == "Bool2":
        return BOOL2
    raise KeyError(name)
