"""Enriched categories over the set-like bases, functors and natural transformations.

Arrows are elements of hom carriers.  ``compose(a, b, c, g, f)`` is ``g o f``
for ``f: a -> b`` and ``g: b -> c``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

from .base import FINSET, STAR, BaseMorphism
from .errors import BackendMismatch, UnknownFamily, UnknownObject

DEFAULT_PROBES = 16


@dataclass
class ValidationReport:
    failures: list = field(default_factory=list)
    probe_bound: int | None = None

    @property
    def ok(self):
        return not self.failures

    def __bool__(self):
        return self.ok


class EnrichedCategory:
    base = FINSET
    name = "K"
    family: str | None = None
    is_finite = True

    def objects(self, limit=None):
        raise NotImplementedError

    def has_object(self, a):
        raise NotImplementedError

    def position(self, a):
        raise NotImplementedError

    def hom(self, a, b):
        raise NotImplementedError

    def compose(self, a, b, c, g, f):
        raise NotImplementedError

    def identity(self, a):
        raise NotImplementedError

    def opposite(self):
        raise NotImplementedError

    def require(self, a):
        if not self.has_object(a):
            raise UnknownObject(f"{a!r} is not an object of {self.name}")
        return a

    def sorted(self, objs):
        return sorted(set(objs), key=self.position)

    def hom_nonempty(self, a, b):
        return bool(self.hom(a, b).carrier)

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


class FiniteCategory(EnrichedCategory):
    """A finite-explicit V-category given by composition tables."""

    is_finite = True

    def __init__(self, base, objects, homs, composition, identities, name="K"):
        self.base = base
        self.name = name
        self._objects = tuple(objects)
        self._pos = {a: i for i, a in enumerate(self._objects)}
        if len(self._pos) != len(self._objects):
            raise ValueError("duplicate object names")
        self._homs = {}
        for a in self._objects:
            for b in self._objects:
                self._homs[(a, b)] = base.obj(homs.get((a, b), ()))
        self._identities = dict(identities)
        self._composition = dict(composition)
        self._op = None

    def objects(self, limit=None):
        return self._objects if limit is None else self._objects[:limit]

    def has_object(self, a):
        try:
            return a in self._pos
        except TypeError:
            return False

    def position(self, a):
        return self._pos[a]

    def hom(self, a, b):
        try:
            return self._homs[(a, b)]
        except KeyError:
            raise UnknownObject(f"({a!r}, {b!r}) are not objects of {self.name}") from None

    def identity(self, a):
        return self._identities[a]

    def compose(self, a, b, c, g, f):
        if f == self._identities.get(a) and a == b:
            return g
        if g == self._identities.get(b) and b == c:
            return f
        key = (a, b, c, g, f)
        if key in self._composition:
            return self._composition[key]
        raise KeyError(f"no composite recorded for {g} o {f} on {a}->{b}->{c}")

    def composition_table(self):
        table = {}
        for a, b, c in itertools.product(self._objects, repeat=3):
            for f in self._homs[(a, b)].carrier:
                for g in self._homs[(b, c)].carrier:
                    try:
                        table[(a, b, c, g, f)] = self.compose(a, b, c, g, f)
                    except KeyError:
                        pass
        return table

    def structure(self):
        return (
            self.base.name,
            self._objects,
            tuple((k, v.carrier) for k, v in sorted(self._homs.items(), key=lambda kv: (self._pos[kv[0][0]], self._pos[kv[0][1]]))),
            tuple(sorted(self.composition_table().items(), key=repr)),
            tuple((a, self._identities.get(a)) for a in self._objects),
        )

    def opposite(self):
        if self._op is None:
            homs = {(b, a): h.carrier for (a, b), h in self._homs.items()}
            comp = {(c, b, a, f, g): h for (a, b, c, g, f), h in self.composition_table().items()}
            op = FiniteCategory(self.base, self._objects, homs, comp, self._identities, name=op_name(self.name))
            op._op = self
            self._op = op
        return self._op

    # convenient constructors

    @classmethod
    def from_preorder(cls, base, elements, leq, name="P"):
        """Thin category: hom(a, b) = {*} iff leq(a, b)."""
        elements = tuple(elements)
        homs = {(a, b): (STAR,) for a in elements for b in elements if leq(a, b)}
        comp = {(a, b, c, STAR, STAR): STAR for a in elements for b in elements for c in elements
                if (a, b) in homs and (b, c) in homs}
        return cls(base, elements, homs, comp, {a: STAR for a in elements}, name=name)

    @classmethod
    def discrete(cls, base, elements, name="D"):
        return cls.from_preorder(base, elements, lambda a, b: a == b, name=name)

    @classmethod
    def chain(cls, base, n, name=None):
        return cls.from_preorder(base, range(n), lambda a, b: a <= b, name=name or f"chain{n}")

    @classmethod
    def terminal(cls, base=FINSET, name="1"):
        return cls.discrete(base, [STAR], name=name)

    @classmethod
    def empty(cls, base=FINSET, name="0"):
        return cls(base, (), {}, {}, {}, name=name)

    @classmethod
    def from_monoid(cls, base, elements, mult, unit, obj=STAR, name="M"):
        """One-object category; composite g o f is ``mult(g, f)``."""
        elements = tuple(elements)
        comp = {(obj, obj, obj, g, f): mult(g, f) for g in elements for f in elements}
        return cls(base, (obj,), {(obj, obj): elements}, comp, {obj: unit}, name=name)

    @classmethod
    def arrow(cls, base=FINSET, name="arrow"):
        """0 --f--> 1."""
        return cls(base, (0, 1), {(0, 0): ("id0",), (1, 1): ("id1",), (0, 1): ("f",)}, {},
                   {0: "id0", 1: "id1"}, name=name)


def op_name(name):
    if name.startswith("op(") and name.endswith(")"):
        return name[3:-1]
    return f"op({name})"


class ProceduralCategory(EnrichedCategory):
    """An infinite V-category with a monotone object enumerator and hom oracles."""

    is_finite = False

    def __init__(self, base, family, enumerate_fn, position_fn, hom_fn, compose_fn, identity_fn,
                 name=None, probe_bound=DEFAULT_PROBES):
        self.base = base
        self.family = family
        self.name = name or family
        self._enumerate = enumerate_fn
        self._position = position_fn
        self._hom_fn = hom_fn
        self._compose = compose_fn
        self._identity = identity_fn
        self.probe_bound = probe_bound
        self._hom_cache = {}
        self._op = None

    def objects(self, limit=None):
        n = self.probe_bound if limit is None else limit
        return tuple(self._enumerate(i) for i in range(n))

    def enumerate(self, i):
        return self._enumerate(i)

    def has_object(self, a):
        try:
            return self._position(a) is not None
        except (TypeError, ValueError):
            return False

    def position(self, a):
        p = self._position(a)
        if p is None:
            raise UnknownObject(f"{a!r} is not an object of {self.name}")
        return p

    def hom(self, a, b):
        key = (a, b)
        h = self._hom_cache.get(key)
        if h is None:
            self.require(a)
            self.require(b)
            h = self.base.obj(self._hom_fn(a, b))
            self._hom_cache[key] = h
        return h

    def compose(self, a, b, c, g, f):
        return self._compose(a, b, c, g, f)

    def identity(self, a):
        return self._identity(a)

    def opposite(self):
        if self._op is None:
            op = ProceduralCategory(
                self.base, op_name(self.family), self._enumerate, self._position,
                lambda a, b: self._hom_fn(b, a),
                lambda a, b, c, g, f: self._compose(c, b, a, f, g),
                self._identity, name=op_name(self.name), probe_bound=self.probe_bound,
            )
            op._op = self
            self._op = op
        return self._op


def _nat_position(a):
    if isinstance(a, bool) or not isinstance(a, int) or a < 0:
        return None
    return a


def _thin_procedural(base, family, leq, name=None, probe_bound=DEFAULT_PROBES):
    return ProceduralCategory(
        base, family, lambda i: i, _nat_position,
        lambda a, b: (STAR,) if leq(a, b) else (),
        lambda a, b, c, g, f: STAR,
        lambda a: STAR,
        name=name, probe_bound=probe_bound,
    )


@dataclass
class FamilyInfo:
    tag: str
    builder: Callable | None = None
    presheaf_decision: Callable | None = None
    cone_decision: Callable | None = None
    skeletal: bool = False


FAMILIES: dict[str, FamilyInfo] = {}


def register_family(tag, builder=None, presheaf_decision=None, cone_decision=None, skeletal=False):
    """Register a procedural family, optionally with decision procedures.

    ``presheaf_decision(view, referenced, bounds)`` and
    ``cone_decision(category, diagram, bounds)`` are the only sources of
    definitive negative verdicts in the engine.
    """
    info = FAMILIES.get(tag) or FamilyInfo(tag)
    if builder is not None:
        info.builder = builder
    if presheaf_decision is not None:
        info.presheaf_decision = presheaf_decision
    if cone_decision is not None:
        info.cone_decision = cone_decision
    info.skeletal = info.skeletal or skeletal
    FAMILIES[tag] = info
    return info


def family_info(tag):
    return FAMILIES.get(tag)


register_family("DiscreteNat", builder=lambda base: _thin_procedural(base, "DiscreteNat", lambda a, b: a == b),
                skeletal=True)
register_family("OmegaChain", builder=lambda base: _thin_procedural(base, "OmegaChain", lambda a, b: a <= b),
                skeletal=True)


def builtin_procedural(tag, base=FINSET):
    info = FAMILIES.get(tag)
    if info is None or info.builder is None:
        raise UnknownFamily(f"no registered procedural family {tag!r}")
    return info.builder(base)


# ---------------------------------------------------------------------------


def validate_category(k, probe=None):
    report = ValidationReport()
    if k.is_finite:
        objs = k.objects()
    else:
        report.probe_bound = probe or getattr(k, "probe_bound", DEFAULT_PROBES)
        objs = k.objects(report.probe_bound)
    for a in objs:
        h = k.hom(a, a)
        if k.identity(a) not in h.carrier:
            report.failures.append(f"identity of {a!r} is not in hom({a!r}, {a!r})")
    for a, b in itertools.product(objs, repeat=2):
        h = k.hom(a, b)
        if not k.base.owns(h):
            report.failures.append(f"hom({a!r}, {b!r}) is not a {k.base.name} object")
        for f in h.carrier:
            try:
                if k.compose(a, b, b, k.identity(b), f) != f or k.compose(a, a, b, f, k.identity(a)) != f:
                    report.failures.append(f"identity law fails for {f!r}: {a!r} -> {b!r}")
            except KeyError as e:
                report.failures.append(str(e))
    for a, b, c in itertools.product(objs, repeat=3):
        for f in k.hom(a, b).carrier:
            for g in k.hom(b, c).carrier:
                try:
                    h = k.compose(a, b, c, g, f)
                except KeyError as e:
                    report.failures.append(str(e))
                    continue
                if h not in k.hom(a, c).carrier:
                    report.failures.append(f"composite {g!r} o {f!r} lies outside hom({a!r}, {c!r})")
    for a, b, c, d in itertools.product(objs, repeat=4):
        for f in k.hom(a, b).carrier:
            for g in k.hom(b, c).carrier:
                for h in k.hom(c, d).carrier:
                    try:
                        left = k.compose(a, c, d, h, k.compose(a, b, c, g, f))
                        right = k.compose(a, b, d, k.compose(b, c, d, h, g), f)
                    except KeyError:
                        continue
                    if left != right:
                        report.failures.append(
                            f"associativity fails at ({a!r}, {b!r}, {c!r}, {d!r}) for ({h!r}, {g!r}, {f!r})")
    return report


def opposite(k):
    return k.opposite()


class _ProductCategory(ProceduralCategory):
    """Lazy tensor product of categories, objects enumerated along diagonals."""

    def __init__(self, k, l):
        if k.is_finite or l.is_finite:
            # one factor is finite: enumerate row by row along the infinite one
            n = len(k.objects()) if k.is_finite else len(l.objects())

            def enum(i):
                if k.is_finite:
                    return (_nth(k, i % n), _nth(l, i // n))
                return (_nth(k, i // n), _nth(l, i % n))

            def pos(p):
                x, y = k.position(p[0]), l.position(p[1])
                return y * n + x if k.is_finite else x * n + y
        else:
            def enum(i):
                s = 0
                while (s + 1) * (s + 2) // 2 <= i:
                    s += 1
                j = i - s * (s + 1) // 2
                return (_nth(k, j), _nth(l, s - j))

            def pos(p):
                x, y = k.position(p[0]), l.position(p[1])
                s = x + y
                return s * (s + 1) // 2 + x

        super().__init__(
            k.base, f"{k.name}(x){l.name}", enum, pos,
            lambda p, q: tuple((u, v) for u in k.hom(p[0], q[0]).carrier for v in l.hom(p[1], q[1]).carrier),
            lambda p, q, r, g, f: (k.compose(p[0], q[0], r[0], g[0], f[0]), l.compose(p[1], q[1], r[1], g[1], f[1])),
            lambda p: (k.identity(p[0]), l.identity(p[1])),
        )
        self.family = None


def _nth(k, i):
    return k.objects()[i] if k.is_finite else k.enumerate(i)


def tensor_product_category(k, l, name=None):
    if k.base != l.base:
        raise BackendMismatch(f"{k.name} is over {k.base.name} but {l.name} is over {l.base.name}")
    if not (k.is_finite and l.is_finite):
        return _ProductCategory(k, l)
    objs = [(a, b) for a in k.objects() for b in l.objects()]
    homs = {}
    for p in objs:
        for q in objs:
            homs[(p, q)] = tuple((u, v) for u in k.hom(p[0], q[0]).carrier for v in l.hom(p[1], q[1]).carrier)
    comp = {}
    for p, q, r in itertools.product(objs, repeat=3):
        for f in homs[(p, q)]:
            for g in homs[(q, r)]:
                comp[(p, q, r, g, f)] = (k.compose(p[0], q[0], r[0], g[0], f[0]),
                                         l.compose(p[1], q[1], r[1], g[1], f[1]))
    ids = {p: (k.identity(p[0]), l.identity(p[1])) for p in objs}
    return FiniteCategory(k.base, objs, homs, comp, ids, name=name or f"{k.name}(x){l.name}")


def structurally_equal(k, l):
    return k.structure() == l.structure()


# ---------------------------------------------------------------------------


class EnrichedFunctor:
    """A V-functor; object and arrow maps are callables or dicts.

    ``referenced`` is the finite set of source objects the functor's behaviour
    depends on, or None when unknown.  Family decision procedures are only
    applied to views whose every ingredient declares it.
    """

    def __init__(self, source, target, on_objects, on_arrows=None, name="F", referenced=frozenset()):
        if source.base != target.base:
            raise BackendMismatch("functor between categories over different bases")
        self.source = source
        self.target = target
        self.name = name
        self._obj = on_objects if callable(on_objects) else dict(on_objects).__getitem__
        if on_arrows is None:
            self._arr = self._unique_arrow
        elif callable(on_arrows):
            self._arr = on_arrows
        else:
            table = dict(on_arrows)
            self._arr = lambda a, b, f: table[(a, b, f)] if (a, b, f) in table else self._unique_arrow(a, b, f)
        self.referenced = None if referenced is None else frozenset(referenced)

    def _unique_arrow(self, a, b, f):
        if a == b and f == self.source.identity(a):
            return self.target.identity(self(a))
        h = self.target.hom(self(a), self(b)).carrier
        if len(h) != 1:
            raise KeyError(f"no image recorded for arrow {f!r}: {a!r} -> {b!r}")
        return h[0]

    def __call__(self, a):
        return self._obj(a)

    def fmap(self, a, b, f):
        return self._arr(a, b, f)

    def hom_morphism(self, a, b):
        src = self.source.hom(a, b)
        tgt = self.target.hom(self(a), self(b))
        return BaseMorphism(src, tgt, tuple((f, self.fmap(a, b, f)) for f in src.carrier))

    def __repr__(self):
        return f"<Functor {self.name}: {self.source.name} -> {self.target.name}>"


def identity_functor(k):
    return EnrichedFunctor(k, k, lambda a: a, lambda a, b, f: f, name=f"id_{k.name}")


def compose_functors(g, f):
    """g o f."""
    ref = None if f.referenced is None or g.referenced is None else f.referenced
    return EnrichedFunctor(
        f.source, g.target, lambda a: g(f(a)), lambda a, b, u: g.fmap(f(a), f(b), f.fmap(a, b, u)),
        name=f"{g.name}.{f.name}", referenced=ref,
    )


def full_subcategory(k, objects, name=None):
    objs = []
    for a in objects:
        k.require(a)
        if a not in objs:
            objs.append(a)
    homs = {(a, b): k.hom(a, b).carrier for a in objs for b in objs}
    comp = {}
    for a, b, c in itertools.product(objs, repeat=3):
        for f in homs[(a, b)]:
            for g in homs[(b, c)]:
                comp[(a, b, c, g, f)] = k.compose(a, b, c, g, f)
    sub = FiniteCategory(k.base, objs, homs, comp, {a: k.identity(a) for a in objs},
                         name=name or f"{k.name}|{{{','.join(map(str, objs))}}}")
    inc = EnrichedFunctor(sub, k, lambda a: a, lambda a, b, f: f, name=f"incl_{sub.name}", referenced=objs)
    return sub, inc


def validate_functor(fun, probe=None):
    report = ValidationReport()
    src, tgt = fun.source, fun.target
    if src.is_finite:
        objs = src.objects()
    else:
        report.probe_bound = probe or getattr(src, "probe_bound", DEFAULT_PROBES)
        objs = src.objects(report.probe_bound)
    for a in objs:
        if not tgt.has_object(fun(a)):
            report.failures.append(f"{fun.name}({a!r}) is not an object of {tgt.name}")
            return report
        if fun.fmap(a, a, src.identity(a)) != tgt.identity(fun(a)):
            report.failures.append(f"{fun.name} does not preserve the identity of {a!r}")
    for a, b in itertools.product(objs, repeat=2):
        for f in src.hom(a, b).carrier:
            try:
                img = fun.fmap(a, b, f)
            except KeyError as e:
                report.failures.append(str(e))
                continue
            if img not in tgt.hom(fun(a), fun(b)).carrier:
                report.failures.append(f"{fun.name}({f!r}) is not an arrow {fun(a)!r} -> {fun(b)!r}")
    for a, b, c in itertools.product(objs, repeat=3):
        for f in src.hom(a, b).carrier:
            for g in src.hom(b, c).carrier:
                try:
                    left = fun.fmap(a, c, src.compose(a, b, c, g, f))
                    right = tgt.compose(fun(a), fun(b), fun(c), fun.fmap(b, c, g), fun.fmap(a, b, f))
                except KeyError as e:
                    report.failures.append(str(e))
                    continue
                if left != right:
                    report.failures.append(f"{fun.name} does not preserve {g!r} o {f!r} on {a!r}->{b!r}->{c!r}")
    return report


@dataclass
class EnrichedNatTrans:
    source: EnrichedFunctor
    target: EnrichedFunctor
    components: dict

    def validate(self, probe=None):
        report = ValidationReport()
        k = self.source.source
        tgt = self.source.target
        objs = k.objects() if k.is_finite else k.objects(probe or DEFAULT_PROBES)
        F, G = self.source, self.target
        for a in objs:
            if self.components[a] not in tgt.hom(F(a), G(a)).carrier:
                report.failures.append(f"component at {a!r} is not an arrow {F(a)!r} -> {G(a)!r}")
        for a, b in itertools.product(objs, repeat=2):
            for f in k.hom(a, b).carrier:
                left = tgt.compose(F(a), F(b), G(b), self.components[b], F.fmap(a, b, f))
                right = tgt.compose(F(a), G(a), G(b), G.fmap(a, b, f), self.components[a])
                if left != right:
                    report.failures.append(f"naturality square for {f!r}: {a!r} -> {b!r} does not commute")
        return report
