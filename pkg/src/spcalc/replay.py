"""Seeded theorem-replay suites.

Each suite generates its cases from the seed, checks an invariant on every
case and reports failures shrunk to a small counterexample.  Payloads carry
no timings, so reruns with the same seed and bounds serialize identically.
``engine`` overrides let a test swap in a deliberately broken operation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .base import FINSET, BaseDiagram, BaseMorphism, Bifunctor, coend_over_finite, end_over_finite, finite_colimit, finite_limit
from .category import EnrichedFunctor, FiniteCategory, builtin_procedural, full_subcategory
from .completeness import completeness_check, shape_diagrams
from .config import DEFAULT_BOUNDS
from .errors import UnknownSuite
from .generators import (
    lattice_family, poset_family, random_category, random_monotone_map, random_presheaf, rng_for,
)
from .presheaf import (
    SmallPresheaf, Weight, empty_diagram, iso_presheaf, presheaf_hom, representable, yoneda_diagram,
)
from .serial import dumps, jsonable
from .smallness import NOT_SMALL, SMALL, pointwise_limit, representably_small_check


@dataclass
class SuiteReport:
    suite: str
    seed: int
    cases: int = 0
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def ok(self):
        return not self.failures

    @property
    def passed(self):
        return self.cases - len(self.failures)

    def to_json(self):
        return {"suite": self.suite, "seed": self.seed, "cases": self.cases, "passed": self.passed,
                "verdict": "Pass" if self.ok else "Fail", "failures": jsonable(self.failures[:5]),
                "details": jsonable(self.details)}

    def payload(self):
        return dumps(self.to_json())


def _shrink(case, candidates, fails, rounds=50):
    """Greedy shrinking: move to any smaller candidate that still fails."""
    for _ in range(rounds):
        for smaller in candidates(case):
            if fails(smaller):
                case = smaller
                break
        else:
            return case
    return case


def _describe_presheaf(f):
    return {"ambient": _describe_category(f.ambient), "support": list(f.support),
            "sizes": [len(f.values[b]) for b in f.support]}


def _describe_category(k):
    if not k.is_finite:
        return k.name
    objs = list(k.objects())
    return {"objects": objs, "homs": {f"{a}->{b}": len(k.hom(a, b)) for a in objs for b in objs if k.hom(a, b).carrier}}


def _sub_presheaf(f, keep):
    """The certificate restricted to the objects in ``keep``, on their full subcategory."""
    sub, _ = full_subcategory(f.ambient, keep, name=f"{f.ambient.name}'")
    support = [b for b in f.support if b in keep]
    action = {(b, b2, u): m for (b, b2, u), m in f.action.items() if b in support and b2 in support}
    return SmallPresheaf(sub, support, {b: f.values[b] for b in support}, action, name=f.name)


# ---------------------------------------------------------------------------
# 1. Yoneda


def suite_yoneda(seed, bounds=DEFAULT_BOUNDS, engine=None, cases=200):
    hom = (engine or {}).get("presheaf_hom", presheaf_hom)
    rng = rng_for(seed)
    report = SuiteReport("yoneda", seed)

    def fails(case):
        f, a = case
        return len(hom(representable(f.ambient, a), f, bounds.iso_budget)) != len(f.value(a))

    def candidates(case):
        f, a = case
        objs = list(f.ambient.objects())
        for b in objs:
            if b != a and len(objs) > 1:
                yield _sub_presheaf(f, [x for x in objs if x != b]), a

    for i in range(cases):
        k = random_category(rng, max_objects=4)
        f = random_presheaf(rng, k, name=f"G{i}")
        a = rng.choice(list(k.objects()))
        report.cases += 1
        if fails((f, a)):
            g, b = _shrink((f, a), candidates, fails)
            report.failures.append({"case": i, "object": b, "presheaf": _describe_presheaf(g)})
    return report


# ---------------------------------------------------------------------------
# 2. coend / end oracles


def _shapes(base=FINSET):
    par = FiniteCategory(base, ("s", "t"), {("s", "s"): ("1s",), ("t", "t"): ("1t",), ("s", "t"): ("f", "g")},
                         {}, {"s": "1s", "t": "1t"}, name="parallel")
    return [
        FiniteCategory.discrete(base, ["x"], name="one"),
        FiniteCategory.discrete(base, ["x", "y"], name="pair"),
        FiniteCategory.discrete(base, ["x", "y", "z"], name="triple"),
        FiniteCategory.arrow(base),
        par,
        FiniteCategory.from_preorder(base, ["x", "y", "z"], lambda a, b: a == b or b == "z", name="cospan"),
        FiniteCategory.from_preorder(base, ["x", "y", "z"], lambda a, b: a == b or a == "z", name="span"),
        FiniteCategory.chain(base, 3),
    ]


def all_diagrams(shape, max_carrier, base=FINSET):
    """Every functor shape -> FinSet with carriers {0..n-1}, n <= max_carrier."""
    objs = list(shape.objects())
    arrows = [(a, b, u) for a in objs for b in objs for u in shape.hom(a, b).carrier
              if not (a == b and u == shape.identity(a))]
    for sizes in itertools.product(range(max_carrier + 1), repeat=len(objs)):
        size = dict(zip(objs, sizes))
        carriers = {c: base.obj(range(size[c])) for c in objs}
        choices = [list(itertools.product(range(size[b]), repeat=size[a])) for a, b, _ in arrows]
        for fns in itertools.product(*choices):
            table = dict(zip(arrows, fns))

            def ap(a, b, u, x, table=table):
                return x if a == b and u == shape.identity(a) else table[(a, b, u)][x]

            ok = all(ap(b, c, g, ap(a, b, f, x)) == ap(a, c, shape.compose(a, b, c, g, f), x)
                     for a, b, c in itertools.product(objs, repeat=3)
                     for f in shape.hom(a, b).carrier for g in shape.hom(b, c).carrier
                     for x in range(size[a]))
            if not ok:
                continue
            morphs = {key: BaseMorphism(carriers[key[0]], carriers[key[1]], tuple(enumerate(fn)))
                      for key, fn in table.items()}
            yield BaseDiagram(carriers, morphs), ap


def _naive_components(nodes, edges):
    """Connected components by repeated merging until nothing changes."""
    blocks = [{n} for n in nodes]
    changed = True
    while changed:
        changed = False
        for x, y in edges:
            bx = next(b for b in blocks if x in b)
            by = next(b for b in blocks if y in b)
            if bx is not by:
                bx |= by
                blocks.remove(by)
                changed = True
    return {frozenset(b) for b in blocks}


def _oracle_colimit(shape, d, ap):
    objs = list(shape.objects())
    nodes = [(c, x) for c in objs for x in d.objects[c].carrier]
    edges = [((a, x), (b, ap(a, b, u, x))) for a in objs for b in objs for u in shape.hom(a, b).carrier
             for x in d.objects[a].carrier]
    return _naive_components(nodes, edges)


def _oracle_limit(shape, d, ap):
    objs = list(shape.objects())
    out = set()
    for fam in itertools.product(*(d.objects[c].carrier for c in objs)):
        x = dict(zip(objs, fam))
        if all(ap(a, b, u, x[a]) == x[b] for a in objs for b in objs for u in shape.hom(a, b).carrier):
            out.add(fam)
    return out


def _hom_bifunctor(base, shape, d, e, ap_d, ap_e):
    """T(c', c) = [D c', E c] for covariant D, E; its end is Nat(D, E)."""
    def value(c2, c):
        src, tgt = d.objects[c2].carrier, e.objects[c].carrier
        return base.obj(tuple(itertools.product(tgt, repeat=len(src))))

    def lmap(u, a, b, c):  # T(b, c) -> T(a, c): precompose with D u
        src = value(b, c)
        return BaseMorphism(src, value(a, c), tuple((t, tuple(t[ap_d(a, b, u, x)] for x in d.objects[a].carrier))
                                                   for t in src.carrier))

    def rmap(c, u, a, b):  # T(c, a) -> T(c, b): postcompose with E u
        src = value(c, a)
        return BaseMorphism(src, value(c, b), tuple((t, tuple(ap_e(a, b, u, y) for y in t)) for t in src.carrier))

    return Bifunctor(value, lmap, rmap)


def _tensor_bifunctor(base, shape, d, e, ap_d, ap_e):
    """T(c', c) = D c' x E c with D contravariant (a diagram on the opposite) and E covariant."""
    def value(c2, c):
        return base.obj(tuple(itertools.product(d.objects[c2].carrier, e.objects[c].carrier)))

    def lmap(u, a, b, c):  # u: a -> b in shape, so D u: D b -> D a
        src = value(b, c)
        return BaseMorphism(src, value(a, c), tuple(((x, y), (ap_d(b, a, u, x), y)) for x, y in src.carrier))

    def rmap(c, u, a, b):
        src = value(c, a)
        return BaseMorphism(src, value(c, b), tuple(((x, y), (x, ap_e(a, b, u, y))) for x, y in src.carrier))

    return Bifunctor(value, lmap, rmap)


def _oracle_end(shape, t):
    objs = list(shape.objects())
    out = set()
    for fam in itertools.product(*(t.value(c, c).carrier for c in objs)):
        x = dict(zip(objs, fam))
        if all(t.rmap(a, u, a, b).apply(x[a]) == t.lmap(u, a, b, b).apply(x[b])
               for a in objs for b in objs for u in shape.hom(a, b).carrier):
            out.add(fam)
    return out


def _oracle_coend(shape, t):
    objs = list(shape.objects())
    nodes = [(c, x) for c in objs for x in t.value(c, c).carrier]
    edges = [((a, t.lmap(u, a, b, a).apply(y)), (b, t.rmap(b, u, a, b).apply(y)))
             for a in objs for b in objs for u in shape.hom(a, b).carrier for y in t.value(b, a).carrier]
    return _naive_components(nodes, edges)


def suite_coend(seed, bounds=DEFAULT_BOUNDS, engine=None, max_carrier=3, max_bi_carrier=2):
    """Exhaustive: union-find colimits and backtracking limits against the
    naive oracles, then coends and ends of bifunctors built from diagram pairs."""
    colim = (engine or {}).get("colimit", finite_colimit)
    report = SuiteReport("coend", seed)
    base = FINSET
    per_shape = {}
    for shape in _shapes(base):
        n = 0
        for d, ap in all_diagrams(shape, max_carrier, base):
            n += 1
            report.cases += 1
            u = colim(base, shape, d)
            got = {}
            for c in shape.objects():
                for x in d.objects[c].carrier:
                    got.setdefault(u.legs[c].apply(x), set()).add((c, x))
            got = {frozenset(b) for b in got.values()}
            lim = finite_limit(base, shape, d)
            if got != _oracle_colimit(shape, d, ap) or len(got) != len(u.obj):
                report.failures.append({"shape": shape.name, "kind": "colimit",
                                        "sizes": [len(d.objects[c]) for c in shape.objects()]})
            if set(lim.obj.carrier) != _oracle_limit(shape, d, ap):
                report.failures.append({"shape": shape.name, "kind": "limit",
                                        "sizes": [len(d.objects[c]) for c in shape.objects()]})
        per_shape[shape.name] = n
    bi = 0
    for shape in _shapes(base):
        if len(shape.objects()) > 2:
            continue
        diagrams = list(all_diagrams(shape, max_bi_carrier, base))
        op_diagrams = list(all_diagrams(shape.opposite(), max_bi_carrier, base))
        for (d, ap_d), (e, ap_e) in itertools.product(diagrams, repeat=2):
            t = _hom_bifunctor(base, shape, d, e, ap_d, ap_e)
            bi += 1
            report.cases += 1
            if set(end_over_finite(base, shape, t).carrier) != _oracle_end(shape, t):
                report.failures.append({"shape": shape.name, "kind": "end"})
        for (d, ap_d), (e, ap_e) in itertools.product(op_diagrams, diagrams):
            t = _tensor_bifunctor(base, shape, d, e, ap_d, ap_e)
            bi += 1
            report.cases += 1
            if len(coend_over_finite(base, shape, t)) != len(_oracle_coend(shape, t)):
                report.failures.append({"shape": shape.name, "kind": "coend"})
    report.details = {"diagrams": per_shape, "bifunctors": bi, "max_carrier": max_carrier}
    return report


# ---------------------------------------------------------------------------
# 3. counterexample


def terminal_query(k, bounds=DEFAULT_BOUNDS):
    """The limit of the empty diagram in PK."""
    shape = FiniteCategory.empty(k.base)
    return pointwise_limit(Weight.unit(shape, "co"), empty_diagram(k), bounds, ambient=k, name="1").verdict


def suite_counterexample(seed, bounds=DEFAULT_BOUNDS, engine=None):
    report = SuiteReport("counterexample", seed)
    dn = builtin_procedural("DiscreteNat")
    v = terminal_query(dn, bounds)
    report.cases += 1
    if v.kind != NOT_SMALL or not v.witness or v.witness.get("family") != "DiscreteNat":
        report.failures.append({"category": "DiscreteNat", "verdict": v.kind})
    op = builtin_procedural("OmegaChain").opposite()
    w = terminal_query(op, bounds)
    report.cases += 1
    if w.kind != SMALL or list(w.certificate.support) != [0]:
        report.failures.append({"category": "op(OmegaChain)", "verdict": w.kind})
    report.details = {"DiscreteNat": v.to_json(), "op(OmegaChain)": w.to_json()}
    return report


# ---------------------------------------------------------------------------
# 4. completeness transfer


def _corepresentable_weight(shape, c):
    """shape(c, -) as a covariant weight."""
    values = {x: shape.hom(c, x) for x in shape.objects()}
    action = {(x, y, u): {f: shape.compose(c, x, y, u, f) for f in shape.hom(c, x).carrier}
              for x in shape.objects() for y in shape.objects() for u in shape.hom(x, y).carrier}
    return Weight(shape, values, action, variance="co", name=f"{shape.name}({c},-)")


def suite_completeness(seed, bounds=DEFAULT_BOUNDS, engine=None, count=60):
    report = SuiteReport("completeness", seed)
    lattices = lattice_family(seed, count, max_size=5)
    shapes = [s for s in _shapes(FINSET) if len(s.objects()) <= 3]
    sampled = 0
    for lat in lattices:
        conical = completeness_check(lat, bounds, exhaustive=True)
        sampled += conical.details["sampled"]
        report.cases += conical.details["sampled"]
        if conical.verdict != "Complete":
            report.failures.append({"lattice": _describe_category(lat), "witness": conical.witness})
            continue
        for shape in shapes:
            for c in shape.objects():
                w = _corepresentable_weight(shape, c)
                for s in shape_diagrams(lat, shape, list(lat.objects())):
                    report.cases += 1
                    v = pointwise_limit(w, yoneda_diagram(s, lat), bounds).verdict
                    if v.kind != SMALL:
                        report.failures.append({"lattice": _describe_category(lat), "weight": w.name,
                                                "diagram": [s(x) for x in shape.objects()]})
    report.details = {"lattices": len(lattices), "conical": sampled,
                      "sizes": sorted(len(lat.objects()) for lat in lattices)}
    return report


# ---------------------------------------------------------------------------
# 5. restriction


def suite_restriction(seed, bounds=DEFAULT_BOUNDS, engine=None, count=20):
    from .kan import adjunction_check, restrict_along

    rng = rng_for(seed)
    report = SuiteReport("restriction", seed)
    for i in range(count):
        l = random_category(rng, max_objects=4, name=f"L{i}")
        objs = list(l.objects())
        keep = sorted(rng.sample(objs, rng.randint(1, len(objs))))
        k, inc = full_subcategory(l, keep, name=f"K{i}")
        corpus_k = [random_presheaf(rng, k, name=f"g{j}") for j in range(2)] + [representable(k, keep[0])]
        corpus_l = [random_presheaf(rng, l, name=f"h{j}") for j in range(2)] + [representable(l, objs[-1])]
        r = adjunction_check(inc, corpus_k, corpus_l, bounds)
        report.cases += 1
        if r.verdict != "Adjoint":
            report.failures.append({"case": i, "category": _describe_category(l), "kept": keep, "witness": r.witness})
    dn = builtin_procedural("DiscreteNat")
    one = FiniteCategory.terminal(FINSET)
    f = EnrichedFunctor(dn, one, lambda a: "*", name="!")
    r = restrict_along(f, representable(one, "*", name="1"), bounds)
    report.cases += 1
    if r.kind != NOT_SMALL:
        report.failures.append({"case": "DiscreteNat -> 1", "verdict": r.kind})
    report.details = {"inclusions": count, "DiscreteNat -> 1": r.to_json()}
    return report


# ---------------------------------------------------------------------------
# 6. continuity


def suite_continuity(seed, bounds=DEFAULT_BOUNDS, engine=None, count=100):
    from .kan import continuity_check

    rng = rng_for(seed)
    report = SuiteReport("continuity", seed)
    lattices = lattice_family(rng, 30, max_size=5)
    instances = broken = 0
    for i in range(count):
        a, b = rng.choice(lattices), rng.choice(lattices)
        f = random_monotone_map(rng, a, b, name=f"f{i}")
        r = continuity_check(f, "FiniteLimits", bounds)
        report.cases += 1
        instances += len(r.details["samples"])
        broken += sum(not x["F_preserves"] for x in r.details["samples"])
        if r.verdict != "Agree":
            report.failures.append({"case": i, "source": _describe_category(a), "target": _describe_category(b),
                                    "map": [f(x) for x in a.objects()], "witness": r.witness})
    report.details = {"maps": count, "instances": instances, "not_preserved": broken}
    return report


# ---------------------------------------------------------------------------
# 7. convolution


def z2_presheaves(k, max_size=2):
    out = []
    for n0, n1 in itertools.product(range(max_size + 1), repeat=2):
        out.append(SmallPresheaf(k, [0, 1], {0: range(n0), 1: range(n1)}, name=f"({n0},{n1})"))
    return out


def suite_convolution(seed, bounds=DEFAULT_BOUNDS, engine=None):
    from .day import (
        closedness_check, convolve, from_monoidal, internal_hom_right, max_structure, meet_structure,
        min_structure, monoid_structure, xor_structure,
    )

    report = SuiteReport("convolution", seed)
    m = xor_structure()
    k, p = m.k, from_monoidal(m)

    def sizes(f):
        return [len(f.value(a)) for a in k.objects()]

    f = SmallPresheaf(k, [0, 1], {0: ["a"], 1: ["b", "c"]}, name="F")
    g = SmallPresheaf(k, [0, 1], {0: [1, 2, 3], 1: ["z"]}, name="G")
    fg = sizes(convolve(f, g, p))
    report.cases += 1
    if fg != [5, 7]:
        report.failures.append({"check": "F(x)G sizes", "got": fg})
    g1 = SmallPresheaf(k, [0, 1], {0: [1], 1: [2]}, name="G1")
    h = SmallPresheaf(k, [0, 1], {0: [1, 2], 1: [3, 4, 5]}, name="H")
    r = internal_hom_right(g1, h, p, bounds)
    ih = sizes(r.presheaf) if r.presheaf is not None else None
    report.cases += 1
    if ih != [6, 6]:
        report.failures.append({"check": "[G,H] sizes", "got": ih})
    corpus = z2_presheaves(k)
    ihoms = {}
    for g_, h_ in itertools.product(corpus, repeat=2):
        ihoms[(g_.name, h_.name)] = internal_hom_right(g_, h_, p, bounds).presheaf
    convs = {(a.name, b.name): convolve(a, b, p) for a, b in itertools.product(corpus, repeat=2)}
    for f_, g_, h_ in itertools.product(corpus, repeat=3):
        report.cases += 1
        left = presheaf_hom(convs[(f_.name, g_.name)], h_, bounds.iso_budget)
        right = presheaf_hom(f_, ihoms[(g_.name, h_.name)], bounds.iso_budget)
        if len(left) != len(right):
            report.failures.append({"check": "tensor-hom", "triple": [f_.name, g_.name, h_.name],
                                    "sizes": [len(left), len(right)]})
    z3 = FiniteCategory.from_monoid(FINSET, [0, 1, 2], lambda a, b: (a + b) % 3, 0, name="Z3")
    chain = FiniteCategory.chain(FINSET, 3)
    finite = [m, monoid_structure(z3, "Z3"), meet_structure(chain, min, 2, "meet3")]
    verdicts = {}
    for s in finite:
        v = closedness_check(s, bounds)
        verdicts[s.name] = v.verdict
        report.cases += 1
        if v.verdict != "Closed":
            report.failures.append({"check": "closedness", "structure": s.name, "verdict": v.verdict})
    v = closedness_check(max_structure(), bounds)
    verdicts["op(OmegaChain), max"] = v.verdict
    report.cases += 1
    if v.verdict != "Closed-on-probes":
        report.failures.append({"check": "closedness", "structure": "max", "verdict": v.verdict})
    v = closedness_check(min_structure(), bounds)
    verdicts["DiscreteNat, min"] = v.verdict
    report.cases += 1
    wit = (v.witness or {}).get("B"), (v.witness or {}).get("D")
    if v.verdict != "ConditionFails" or wit != (0, 0):
        report.failures.append({"check": "closedness", "structure": "min", "verdict": v.verdict, "witness": wit})
    report.details = {"F(x)G": fg, "[G,H]": ih, "corpus": len(corpus), "closedness": verdicts,
                      "min witness": list(wit)}
    return report


# ---------------------------------------------------------------------------
# 8. Isbell / Dedekind-MacNeille


def _sub_poset(k, keep):
    sub, _ = full_subcategory(k, keep, name=k.name)
    return sub


def suite_dm(seed, bounds=DEFAULT_BOUNDS, engine=None, count=100):
    from . import isbell

    fixed_points = (engine or {}).get("fixed_points", isbell.dedekind_macneille_fixed_points)
    report = SuiteReport("dm", seed)

    def oracle(k):
        return isbell.dm_cuts_oracle(k.objects(), lambda a, b: bool(k.hom(a, b).carrier))

    def fails(k):
        return set(fixed_points(k, bounds)) != oracle(k)

    def candidates(k):
        objs = list(k.objects())
        if len(objs) > 1:
            for x in objs:
                yield _sub_poset(k, [y for y in objs if y != x])

    counts = []
    for k in poset_family(seed, count, max_size=6):
        report.cases += 1
        got = fixed_points(k, bounds)
        counts.append(len(got))
        if set(got) != oracle(k):
            small = _shrink(k, candidates, fails)
            report.failures.append({"poset": _describe_category(small), "fixed": len(fixed_points(small, bounds)),
                                    "cuts": len(oracle(small))})
    from .base import BOOL2

    anti = FiniteCategory.discrete(BOOL2, ["a", "b"], name="antichain")
    n_anti = len(fixed_points(anti, bounds))
    report.cases += 1
    if n_anti != 4:
        report.failures.append({"poset": "2-antichain", "fixed": n_anti})
    rng = rng_for(seed)
    yoneda = 0
    for i in range(10):
        k = random_category(rng, max_objects=3, name=f"C{i}")
        for a in k.objects():
            yoneda += 1
            report.cases += 1
            o = isbell.left_conjugate(representable(k, a), bounds)
            if not o.small or not iso_presheaf(o.presheaf, isbell.corepresentable(k, a), bounds.iso_budget):
                report.failures.append({"check": "O(Ya) = Za", "category": _describe_category(k), "object": a})
    report.details = {"posets": count, "fixed_point_counts": counts, "antichain": n_anti, "yoneda_probes": yoneda}
    return report


# ---------------------------------------------------------------------------
# 9. representable smallness


def suite_representable(seed, bounds=DEFAULT_BOUNDS, engine=None, count=20):
    rng = rng_for(seed)
    report = SuiteReport("representable", seed)
    dn = builtin_procedural("DiscreteNat")
    verdicts = representably_small_check(representable(dn, 3), [FINSET.initial(), FINSET.unit()], bounds)
    kinds = [r.verdict.kind for r in verdicts]
    report.cases += 1
    if kinds != [NOT_SMALL, SMALL]:
        report.failures.append({"check": "Y(3) on DiscreteNat", "verdicts": kinds})
    for i in range(count):
        k = random_category(rng, max_objects=4, name=f"C{i}")
        f = random_presheaf(rng, k, name=f"F{i}")
        probes = [FINSET.obj(range(n)) for n in range(3)]
        for r in representably_small_check(f, probes, bounds):
            report.cases += 1
            if r.verdict.kind != SMALL:
                report.failures.append({"check": "finite ambient", "presheaf": _describe_presheaf(f)})
    report.details = {"Y(3) on DiscreteNat": kinds, "finite_cases": count}
    return report


SUITES = {
    "yoneda": suite_yoneda,
    "coend": suite_coend,
    "counterexample": suite_counterexample,
    "completeness": suite_completeness,
    "restriction": suite_restriction,
    "continuity": suite_continuity,
    "convolution": suite_convolution,
    "dm": suite_dm,
    "isbell": suite_dm,
    "representable": suite_representable,
}


def replay_suite(name, seed=0, bounds=DEFAULT_BOUNDS, engine=None):
    fn = SUITES.get(name)
    if fn is None:
        raise UnknownSuite(f"unknown suite {name!r}; choose one of {', '.join(sorted(SUITES))}")
    report = fn(seed, bounds, engine)
    report.suite = name
    return report


__all__ = ["SuiteReport", "SUITES", "replay_suite", "all_diagrams", "terminal_query", "z2_presheaves"]
