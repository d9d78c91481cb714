import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spcalc.base import BOOL2, FINSET, FinPresheafBase
from spcalc.category import FiniteCategory, builtin_procedural
from spcalc.errors import InvalidDiagram, UnsupportedBase
from spcalc.generators import random_category, random_presheaf
from spcalc.presheaf import (
    PresheafDiagram, SmallPresheaf, Weight, base_tensor, canonicalize, colimit_leg, compose_morphisms, coproduct,
    empty_presheaf, evaluate, identity_element, identity_morphism, iso_presheaf, presheaf_hom, representable,
    weighted_colimit, yoneda_arrow,
)

from helpers import naive_classes, parallel_pair


@pytest.fixture
def arrow():
    return FiniteCategory.arrow(FINSET)


def test_representable_evaluates_to_hom():
    k = random_category(5)
    for a in k.objects():
        for b in k.objects():
            assert len(evaluate(representable(k, a), b)) == len(k.hom(b, a))


def test_discrete_nat_representable():
    dn = builtin_procedural("DiscreteNat")
    y3 = representable(dn, 3)
    assert len(y3.value(3)) == 1
    assert len(y3.value(5)) == 0


def test_omega_chain_representable_over_bool2():
    om = builtin_procedural("OmegaChain", BOOL2)
    y4 = representable(om, 4)
    assert y4.value(2).carrier and not y4.value(7).carrier


def test_coproduct_of_representables(arrow):
    f = coproduct([representable(arrow, 0), representable(arrow, 1)])
    assert len(f.value(0)) == 2
    assert len(f.value(1)) == 1
    assert len(presheaf_hom(f, representable(arrow, 1))) == 1


def test_empty_and_discrete_supports():
    dn = builtin_procedural("DiscreteNat")
    z = empty_presheaf(dn)
    assert all(len(z.value(a)) == 0 for a in dn.objects(10))
    f = SmallPresheaf(dn, [3], {3: ["x"]})
    assert (len(f.value(3)), len(f.value(5))) == (1, 0)


def test_identity_in_self_hom(arrow):
    f = coproduct([representable(arrow, 0), representable(arrow, 1)])
    assert identity_element(f) in presheaf_hom(f, f).carrier


def test_canonicalize_examples(arrow):
    y = representable(arrow, 1)
    assert canonicalize(y).structure() == y.structure()
    # two copies of Y(1) glued along nothing vs an explicitly redundant support
    f = SmallPresheaf(arrow, [0, 1], {0: ["a"], 1: ["b"]}, {(0, 1, "f"): {"b": "a"}}, name="F")
    c = canonicalize(f)
    for a in arrow.objects():
        assert len(c.value(a)) == len(f.value(a))
    assert iso_presheaf(f, c)


def test_redundant_support_on_an_iso():
    # a ~ a2 via mutually inverse arrows; support {a, a2} with redundant copies
    homs = {("a", "a"): ("1a",), ("b", "b"): ("1b",), ("a", "b"): ("i",), ("b", "a"): ("j",)}
    comp = {("a", "b", "a", "j", "i"): "1a", ("b", "a", "b", "i", "j"): "1b"}
    k = FiniteCategory(FINSET, ["a", "b"], homs, comp, {"a": "1a", "b": "1b"}, name="iso")
    f = SmallPresheaf(k, ["a", "b"], {"a": ["x"], "b": ["y"]}, {("a", "b", "i"): {"y": "x"}, ("b", "a", "j"): {"x": "y"}})
    c = canonicalize(f)
    for a in k.objects():
        assert len(c.value(a)) == len(f.value(a)) == 1
    assert iso_presheaf(representable(k, "a"), representable(k, "b"))


def test_non_iso_on_arrow(arrow):
    f = coproduct([representable(arrow, 0), representable(arrow, 1)])
    assert not iso_presheaf(f, representable(arrow, 1))
    assert not iso_presheaf(representable(arrow, 0), representable(arrow, 1))


def test_invalid_action_is_rejected(arrow):
    with pytest.raises(InvalidDiagram):
        SmallPresheaf(arrow, [0, 1], {0: ["a", "b"], 1: ["p"]}, {(0, 1, "f"): {"p": "zzz"}})
    with pytest.raises(InvalidDiagram):
        SmallPresheaf(arrow, [0, 1], {0: ["a", "b"], 1: ["p"]})


def test_non_set_like_base_is_unsupported():
    g = FiniteCategory.terminal(FINSET)
    pb = FinPresheafBase(g)
    k = FiniteCategory.empty(pb)
    with pytest.raises(UnsupportedBase):
        SmallPresheaf(k, [], {})


def test_colimit_with_unit_weight_is_the_representable(arrow):
    one = FiniteCategory.terminal(FINSET)
    d = PresheafDiagram(one, {"*": representable(arrow, 0)})
    assert iso_presheaf(weighted_colimit(Weight.unit(one), d), representable(arrow, 0))


def test_discrete_coproduct_on_discrete_nat():
    dn = builtin_procedural("DiscreteNat")
    f = coproduct([representable(dn, 3), representable(dn, 5)])
    assert f.support == (3, 5)
    assert all(len(f.values[b]) == 1 for b in f.support)


def _pointwise_coequalizer(f, g, a):
    """Naive oracle: classes of Y1(a) under f_a(x) ~ g_a(x)."""
    target = list(g.target.value(a).carrier)
    pairs = [(f.at(a, x), g.at(a, x)) for x in f.source.value(a).carrier]
    return naive_classes(target, pairs)


def _coequalizer_matches_oracle(k, a, b, s_arrow, t_arrow):
    pair = parallel_pair()
    ya, yb = representable(k, a), representable(k, b)
    s = yoneda_arrow(k, a, b, s_arrow, ya, yb)
    t = yoneda_arrow(k, a, b, t_arrow, ya, yb)
    d = PresheafDiagram(pair, {0: ya, 1: yb}, {(0, 1, "s"): s, (0, 1, "t"): t})
    c = weighted_colimit(Weight.unit(pair), d)
    for x in k.objects():
        assert len(c.value(x)) == _pointwise_coequalizer(s, t, x)


def test_coequalizer_of_representables(arrow):
    _coequalizer_matches_oracle(arrow, 0, 1, "f", "f")
    # idempotent monoid {e, x}: Y(*) coequalizing e and x
    m = FiniteCategory.from_monoid(FINSET, ["e", "x"], lambda g, f: "x" if "x" in (g, f) else "e", "e")
    _coequalizer_matches_oracle(m, "*", "*", "e", "x")


@settings(max_examples=40)
@given(st.integers(0, 100_000), st.data())
def test_coequalizers_match_pointwise_oracle(seed, data):
    k = random_category(seed, max_objects=3)
    a = data.draw(st.sampled_from(k.objects()))
    b = data.draw(st.sampled_from(k.objects()))
    h = k.hom(a, b).carrier
    if h:
        _coequalizer_matches_oracle(k, a, b, data.draw(st.sampled_from(h)), data.draw(st.sampled_from(h)))


def test_colimit_legs_are_natural(arrow):
    idx = FiniteCategory.discrete(FINSET, range(2))
    d = PresheafDiagram(idx, {0: representable(arrow, 0), 1: representable(arrow, 1)})
    w = Weight.unit(idx)
    c = weighted_colimit(w, d)
    for i in range(2):
        leg = colimit_leg(c, w, d, i, "*")
        assert leg.source is d[i]


def test_base_tensor(arrow):
    y = representable(arrow, 0)
    t = base_tensor(FINSET.obj(range(3)), y)
    assert len(t.value(0)) == 3 * len(y.value(0))
    with pytest.raises(Exception):
        base_tensor(BOOL2.unit(), y)


def test_morphism_composition(arrow):
    y0, y1 = representable(arrow, 0), representable(arrow, 1)
    m = yoneda_arrow(arrow, 0, 1, "f", y0, y1)
    assert compose_morphisms(identity_morphism(y1), m).components == m.components


@settings(max_examples=60)
@given(st.integers(0, 100_000))
def test_yoneda(seed):
    k = random_category(seed)
    f = random_presheaf(seed + 1, k)
    for a in k.objects():
        assert len(presheaf_hom(representable(k, a), f)) == len(f.value(a))


@settings(max_examples=60)
@given(st.integers(0, 100_000))
def test_canonicalize_is_idempotent_and_iso(seed):
    k = random_category(seed)
    f = random_presheaf(seed + 7, k)
    c = canonicalize(f)
    assert canonicalize(c).structure() == c.structure()
    assert iso_presheaf(f, c)
    for a in k.objects():
        assert len(c.value(a)) == len(f.value(a))


@settings(max_examples=40)
@given(st.integers(0, 100_000))
def test_iso_is_invariant_under_relabelling(seed):
    k = random_category(seed)
    f = random_presheaf(seed + 3, k)
    rename = {b: {x: ("r", x) for x in f.values[b].carrier} for b in f.support}
    g = SmallPresheaf(k, f.support, {b: [rename[b][x] for x in f.values[b].carrier] for b in f.support},
                      {key: {rename[key[1]][x]: rename[key[0]][y] for x, y in m.items()} for key, m in f.action.items()})
    assert iso_presheaf(f, g)
