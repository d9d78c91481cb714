import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import spcalc.kan as kan
from spcalc.base import BOOL2, FINSET
from spcalc.category import EnrichedFunctor, FiniteCategory, builtin_procedural, full_subcategory, identity_functor
from spcalc.errors import AmbientMismatch, PremiseViolated
from spcalc.generators import random_category, random_presheaf
from spcalc.isbell import downset_presheaf, downsets
from spcalc.kan import adjunction_check, continuity_check, flatness_check, left_kan_along, restrict_along
from spcalc.presheaf import SmallPresheaf, coproduct, iso_presheaf, presheaf_hom, representable
from spcalc.smallness import NOT_SMALL, SMALL

ONE = FiniteCategory.terminal()
D2 = FiniteCategory.discrete(FINSET, [0, 1], name="D2")


def square():
    return FiniteCategory.from_preorder(FINSET, [0, 1, 2, 3], lambda a, b: a & b == a, name="2x2")


def test_lan_along_identity():
    k = random_category(21)
    g = random_presheaf(22, k)
    assert iso_presheaf(left_kan_along(identity_functor(k), g), g)


def test_lan_of_terminal_along_an_injection_is_not_terminal():
    img = left_kan_along(EnrichedFunctor(ONE, D2, {"*": 0}), representable(ONE, "*"))
    assert [len(img.value(a)) for a in D2.objects()] == [1, 0]


def test_lan_collapse_counts_the_coend():
    f = EnrichedFunctor(D2, ONE, lambda a: "*")
    g = coproduct([representable(D2, 0), representable(D2, 1)])
    assert len(left_kan_along(f, g).value("*")) == 2


def test_lan_checks_the_ambient():
    with pytest.raises(AmbientMismatch):
        left_kan_along(EnrichedFunctor(ONE, D2, {"*": 0}), representable(D2, 0))


def test_lan_sends_representables_to_representables():
    k = random_category(5)
    sub, inc = full_subcategory(k, k.objects()[:1])
    a = sub.objects()[0]
    assert iso_presheaf(left_kan_along(inc, representable(sub, a)), representable(k, a))


def test_restriction_along_identity():
    k = random_category(23)
    h = random_presheaf(24, k)
    r = restrict_along(identity_functor(k), h)
    assert r.kind == SMALL and iso_presheaf(r.presheaf, h)


def test_restriction_to_a_point_of_discrete_nat():
    dn = builtin_procedural("DiscreteNat")
    _, inc = full_subcategory(dn, [0])
    y5 = restrict_along(inc, representable(dn, 5))
    assert y5.kind == SMALL and y5.presheaf.support == ()
    y0 = restrict_along(inc, representable(dn, 0))
    assert len(y0.presheaf.value(0)) == 1


def test_restriction_along_discrete_nat_to_point_is_not_small():
    dn = builtin_procedural("DiscreteNat")
    f = EnrichedFunctor(dn, ONE, lambda a: "*", name="!")
    r = restrict_along(f, representable(ONE, "*"))
    assert r.kind == NOT_SMALL
    assert r.witness["family"] == "DiscreteNat"
    assert r.to_json()["verdict"] == "NotSmall"


def test_adjunction_on_downsets_of_a_chain():
    ch = FiniteCategory.chain(BOOL2, 3)
    sub, inc = full_subcategory(ch, [0, 1])
    corpus_k = [downset_presheaf(sub, d) for d in downsets(sub)]
    corpus_l = [downset_presheaf(ch, d) for d in downsets(ch)]
    r = adjunction_check(inc, corpus_k, corpus_l)
    assert r.verdict == "Adjoint"
    assert r.details["pairs"] == len(corpus_k) * len(corpus_l)


def test_adjunction_fault_names_the_pair(monkeypatch):
    real = kan.left_kan_along

    def broken(f, g, name=None):
        out = real(f, g, name)
        if g.name == "g1":
            return coproduct([out, representable(f.target, f.target.objects()[0])])
        return out

    monkeypatch.setattr(kan, "left_kan_along", broken)
    ch = FiniteCategory.chain(FINSET, 3)
    sub, inc = full_subcategory(ch, [0, 1])
    corpus_k = [representable(sub, 0, name="g0"), representable(sub, 1, name="g1")]
    corpus_l = [coproduct([representable(ch, 2), representable(ch, 2)], name="h")]
    r = adjunction_check(inc, corpus_k, corpus_l)
    assert r.verdict == "Fails"
    assert r.witness["pair"] == ["g1", "h"]


@settings(max_examples=20)
@given(st.integers(0, 100_000))
def test_adjunction_on_random_inclusions(seed):
    l = random_category(seed, max_objects=3)
    sub, inc = full_subcategory(l, l.objects()[:2])
    corpus_k = [random_presheaf(seed + i, sub, name=f"g{i}") for i in range(2)]
    corpus_l = [random_presheaf(seed + 9 + i, l, name=f"h{i}") for i in range(2)]
    assert adjunction_check(inc, corpus_k, corpus_l).verdict == "Adjoint"


def test_continuity_examples():
    sq, c2 = square(), FiniteCategory.chain(FINSET, 2)
    r = continuity_check(EnrichedFunctor(sq, c2, lambda a: a & 1))
    assert r.verdict == "Agree"
    assert all(x["F_preserves"] for x in r.details["samples"])
    r = continuity_check(EnrichedFunctor(ONE, c2, {"*": 0}))
    assert r.verdict == "Agree"
    terminal = r.details["samples"][0]
    assert terminal["diagram"]["shape"] == "empty"
    assert not terminal["F_preserves"] and not terminal["PF_preserves"]
    assert continuity_check(identity_functor(sq)).verdict == "Agree"


def test_continuity_needs_complete_categories():
    with pytest.raises(PremiseViolated):
        continuity_check(identity_functor(builtin_procedural("DiscreteNat")))


def test_flatness_examples():
    sq = square()
    assert flatness_check(representable(sq, 1)).verdict == "Flat"
    assert flatness_check(SmallPresheaf(sq, [3], {3: ["*"]})).verdict == "Flat"
    r = flatness_check(SmallPresheaf(D2, [0, 1], {0: ["*"], 1: ["*"]}))
    assert r.verdict == "NotFlat"
    assert (r.witness["colimit_of_limit"], r.witness["limit_of_colimits"]) == (0, 1)


def test_hom_sizes_match_for_kan_and_restriction():
    k = random_category(77)
    sub, inc = full_subcategory(k, k.objects()[:1])
    g = representable(sub, sub.objects()[0])
    h = random_presheaf(78, k)
    left = presheaf_hom(left_kan_along(inc, g), h)
    right = presheaf_hom(g, restrict_along(inc, h).presheaf)
    assert len(left) == len(right)
