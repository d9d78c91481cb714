import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spcalc.base import BOOL2, FINSET
from spcalc.category import FiniteCategory, builtin_procedural
from spcalc.config import Bounds
from spcalc.errors import InvalidTarget
from spcalc.generators import random_category, random_poset, random_presheaf
from spcalc.isbell import (
    closure, conjugation_adjunction_check, corepresentable, dedekind_macneille_fixed_points, dm_cuts_oracle,
    downset_presheaf, downsets, global_existence_gate, left_conjugate, nonempty_set, right_conjugate,
)
from spcalc.presheaf import empty_presheaf, iso_presheaf, representable
from spcalc.smallness import NOT_SMALL, SMALL

ANTI = FiniteCategory.discrete(BOOL2, ["a", "b"], name="anti")


def le(k):
    return lambda a, b: bool(k.hom(a, b).carrier)


def test_conjugate_of_representable_is_corepresentable():
    k = random_category(31)
    for a in k.objects():
        o = left_conjugate(representable(k, a))
        assert o.kind == SMALL
        assert iso_presheaf(o.presheaf, corepresentable(k, a))


def test_spec_of_corepresentable_is_representable():
    k = random_category(32)
    for a in k.objects():
        s = right_conjugate(corepresentable(k, a))
        assert s.kind == SMALL
        assert iso_presheaf(s.presheaf, representable(k.opposite().opposite(), a))


def test_conjugate_of_empty_on_discrete_nat_is_not_small():
    dn = builtin_procedural("DiscreteNat")
    r = left_conjugate(empty_presheaf(dn))
    assert r.kind == NOT_SMALL
    assert r.to_json()["direction"] == "left"
    s = right_conjugate(empty_presheaf(dn.opposite()))
    assert s.kind == NOT_SMALL


def test_antichain_conjugates():
    full = downset_presheaf(ANTI, {"a", "b"})
    o = left_conjugate(full)
    assert nonempty_set(o.presheaf) == frozenset()
    s = right_conjugate(o.presheaf)
    assert nonempty_set(s.presheaf) == frozenset({"a", "b"})


def test_closure_is_identity_on_principal_downsets_of_a_chain():
    ch = FiniteCategory.chain(BOOL2, 3)
    for x in ch.objects():
        d = frozenset(range(x + 1))
        o, s = closure(downset_presheaf(ch, d))
        assert nonempty_set(s.presheaf) == d


def test_adjunction_on_a_chain():
    ch = FiniteCategory.chain(BOOL2, 3)
    corpus = [downset_presheaf(ch, d) for d in downsets(ch)]
    co = [downset_presheaf(ch.opposite(), d) for d in downsets(ch.opposite())]
    r = conjugation_adjunction_check(corpus, co)
    assert r.verdict == "Adjoint"
    assert r.details["checked"] > len(corpus)


def test_adjunction_on_finite_sets():
    k = random_category(40, max_objects=3)
    corpus = [representable(k, a, name=f"Y{a}") for a in k.objects()] + [random_presheaf(41, k, name="R")]
    assert conjugation_adjunction_check(corpus).verdict == "Adjoint"


def test_broken_unit_is_named():
    ch = FiniteCategory.chain(BOOL2, 3)
    corpus = [downset_presheaf(ch, d) for d in downsets(ch)]

    def fault(components):
        # drop one component so the unit is no longer a morphism
        broken = {b: dict(m) for b, m in components.items()}
        for b in broken:
            if broken[b]:
                broken[b].clear()
                return broken
        return broken

    r = conjugation_adjunction_check(corpus, fault=fault)
    assert r.verdict == "Fails"
    assert r.witness["law"] == "unit"


def test_empty_corpus_is_rejected():
    with pytest.raises(InvalidTarget):
        conjugation_adjunction_check([])


def test_dm_on_the_antichain():
    fixed = dedekind_macneille_fixed_points(ANTI)
    assert len(fixed) == 4
    assert set(fixed) == set(downsets(ANTI))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_dm_on_chains(n):
    ch = FiniteCategory.chain(BOOL2, n)
    fixed = dedekind_macneille_fixed_points(ch)
    # the empty downset is not a cut once there is a bottom element
    assert len(fixed) == n
    assert set(fixed) == dm_cuts_oracle(ch.objects(), le(ch))


def test_dm_on_a_complete_lattice():
    sq = FiniteCategory.from_preorder(BOOL2, [0, 1, 2, 3], lambda a, b: a & b == a, name="2x2")
    fixed = set(dedekind_macneille_fixed_points(sq))
    principal = {frozenset(y for y in sq.objects() if y & x == y) for x in sq.objects()}
    assert fixed == principal == dm_cuts_oracle(sq.objects(), le(sq))


def test_downsets_need_bool2():
    with pytest.raises(InvalidTarget):
        downsets(FiniteCategory.chain(FINSET, 2))


@settings(max_examples=40)
@given(st.integers(0, 100_000))
def test_dm_matches_the_cut_oracle(seed):
    k = random_poset(seed, max_size=5)
    assert set(dedekind_macneille_fixed_points(k)) == dm_cuts_oracle(k.objects(), le(k))


@settings(max_examples=25)
@given(st.integers(0, 100_000), st.data())
def test_spec_o_is_a_closure_operator(seed, data):
    k = random_poset(seed, max_size=4)
    ds = downsets(k)
    d = data.draw(st.sampled_from(ds))
    e = data.draw(st.sampled_from(ds))
    cd = nonempty_set(closure(downset_presheaf(k, d))[1].presheaf)
    ce = nonempty_set(closure(downset_presheaf(k, e))[1].presheaf)
    assert d <= cd  # extensive
    assert nonempty_set(closure(downset_presheaf(k, cd))[1].presheaf) == cd  # idempotent
    if d <= e:
        assert cd <= ce  # monotone


def test_existence_gate():
    assert global_existence_gate(builtin_procedural("DiscreteNat")).verdict == "Consistent"
    assert global_existence_gate(random_category(50)).verdict == "Consistent"
    r = global_existence_gate(builtin_procedural("OmegaChain", BOOL2).opposite(), Bounds(probes=8))
    assert r.verdict == "Consistent"
