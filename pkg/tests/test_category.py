import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spcalc.base import BOOL2, FINSET
from spcalc.category import (
    EnrichedFunctor, FiniteCategory, builtin_procedural, compose_functors, full_subcategory, identity_functor,
    opposite, structurally_equal, tensor_product_category, validate_category, validate_functor,
)
from spcalc.errors import BackendMismatch, UnknownFamily, UnknownObject
from spcalc.generators import random_category


def two_element_monoid(mult):
    return FiniteCategory.from_monoid(FINSET, ["e", "x"], mult, "e", name="M2")


def test_associative_monoid_is_valid():
    # {e, x} with x*x = x
    m = two_element_monoid(lambda g, f: "x" if "x" in (g, f) else "e")
    assert validate_category(m).ok


def test_broken_associativity_is_named():
    homs = {("*", "*"): ("e", "x", "y")}
    table = {("x", "x"): "y", ("x", "y"): "x", ("y", "x"): "y", ("y", "y"): "y"}
    comp = {("*", "*", "*", g, f): table.get((g, f), g if f == "e" else f) for g in "exy" for f in "exy"}
    k = FiniteCategory(FINSET, ["*"], homs, comp, {"*": "e"}, name="bad")
    report = validate_category(k)
    assert not report.ok
    assert any("associativity fails" in msg for msg in report.failures)


def test_discrete_nat_probe_is_valid():
    dn = builtin_procedural("DiscreteNat")
    assert validate_category(dn, probe=50).ok


def test_discrete_nat_homs():
    dn = builtin_procedural("DiscreteNat")
    assert len(dn.hom(3, 3)) == 1
    assert len(dn.hom(3, 5)) == 0
    with pytest.raises(UnknownObject):
        dn.hom(-1, 2)


def test_omega_chain_and_its_opposite():
    om = builtin_procedural("OmegaChain", BOOL2)
    assert om.hom(2, 7).carrier
    assert not om.hom(7, 2).carrier
    op = om.opposite()
    assert bool(op.hom(5, 3).carrier) == bool(om.hom(3, 5).carrier)
    assert all(op.hom(a, 0).carrier for a in op.objects(20))
    assert op.opposite() is om


def test_unknown_family():
    with pytest.raises(UnknownFamily):
        builtin_procedural("Reals")


def test_opposite_involution_and_monoid_reversal():
    k = random_category(3)
    assert structurally_equal(opposite(opposite(k)), k)
    m = FiniteCategory.from_monoid(FINSET, ["e", "a", "b"], lambda g, f: {("a", "b"): "a", ("b", "a"): "b"}.get(
        (g, f), g if f == "e" else f), "e")
    mop = m.opposite()
    for g in "eab":
        for f in "eab":
            assert mop.compose("*", "*", "*", g, f) == m.compose("*", "*", "*", f, g)


def test_tensor_product_category():
    k = FiniteCategory.discrete(FINSET, [0, 1])
    l = FiniteCategory.discrete(FINSET, ["a", "b", "c"])
    assert len(tensor_product_category(k, l).objects()) == 6
    m2 = FiniteCategory.from_monoid(FINSET, [0, 1], lambda g, f: (g + f) % 2, 0)
    m3 = FiniteCategory.from_monoid(FINSET, [0, 1, 2], lambda g, f: (g + f) % 3, 0)
    t = tensor_product_category(m2, m3)
    assert len(t.hom(t.objects()[0], t.objects()[0])) == 6
    assert validate_category(t).ok
    with pytest.raises(BackendMismatch):
        tensor_product_category(k, FiniteCategory.discrete(BOOL2, [0]))


def test_tensor_commutes_with_opposite():
    k, l = FiniteCategory.arrow(FINSET), FiniteCategory.discrete(FINSET, ["x"])
    left = tensor_product_category(k, l).opposite()
    right = tensor_product_category(k.opposite(), l.opposite(), name=left.name)
    assert structurally_equal(left, right)


def test_infinite_tensor_is_lazy():
    dn = builtin_procedural("DiscreteNat")
    t = tensor_product_category(dn, FiniteCategory.discrete(FINSET, ["a", "b"]))
    assert not t.is_finite
    assert [t.position(p) for p in t.objects(6)] == list(range(6))
    both = tensor_product_category(dn, dn)
    assert [both.position(p) for p in both.objects(10)] == list(range(10))
    assert validate_category(t, probe=6).ok


def test_full_subcategories():
    k = random_category(11)
    sub, inc = full_subcategory(k, k.objects())
    assert sub.structure()[1:] == k.structure()[1:]
    point, _ = full_subcategory(builtin_procedural("DiscreteNat"), [3])
    assert point.objects() == (3,) and len(point.hom(3, 3)) == 1
    two, _ = full_subcategory(builtin_procedural("OmegaChain"), [0, 2])
    assert structurally_equal(two, FiniteCategory.from_preorder(FINSET, [0, 2], lambda a, b: a <= b, name=two.name))
    assert validate_functor(inc).ok


def test_functor_validation():
    k = FiniteCategory.chain(FINSET, 3)
    good = EnrichedFunctor(k, k, lambda a: min(a + 1, 2))
    assert validate_functor(good).ok
    bad = EnrichedFunctor(k, k, lambda a: 2 - a)
    assert not validate_functor(bad).ok
    assert validate_functor(compose_functors(good, identity_functor(k))).ok


@settings(max_examples=30)
@given(st.integers(0, 10_000))
def test_random_categories_are_valid(seed):
    k = random_category(seed)
    assert validate_category(k).ok
    assert validate_category(k.opposite()).ok
