import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spcalc.base import BOOL2, FINSET
from spcalc.category import EnrichedFunctor, FiniteCategory, builtin_procedural
from spcalc.completeness import (
    completeness_check, phi_closure, phi_complete_check, shape_diagrams, solution_set_agreement,
)
from spcalc.config import Bounds
from spcalc.cones import NO, SOLUTION_SET, cones_at, limit_cone, solution_set, solution_set_search
from spcalc.errors import SpcalcError
from spcalc.generators import lattice_family, random_category


def empty_diagram_in(k):
    return EnrichedFunctor(FiniteCategory.empty(k.base), k, {})


def boolean_square(base=FINSET):
    """Subsets of {0,1} as bitmasks."""
    return FiniteCategory.from_preorder(base, [0, 1, 2, 3], lambda a, b: a & b == a, name="2x2")


# cones and solution sets


def test_no_solution_set_for_terminal_in_discrete_nat():
    assert solution_set(empty_diagram_in(builtin_procedural("DiscreteNat"))).kind == NO


def test_solution_set_on_op_omega():
    op = builtin_procedural("OmegaChain", BOOL2).opposite()
    r = solution_set_search(empty_diagram_in(op))
    assert r.kind == SOLUTION_SET
    assert r.vertices == [0]
    assert r.trace == [[0]] and r.stable
    assert limit_cone(empty_diagram_in(op))[0] == "exists"


def test_finite_solution_set_covers_all_objects():
    k = random_category(13)
    s = empty_diagram_in(k)
    sol = solution_set(s)
    assert sol.kind == SOLUTION_SET
    # every cone factors through one in the set; with no legs that is
    # reachability of some vertex
    for a in k.objects():
        assert any(k.hom(a, v).carrier for v in sol.vertices)


def test_cones_at_count_legs():
    k = boolean_square()
    two = FiniteCategory.discrete(FINSET, ["x", "y"])
    s = EnrichedFunctor(two, k, {"x": 1, "y": 2})
    assert [len(cones_at(s, a)) for a in k.objects()] == [1, 0, 0, 0]
    status, cone = limit_cone(s)
    assert status == "exists" and cone.vertex == 0


# completeness


def test_finite_categories_are_complete():
    assert completeness_check(FiniteCategory.chain(FINSET, 3)).verdict == "Complete"


def test_discrete_nat_is_incomplete_at_the_terminal():
    r = completeness_check(builtin_procedural("DiscreteNat"))
    assert r.verdict == "Incomplete"
    assert r.witness["diagram"]["shape"] == "empty"
    assert r.witness["limit"]["witness"]["family"] == "DiscreteNat"


def test_op_omega_is_complete_on_probes():
    op = builtin_procedural("OmegaChain", BOOL2).opposite()
    assert completeness_check(op, Bounds(probes=6)).verdict == "Complete-on-probes"


def test_exhaustive_completeness_on_lattices():
    for lat in lattice_family(3, count=5):
        r = completeness_check(lat, exhaustive=True)
        assert r.verdict == "Complete"
        assert r.details["sampled"] > 0


def test_solution_sets_exist_where_limits_are_small():
    assert solution_set_agreement(boolean_square()) is None


@pytest.mark.parametrize("side", ["K", "PK"])
def test_phi_complete_examples(side):
    assert phi_complete_check(boolean_square(), "FiniteProducts", side=side).verdict == "Complete"
    assert phi_complete_check(builtin_procedural("DiscreteNat"), "FiniteProducts", side=side).verdict == "NotComplete"
    op = builtin_procedural("OmegaChain", BOOL2).opposite()
    assert phi_complete_check(op, "FiniteProducts", side=side).verdict == "Complete-on-probes"


def test_products_without_a_top_are_missing():
    # two incomparable maximal elements: no terminal object in K
    k = FiniteCategory.from_preorder(FINSET, ["b", "x", "y"], lambda a, c: a == c or a == "b")
    assert phi_complete_check(k, "FiniteProducts").verdict == "NotComplete"
    assert phi_complete_check(k, "FiniteProducts", side="PK").verdict == "Complete"


# closure


def test_closure_under_products_on_the_point():
    c = phi_closure(FiniteCategory.terminal(), "FiniteProducts", 10)
    assert len(c.members) == 1 and c.stable


def test_closure_under_coproducts_on_the_point():
    c = phi_closure(FiniteCategory.terminal(), "FiniteCoproducts", 10, max_size=3)
    assert sorted(len(f.value("*")) for f in c.members) == [0, 1, 2, 3]
    assert not c.stable


def test_closure_bound_semantics():
    d = FiniteCategory.discrete(FINSET, [0, 1])
    full = phi_closure(d, "FiniteProducts", 10)
    assert full.stable and len(full.members) == 4
    assert not phi_closure(d, "FiniteProducts", 3).stable
    with pytest.raises(SpcalcError):
        phi_closure(builtin_procedural("DiscreteNat"), "FiniteProducts", 3)
    with pytest.raises(SpcalcError):
        phi_closure(d, "Pullbacks", 3)


@settings(max_examples=15)
@given(st.integers(0, 10_000))
def test_shape_diagrams_are_functors(seed):
    from spcalc.category import validate_functor
    from spcalc.completeness import LimitClass

    k = random_category(seed, max_objects=3)
    for shape in LimitClass("FiniteLimits").shapes(k.base):
        for s in shape_diagrams(k, shape, list(k.objects()), 20):
            assert validate_functor(s).ok
