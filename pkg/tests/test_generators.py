import itertools

from hypothesis import given, settings
from hypothesis import strategies as st

from spcalc.category import validate_category, validate_functor
from spcalc.generators import (
    lattice_family, poset_family, random_category, random_closure_lattice, random_monotone_map, random_poset,
    random_presheaf,
)


def shape(k):
    pairs = itertools.product(k.objects(), repeat=2)
    return tuple(k.objects()), tuple(((a, b), len(k.hom(a, b).carrier)) for a, b in pairs)


def le(k, a, b):
    return bool(k.hom(a, b).carrier)


def test_same_seed_same_category():
    assert shape(random_category(9)) == shape(random_category(9))
    assert random_category(9).composition_table() == random_category(9).composition_table()


def test_same_seed_same_presheaf():
    k = random_category(3)
    f, g = random_presheaf(4, k), random_presheaf(4, k)
    assert f.support == g.support and f.action == g.action


def test_families_are_reproducible():
    a = [shape(k) for k in lattice_family(11, count=10)]
    assert a == [shape(k) for k in lattice_family(11, count=10)]
    assert [shape(k) for k in poset_family(2, count=10)] == [shape(k) for k in poset_family(2, count=10)]


@settings(max_examples=30)
@given(st.integers(0, 100_000))
def test_random_structures_are_valid(seed):
    k = random_category(seed, max_objects=3)
    assert validate_category(k).ok
    random_presheaf(seed, k)  # construction checks functoriality


@settings(max_examples=30)
@given(st.integers(0, 100_000))
def test_closure_lattices_are_meet_closed(seed):
    sets = random_closure_lattice(seed, max_size=5)
    assert 1 <= len(sets) <= 5
    assert len(set(sets)) == len(sets)
    for s, t in itertools.combinations(sets, 2):
        assert s & t in sets


@settings(max_examples=30)
@given(st.integers(0, 100_000))
def test_posets_are_partial_orders(seed):
    k = random_poset(seed, max_size=6)
    objs = k.objects()
    assert 1 <= len(objs) <= 6
    for a, b in itertools.product(objs, repeat=2):
        if a != b:
            assert not (le(k, a, b) and le(k, b, a))


@settings(max_examples=20)
@given(st.integers(0, 100_000))
def test_monotone_maps_preserve_order(seed):
    src, tgt = random_poset(seed, max_size=4), random_poset(seed + 1, max_size=4)
    f = random_monotone_map(seed, src, tgt)
    assert validate_functor(f).ok
    for a, b in itertools.product(src.objects(), repeat=2):
        if le(src, a, b):
            assert le(tgt, f(a), f(b))
