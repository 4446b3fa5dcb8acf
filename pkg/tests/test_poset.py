"""Core order structure: construction, closures, sups, enumeration."""

import pytest
from hypothesis import given, settings, strategies as st

from smyth import (
    CapacityError,
    CycleError,
    FinitePoset,
    RangeError,
    dimension,
    down_closure,
    enumerate_down_sets,
    find_isomorphism,
    is_chain,
    is_down_set,
    is_up_set,
    linear_extension,
    order_dual,
    sup,
    up_closure,
)
from smyth.poset import (
    CAPACITY_ENV_VAR,
    DEFAULT_CAPACITY,
    _down_sets_by_extension,
    _down_sets_by_filter,
    binary_sup,
    canonical_sort,
    check_subset,
    heights,
    induced,
    iter_bits,
    mask_of,
    relabel,
    resolve_capacity,
)

from conftest import antichain, chain, diamond_poset, posets, subsets, vee_poset


def test_cover_construction(vee):
    assert vee.n == 3
    assert vee.labels == ("a1", "a2", "b")
    assert vee.cover_pairs() == ((0, 2), (1, 2))
    assert vee.leq(0, 2) and vee.leq(1, 2)
    assert not vee.leq(0, 1) and not vee.leq(2, 0)
    assert vee.leq(0, 0)


def test_transitive_closure_of_covers():
    p = chain(4)
    assert p.leq(0, 3)
    assert p.down[3] == 0b1111
    assert p.up[0] == 0b1111


def test_cycle_rejected():
    with pytest.raises(CycleError):
        FinitePoset.from_cover_relations(3, [(0, 1), (1, 2), (2, 0)])
    with pytest.raises(CycleError):
        FinitePoset.from_cover_relations(2, [(0, 1), (1, 0)])


def test_bad_cover_index():
    with pytest.raises(RangeError):
        FinitePoset.from_cover_relations(2, [(0, 2)])
    with pytest.raises(RangeError):
        FinitePoset.from_cover_relations(0, [])


def test_direct_construction_validation():
    with pytest.raises(RangeError):
        FinitePoset(2, up=(0b10, 0b10), down=(0b01, 0b11))  # 0 not reflexive
    with pytest.raises(RangeError):
        FinitePoset(2, up=(0b01,), down=(0b01,))  # row count mismatch
    with pytest.raises(ValueError):
        # up says 1 <= 0 but down[0] does not list 1
        FinitePoset(2, up=(0b01, 0b11), down=(0b01, 0b10))
    with pytest.raises(ValueError):
        # 0 <= 1 <= 2 without 0 <= 2
        FinitePoset(
            3,
            up=(0b011, 0b110, 0b100),
            down=(0b001, 0b011, 0b110),
        )


def test_mask_helpers():
    assert mask_of([0, 2]) == 0b101
    assert list(iter_bits(0b1011)) == [0, 1, 3]
    assert mask_of(iter_bits(0b10110)) == 0b10110


def test_check_subset_range(vee):
    check_subset(vee, 0b111)
    with pytest.raises(RangeError):
        check_subset(vee, 0b1000)
    with pytest.raises(RangeError):
        check_subset(vee, -1)


def test_closures_on_vee(vee):
    assert down_closure(vee, 0b100) == 0b111
    assert up_closure(vee, 0b001) == 0b101
    assert down_closure(vee, 0b011) == 0b011
    assert is_down_set(vee, 0b011)
    assert not is_down_set(vee, 0b100)
    assert is_up_set(vee, 0b100)
    assert not is_up_set(vee, 0b001)


@given(subsets())
def test_closure_laws(case):
    poset, mask = case
    down = down_closure(poset, mask)
    up = up_closure(poset, mask)
    assert down & mask == mask and up & mask == mask
    assert down_closure(poset, down) == down
    assert up_closure(poset, up) == up
    assert is_down_set(poset, down)
    assert is_up_set(poset, up)


@given(subsets())
def test_closure_duality(case):
    poset, mask = case
    dual = order_dual(poset)
    assert up_closure(poset, mask) == down_closure(dual, mask)
    assert is_down_set(poset, mask) == is_up_set(dual, mask)


@given(posets())
def test_order_dual_involution(poset):
    assert order_dual(order_dual(poset)) == poset


def test_heights_and_dimension(vee):
    assert heights(vee) == (0, 0, 1)
    assert dimension(vee) == 1
    assert dimension(chain(4)) == 3
    assert dimension(antichain(5)) == 0
    assert dimension(diamond_poset()) == 2


def test_sup_examples(vee):
    assert sup(vee, 0b011) == 2
    assert sup(vee, 0b001) == 0
    assert sup(vee, 0b111) == 2
    assert sup(vee, 0) is None
    assert sup(antichain(2), 0b11) is None
    assert binary_sup(vee, 0, 1) == 2
    assert binary_sup(antichain(2), 0, 1) is None


def test_sup_requires_least_upper_bound():
    # two minimal upper bounds, so no sup even though upper bounds exist
    p = FinitePoset.from_cover_relations(4, [(0, 2), (0, 3), (1, 2), (1, 3)])
    assert sup(p, 0b0011) is None


@given(subsets())
def test_sup_is_least_upper_bound(case):
    poset, mask = case
    value = sup(poset, mask)
    if mask == 0:
        assert value is None
        return
    uppers = [z for z in range(poset.n) if mask & ~poset.down[z] == 0]
    if value is None:
        assert not uppers or all(
            any(not poset.leq(u, w) for w in uppers) for u in uppers
        )
    else:
        assert value in uppers
        assert all(poset.leq(value, w) for w in uppers)


def test_linear_extension_vee(vee):
    assert linear_extension(vee) == (0, 1, 2)


@given(posets())
def test_linear_extension_prefixes_are_down_sets(poset):
    order = linear_extension(poset)
    assert sorted(order) == list(range(poset.n))
    seen = 0
    for x in order:
        assert poset.down[x] & ~(seen | (1 << x)) == 0
        seen |= 1 << x
        assert is_down_set(poset, seen)


def test_is_chain():
    assert is_chain(chain(1)) and is_chain(chain(5))
    assert not is_chain(antichain(2))
    assert not is_chain(vee_poset())


@given(posets())
def test_is_chain_iff_dimension(poset):
    assert is_chain(poset) == (dimension(poset) == poset.n - 1)


def test_relabel_and_isomorphism(vee):
    moved = relabel(vee, (2, 0, 1))
    iso = find_isomorphism(vee, moved)
    assert iso == (0, 2, 1)
    assert all(
        vee.leq(x, y) == moved.leq(iso[x], iso[y])
        for x in range(3)
        for y in range(3)
    )
    assert find_isomorphism(vee, chain(3)) is None
    assert find_isomorphism(vee, antichain(3)) is None
    assert find_isomorphism(chain(2), chain(3)) is None


@given(posets(max_n=5), st.randoms(use_true_random=False))
def test_relabel_round_trip(poset, rng):
    perm = list(range(poset.n))
    rng.shuffle(perm)
    moved = relabel(poset, tuple(perm))
    assert find_isomorphism(poset, moved) is not None
    assert moved.n == poset.n


def test_induced_subposet(vee):
    sub, elements = induced(vee, 0b101)
    assert elements == (0, 2)
    assert sub.n == 2
    assert sub.leq(0, 1)
    assert sub.labels == ("a1", "b")


def test_canonical_sort():
    assert canonical_sort([0b11, 0b1, 0b100, 0b10]) == (0b1, 0b10, 0b100, 0b11)


def test_enumerate_down_sets_counts(vee):
    assert enumerate_down_sets(chain(3), include_empty=False) == (1, 3, 7)
    assert enumerate_down_sets(chain(3)) == (0, 1, 3, 7)
    assert len(enumerate_down_sets(antichain(3), include_empty=False)) == 7
    assert enumerate_down_sets(vee, include_empty=False) == (
        0b001,
        0b010,
        0b011,
        0b111,
    )


@given(posets())
def test_enumerate_down_sets_matches_filter(poset):
    fast = enumerate_down_sets(poset)
    slow = tuple(m for m in range(1 << poset.n) if is_down_set(poset, m))
    assert sorted(fast) == sorted(slow)
    assert fast == canonical_sort(fast)


def test_enumerate_down_sets_capacity(vee):
    with pytest.raises(CapacityError):
        enumerate_down_sets(antichain(8), capacity=100)
    assert len(enumerate_down_sets(antichain(8), capacity=256)) == 256


def test_resolve_capacity(monkeypatch):
    monkeypatch.delenv(CAPACITY_ENV_VAR, raising=False)
    assert resolve_capacity(None) == DEFAULT_CAPACITY
    assert resolve_capacity(42) == 42
    monkeypatch.setenv(CAPACITY_ENV_VAR, "777")
    assert resolve_capacity(None) == 777
    assert resolve_capacity(10) == 10
    monkeypatch.setenv(CAPACITY_ENV_VAR, "bogus")
    with pytest.raises(RangeError):
        resolve_capacity(None)
    with pytest.raises(RangeError):
        resolve_capacity(0)


@settings(max_examples=40)
@given(posets(max_n=8))
def test_enumeration_strategies_agree(poset):
    # the mask filter is the oracle for the extension-growing strategy
    limit = DEFAULT_CAPACITY
    assert sorted(_down_sets_by_extension(poset, limit)) == sorted(
        _down_sets_by_filter(poset, limit)
    )


def test_extension_strategy_capacity():
    with pytest.raises(CapacityError):
        _down_sets_by_extension(antichain(10), 50)
