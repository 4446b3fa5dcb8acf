"""Finite posets as bit-relation rows.

A finite T0 space is determined by its specialization order, so a poset
carries the whole topology: the open sets are exactly the down-sets and
every construction in this package reduces to order arithmetic.

Subsets are plain ints used as bit masks: bit ``i`` set means element
``i`` is a member.  Masks are arbitrary-precision, so posets are not
limited to machine-word size; the practical ceiling is the enumeration
capacity, not the mask width.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import CapacityError, CycleError, RangeError

DEFAULT_CAPACITY = 1 << 20
CAPACITY_ENV_VAR = "SPECTRAL_CAPACITY"


def resolve_capacity(capacity: int | None) -> int:
    """Explicit argument, else the SPECTRAL_CAPACITY variable, else 2**20."""
    if capacity is not None:
        if capacity < 1:
            raise RangeError(f"capacity must be positive, got {capacity}")
        return capacity
    raw = os.environ.get(CAPACITY_ENV_VAR)
    if raw is None:
        return DEFAULT_CAPACITY
    try:
        value = int(raw)
    except ValueError as exc:
        raise RangeError(f"{CAPACITY_ENV_VAR} is not an integer: {raw!r}") from exc
    if value < 1:
        raise RangeError(f"{CAPACITY_ENV_VAR} must be positive, got {value}")
    return value


def mask_of(indices: Iterable[int]) -> int:
    """Bit mask with the given element indices set."""
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def iter_bits(mask: int) -> Iterator[int]:
    """Indices of the set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class FinitePoset:
    """A partial order on ``range(n)`` stored as bit rows both ways.

    ``up[i]`` is the mask of every ``j`` with ``i <= j`` and ``down[i]``
    the mask of every ``j`` with ``j <= i``.  Keeping both directions
    makes the two closure operators plain OR-folds over rows.
    """

    n: int
    up: tuple[int, ...]
    down: tuple[int, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise RangeError(f"a poset needs at least one element, got n={self.n}")
        if len(self.up) != self.n or len(self.down) != self.n:
            raise RangeError("relation rows do not match the element count")
        if self.labels is not None and len(self.labels) != self.n:
            raise RangeError("labels do not match the element count")
        full = (1 << self.n) - 1
        for i in range(self.n):
            if self.up[i] & ~full or self.down[i] & ~full:
                raise RangeError(f"row {i} mentions elements outside range(n)")
            if not self.up[i] >> i & 1:
                raise RangeError(f"relation is not reflexive at {i}")
        for i in range(self.n):
            meet = self.up[i] & self.down[i]
            if meet != 1 << i:
                raise CycleError(
                    f"elements {i} and {next(iter_bits(meet ^ (1 << i)))} "
                    "are each below the other"
                )
            for j in iter_bits(self.up[i]):
                if self.up[j] & ~self.up[i]:
                    raise ValueError(f"relation is not transitive above {i}")
                if not self.down[j] >> i & 1:
                    raise ValueError("down rows are not the transpose of up rows")

    @classmethod
    def from_cover_relations(
        cls,
        n: int,
        pairs: Iterable[tuple[int, int]],
        labels: Iterable[str] | None = None,
    ) -> "FinitePoset":
        """Poset generated by ``i <= j`` for each pair ``(i, j)``.

        The pairs may be covers or any generating relations; the
        reflexive-transitive closure is applied.  Cyclic input raises
        CycleError.
        """
        if n < 1:
            raise RangeError(f"a poset needs at least one element, got n={n}")
        up = [1 << i for i in range(n)]
        for i, j in pairs:
            if not (0 <= i < n and 0 <= j < n):
                raise RangeError(f"relation ({i}, {j}) is out of range for n={n}")
            up[i] |= 1 << j
        for k in range(n):
            row_k = up[k]
            bit_k = 1 << k
            for i in range(n):
                if up[i] & bit_k:
                    up[i] |= row_k
        for i in range(n):
            for j in iter_bits(up[i] & ~(1 << i)):
                if up[j] >> i & 1:
                    raise CycleError(f"elements {i} and {j} are each below the other")
        down = [0] * n
        for i in range(n):
            for j in iter_bits(up[i]):
                down[j] |= 1 << i
        label_tuple = None if labels is None else tuple(labels)
        return cls(n, tuple(up), tuple(down), label_tuple)

    @property
    def full(self) -> int:
        """Mask of all elements."""
        return (1 << self.n) - 1

    def leq(self, i: int, j: int) -> bool:
        """Whether ``i <= j``."""
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise RangeError(f"({i}, {j}) is out of range for n={self.n}")
        return bool(self.up[i] >> j & 1)

    def cover_pairs(self) -> tuple[tuple[int, int], ...]:
        """The covering pairs ``(i, j)``: ``i < j`` with nothing between."""
        pairs = []
        for i in range(self.n):
            strictly_above = self.up[i] & ~(1 << i)
            for j in iter_bits(strictly_above):
                between = strictly_above & self.down[j] & ~(1 << j)
                if not between:
                    pairs.append((i, j))
        return tuple(pairs)

    def label_of(self, i: int) -> str:
        return self.labels[i] if self.labels is not None else str(i)


def check_subset(poset: FinitePoset, subset: int) -> int:
    """Validate that ``subset`` only mentions elements of ``poset``."""
    if subset < 0 or subset & ~poset.full:
        raise RangeError(f"mask {subset:#x} is not a subset of range({poset.n})")
    return subset


def down_closure(poset: FinitePoset, subset: int) -> int:
    """Every element lying below some member of ``subset``."""
    check_subset(poset, subset)
    closed = 0
    for i in iter_bits(subset):
        closed |= poset.down[i]
    return closed


def up_closure(poset: FinitePoset, subset: int) -> int:
    """Every element lying above some member of ``subset``."""
    check_subset(poset, subset)
    closed = 0
    for i in iter_bits(subset):
        closed |= poset.up[i]
    return closed


def is_down_set(poset: FinitePoset, subset: int) -> bool:
    """Whether ``subset`` is closed downward."""
    return down_closure(poset, subset) == subset


def is_up_set(poset: FinitePoset, subset: int) -> bool:
    """Whether ``subset`` is closed upward."""
    return up_closure(poset, subset) == subset


def order_dual(poset: FinitePoset) -> FinitePoset:
    """The same elements with the order reversed."""
    return FinitePoset(poset.n, poset.down, poset.up, poset.labels)


def heights(poset: FinitePoset) -> tuple[int, ...]:
    """Length of the longest chain strictly below each element."""
    result = [0] * poset.n
    for i in linear_extension(poset):
        below = poset.down[i] & ~(1 << i)
        result[i] = max((result[j] + 1 for j in iter_bits(below)), default=0)
    return tuple(result)


def dimension(poset: FinitePoset) -> int:
    """Longest chain length minus one (the Krull dimension)."""
    return max(heights(poset))


def sup(poset: FinitePoset, subset: int) -> int | None:
    """Least upper bound of ``subset``, or None when there is none.

    Computed as the minimum of the common upper bounds; None covers both
    failure modes (no upper bound at all and no least one).  The empty
    subset always yields None here; callers wanting a bottom element must
    ask for it explicitly.
    """
    check_subset(poset, subset)
    if subset == 0:
        return None
    bounds = poset.full
    for i in iter_bits(subset):
        bounds &= poset.up[i]
    for m in iter_bits(bounds):
        if bounds & ~poset.up[m] == 0:
            return m
    return None


def binary_sup(poset: FinitePoset, i: int, j: int) -> int | None:
    """Least upper bound of two elements, or None."""
    bounds = poset.up[i] & poset.up[j]
    for m in iter_bits(bounds):
        if bounds & ~poset.up[m] == 0:
            return m
    return None


def linear_extension(poset: FinitePoset) -> tuple[int, ...]:
    """A linear order refining the poset, smallest eligible index first.

    Every prefix of the result is a down-set.
    """
    remaining = poset.full
    out = []
    while remaining:
        for i in iter_bits(remaining):
            if poset.down[i] & remaining == 1 << i:
                out.append(i)
                remaining ^= 1 << i
                break
        else:
            raise CycleError("no minimal element; relation is not a partial order")
    return tuple(out)


def is_chain(poset: FinitePoset) -> bool:
    """Whether every two elements are comparable."""
    return dimension(poset) == poset.n - 1


def _signatures(poset: FinitePoset) -> tuple[tuple[int, int, int, int], ...]:
    hs = heights(poset)
    ds = heights(order_dual(poset))
    return tuple(
        (poset.down[i].bit_count(), poset.up[i].bit_count(), hs[i], ds[i])
        for i in range(poset.n)
    )


def find_isomorphism(left: FinitePoset, right: FinitePoset) -> tuple[int, ...] | None:
    """An order-isomorphism ``left -> right`` as an image tuple, or None.

    Backtracking over elements with matching local invariants (down-set
    and up-set sizes, height, depth); the lexicographically first
    isomorphism in that search order is returned, so the result is
    deterministic.
    """
    if left.n != right.n:
        return None
    sig_l = _signatures(left)
    sig_r = _signatures(right)
    if sorted(sig_l) != sorted(sig_r):
        return None
    candidates = [
        [j for j in range(right.n) if sig_r[j] == sig_l[i]] for i in range(left.n)
    ]
    variable_order = sorted(range(left.n), key=lambda i: len(candidates[i]))
    image = [-1] * left.n
    used = [False] * right.n

    def assign(k: int) -> bool:
        if k == left.n:
            return True
        i = variable_order[k]
        for j in candidates[i]:
            if used[j]:
                continue
            ok = True
            for i0 in variable_order[:k]:
                j0 = image[i0]
                if left.leq(i, i0) != right.leq(j, j0) or left.leq(i0, i) != right.leq(
                    j0, j
                ):
                    ok = False
                    break
            if ok:
                image[i] = j
                used[j] = True
                if assign(k + 1):
                    return True
                image[i] = -1
                used[j] = False
        return False

    if assign(0):
        return tuple(image)
    return None


def relabel(poset: FinitePoset, image: tuple[int, ...]) -> FinitePoset:
    """Transport the order along a bijection ``i -> image[i]``."""
    if sorted(image) != list(range(poset.n)):
        raise RangeError("relabeling is not a bijection on range(n)")
    up = [0] * poset.n
    for i in range(poset.n):
        up[image[i]] = mask_of(image[j] for j in iter_bits(poset.up[i]))
    down = [0] * poset.n
    for i in range(poset.n):
        for j in iter_bits(up[i]):
            down[j] |= 1 << i
    labels = None
    if poset.labels is not None:
        relabeled = [""] * poset.n
        for i in range(poset.n):
            relabeled[image[i]] = poset.labels[i]
        labels = tuple(relabeled)
    return FinitePoset(poset.n, tuple(up), tuple(down), labels)


def induced(poset: FinitePoset, carrier: int) -> tuple[FinitePoset, tuple[int, ...]]:
    """Sub-poset on the elements of ``carrier`` plus the element list.

    The returned poset renumbers the carrier ascending; the second value
    maps new indices back to the originals.
    """
    check_subset(poset, carrier)
    elements = tuple(iter_bits(carrier))
    if not elements:
        raise RangeError("the induced sub-poset needs a nonempty carrier")
    position = {e: k for k, e in enumerate(elements)}
    up = tuple(
        mask_of(position[j] for j in iter_bits(poset.up[e] & carrier))
        for e in elements
    )
    down = tuple(
        mask_of(position[j] for j in iter_bits(poset.down[e] & carrier))
        for e in elements
    )
    labels = None
    if poset.labels is not None:
        labels = tuple(poset.labels[e] for e in elements)
    return FinitePoset(len(elements), up, down, labels), elements


def canonical_sort(masks: Iterable[int]) -> tuple[int, ...]:
    """Subset masks ordered by size then by mask value."""
    return tuple(sorted(masks, key=lambda m: (m.bit_count(), m)))


def _down_sets_by_filter(poset: FinitePoset, limit: int) -> list[int]:
    """Scan every subset mask and keep the down-sets.  The slow oracle."""
    found = []
    for mask in range(1 << poset.n):
        if is_down_set(poset, mask):
            found.append(mask)
            if len(found) > limit + 1:
                raise CapacityError(
                    f"more than {limit} down-sets on {poset.n} elements"
                )
    return found


def _down_sets_by_extension(poset: FinitePoset, limit: int) -> list[int]:
    """Grow down-sets one new maximal element at a time.

    Walking a linear extension guarantees each down-set is produced
    exactly once, so no non-down-set mask is ever touched.
    """
    found = [0]
    for x in linear_extension(poset):
        need = poset.down[x] & ~(1 << x)
        bit = 1 << x
        found.extend([d | bit for d in found if need & ~d == 0])
        if len(found) > limit + 1:
            raise CapacityError(
                f"more than {limit} down-sets on {poset.n} elements"
            )
    return found


def enumerate_down_sets(
    poset: FinitePoset,
    include_empty: bool = True,
    capacity: int | None = None,
) -> tuple[int, ...]:
    """All down-set masks of ``poset`` in canonical order.

    Two strategies: for n <= 12 every mask is scanned and filtered,
    which doubles as the correctness oracle; beyond that only genuine
    down-sets are generated, one new maximal element at a time along a
    linear extension, so the cost tracks the output size instead of
    2**n.  CapacityError fires as soon as the count passes the budget.
    """
    limit = resolve_capacity(capacity)
    if poset.n <= 12:
        found = _down_sets_by_filter(poset, limit)
    else:
        found = _down_sets_by_extension(poset, limit)
    if not include_empty:
        found.remove(0)
    if len(found) > limit:
        raise CapacityError(f"more than {limit} down-sets on {poset.n} elements")
    return canonical_sort(found)
