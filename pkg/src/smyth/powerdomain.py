"""The powerdomain of a finite spectral space.

The points are the nonempty inverse-closed subsets of the base, which
here means the nonempty down-sets, ordered by inclusion.  The topology
generated by the basic opens ``{points contained in a fixed open}``
turns the inclusion order back into a specialization order, so the
whole space is again described by a finite poset, and the base embeds
into it by sending each element to its principal down-set.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import CapacityError, NotOpenError, RangeError
from .poset import (
    FinitePoset,
    canonical_sort,
    check_subset,
    dimension,
    down_closure,
    enumerate_down_sets,
    is_chain,
    is_down_set,
    iter_bits,
    mask_of,
    order_dual,
    resolve_capacity,
)
from .report import CheckReport, failed, passed


@dataclass(frozen=True, eq=False)
class PowerdomainSpace:
    """A built powerdomain.

    ``points`` lists the member masks in canonical order (size, then
    mask value), ``order`` is the inclusion order on point indices, and
    ``phi_index[x]`` locates the principal down-set of element ``x``.
    The plain construction has no empty point; the hatted variant adds
    mask 0 as a bottom point.
    """

    base: FinitePoset
    points: tuple[int, ...]
    order: FinitePoset
    phi_index: tuple[int, ...]
    point_index: dict[int, int] = field(repr=False)

    @property
    def has_empty_point(self) -> bool:
        return bool(self.points) and self.points[0] == 0

    def point_label(self, index: int) -> str:
        """Brace rendering of a point's member set, e.g. ``{a,b}``."""
        names = (self.base.label_of(i) for i in iter_bits(self.points[index]))
        return "{" + ",".join(names) + "}"


def _assemble(base: FinitePoset, masks: tuple[int, ...]) -> PowerdomainSpace:
    points = canonical_sort(masks)
    count = len(points)
    point_index = {mask: i for i, mask in enumerate(points)}
    up = [0] * count
    for i, small in enumerate(points):
        row = 0
        for j, big in enumerate(points):
            if small & ~big == 0:
                row |= 1 << j
        up[i] = row
    down = [0] * count
    for i in range(count):
        for j in iter_bits(up[i]):
            down[j] |= 1 << i
    order = FinitePoset(count, tuple(up), tuple(down))
    phi = tuple(point_index[down_closure(base, 1 << x)] for x in range(base.n))
    return PowerdomainSpace(base, points, order, phi, point_index)


@lru_cache(maxsize=None)
def _build(base: FinitePoset, include_empty: bool, capacity: int) -> PowerdomainSpace:
    masks = enumerate_down_sets(base, include_empty, capacity)
    return _assemble(base, masks)


def build(base: FinitePoset, capacity: int | None = None) -> PowerdomainSpace:
    """Powerdomain on the nonempty down-sets of ``base``."""
    return _build(base, False, resolve_capacity(capacity))


def hat_powerdomain(base: FinitePoset, capacity: int | None = None) -> PowerdomainSpace:
    """The powerdomain extended with the empty set as a bottom point.

    The empty mask is itself open, and the set of points contained in it
    is exactly the new bottom, so the plain powerdomain sits inside as
    the closed complement of that basic open.
    """
    space = _build(base, True, resolve_capacity(capacity))
    assert basic_open(space, 0) == frozenset({0}) and space.points[0] == 0
    assert space.points[1:] == build(base, capacity).points
    return space


def inverse_powerdomain(base: FinitePoset, capacity: int | None = None) -> PowerdomainSpace:
    """Powerdomain of the inverse space: points are nonempty up-sets."""
    return _build(order_dual(base), False, resolve_capacity(capacity))


def phi(space: PowerdomainSpace, element: int) -> int:
    """Index of the point that is the principal down-set of ``element``."""
    if not 0 <= element < space.base.n:
        raise RangeError(f"element {element} is out of range")
    return space.phi_index[element]


def basic_open(space: PowerdomainSpace, omega: int) -> frozenset[int]:
    """Indices of the points contained in the open ``omega``.

    These sets form the defining basis of the powerdomain topology.
    """
    check_subset(space.base, omega)
    if not is_down_set(space.base, omega):
        raise NotOpenError(f"mask {omega:#x} is not a down-set of the base")
    return frozenset(
        i for i, member in enumerate(space.points) if member & ~omega == 0
    )


def vietoris_open(space: PowerdomainSpace, omega: int) -> frozenset[int]:
    """The upper-Vietoris open of ``omega``: hit-free containment.

    Computed through the inclusion order (the points below ``omega``
    seen as a point) rather than by re-filtering members, and checked
    against basic_open; the two constructions give the same topology.
    """
    check_subset(space.base, omega)
    if not is_down_set(space.base, omega):
        raise NotOpenError(f"mask {omega:#x} is not a down-set of the base")
    index = space.point_index.get(omega)
    if index is None:
        result: frozenset[int] = frozenset()
    else:
        result = frozenset(iter_bits(space.order.down[index]))
    assert result == basic_open(space, omega)
    return result


def is_phi_surjective(space: PowerdomainSpace) -> bool:
    """Whether every point is principal; true exactly for chain bases."""
    principal = set(space.phi_index)
    onto = len(principal) == len(space.points)
    assert onto == is_chain(space.base)
    return onto


def powerdomain_dimension(space: PowerdomainSpace) -> int:
    """Dimension of the powerdomain: the longest point chain minus one."""
    return dimension(space.order)


@dataclass(frozen=True)
class IterateResult:
    """Point counts of the iterated construction, possibly cut short.

    ``sizes[0]`` is the size of the starting poset; entry ``k`` the size
    of the k-fold powerdomain.  When a stage would exceed the capacity,
    ``truncated`` is set and the sizes stop at the last finished stage.
    """

    sizes: tuple[int, ...]
    truncated: bool


def iterate_sizes(
    base: FinitePoset, k: int, capacity: int | None = None
) -> IterateResult:
    """Sizes along repeated application of the construction."""
    if k < 0:
        raise RangeError(f"iteration count must be nonnegative, got {k}")
    limit = resolve_capacity(capacity)
    sizes = [base.n]
    current = base
    for _ in range(k):
        try:
            space = build(current, limit)
        except CapacityError:
            return IterateResult(tuple(sizes), True)
        sizes.append(len(space.points))
        current = space.order
    return IterateResult(tuple(sizes), False)


def _serialize(base: FinitePoset) -> dict:
    doc = {"n": base.n, "covers": [list(p) for p in base.cover_pairs()]}
    if base.labels is not None:
        doc["labels"] = list(base.labels)
    return doc


def check_embedding_theorem(
    space: PowerdomainSpace, capacity: int | None = None
) -> CheckReport:
    """Verify the embedding package for one built powerdomain.

    Checks, in order: the basic opens are a basis closed under
    intersection and rebuild the inclusion order; point containment
    coincides with the order; the principal-point map is injective,
    reflects the order both ways, and pulls every basic open back to
    exactly its defining open; the space has one maximal point, the full
    set; and every nonempty basic open contains a principal point, so
    the image of the base is dense.
    """
    prop = "embedding-theorem"
    instance = _serialize(space.base)
    base = space.base
    opens = enumerate_down_sets(base, True, capacity)
    open_of = {omega: basic_open(space, omega) for omega in opens}

    for a in opens:
        for b in opens:
            meet = open_of[a] & open_of[b]
            if meet != open_of[a & b]:
                return failed(prop, instance, law="basis-intersection",
                              left=a, right=b)

    for i, small in enumerate(space.points):
        for j, big in enumerate(space.points):
            if space.order.leq(i, j) != (small & ~big == 0):
                return failed(prop, instance, law="order-is-containment",
                              left=i, right=j)

    if len(set(space.phi_index)) != base.n:
        return failed(prop, instance, law="injective")
    for x in range(base.n):
        for y in range(base.n):
            if base.leq(x, y) != space.order.leq(space.phi_index[x],
                                                 space.phi_index[y]):
                return failed(prop, instance, law="order-embedding",
                              left=x, right=y)
    for omega in opens:
        pulled = mask_of(
            x for x in range(base.n) if space.phi_index[x] in open_of[omega]
        )
        if pulled != omega:
            return failed(prop, instance, law="basic-open-pullback", open=omega)

    maximal = [
        i for i in range(len(space.points))
        if space.order.up[i] == 1 << i
    ]
    if len(maximal) != 1 or space.points[maximal[0]] != base.full:
        return failed(prop, instance, law="unique-maximal-point",
                      maximal=maximal)

    principal = set(space.phi_index)
    for omega in opens:
        members = open_of[omega]
        if members and not members & principal:
            return failed(prop, instance, law="density", open=omega)

    return passed(prop, instance)
