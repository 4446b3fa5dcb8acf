"""Maps between finite posets and the induced maps of powerdomains.

Between finite spectral spaces the spectral maps are exactly the
monotone ones, so MonotoneMap is the single arrow type.  Applying a map
to a powerdomain point and closing downward gives the induced map of
powerdomains; it restricts to the original map on principal points and
sits below every other monotone map doing so.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass
from functools import lru_cache

from .errors import (
    CapacityError,
    CompositionMismatchError,
    IrreducibilityError,
    NotIsomorphismError,
    NotSpectralError,
    RangeError,
)
from .poset import (
    FinitePoset,
    down_closure,
    enumerate_down_sets,
    is_down_set,
    iter_bits,
    mask_of,
    resolve_capacity,
)
from .powerdomain import PowerdomainSpace, build
from .report import CheckReport, failed, passed


@dataclass(frozen=True)
class MonotoneMap:
    """A map ``source -> target`` given by its image tuple.

    Monotonicity is validated eagerly; use ``unchecked`` to carry a raw
    assignment (for example to feed is_spectral a bad one).
    """

    source: FinitePoset
    target: FinitePoset
    image: tuple[int, ...]
    validate: InitVar[bool] = True

    def __post_init__(self, validate: bool) -> None:
        if len(self.image) != self.source.n:
            raise RangeError("image tuple does not match the source size")
        for value in self.image:
            if not 0 <= value < self.target.n:
                raise RangeError(f"image value {value} is out of range")
        if validate:
            violation = _monotonicity_violation(self)
            if violation is not None:
                x, y = violation
                raise NotSpectralError(
                    f"{x} <= {y} in the source but the images are unordered"
                )

    @classmethod
    def unchecked(
        cls, source: FinitePoset, target: FinitePoset, image: tuple[int, ...]
    ) -> "MonotoneMap":
        return cls(source, target, tuple(image), validate=False)

    def __call__(self, element: int) -> int:
        return self.image[element]

    def image_mask(self, subset: int) -> int:
        """Mask of images of the members of ``subset``."""
        return mask_of(self.image[x] for x in iter_bits(subset))


def _monotonicity_violation(f: MonotoneMap) -> tuple[int, int] | None:
    for x in range(f.source.n):
        fx_up = f.target.up[f.image[x]]
        for y in iter_bits(f.source.up[x]):
            if not fx_up >> f.image[y] & 1:
                return x, y
    return None


def identity(poset: FinitePoset) -> MonotoneMap:
    return MonotoneMap(poset, poset, tuple(range(poset.n)))


def compose(outer: MonotoneMap, inner: MonotoneMap) -> MonotoneMap:
    """The composite ``outer after inner``."""
    if inner.target != outer.source:
        raise CompositionMismatchError("middle posets differ")
    return MonotoneMap(
        inner.source, outer.target, tuple(outer.image[v] for v in inner.image)
    )


def is_spectral(f: MonotoneMap, capacity: int | None = None) -> bool:
    """Whether preimages of down-sets are down-sets.

    This is the direct topological reading; for finite posets it agrees
    with monotonicity, which is the cheap pairwise test the constructor
    applies.
    """
    for omega in enumerate_down_sets(f.target, True, capacity):
        preimage = mask_of(
            x for x in range(f.source.n) if omega >> f.image[x] & 1
        )
        if not is_down_set(f.source, preimage):
            return False
    return True


@lru_cache(maxsize=None)
def _powerdomain_map(f: MonotoneMap, capacity: int) -> MonotoneMap:
    if _monotonicity_violation(f) is not None:
        raise NotSpectralError("the assignment is not monotone")
    source_space = build(f.source, capacity)
    target_space = build(f.target, capacity)
    image = tuple(
        target_space.point_index[down_closure(f.target, f.image_mask(member))]
        for member in source_space.points
    )
    return MonotoneMap(source_space.order, target_space.order, image)


def powerdomain_map(f: MonotoneMap, capacity: int | None = None) -> MonotoneMap:
    """The induced map of powerdomains: apply ``f``, close downward."""
    return _powerdomain_map(f, resolve_capacity(capacity))


def _serialize_pair(f: MonotoneMap) -> dict:
    doc = {
        "source_n": f.source.n,
        "source_covers": [list(p) for p in f.source.cover_pairs()],
        "target_n": f.target.n,
        "target_covers": [list(p) for p in f.target.cover_pairs()],
        "image": list(f.image),
    }
    return doc


def check_functor_laws(
    f: MonotoneMap, g: MonotoneMap, capacity: int | None = None
) -> CheckReport:
    """Composition and identity laws of the powerdomain construction."""
    prop = "functor-laws"
    if f.target != g.source:
        raise CompositionMismatchError("maps do not compose")
    instance = {"f": _serialize_pair(f), "g": _serialize_pair(g)}
    lifted_composite = powerdomain_map(compose(g, f), capacity)
    composite_lifted = compose(powerdomain_map(g, capacity),
                               powerdomain_map(f, capacity))
    if lifted_composite != composite_lifted:
        return failed(prop, instance, law="composition",
                      expected=list(lifted_composite.image),
                      got=list(composite_lifted.image))
    for poset in (f.source, f.target, g.target):
        lifted_identity = powerdomain_map(identity(poset), capacity)
        if lifted_identity != identity(lifted_identity.source):
            return failed(prop, instance, law="identity", n=poset.n)
    return passed(prop, instance)


def anchored_extensions(
    source_order: FinitePoset,
    anchors: dict[int, int],
    target: FinitePoset,
    capacity: int | None = None,
    assignment_order: tuple[int, ...] | None = None,
) -> tuple[tuple[int, ...], ...]:
    """All monotone maps ``source_order -> target`` through given anchors.

    Free points are assigned largest first (by the supplied order) with
    forward checking against every already assigned comparable point.
    Results come back sorted by image tuple, so the enumeration order is
    canonical regardless of the search order.
    """
    limit = resolve_capacity(capacity)
    n = source_order.n
    image = [-1] * n
    for index, value in anchors.items():
        image[index] = value
    free = [i for i in range(n) if image[i] < 0]
    if assignment_order is None:
        free.sort(key=lambda i: -source_order.down[i].bit_count())
    else:
        free = [i for i in assignment_order if image[i] < 0]
    found: list[tuple[int, ...]] = []

    def consistent(i: int, value: int) -> bool:
        up_v = target.up[value]
        down_v = target.down[value]
        for j in iter_bits(source_order.up[i]):
            if image[j] >= 0 and not up_v >> image[j] & 1:
                return False
        for j in iter_bits(source_order.down[i]):
            if image[j] >= 0 and not down_v >> image[j] & 1:
                return False
        return True

    for index, value in anchors.items():
        if not consistent(index, value):
            return ()

    def search(k: int) -> None:
        if k == len(free):
            found.append(tuple(image))
            if len(found) > limit:
                raise CapacityError(f"more than {limit} anchored extensions")
            return
        i = free[k]
        for value in range(target.n):
            if consistent(i, value):
                image[i] = value
                search(k + 1)
                image[i] = -1

    search(0)
    return tuple(sorted(found))


def enumerate_extensions(
    f: MonotoneMap, capacity: int | None = None
) -> tuple[MonotoneMap, ...]:
    """Every monotone powerdomain map agreeing with ``f`` on principals.

    The induced map of ``f`` is always among them and is the pointwise
    least; enumerate to verify, not to construct.
    """
    source_space = build(f.source, capacity)
    target_space = build(f.target, capacity)
    anchors = {
        source_space.phi_index[x]: target_space.phi_index[f.image[x]]
        for x in range(f.source.n)
    }
    images = anchored_extensions(
        source_space.order, anchors, target_space.order, capacity
    )
    return tuple(
        MonotoneMap(source_space.order, target_space.order, img) for img in images
    )


def check_minimality(f: MonotoneMap, capacity: int | None = None) -> CheckReport:
    """The induced map is the pointwise-least extension of ``f``."""
    prop = "extension-minimality"
    instance = _serialize_pair(f)
    induced_map = powerdomain_map(f, capacity)
    source_space = build(f.source, capacity)
    target_space = build(f.target, capacity)
    extensions = enumerate_extensions(f, capacity)
    if induced_map not in extensions:
        return failed(prop, instance, law="induced-map-is-an-extension")
    for candidate in extensions:
        for point in range(len(source_space.points)):
            small = target_space.points[induced_map.image[point]]
            big = target_space.points[candidate.image[point]]
            if small & ~big:
                return failed(prop, instance, law="pointwise-least",
                              point=point, candidate=list(candidate.image))
    return passed(prop, instance)


def is_order_isomorphism(f: MonotoneMap) -> bool:
    """Bijective and order-reflecting in both directions."""
    if f.source.n != f.target.n or len(set(f.image)) != f.source.n:
        return False
    for x in range(f.source.n):
        for y in range(f.source.n):
            if f.source.leq(x, y) != f.target.leq(f.image[x], f.image[y]):
                return False
    return True


def lift_homeomorphism(
    source_space: PowerdomainSpace,
    target_space: PowerdomainSpace,
    psi: MonotoneMap,
    capacity: int | None = None,
) -> MonotoneMap:
    """Recover the base map underneath an isomorphism of powerdomains.

    A homeomorphism of the point spaces must send principal points to
    principal points, because those are exactly the points whose member
    set is irreducible among the inverse-closed sets.  Reading off the
    generic points gives the unique base isomorphism inducing ``psi``;
    that identity is verified before returning.
    """
    if psi.source != source_space.order or psi.target != target_space.order:
        raise RangeError("the map does not connect the two given spaces")
    if not is_order_isomorphism(psi):
        raise NotIsomorphismError("the point map is not an order-isomorphism")
    principal_targets = {
        target_space.phi_index[z]: z for z in range(target_space.base.n)
    }
    image = []
    for x in range(source_space.base.n):
        value = psi.image[source_space.phi_index[x]]
        if value not in principal_targets:
            raise IrreducibilityError(
                f"the image of the principal point of {x} is not principal"
            )
        image.append(principal_targets[value])
    base_map = MonotoneMap(source_space.base, target_space.base, tuple(image))
    assert is_order_isomorphism(base_map)
    assert powerdomain_map(base_map, capacity) == psi
    return base_map
