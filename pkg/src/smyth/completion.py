"""Extending maps along the powerdomain embedding via least upper bounds.

A map ``lambda: X -> Z`` extends to the powerdomain of ``X`` by sending
a point to the least upper bound of its image in ``Z``, whenever those
bounds exist.  The extension restricts to ``lambda`` on principal
points, factors through the powerdomain of the image, lies below every
other monotone extension, and is the only sup-preserving one.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CapacityError, RangeError, SigmaUndefinedError
from .maps import MonotoneMap, anchored_extensions
from .poset import (
    FinitePoset,
    binary_sup,
    check_subset,
    down_closure,
    enumerate_down_sets,
    induced,
    iter_bits,
    mask_of,
    resolve_capacity,
    sup,
)
from .powerdomain import PowerdomainSpace, build
from .report import CheckReport, failed, passed, skipped


def fold_sup(poset: FinitePoset, subset: int) -> int | None:
    """Least upper bound by folding binary sups, None as soon as one fails.

    Independent of the common-upper-bound route in ``sup``.  The fold can
    miss a sup that exists (an undefined intermediate join does not rule
    out a bound for the whole set), so None here is inconclusive; a
    non-None result is always the true sup.  Over families whose every
    down-set has a sup the two routes agree everywhere.
    """
    check_subset(poset, subset)
    bits = list(iter_bits(subset))
    if not bits:
        return None
    acc = bits[0]
    for b in bits[1:]:
        joined = binary_sup(poset, acc, b)
        if joined is None:
            return None
        acc = joined
    return acc


@dataclass(frozen=True)
class SigmaMap:
    """The partial sup assignment on the down-sets of a carrier.

    ``domain`` lists the nonempty subsets of ``carrier`` (as masks in
    the ambient indexing) that are down-closed for the induced order;
    ``sups`` holds the least upper bound in the ambient poset for each,
    or None where no such bound exists.
    """

    ambient: FinitePoset
    carrier: int
    domain: tuple[int, ...]
    sups: tuple[int | None, ...]

    @property
    def is_total(self) -> bool:
        return None not in self.sups

    def undefined(self) -> tuple[int, ...]:
        return tuple(c for c, s in zip(self.domain, self.sups) if s is None)

    def value(self, member_mask: int) -> int | None:
        try:
            return self.sups[self.domain.index(member_mask)]
        except ValueError:
            raise RangeError(f"mask {member_mask:#x} is not in the domain") from None


def sigma_map(
    ambient: FinitePoset, carrier: int, capacity: int | None = None
) -> SigmaMap:
    """Sups of the inverse-closed subsets of ``carrier`` inside ``ambient``.

    Partiality stays in-band: missing sups become None entries.  Each
    defined value is cross-checked against the binary-sup fold, and the
    assignment is checked monotone where defined; a violation of either
    would be an ordering bug, not bad input.
    """
    check_subset(ambient, carrier)
    if carrier == 0:
        raise RangeError("the carrier must be nonempty")
    sub, elements = induced(ambient, carrier)
    domain = []
    sups: list[int | None] = []
    for local in enumerate_down_sets(sub, False, capacity):
        member = mask_of(elements[i] for i in iter_bits(local))
        domain.append(member)
        value = sup(ambient, member)
        folded = fold_sup(ambient, member)
        assert folded is None or folded == value
        sups.append(value)
    for i, small in enumerate(domain):
        si = sups[i]
        if si is None:
            continue
        for j, big in enumerate(domain):
            sj = sups[j]
            if sj is not None and small & ~big == 0:
                assert ambient.leq(si, sj), "sups are not monotone in the down-set"
    return SigmaMap(ambient, carrier, tuple(domain), tuple(sups))


def principal_local_basis_check(poset: FinitePoset, capacity: int | None = None) -> bool:
    """Every element has a least open neighborhood of principal shape.

    Scans every open around every element for a witness whose principal
    down-set fits inside; in a finite space the element itself always
    works, but the scan is performed, not presumed.
    """
    for omega in enumerate_down_sets(poset, False, capacity):
        for z in iter_bits(omega):
            witness = None
            for w in iter_bits(poset.up[z]):
                if down_closure(poset, 1 << w) & ~omega == 0:
                    witness = w
                    break
            if witness is None:
                return False
    return True


@dataclass(frozen=True)
class SupExtensionProblem:
    """A map out of a base poset together with that base's powerdomain."""

    base_map: MonotoneMap
    space: PowerdomainSpace

    def __post_init__(self) -> None:
        if self.space.base != self.base_map.source:
            raise RangeError("the powerdomain does not belong to the map's source")

    @classmethod
    def for_map(
        cls, base_map: MonotoneMap, capacity: int | None = None
    ) -> "SupExtensionProblem":
        return cls(base_map, build(base_map.source, capacity))

    @property
    def target(self) -> FinitePoset:
        return self.base_map.target

    def serialize(self) -> dict:
        return {
            "source_n": self.base_map.source.n,
            "source_covers": [list(p) for p in self.base_map.source.cover_pairs()],
            "target_n": self.target.n,
            "target_covers": [list(p) for p in self.target.cover_pairs()],
            "image": list(self.base_map.image),
        }


def lambda_sharp(problem: SupExtensionProblem, capacity: int | None = None) -> MonotoneMap:
    """The sup extension of the base map to the powerdomain.

    Defined when every inverse-closed subset of the image has a sup in
    the target; then each point maps to the sup of its image, which by
    down-closure invariance equals the sup of the image's down-closure.
    """
    lam = problem.base_map
    target = problem.target
    image_carrier = lam.image_mask(lam.source.full)
    sigma = sigma_map(target, image_carrier, capacity)
    if not sigma.is_total:
        first = sigma.undefined()[0]
        raise SigmaUndefinedError(
            f"no sup for image subset {first:#x}", member_mask=first
        )
    values = []
    for member in problem.space.points:
        spread = down_closure(target, lam.image_mask(member))
        value = sup(target, spread)
        assert value is not None, "totality over the image must cover every point"
        assert value == sup(target, lam.image_mask(member))
        values.append(value)
    return MonotoneMap(problem.space.order, target, tuple(values))


def _antichains(poset: FinitePoset, limit: int):
    """Nonempty antichain masks, by backtracking over eligible elements."""
    n = poset.n
    count = 0

    def extend(mask: int, start: int, blocked: int):
        nonlocal count
        for i in range(start, n):
            bit = 1 << i
            if blocked & bit:
                continue
            chosen = mask | bit
            count += 1
            if count > limit:
                raise CapacityError(f"more than {limit} antichains")
            yield chosen
            yield from extend(chosen, i + 1, blocked | poset.up[i] | poset.down[i])

    yield from extend(0, 0, 0)


def is_sup_preserving(f: MonotoneMap, capacity: int | None = None) -> bool:
    """Whether ``f`` carries existing finite sups to sups of the images.

    Quantifies over every nonempty subset of the source that has a least
    upper bound.  A subset and its set of maximal elements share upper
    bounds, and their images share upper bounds too since ``f`` is
    monotone, so only antichains are enumerated; that covers all subsets.
    """
    limit = resolve_capacity(capacity)
    for subset in _antichains(f.source, limit):
        bound = sup(f.source, subset)
        if bound is None:
            continue
        image_bound = sup(f.target, f.image_mask(subset))
        if image_bound is None or image_bound != f.image[bound]:
            return False
    return True


def _extensions_of(problem: SupExtensionProblem, capacity: int | None):
    anchors = {
        problem.space.phi_index[x]: problem.base_map.image[x]
        for x in range(problem.base_map.source.n)
    }
    return anchored_extensions(
        problem.space.order, anchors, problem.target, capacity
    )


def check_sigma_theorem(
    problem: SupExtensionProblem, capacity: int | None = None
) -> CheckReport:
    """The three-part characterization of the sup extension.

    For a well-posed problem: the sup extension restricts to the base
    map on principal points and is itself sup-preserving; every monotone
    extension lies above it pointwise; and the sup-preserving extensions
    are exactly the sup extension, nothing else.
    """
    prop = "sup-extension"
    instance = problem.serialize()
    lam = problem.base_map
    target = problem.target
    sharp = lambda_sharp(problem, capacity)

    for x in range(lam.source.n):
        if sharp.image[problem.space.phi_index[x]] != lam.image[x]:
            return failed(prop, instance, law="restricts-to-base", element=x)
    if not is_sup_preserving(sharp, capacity):
        return failed(prop, instance, law="sup-preserving")

    extensions = _extensions_of(problem, capacity)
    if sharp.image not in extensions:
        return failed(prop, instance, law="is-an-extension")
    for candidate in extensions:
        for point, value in enumerate(candidate):
            if not target.leq(sharp.image[point], value):
                return failed(prop, instance, law="pointwise-least",
                              candidate=list(candidate), point=point)
        preserving = is_sup_preserving(
            MonotoneMap(problem.space.order, target, candidate), capacity
        )
        if preserving != (candidate == sharp.image):
            return failed(prop, instance, law="unique-sup-preserving",
                          candidate=list(candidate))
    return passed(prop, instance)


def check_retraction(poset: FinitePoset, capacity: int | None = None) -> CheckReport:
    """Sups after the principal embedding give back the element.

    Requires the sup assignment to be total on the whole poset; then the
    sup of a principal down-set must be its generating element.
    """
    prop = "sup-retraction"
    instance = {"n": poset.n, "covers": [list(p) for p in poset.cover_pairs()]}
    sigma = sigma_map(poset, poset.full, capacity)
    if not sigma.is_total:
        first = sigma.undefined()[0]
        raise SigmaUndefinedError(
            f"no sup for down-set {first:#x}", member_mask=first
        )
    for z in range(poset.n):
        principal = down_closure(poset, 1 << z)
        if sigma.value(principal) != z:
            return failed(prop, instance, law="retraction", element=z)
    return passed(prop, instance)


def _order_embedding(
    source: FinitePoset, target: FinitePoset, image: tuple[int, ...]
) -> bool:
    return all(
        source.leq(x, y) == target.leq(image[x], image[y])
        for x in range(source.n)
        for y in range(source.n)
    )


def check_injective_sigma_prop(
    problem: SupExtensionProblem, capacity: int | None = None
) -> CheckReport:
    """Consequences of an injective sup assignment over the image.

    When the base map is an order-embedding and the sup assignment over
    the image carrier is injective, the sup extension is an
    order-embedding.  If moreover every target element is the sup of the
    base-image elements below it, the sup extension is the only extension
    that is an order-embedding.

    The embedding requirement on the base map is a genuine precondition,
    not a convenience: a map that merges points (or adds comparabilities)
    can have an injective sup assignment over its image while the sup
    extension still merges distinct principal points.
    """
    prop = "injective-sigma"
    instance = problem.serialize()
    lam = problem.base_map
    target = problem.target
    image_carrier = lam.image_mask(lam.source.full)
    sigma = sigma_map(target, image_carrier, capacity)
    if not sigma.is_total:
        return skipped(prop, instance, "the sup assignment is not total")
    defined = [s for s in sigma.sups if s is not None]
    if len(set(defined)) != len(defined):
        return skipped(prop, instance, "the sup assignment is not injective")
    if not _order_embedding(lam.source, target, lam.image):
        return skipped(prop, instance, "the base map is not an order-embedding")

    sharp = lambda_sharp(problem, capacity)
    if not _order_embedding(problem.space.order, target, sharp.image):
        return failed(prop, instance, law="order-embedding",
                      image=list(sharp.image))

    generated = all(
        sup(target, image_carrier & target.down[z]) == z for z in range(target.n)
    )
    if generated:
        for candidate in _extensions_of(problem, capacity):
            if (
                _order_embedding(problem.space.order, target, candidate)
                and candidate != sharp.image
            ):
                return failed(prop, instance, law="unique-embedding",
                              candidate=list(candidate))
    return passed(prop, instance)
