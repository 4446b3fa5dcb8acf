"""The three topologies a finite poset carries.

With opens-are-down-sets as the structural convention, closure in the
given topology is up-closure, closure in the inverse (order-reversed)
topology is down-closure, and the constructible topology refining both
is discrete, so its closure operator is the identity.  Down-sets are
exactly the sets closed in the inverse topology, which is why they are
called inverse-closed throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IrreducibilityError, MalformedFamilyError
from .poset import (
    FinitePoset,
    check_subset,
    down_closure,
    enumerate_down_sets,
    is_down_set,
    iter_bits,
    up_closure,
)


@dataclass(frozen=True)
class OpenFamily:
    """The open sets of a finite space, as masks in canonical order.

    Invariants (checked by poset_of_topology, guaranteed by open_sets):
    contains the empty and full masks and is closed under union and
    intersection.
    """

    base: FinitePoset
    opens: tuple[int, ...]


def open_sets(poset: FinitePoset, capacity: int | None = None) -> OpenFamily:
    """Every open of the poset's topology: all down-set masks."""
    return OpenFamily(poset, enumerate_down_sets(poset, True, capacity))


def closure(poset: FinitePoset, subset: int) -> int:
    """Topological closure: everything a member specializes to."""
    return up_closure(poset, subset)


def inverse_closure(poset: FinitePoset, subset: int) -> int:
    """Closure in the inverse topology: everything below a member."""
    return down_closure(poset, subset)


def constructible_closure(poset: FinitePoset, subset: int) -> int:
    """Closure in the constructible topology, which is discrete here."""
    return check_subset(poset, subset)


def is_inverse_closed(poset: FinitePoset, subset: int) -> bool:
    """Whether ``subset`` is closed in the inverse topology."""
    return is_down_set(poset, subset)


def irreducible_inverse_closed(
    poset: FinitePoset, capacity: int | None = None
) -> tuple[tuple[int, int], ...]:
    """The irreducible nonempty inverse-closed sets with their generic points.

    A set is irreducible when it is not the union of two properly smaller
    inverse-closed sets; the scan applies that definition literally and
    then checks the outcome is exactly the family of principal down-sets,
    each generated by its unique maximal element.  Pairs ``(mask, x)``
    come back in canonical mask order.
    """
    down_sets = enumerate_down_sets(poset, False, capacity)
    members = set(down_sets)
    irreducible = []
    for c in down_sets:
        reducible = any(
            a | b == c
            for a in down_sets
            if a & ~c == 0 and a != c
            for b in down_sets
            if b & ~c == 0 and b != c
        )
        if not reducible:
            irreducible.append(c)
    principal = {down_closure(poset, 1 << x): x for x in range(poset.n)}
    if set(irreducible) != set(principal):
        raise IrreducibilityError(
            "irreducible inverse-closed sets are not exactly the principal ones"
        )
    assert len(principal) == poset.n, "two elements generate the same down-set"
    for c in irreducible:
        maximal = [x for x in iter_bits(c) if poset.up[x] & c == 1 << x]
        assert maximal == [principal[c]], "principal set with more than one generic point"
    assert all(m in members for m in principal)
    return tuple((c, principal[c]) for c in irreducible)


def poset_of_topology(family: OpenFamily) -> FinitePoset:
    """Recover the specialization order from an open-set family.

    ``x <= y`` exactly when every open containing ``y`` contains ``x``.
    The family must be a genuine topology on the carrier; the base field
    of the input only contributes the carrier size and labels.
    """
    n = family.base.n
    full = (1 << n) - 1
    opens = set(family.opens)
    for candidate in family.opens:
        check_subset(family.base, candidate)
    if 0 not in opens or full not in opens:
        raise MalformedFamilyError("a topology contains the empty and full sets")
    for a in family.opens:
        for b in family.opens:
            if a | b not in opens:
                raise MalformedFamilyError(f"union {a:#x} | {b:#x} is missing")
            if a & b not in opens:
                raise MalformedFamilyError(f"intersection {a:#x} & {b:#x} is missing")
    down = []
    for i in range(n):
        minimal_open = full
        for u in family.opens:
            if u >> i & 1:
                minimal_open &= u
        down.append(minimal_open)
    up = [0] * n
    for i in range(n):
        for j in iter_bits(down[i]):
            up[j] |= 1 << i
    return FinitePoset(n, tuple(up), tuple(down), family.base.labels)
