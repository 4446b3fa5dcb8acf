"""Exhaustive and randomized poset and map generators for the harness."""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import combinations, product

from .errors import CapacityError, RangeError
from .poset import FinitePoset, iter_bits, linear_extension
from .maps import MonotoneMap

MAX_EXHAUSTIVE_N = 5


@lru_cache(maxsize=None)
def all_posets(n: int, max_n: int = MAX_EXHAUSTIVE_N) -> tuple[FinitePoset, ...]:
    """Every labeled poset on ``n`` elements, each exactly once.

    Each unordered pair is assigned one of: incomparable, ascending, or
    descending; assignments whose reflexive closure is transitive are
    the posets.  The enumeration order is the lexicographic order of
    those assignments, so output is deterministic.
    """
    if n < 1:
        raise RangeError(f"a poset needs at least one element, got n={n}")
    if n > max_n:
        raise CapacityError(f"exhaustive enumeration is capped at n={max_n}")
    pairs = list(combinations(range(n), 2))
    found = []
    for choice in product((0, 1, 2), repeat=len(pairs)):
        up = [1 << i for i in range(n)]
        for (i, j), direction in zip(pairs, choice):
            if direction == 1:
                up[i] |= 1 << j
            elif direction == 2:
                up[j] |= 1 << i
        if _is_transitive(n, up):
            down = [0] * n
            for i in range(n):
                for j in iter_bits(up[i]):
                    down[j] |= 1 << i
            found.append(FinitePoset(n, tuple(up), tuple(down)))
    return tuple(found)


def _is_transitive(n: int, up: list[int]) -> bool:
    for i in range(n):
        row = up[i]
        rest = row & ~(1 << i)
        while rest:
            low = rest & -rest
            if up[low.bit_length() - 1] & ~row:
                return False
            rest ^= low
    return True


def count_posets_bruteforce(n: int) -> int:
    """Count posets by filtering every directed relation on ``n`` elements.

    Independent of all_posets: iterates the full ``2**(n*(n-1))`` space
    of irreflexive relation matrices and keeps those whose reflexive
    closure is antisymmetric and transitive.  Only sensible for n <= 4.
    """
    if n < 1:
        raise RangeError(f"a poset needs at least one element, got n={n}")
    slots = [(i, j) for i in range(n) for j in range(n) if i != j]
    count = 0
    for bits in range(1 << len(slots)):
        up = [1 << i for i in range(n)]
        for k, (i, j) in enumerate(slots):
            if bits >> k & 1:
                up[i] |= 1 << j
        antisymmetric = all(
            not (up[i] >> j & 1 and up[j] >> i & 1)
            for i in range(n)
            for j in range(i + 1, n)
        )
        if antisymmetric and _is_transitive(n, up):
            count += 1
    return count


def random_poset(n: int, seed: int) -> FinitePoset:
    """A reproducible random poset on ``n`` elements.

    Draws an edge density, then flips a coin per index-increasing pair
    and closes transitively; acyclicity is automatic because edges only
    point upward in index order.
    """
    if n < 1:
        raise RangeError(f"a poset needs at least one element, got n={n}")
    rng = random.Random(seed)
    density = rng.random()
    pairs = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < density
    ]
    return FinitePoset.from_cover_relations(n, pairs)


def all_monotone_images(
    source: FinitePoset, target: FinitePoset
) -> tuple[tuple[int, ...], ...]:
    """Image tuples of every monotone map ``source -> target``.

    Elements are assigned along a linear extension, so only constraints
    from below need checking at each step; output is sorted by image
    tuple.
    """
    order = linear_extension(source)
    found: list[tuple[int, ...]] = []
    image = [-1] * source.n

    def assign(k: int) -> None:
        if k == source.n:
            found.append(tuple(image))
            return
        x = order[k]
        below = source.down[x] & ~(1 << x)
        for value in range(target.n):
            up_value_holds = True
            rest = below
            while rest:
                low = rest & -rest
                if not target.up[image[low.bit_length() - 1]] >> value & 1:
                    up_value_holds = False
                    break
                rest ^= low
            if up_value_holds:
                image[x] = value
                assign(k + 1)
                image[x] = -1

    assign(0)
    return tuple(sorted(found))


def random_monotone_map(
    source: FinitePoset, target: FinitePoset, rng: random.Random
) -> MonotoneMap | None:
    """A random monotone map, or None when the draw strands itself.

    Assigns along a linear extension, drawing uniformly from the values
    consistent with what is already placed; a dead end returns None so
    the caller can redraw.
    """
    order = linear_extension(source)
    image = [-1] * source.n
    for x in order:
        below = source.down[x] & ~(1 << x)
        candidates = [
            v
            for v in range(target.n)
            if all(target.up[image[y]] >> v & 1 for y in iter_bits(below))
        ]
        if not candidates:
            return None
        image[x] = rng.choice(candidates)
    return MonotoneMap(source, target, tuple(image))
