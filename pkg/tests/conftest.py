"""Shared fixtures, hypothesis strategies, and a strict DOT validator."""

import re

import pytest
from hypothesis import strategies as st

from smyth import FinitePoset
from smyth.generators import random_poset


def vee_poset() -> FinitePoset:
    return FinitePoset.from_cover_relations(3, [(0, 2), (1, 2)], labels=("a1", "a2", "b"))


def chain(n: int) -> FinitePoset:
    return FinitePoset.from_cover_relations(n, [(i, i + 1) for i in range(n - 1)])


def antichain(n: int) -> FinitePoset:
    return FinitePoset.from_cover_relations(n, [])


def diamond_poset() -> FinitePoset:
    return FinitePoset.from_cover_relations(4, [(0, 1), (0, 2), (1, 3), (2, 3)])


def boolean_lattice(k: int) -> FinitePoset:
    covers = [(a, a | (1 << i)) for a in range(1 << k) for i in range(k) if not a & (1 << i)]
    return FinitePoset.from_cover_relations(1 << k, covers)


@pytest.fixture
def vee() -> FinitePoset:
    return vee_poset()


@pytest.fixture
def chain2() -> FinitePoset:
    return FinitePoset.from_cover_relations(2, [(0, 1)], labels=("c1", "c2"))


@pytest.fixture
def discrete3() -> FinitePoset:
    return FinitePoset.from_cover_relations(3, [], labels=("a", "b", "c"))


@st.composite
def posets(draw, max_n: int = 6):
    n = draw(st.integers(min_value=1, max_value=max_n))
    seed = draw(st.integers(min_value=0, max_value=2**32 - 1))
    return random_poset(n, seed)


@st.composite
def subsets(draw, max_n: int = 6):
    """A poset together with an arbitrary subset mask of its carrier."""
    poset = draw(posets(max_n))
    mask = draw(st.integers(min_value=0, max_value=(1 << poset.n) - 1))
    return poset, mask


_NODE_RE = re.compile(r'^(\w+) \[label="([^"\\]*)"\];$')
_EDGE_RE = re.compile(r"^(\w+) -> (\w+);$")


def assert_valid_dot(text: str) -> tuple[int, int]:
    """Validate the emitted DOT dialect; return (node count, edge count).

    Grammar: a digraph header, one indented node statement per node with a
    quoted label, then indented edge statements between declared nodes.
    """
    lines = text.splitlines()
    assert lines, "empty document"
    header = re.fullmatch(r"digraph (\w+) \{", lines[0])
    assert header, f"bad header: {lines[0]!r}"
    assert lines[-1] == "}", f"bad footer: {lines[-1]!r}"
    declared = set()
    edges = 0
    seen_edge = False
    for line in lines[1:-1]:
        assert line.startswith("  "), f"missing indent: {line!r}"
        body = line[2:]
        node = _NODE_RE.match(body)
        edge = _EDGE_RE.match(body)
        if node:
            assert not seen_edge, "node statement after an edge statement"
            assert node.group(1) not in declared, f"duplicate node {body!r}"
            declared.add(node.group(1))
        elif edge:
            seen_edge = True
            assert edge.group(1) in declared, f"undeclared tail: {body!r}"
            assert edge.group(2) in declared, f"undeclared head: {body!r}"
            edges += 1
        else:
            raise AssertionError(f"unparsable statement: {body!r}")
    return len(declared), edges
