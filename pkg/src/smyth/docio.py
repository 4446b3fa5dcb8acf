"""Reading, writing, and exporting poset documents.

A poset document is a small JSON object: ``n`` (element count),
optional ``labels`` (list of n strings), and ``covers`` (list of
``[i, j]`` pairs meaning ``i`` below ``j``; any generating relations
are accepted and closed on load).  An optional ``expect`` object pins
fixture expectations so a corrupted file is detected rather than
silently re-verified as some other poset:

    points           every powerdomain member set, as sorted index lists
    point_count      number of powerdomain points
    dimension        dimension of the powerdomain
    phi_onto         whether every point is principal

Graph exports use the DOT digraph format, one edge per covering pair,
lower element first.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import DocumentError
from .poset import FinitePoset, iter_bits
from .powerdomain import PowerdomainSpace

EXPECT_KEYS = frozenset({"points", "point_count", "dimension", "phi_onto"})


@dataclass(frozen=True)
class PosetDocument:
    """Parsed form of a poset file."""

    n: int
    labels: tuple[str, ...] | None
    covers: tuple[tuple[int, int], ...]
    expect: dict | None = None

    def to_poset(self) -> FinitePoset:
        return FinitePoset.from_cover_relations(self.n, self.covers, self.labels)

    def to_payload(self) -> dict:
        payload: dict = {"n": self.n, "covers": [list(p) for p in self.covers]}
        if self.labels is not None:
            payload["labels"] = list(self.labels)
        if self.expect is not None:
            payload["expect"] = self.expect
        return payload


def document_from_payload(payload: dict) -> PosetDocument:
    """Validate a decoded JSON object into a PosetDocument."""
    if not isinstance(payload, dict):
        raise DocumentError("a poset document is a JSON object")
    unknown = set(payload) - {"n", "labels", "covers", "expect"}
    if unknown:
        raise DocumentError(f"unknown keys: {sorted(unknown)}")
    n = payload.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or not 1 <= n <= 64:
        raise DocumentError("'n' must be an integer between 1 and 64")
    labels = payload.get("labels")
    if labels is not None:
        if (
            not isinstance(labels, list)
            or len(labels) != n
            or not all(isinstance(s, str) for s in labels)
        ):
            raise DocumentError("'labels' must be a list of n strings")
        labels = tuple(labels)
    covers_raw = payload.get("covers", [])
    if not isinstance(covers_raw, list):
        raise DocumentError("'covers' must be a list of [i, j] pairs")
    covers = []
    for entry in covers_raw:
        if (
            not isinstance(entry, list)
            or len(entry) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in entry)
        ):
            raise DocumentError(f"bad cover entry: {entry!r}")
        if not all(0 <= v < n for v in entry):
            raise DocumentError(f"cover {entry!r} is out of range for n={n}")
        covers.append((entry[0], entry[1]))
    expect = payload.get("expect")
    if expect is not None:
        if not isinstance(expect, dict) or set(expect) - EXPECT_KEYS:
            raise DocumentError(
                f"'expect' may only contain {sorted(EXPECT_KEYS)}"
            )
    return PosetDocument(n, labels, tuple(covers), expect)


def load_document(path: str | Path) -> PosetDocument:
    """Read and validate a poset document file."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from exc
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path} is not valid JSON: {exc}") from exc
    return document_from_payload(payload)


def save_document(doc: PosetDocument, path: str | Path) -> None:
    Path(path).write_text(json.dumps(doc.to_payload(), indent=2) + "\n")


def document_of_poset(poset: FinitePoset, expect: dict | None = None) -> PosetDocument:
    return PosetDocument(poset.n, poset.labels, poset.cover_pairs(), expect)


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def poset_to_dot(poset: FinitePoset, name: str = "poset") -> str:
    """DOT digraph of the covering relation, lower element first."""
    lines = [f"digraph {name} {{"]
    for i in range(poset.n):
        lines.append(f"  n{i} [label={_quote(poset.label_of(i))}];")
    for i, j in poset.cover_pairs():
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def powerdomain_to_dot(space: PowerdomainSpace, name: str = "powerdomain") -> str:
    """DOT digraph of the powerdomain order, nodes in brace notation."""
    lines = [f"digraph {name} {{"]
    for index in range(len(space.points)):
        lines.append(f"  n{index} [label={_quote(space.point_label(index))}];")
    for i, j in space.order.cover_pairs():
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def brace_notation(space: PowerdomainSpace, index: int) -> str:
    return space.point_label(index)


def point_lists(space: PowerdomainSpace) -> list[list[int]]:
    """Each point's member set as a sorted index list."""
    return [list(iter_bits(mask)) for mask in space.points]
