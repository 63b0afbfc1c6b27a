"""Finite posets, their Hasse quivers, intervals, and order complexes.

Elements are opaque strings; every deterministic choice in the package is
anchored to lexicographic id order, so identical inputs produce identical
outputs across runs.  A poset is immutable after construction: the order
relation is closed transitively on construction and covers are recomputed
canonically (transitive reduction), whatever the input gave.
"""

from __future__ import annotations

import json
from dataclasses import dataclass


class PosetError(ValueError):
    """Raised for malformed poset descriptions (cycles, unknown ids, ...)."""


class Poset:
    __slots__ = ("elements", "_index", "_up", "_down", "covers")

    def __init__(self, elements, relations):
        """Build a poset from element ids and (a, b) pairs meaning a <= b.

        Relations are closed reflexively and transitively; covers are the
        transitive reduction.  Raises :class:`PosetError` for duplicate
        ids, unknown ids, or cycles (with the offending pair).
        """
        elements = list(elements)
        seen = set()
        for e in elements:
            if not isinstance(e, str):
                raise PosetError(f"element id {e!r} is not a string")
            if e in seen:
                raise PosetError(f"duplicate element id {e!r}")
            seen.add(e)
        self.elements = tuple(sorted(elements))
        self._index = {e: i for i, e in enumerate(self.elements)}

        up = {e: {e} for e in self.elements}
        for a, b in relations:
            if a not in self._index:
                raise PosetError(f"unknown element {a!r} in relation ({a!r}, {b!r})")
            if b not in self._index:
                raise PosetError(f"unknown element {b!r} in relation ({a!r}, {b!r})")
            up[a].add(b)
        # transitive closure (repeated until stable; posets here are small)
        changed = True
        while changed:
            changed = False
            for a in self.elements:
                new = set()
                for b in up[a]:
                    new |= up[b]
                if not new <= up[a]:
                    up[a] |= new
                    changed = True
        for a in self.elements:
            for b in up[a]:
                if a != b and a in up[b]:
                    raise PosetError(f"cycle: {a!r} <= {b!r} and {b!r} <= {a!r}")
        self._up = {a: frozenset(s) for a, s in up.items()}
        down = {e: set() for e in self.elements}
        for a in self.elements:
            for b in self._up[a]:
                down[b].add(a)
        self._down = {b: frozenset(s) for b, s in down.items()}
        covers = []
        for a in self.elements:
            for b in sorted(self._up[a]):
                if a == b:
                    continue
                strict_between = (self._up[a] & self._down[b]) - {a, b}
                if not strict_between:
                    covers.append((a, b))
        self.covers = tuple(sorted(covers))

    # --- order queries ----------------------------------------------------

    def leq(self, a: str, b: str) -> bool:
        if a not in self._index or b not in self._index:
            raise PosetError(f"unknown element in leq({a!r}, {b!r})")
        return b in self._up[a]

    def up_set(self, a: str) -> frozenset:
        if a not in self._index:
            raise PosetError(f"unknown element {a!r}")
        return self._up[a]

    def down_set(self, a: str) -> frozenset:
        if a not in self._index:
            raise PosetError(f"unknown element {a!r}")
        return self._down[a]

    def minimal_elements(self):
        return tuple(e for e in self.elements if len(self._down[e]) == 1)

    def maximal_elements(self):
        return tuple(e for e in self.elements if len(self._up[e]) == 1)

    def comparable_pairs(self):
        """All pairs (a, b) with a <= b, in (linear-extension, id) order."""
        order = linear_extension(self)
        pos = {e: i for i, e in enumerate(order)}
        pairs = [(a, b) for a in self.elements for b in self._up[a]]
        pairs.sort(key=lambda p: (pos[p[0]], pos[p[1]]))
        return pairs

    def __len__(self) -> int:
        return len(self.elements)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Poset)
            and self.elements == other.elements
            and self.covers == other.covers
        )

    def __hash__(self):
        return hash((self.elements, self.covers))

    def __repr__(self) -> str:
        return f"Poset(elements={list(self.elements)!r}, covers={list(self.covers)!r})"


@dataclass(frozen=True)
class Interval:
    bottom: str
    top: str
    members: frozenset


@dataclass(frozen=True)
class OrderComplex:
    """2-skeleton of the order complex: chains of 1, 2, 3 elements."""

    vertices: tuple
    edges: tuple      # pairs (a, b), a < b in the poset
    triangles: tuple  # triples (a, b, c), a < b < c


def parse_poset(source) -> Poset:
    """Build a poset from a description dict or its JSON text.

    The document has an ``elements`` list and either ``covers`` or
    ``relations`` (lists of 2-element lists).  Covers are recomputed
    canonically regardless of which key was given.
    """
    if isinstance(source, (str, bytes)):
        try:
            source = json.loads(source)
        except json.JSONDecodeError as e:
            raise PosetError(f"not valid JSON: {e}") from None
    if not isinstance(source, dict):
        raise PosetError("poset description must be a JSON object")
    if "elements" not in source:
        raise PosetError("missing 'elements' key")
    if "covers" in source and "relations" in source:
        raise PosetError("give either 'covers' or 'relations', not both")
    rels = source.get("covers", source.get("relations", []))
    pairs = []
    for item in rels:
        if not (isinstance(item, (list, tuple)) and len(item) == 2):
            raise PosetError(f"relation {item!r} is not a 2-element list")
        pairs.append((item[0], item[1]))
    return Poset(source["elements"], pairs)


def poset_to_dict(p: Poset) -> dict:
    return {
        "elements": list(p.elements),
        "covers": [list(c) for c in p.covers],
    }


def hasse_quiver(p: Poset):
    """Vertices and arrows of the Hasse quiver (arrows = cover pairs)."""
    return {"vertices": list(p.elements), "arrows": [list(c) for c in p.covers]}


def hasse_dot(p: Poset) -> str:
    """DOT digraph with one directed edge per cover."""
    lines = ["digraph hasse {"]
    for e in p.elements:
        lines.append(f'  "{e}";')
    for a, b in p.covers:
        lines.append(f'  "{a}" -> "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def is_connected(p: Poset) -> bool:
    """Connectivity of the underlying undirected Hasse graph."""
    if not p.elements:
        raise PosetError("connectedness of the empty poset is undefined")
    adj = {e: set() for e in p.elements}
    for a, b in p.covers:
        adj[a].add(b)
        adj[b].add(a)
    seen = {p.elements[0]}
    stack = [p.elements[0]]
    while stack:
        for y in adj[stack.pop()]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(p.elements)


def interval(p: Poset, x: str, y: str) -> Interval:
    """The interval [x, y]; empty member set when x is not below y."""
    members = p.up_set(x) & p.down_set(y)
    return Interval(bottom=x, top=y, members=frozenset(members))


def order_complex_2skeleton(p: Poset) -> OrderComplex:
    """Chains of lengths 1, 2, 3 as simplices of dimensions 0, 1, 2."""
    edges = []
    triangles = []
    for a in p.elements:
        for b in sorted(p.up_set(a)):
            if b == a:
                continue
            edges.append((a, b))
            for c in sorted(p.up_set(b)):
                if c != b:
                    triangles.append((a, b, c))
    return OrderComplex(
        vertices=tuple(p.elements),
        edges=tuple(sorted(edges)),
        triangles=tuple(sorted(triangles)),
    )


def opposite(p: Poset) -> Poset:
    return Poset(p.elements, [(b, a) for a, b in p.covers])


def linear_extension(p: Poset):
    """Kahn's algorithm with lexicographic tie-breaking on element ids."""
    import heapq

    indeg = {e: 0 for e in p.elements}
    succ = {e: [] for e in p.elements}
    for a, b in p.covers:
        indeg[b] += 1
        succ[a].append(b)
    heap = [e for e in p.elements if indeg[e] == 0]
    heapq.heapify(heap)
    out = []
    while heap:
        e = heapq.heappop(heap)
        out.append(e)
        for b in succ[e]:
            indeg[b] -= 1
            if indeg[b] == 0:
                heapq.heappush(heap, b)
    return out
