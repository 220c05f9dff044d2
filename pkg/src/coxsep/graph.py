"""Finite simplicial graphs and the hypotheses the separation pipeline needs.

Vertex labels are opaque strings.  Their input order is the canonical order
used everywhere downstream (generator indices, tie-breaking in searches).
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class SimplicialGraph:
    vertices: tuple[str, ...]
    edges: frozenset[frozenset[str]]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError("duplicate vertex")
        index = {v: i for i, v in enumerate(self.vertices)}
        for e in self.edges:
            if len(e) != 2:
                raise GraphError(f"self-loop or malformed edge {sorted(e)}")
            for v in e:
                if v not in index:
                    raise GraphError(f"edge endpoint {v!r} is not a vertex")
        object.__setattr__(self, "_index", index)

    @classmethod
    def build(cls, vertices: Iterable, edges: Iterable[Sequence]) -> "SimplicialGraph":
        vertices = tuple(str(v) for v in vertices)
        seen = set()
        for e in edges:
            if len(e) != 2:
                raise GraphError(f"edge must have two endpoints: {e!r}")
            u, v = str(e[0]), str(e[1])
            if u == v:
                raise GraphError(f"self-loop at {u!r}")
            key = frozenset((u, v))
            if key in seen:
                raise GraphError(f"duplicate edge {u!r}-{v!r}")
            seen.add(key)
        return cls(vertices, frozenset(seen))

    @classmethod
    def from_json(cls, data) -> "SimplicialGraph":
        if isinstance(data, str):
            data = json.loads(data)
        return cls.build(data["vertices"], data.get("edges", []))

    def to_json(self) -> dict:
        order = self._index
        edges = sorted(
            (sorted(e, key=order.__getitem__) for e in self.edges),
            key=lambda p: (order[p[0]], order[p[1]]),
        )
        return {"vertices": list(self.vertices), "edges": edges}

    def __len__(self):
        return len(self.vertices)

    def index(self, v: str) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def adjacent(self, u: str, v: str) -> bool:
        return frozenset((u, v)) in self.edges

    def neighbours(self, v: str) -> list[str]:
        return [u for u in self.vertices if u != v and self.adjacent(u, v)]


def cycle_graph(n: int, labels: Sequence[str] | None = None) -> SimplicialGraph:
    labels = [str(i + 1) for i in range(n)] if labels is None else list(labels)
    return SimplicialGraph.build(labels, [(labels[i], labels[(i + 1) % n]) for i in range(n)])


def path_graph(n: int, labels: Sequence[str] | None = None) -> SimplicialGraph:
    labels = [str(i + 1) for i in range(n)] if labels is None else list(labels)
    return SimplicialGraph.build(labels, [(labels[i], labels[i + 1]) for i in range(n - 1)])


def complete_graph(n: int, labels: Sequence[str] | None = None) -> SimplicialGraph:
    labels = [str(i + 1) for i in range(n)] if labels is None else list(labels)
    return SimplicialGraph.build(labels, combinations(labels, 2))


def complement(g: SimplicialGraph) -> SimplicialGraph:
    edges = [(u, v) for u, v in combinations(g.vertices, 2) if not g.adjacent(u, v)]
    return SimplicialGraph.build(g.vertices, edges)


def components(g: SimplicialGraph) -> list[list[str]]:
    """Connected components, each listed in vertex order, ordered by first vertex."""
    seen: set[str] = set()
    out = []
    for start in g.vertices:
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for u in g.neighbours(v):
                if u not in comp:
                    comp.add(u)
                    queue.append(u)
        seen |= comp
        out.append([v for v in g.vertices if v in comp])
    return out


def bfs_distances(g: SimplicialGraph, source: str) -> dict[str, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for u in g.neighbours(v):
            if u not in dist:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def shortest_path(g: SimplicialGraph, source: str, target: str) -> list[str]:
    """BFS shortest path; among shortest paths the one found first in vertex order."""
    parent = {source: None}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        if v == target:
            break
        for u in g.neighbours(v):
            if u not in parent:
                parent[u] = v
                queue.append(u)
    if target not in parent:
        raise GraphError(f"no path from {source!r} to {target!r}")
    path = [target]
    while path[-1] != source:
        path.append(parent[path[-1]])
    return path[::-1]


def diameter(g: SimplicialGraph) -> int:
    best = 0
    for v in g.vertices:
        dist = bfs_distances(g, v)
        if len(dist) != len(g):
            raise GraphError("diameter of a disconnected graph is undefined")
        best = max(best, max(dist.values()))
    return best


@dataclass(frozen=True)
class HypothesisReport:
    nondiscrete: bool
    size_ok: bool
    complement_connected: bool
    complement_components: tuple[tuple[str, ...], ...]
    complement_diameter: int | None

    @property
    def ok(self) -> bool:
        return self.nondiscrete and self.size_ok and self.complement_connected

    def to_json(self) -> dict:
        return {
            "nondiscrete": self.nondiscrete,
            "size_ok": self.size_ok,
            "complement_connected": self.complement_connected,
            "complement_components": [list(c) for c in self.complement_components],
            "complement_diameter": self.complement_diameter,
        }


def check_hypotheses(g: SimplicialGraph) -> HypothesisReport:
    gc = complement(g)
    comps = components(gc)
    connected = len(comps) == 1
    return HypothesisReport(
        nondiscrete=bool(g.edges),
        size_ok=len(g) >= 3,
        complement_connected=connected,
        complement_components=tuple(tuple(c) for c in comps),
        complement_diameter=diameter(gc) if connected else None,
    )


def doubled_label(v: str, bit: int) -> str:
    return f"{v}.{bit}"


def double(g: SimplicialGraph) -> SimplicialGraph:
    """The graph whose right-angled Coxeter group contains A(g) with finite index.

    Vertices are (v, b) for b in {0, 1}, serialised as ``"v.b"``.
    """
    vertices = [doubled_label(v, b) for v in g.vertices for b in (0, 1)]
    edges = []
    for u, v in combinations(g.vertices, 2):
        if g.adjacent(u, v):
            edges.append((doubled_label(u, 1), doubled_label(v, 1)))
        edges.append((doubled_label(u, 0), doubled_label(v, 1)))
        edges.append((doubled_label(v, 0), doubled_label(u, 1)))
        edges.append((doubled_label(u, 0), doubled_label(v, 0)))
    return SimplicialGraph.build(vertices, edges)


def parse_signed_letter(letter: str) -> tuple[str, int]:
    letter = letter.strip()
    for suffix in ("^-1", "^{-1}"):
        if letter.endswith(suffix):
            return letter[: -len(suffix)], -1
    return letter, 1


def embed_raag_word(g: SimplicialGraph, word: Sequence) -> list[str]:
    """Rewrite a word in A(g) as a word over the generators of C(double(g)).

    Letters are vertex names, optionally suffixed with ``^-1``; pairs
    ``(name, ±1)`` are accepted too.
    """
    out: list[str] = []
    for letter in word:
        if isinstance(letter, str):
            name, sign = parse_signed_letter(letter)
        else:
            name, sign = str(letter[0]), int(letter[1])
        if name not in g.vertices:
            raise GraphError(f"unknown generator {name!r}")
        if sign not in (1, -1):
            raise GraphError(f"exponent must be ±1, got {sign}")
        pair = [doubled_label(name, 0), doubled_label(name, 1)]
        out.extend(pair if sign == 1 else pair[::-1])
    return out
