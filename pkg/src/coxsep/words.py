"""Right-angled Coxeter groups: normal forms, walls and median-graph geometry.

Group elements are tuples of generator indices in shortlex normal form; the
same tuple names the vertex ``g v0`` of the Davis-Moussong complex.  Words are
reduced by the piling method: every generator owns a stack, a letter is pushed
onto its own stack and a blocker onto the stacks of the generators it does not
commute with, and a letter meeting itself on top of its own stack cancels.
Reading the stacks bottom-up, always taking the smallest available letter,
yields the shortlex-least reduced word.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .graph import SimplicialGraph

Element = tuple[int, ...]
IDENTITY: Element = ()


class WordError(ValueError):
    pass


class BoundExceeded(WordError):
    """A windowed computation would need to leave its configured window."""


@dataclass(frozen=True)
class Reflection:
    """The wall of the edge ``(g, g s)``, named by the reflection ``g s g^-1``."""

    element: Element
    label: int


class RACG:
    def __init__(self, graph: SimplicialGraph):
        self.graph = graph
        self.labels = graph.vertices
        self.rank = n = len(graph)
        self.commutes = [
            [i != j and graph.adjacent(self.labels[i], self.labels[j]) for j in range(n)]
            for i in range(n)
        ]
        self.link = [tuple(j for j in range(n) if self.commutes[i][j]) for i in range(n)]
        self._blocked = [tuple(j for j in range(n) if j != i and not self.commutes[i][j]) for i in range(n)]
        self.reduce = lru_cache(maxsize=1 << 18)(self._reduce)

    def __repr__(self):
        return f"RACG({list(self.labels)!r})"

    # -- letters -----------------------------------------------------------

    def word(self, labels: Iterable[str]) -> Element:
        """Parse a sequence of generator labels into a reduced element."""
        out = []
        for name in labels:
            try:
                out.append(self.graph.index(str(name)))
            except ValueError:
                raise WordError(f"unknown generator {name!r}") from None
        return self.reduce(tuple(out))

    def names(self, w: Sequence[int]) -> list[str]:
        return [self.labels[i] for i in w]

    def commute(self, s: int, t: int) -> bool:
        return self.commutes[s][t]

    # -- normal forms ------------------------------------------------------

    def _reduce(self, word: tuple) -> Element:
        n = self.rank
        piles: list[list[int]] = [[] for _ in range(n)]
        blocked = self._blocked
        for s in word:
            if not 0 <= s < n:
                raise WordError(f"invalid letter {s!r}")
            pile = piles[s]
            if pile and pile[-1]:
                pile.pop()
                for t in blocked[s]:
                    piles[t].pop()
            else:
                pile.append(1)
                for t in blocked[s]:
                    piles[t].append(0)
        heads = [0] * n
        out = []
        while True:
            for i in range(n):
                h = heads[i]
                pile = piles[i]
                if h < len(pile) and pile[h]:
                    break
            else:
                return tuple(out)
            out.append(i)
            heads[i] += 1
            for t in blocked[i]:
                heads[t] += 1

    def multiply(self, a: Element, b: Element) -> Element:
        return self.reduce(a + b)

    def inverse(self, a: Element) -> Element:
        return self.reduce(a[::-1])

    @staticmethod
    def length(a: Element) -> int:
        return len(a)

    def left_descents(self, w: Element) -> list[int]:
        """Generators s with l(s w) < l(w), i.e. letters that can be shuffled to the front."""
        blocked = set()
        out = []
        for t in w:
            if t not in blocked:
                out.append(t)
            blocked.add(t)
            blocked.update(self._blocked[t])
        return sorted(set(out))

    def right_descents(self, w: Element) -> list[int]:
        return self.left_descents(w[::-1])

    def strip_left(self, w: Element, allowed: frozenset[int]) -> Element:
        """Shortest element of the coset W_T w, where T = allowed."""
        while True:
            for s in self.left_descents(w):
                if s in allowed:
                    w = self.reduce((s,) + w)
                    break
            else:
                return w

    # -- walls -------------------------------------------------------------

    def reflection_of_edge(self, g: Element, s: int) -> Reflection:
        return Reflection(self.reduce(g + (s,) + g[::-1]), s)

    def on_far_side(self, r: Reflection, u: Element) -> bool:
        """True when the wall of ``r`` separates ``u`` from the identity."""
        return len(self.reduce(r.element + u)) < len(u)

    def separates(self, r: Reflection, u: Element, v: Element) -> bool:
        return self.on_far_side(r, u) != self.on_far_side(r, v)

    def reflection_root(self, r: Reflection) -> Element:
        """Some g with g s g^-1 = r, found by peeling matching descents."""
        g: Element = ()
        cur = r.element
        while len(cur) > 1:
            for t in self.left_descents(cur):
                shorter = self.reduce((t,) + cur + (t,))
                if len(shorter) == len(cur) - 2:
                    g = g + (t,)
                    cur = shorter
                    break
            else:
                raise WordError(f"{r.element} is not a reflection")
        if cur != (r.label,):
            raise WordError(f"{r.element} is not conjugate to generator {r.label}")
        return self.reduce(g)

    # -- median-graph geometry --------------------------------------------

    def neighbours(self, g: Element) -> list[Element]:
        return [self.reduce(g + (s,)) for s in range(self.rank)]

    def ball(self, radius: int, centre: Element = IDENTITY) -> dict[Element, int]:
        """Elements within ``radius`` of ``centre`` mapped to their distance."""
        dist = {centre: 0}
        frontier = [centre]
        for r in range(1, radius + 1):
            nxt = []
            for g in frontier:
                for h in self.neighbours(g):
                    if h not in dist:
                        dist[h] = r
                        nxt.append(h)
            frontier = nxt
        return dist

    def distance(self, a: Element, b: Element) -> int:
        return len(self.reduce(a[::-1] + b))

    def interval(self, a: Element, b: Element, bound: int | None = None) -> set[Element]:
        """Vertices on geodesics from a to b, enumerated as prefixes of a^-1 b."""
        w = self.reduce(a[::-1] + b)
        if bound is not None and len(w) > bound:
            raise BoundExceeded(f"interval of length {len(w)} exceeds bound {bound}")
        layer = {(): w}
        out = {a}
        for _ in range(len(w)):
            nxt = {}
            for p, rest in layer.items():
                for s in self.left_descents(rest):
                    q = self.reduce(p + (s,))
                    if q not in nxt:
                        nxt[q] = self.reduce((s,) + rest)
            layer = nxt
            out.update(self.reduce(a + p) for p in layer)
        return out

    def hull(self, seed: Iterable[Element], radius_bound: int) -> set[Element]:
        """Smallest interval-closed set containing ``seed``.

        Raises BoundExceeded if the closure reaches a vertex further than
        ``radius_bound`` from every seed vertex.
        """
        seed = sorted(set(seed), key=shortlex_key)
        if not seed:
            return set()
        out = set(seed)
        pending = list(seed)
        while pending:
            fresh = set()
            for u in pending:
                for v in sorted(out, key=shortlex_key):
                    for x in self.interval(u, v, bound=2 * radius_bound):
                        if x not in out:
                            fresh.add(x)
            for x in fresh:
                if min(self.distance(x, s) for s in seed) > radius_bound:
                    raise BoundExceeded(f"hull escapes radius {radius_bound} at {x}")
            out |= fresh
            pending = sorted(fresh, key=shortlex_key)
        return out

    def cliques(self) -> list[tuple[int, ...]]:
        """All sets of pairwise commuting generators, including the empty set."""
        out = [()]
        for size in range(1, self.rank + 1):
            found = False
            for c in combinations(range(self.rank), size):
                if all(self.commutes[i][j] for i, j in combinations(c, 2)):
                    out.append(c)
                    found = True
            if not found:
                break
        return out

    def cube_neighbourhood(self, g: Element) -> set[Element]:
        """Vertices of the closed cubes containing ``g``."""
        return {self.reduce(g + c) for c in self.cliques()}


def shortlex_key(w: Element) -> tuple[int, Element]:
    return (len(w), w)
