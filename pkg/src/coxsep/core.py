"""Convex cores of subgroups acting on the Davis-Moussong complex, and surgery on them.

A core is stored as a finite set of orbit representatives: the vertex set of
the core is ``H . reps``.  Half-spaces are never stored; every geometric
question is answered through orbit membership of concrete vertices.

Deleting a bounding wall enlarges the core by one vertebra per orbit: the
vertices across the wall from the core, adjacent to it through edges dual to
that wall.  Each deletion is checked as it happens (new vertices lie in new
orbits, attach by a unique edge, and vertebra edges carry labels commuting
with the deleted one).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from .graph import complement, diameter, shortest_path
from .words import RACG, Element, Reflection, shortlex_key


class CoreError(RuntimeError):
    pass


class NotBounding(CoreError):
    pass


class InvariantBreach(CoreError):
    """A property guaranteed by the underlying geometry failed to hold."""


class HypothesisFailure(CoreError):
    def __init__(self, message, components=None):
        super().__init__(message)
        self.components = components


class OrbitInconclusive(CoreError):
    """Orbit membership could not be decided within the enumeration bound."""


# -- subgroups and orbit representatives -------------------------------------


@dataclass(frozen=True)
class SubgroupSpec:
    kind: str = "trivial"
    generators: tuple = ()
    enumeration_bound: int = 8

    def __post_init__(self):
        if self.kind not in ("trivial", "parabolic", "words"):
            raise ValueError(f"unknown subgroup kind {self.kind!r}")

    @classmethod
    def trivial(cls):
        return cls("trivial")

    @classmethod
    def parabolic(cls, gens: Iterable[int]):
        gens = tuple(sorted(set(gens)))
        return cls("parabolic", gens) if gens else cls("trivial")

    @classmethod
    def words(cls, gens: Iterable[Element], enumeration_bound: int = 8):
        return cls("words", tuple(tuple(g) for g in gens), enumeration_bound)

    def generator_words(self) -> list[Element]:
        if self.kind == "parabolic":
            return [(s,) for s in self.generators]
        return list(self.generators)


class Orbits:
    """Canonical representatives of left H-orbits of vertices."""

    def __init__(self, group: RACG, spec: SubgroupSpec):
        self.group = group
        self.spec = spec
        self._cache: dict[Element, Element] = {}
        if spec.kind == "parabolic":
            if any(not 0 <= s < group.rank for s in spec.generators):
                raise ValueError("parabolic generator out of range")
            self._allowed = frozenset(spec.generators)
        elif spec.kind == "words":
            if spec.enumeration_bound < 1:
                raise ValueError("enumeration bound must be at least 1")
            gens = [group.reduce(tuple(g)) for g in spec.generators]
            if any(len(g) == 0 for g in gens):
                raise ValueError("subgroup generator is trivial")
            self._ball, self._sphere = self._subgroup_ball(gens, spec.enumeration_bound)

    def _subgroup_ball(self, gens, radius):
        G = self.group
        steps = []
        for g in gens:
            steps += [g, G.inverse(g)]
        layers = [[()]]
        seen = {()}
        for _ in range(radius):
            nxt = []
            for h in layers[-1]:
                for g in steps:
                    x = G.reduce(h + g)
                    if x not in seen:
                        seen.add(x)
                        nxt.append(x)
            layers.append(sorted(nxt, key=shortlex_key))
        ball = [h for layer in layers for h in layer]
        return ball, layers[-1]

    def ball(self, radius: int) -> list[Element]:
        """Subgroup elements of word length at most ``radius`` in its generators."""
        G = self.group
        if self.spec.kind == "trivial":
            return [()]
        if self.spec.kind == "words":
            return self._subgroup_ball(
                [G.reduce(tuple(g)) for g in self.spec.generators], radius
            )[0]
        T = sorted(self._allowed)
        out = {(): 0}
        frontier = [()]
        for _ in range(radius):
            frontier = [x for h in frontier for s in T if (x := G.reduce(h + (s,))) not in out]
            for x in frontier:
                out[x] = 0
        return sorted(out, key=shortlex_key)

    def canonical(self, x: Element) -> Element:
        hit = self._cache.get(x)
        if hit is not None:
            return hit
        kind = self.spec.kind
        if kind == "trivial":
            out = x
        elif kind == "parabolic":
            out = self.group.strip_left(x, self._allowed)
        else:
            G = self.group
            out = min((G.reduce(h + x) for h in self._ball), key=shortlex_key)
            # an empty sphere means the ball already exhausts a finite subgroup
            frontier = min((len(G.reduce(h + x)) for h in self._sphere), default=None)
            if frontier is not None and frontier <= len(out):
                raise OrbitInconclusive(
                    f"orbit of {x} not settled within {self.spec.enumeration_bound} subgroup steps"
                )
        self._cache[x] = out
        return out

    def in_subgroup(self, x: Element) -> bool:
        return self.canonical(x) == ()


# -- cores -------------------------------------------------------------------


@dataclass(frozen=True)
class Deletion:
    at: Element
    label: int
    wall: Reflection
    vertebra: tuple[Element, ...]
    added: tuple[Element, ...]
    vertebra_labels: frozenset[int]


@dataclass(frozen=True)
class Vertebra:
    vertices: tuple[Element, ...]
    deleted_label: int
    edges: tuple[tuple[Element, int], ...] = ()

    @property
    def labels(self) -> frozenset[int]:
        return frozenset(t for _, t in self.edges)

    def __len__(self):
        return len(self.vertices)


@dataclass(frozen=True)
class Core:
    group: RACG
    subgroup: SubgroupSpec
    orbits: Orbits = field(compare=False, repr=False)
    reps: frozenset[Element] = frozenset({()})
    base: Element = ()
    tail: tuple[Deletion, ...] = ()
    plan: object = field(default=None, compare=False, repr=False)

    def canonical(self, x: Element) -> Element:
        return self.orbits.canonical(x)

    def contains(self, x: Element) -> bool:
        return self.orbits.canonical(x) in self.reps

    def sorted_reps(self) -> list[Element]:
        return sorted(self.reps, key=shortlex_key)

    def __len__(self):
        return len(self.reps)

    def to_json(self) -> dict:
        G = self.group
        spec = self.subgroup
        if spec.kind == "parabolic":
            gens = [G.labels[s] for s in spec.generators]
        else:
            gens = [G.names(g) for g in spec.generators]
        return {
            "subgroup": {
                "kind": spec.kind,
                "generators": gens,
                "enumeration_bound": spec.enumeration_bound,
            },
            "base": G.names(self.base),
            "reps": [G.names(c) for c in self.sorted_reps()],
            "tail": [
                {
                    "at": G.names(d.at),
                    "label": G.labels[d.label],
                    "vertebra": [G.names(v) for v in d.vertebra],
                }
                for d in self.tail
            ],
        }


def _make_core(group, spec, reps, **kw) -> Core:
    orbits = Orbits(group, spec)
    return Core(group, spec, orbits, frozenset(orbits.canonical(r) for r in reps), **kw)


def trivial_core(group: RACG) -> Core:
    return _make_core(group, SubgroupSpec.trivial(), [()])


def infinite_index_windowed(group: RACG, spec: SubgroupSpec, radius: int = 6) -> bool:
    """Whether the number of orbits met by balls keeps growing up to ``radius``."""
    orbits = Orbits(group, spec)
    counts = []
    for r in range(radius - 1, radius + 1):
        counts.append(len({orbits.canonical(x) for x in group.ball(r)}))
    return counts[1] > counts[0]


def parabolic_core(group: RACG, gens: Iterable[int], window: int = 6) -> Core:
    spec = SubgroupSpec.parabolic(gens)
    if spec.kind == "trivial":
        return trivial_core(group)
    if len(spec.generators) >= group.rank or not infinite_index_windowed(group, spec, window):
        raise HypothesisFailure("parabolic subgroup does not have infinite index")
    return _make_core(group, spec, [()])


def words_core(
    group: RACG,
    gens: Sequence[Element],
    reps: Iterable[Element] | None = None,
    enumeration_bound: int = 8,
    window: int = 3,
) -> Core:
    """Core for a subgroup given by generating words.

    Without explicit ``reps`` the core is grown from the paths spelling each
    generator, closing under intervals modulo the subgroup until stable; the
    result is then checked with :func:`verify_core`.
    """
    spec = SubgroupSpec.words([group.reduce(tuple(g)) for g in gens], enumeration_bound)
    orbits = Orbits(group, spec)
    if reps is None:
        pts = {()}
        for g in spec.generators:
            pts.update(g[:i] for i in range(len(g) + 1))
        reps = {orbits.canonical(group.reduce(p)) for p in pts}
        for _ in range(4 * window):
            core = Core(group, spec, orbits, frozenset(reps))
            report = verify_core(core, window)
            missing = {orbits.canonical(w) for kind, w in report.violations if kind == "convexity"}
            if not missing:
                break
            reps |= missing
    core = Core(group, spec, orbits, frozenset(orbits.canonical(r) for r in reps))
    if () not in core.reps:
        raise CoreError("core must contain the base vertex")
    return core


@dataclass
class CoreReport:
    window: int
    violations: list = field(default_factory=list)
    inconclusive: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations and not self.inconclusive

    @property
    def status(self) -> str:
        if self.violations:
            return "fail"
        return "inconclusive" if self.inconclusive else "pass"


def verify_core(core: Core, window: int = 4) -> CoreReport:
    """Windowed checks of orbit-representative consistency, invariance and convexity.

    Violations are ``(kind, witness)`` pairs; for convexity the witness is a
    vertex on a geodesic between two core vertices that lies outside the core.
    """
    G = core.group
    report = CoreReport(window)
    try:
        for c in core.sorted_reps():
            if core.canonical(c) != c:
                report.violations.append(("representative", c))
        gens = core.subgroup.generator_words()
        for g in gens + [G.inverse(g) for g in gens]:
            for c in core.sorted_reps():
                if core.canonical(G.reduce(g + c)) != c:
                    report.violations.append(("invariance", G.reduce(g + c)))
        if () not in core.reps and core.canonical(core.base) not in core.reps:
            report.violations.append(("base", core.base))
        radius = 2 * window
        translates = [
            x
            for h in core.orbits.ball(max(1, window))
            for c in core.reps
            if len(x := G.reduce(h + c)) <= radius + max(len(c) for c in core.reps)
        ]
        bad = set()
        for c in core.sorted_reps():
            near = {x for x in translates if G.distance(c, x) <= radius}
            dist = {c: 0}
            queue = deque([c])
            while queue:
                x = queue.popleft()
                if dist[x] == radius:
                    continue
                for y in G.neighbours(x):
                    if y not in dist and core.contains(y):
                        dist[y] = dist[x] + 1
                        queue.append(y)
            near.update(dist)
            for y in sorted(near, key=shortlex_key):
                for z in sorted(G.interval(c, y), key=shortlex_key):
                    if not core.contains(z):
                        w = core.canonical(z)
                        if w not in bad:
                            bad.add(w)
                            report.violations.append(("convexity", z))
    except OrbitInconclusive as exc:
        report.inconclusive.append(str(exc))
    return report


def bounding_hyperplanes(core: Core, at: Element) -> list[Reflection]:
    G = core.group
    if not core.contains(at):
        raise CoreError(f"{at} is not a core vertex")
    return [G.reflection_of_edge(at, s) for s in range(G.rank) if not core.contains(G.reduce(at + (s,)))]


def delete_edge(core: Core, at: Element, label: int) -> tuple[Core, Vertebra]:
    """Delete the wall dual to the edge from ``at`` labelled ``label``, with its orbit."""
    G = core.group
    s = label
    if not core.contains(at):
        raise NotBounding(f"{G.names(at)} is not in the core")
    if core.contains(G.reduce(at + (s,))):
        raise NotBounding(f"wall of edge ({G.names(at)}, {G.labels[s]}) does not bound the core")
    canon = core.canonical
    seen = {canon(at)}
    order = [at]
    queue = deque([at])
    while queue:
        y = queue.popleft()
        for t in G.link[s]:
            yt = G.reduce(y + (t,))
            if core.contains(yt):
                c = canon(yt)
                if c not in seen:
                    seen.add(c)
                    order.append(yt)
                    queue.append(yt)
    vertebra = tuple(G.reduce(y + (s,)) for y in order)
    added = tuple(canon(v) for v in vertebra)
    fresh = set(added)
    if len(fresh) != len(added) or fresh & core.reps:
        raise InvariantBreach("vertebra vertices are not in new, distinct orbits")
    edges = []
    for v in vertebra:
        attach = 0
        for t in range(G.rank):
            if t == s:
                continue
            c = canon(G.reduce(v + (t,)))
            if c in fresh:
                if not G.commute(t, s):
                    raise InvariantBreach(
                        f"vertebra edge labelled {G.labels[t]} does not commute with {G.labels[s]}"
                    )
                edges.append((v, t))
            elif c in core.reps:
                attach += 1
        if attach:
            raise InvariantBreach(f"vertebra vertex {G.names(v)} attaches by more than one edge")
    vert = Vertebra(vertebra, s, tuple(edges))
    record = Deletion(at, s, G.reflection_of_edge(at, s), vertebra, added, vert.labels)
    new = replace(core, reps=core.reps | fresh, tail=core.tail + (record,), plan=None)
    return new, vert


def delete(core: Core, wall: Reflection) -> tuple[Core, Vertebra]:
    """Delete a bounding wall given by its reflection, locating a dual edge at a representative."""
    G = core.group
    s = wall.label
    conjugates = {G.reduce(h + wall.element + G.inverse(h)) for h in core.orbits.ball(core.subgroup.enumeration_bound)}
    for c in core.sorted_reps():
        if core.contains(G.reduce(c + (s,))):
            continue
        if G.reflection_of_edge(c, s).element in conjugates:
            return delete_edge(core, c, s)
    raise NotBounding(f"wall {G.names(wall.element)} does not bound the core")


def delete_with_labels(core: Core, start: Element, labels: Sequence[int]) -> Core:
    G = core.group
    pos = start
    for i, s in enumerate(labels):
        try:
            core, _ = delete_edge(core, pos, s)
        except NotBounding as exc:
            raise NotBounding(f"step {i} (label {G.labels[s]} at {G.names(pos)}): {exc}") from None
        pos = G.reduce(pos + (s,))
    return core


def expand(core: Core, r: int = 1) -> Core:
    """Replace the core by its r-neighbourhood: all closed cubes meeting it, r times."""
    G = core.group
    cliques = G.cliques()
    reps = core.reps
    for _ in range(r):
        reps = frozenset(core.canonical(G.reduce(c + q)) for c in reps for q in cliques)
    return replace(core, reps=reps, tail=(), plan=None)


def absorb(core: Core, x: Element) -> Core:
    """Delete walls along a geodesic from the base vertex until ``x`` lies in the core."""
    G = core.group
    x = G.reduce(x)
    while not core.contains(x):
        prefix = next(j for j in range(len(x) + 1) if not core.contains(x[:j]))
        core, _ = delete_edge(core, G.reduce(x[: prefix - 1]), x[prefix - 1])
    return core


def _complement_data(group: RACG):
    gc = complement(group.graph)
    return gc, diameter(gc)


def reduce_to_point(core: Core, target_label: int | None = None) -> tuple[Core, int]:
    """Delete walls until the last vertebra is a single vertex.

    Returns the new core and the label of the last deleted wall, which equals
    ``target_label`` when one is given.  The position of the singleton vertebra
    is ``core.tail[-1].vertebra[0]``.
    """
    G = core.group
    from .graph import check_hypotheses

    hyp = check_hypotheses(G.graph)
    if not hyp.complement_connected or G.rank < 2:
        raise HypothesisFailure(
            "complement graph is disconnected: the group splits as a direct product",
            hyp.complement_components,
        )
    gc, d = _complement_data(G)
    edge = next(
        ((c, s) for c in core.sorted_reps() for s in range(G.rank) if not core.contains(G.reduce(c + (s,)))),
        None,
    )
    if edge is None:
        raise CoreError("core is the whole complex")
    core, vert = delete_edge(core, *edge)
    last = edge[1]
    labels = vert.labels
    guard = max(len(labels), 1) * (d + 1) * G.rank
    used = 1
    while labels:
        a, b = min(
            (a, b) for a in labels for b in range(G.rank) if b not in labels and b != a and not G.commute(a, b)
        )
        path = [G.graph.index(v) for v in shortest_path(gc, G.labels[last], G.labels[b])][1:]
        pos = min(vert.vertices, key=shortlex_key)
        previous = labels
        for t in path:
            core, vert = delete_edge(core, pos, t)
            if not vert.labels <= previous:
                raise InvariantBreach("vertebra labels grew along a non-commuting deletion path")
            previous = vert.labels
            pos = G.reduce(pos + (t,))
            used += 1
        if not vert.labels < labels:
            raise InvariantBreach("vertebra label set did not shrink")
        labels = vert.labels
        last = path[-1]
        if used > guard:
            raise CoreError(f"reduce_to_point exceeded its guard of {guard} deletions")
    if len(vert) != 1:
        raise InvariantBreach("edgeless vertebra is not a single vertex")
    if target_label is not None and target_label != last:
        path = [G.graph.index(v) for v in shortest_path(gc, G.labels[last], G.labels[target_label])][1:]
        pos = vert.vertices[0]
        for t in path:
            core, vert = delete_edge(core, pos, t)
            if len(vert) != 1:
                raise InvariantBreach("vertebra stopped being a single vertex")
            pos = vert.vertices[0]
        last = target_label
    return core, last


# -- tails -------------------------------------------------------------------


@dataclass(frozen=True)
class Block:
    """A stretch of tail.

    ``alt`` and ``path`` blocks delete walls along a path with the given labels
    (``alt`` marks untouched alternating stretches available for surgery).  The
    square blocks are the replacements used to flip a single parity:

    * ``square1`` (x, y, z): delete y then z, where z commutes with y only;
    * ``square2`` (x, y, z): delete x then z, where z commutes with x only, then
      a y-spur at two corners of the square;
    * ``square3`` (x, y, z, w): delete w, x, z, where z commutes with x and y,
      then a w-spur at the far corner.
    """

    kind: str
    labels: tuple[int, ...]

    def steps(self, group: RACG, q: Element) -> tuple[list[tuple[Element, int, int]], Element, int | None]:
        """Deletions ``(at, label, expected vertebra size)``, exit vertex and exit label."""
        r = group.reduce
        if self.kind in ("alt", "path"):
            out = []
            for t in self.labels:
                out.append((q, t, 1))
                q = r(q + (t,))
            return out, q, (self.labels[-1] if self.labels else None)
        if self.kind == "square1":
            x, y, z = self.labels
            qy = r(q + (y,))
            return [(q, y, 1), (qy, z, 2)], r(qy + (z,)), None
        if self.kind == "square2":
            x, y, z = self.labels
            qx = r(q + (x,))
            qz = r(q + (z,))
            return [(q, x, 1), (qx, z, 2), (qx, y, 1), (qz, y, 1)], r(qx + (z,)), None
        if self.kind == "square3":
            x, y, z, w = self.labels
            qw = r(q + (w,))
            qwx = r(qw + (x,))
            qwxz = r(qwx + (z,))
            return [(q, w, 1), (qw, x, 1), (qwx, z, 2), (qwxz, w, 1)], r(qwxz + (w,)), w
        raise ValueError(f"unknown block kind {self.kind!r}")

    @property
    def size(self) -> int:
        if self.kind in ("alt", "path"):
            return len(self.labels)
        return 3 if self.kind == "square1" else 5

    def deletion_labels(self) -> list[int]:
        if self.kind in ("alt", "path"):
            return list(self.labels)
        if self.kind == "square1":
            x, y, z = self.labels
            return [y, z]
        if self.kind == "square2":
            x, y, z = self.labels
            return [x, z, y, y]
        x, y, z, w = self.labels
        return [w, x, z, w]


@dataclass(frozen=True)
class TailPlan:
    """A tail grown from the singleton-vertebra vertex ``start`` of ``stem``."""

    stem: Core
    start: Element
    incoming: int
    a: int
    b: int
    blocks: tuple[Block, ...]

    def deletion_labels(self) -> list[int]:
        return [t for blk in self.blocks for t in blk.deletion_labels()]

    @property
    def size(self) -> int:
        return sum(blk.size for blk in self.blocks)

    def build(self) -> Core:
        G = self.stem.group
        core = self.stem
        q = self.start
        for blk in self.blocks:
            steps, q, _ = blk.steps(G, q)
            for at, t, expected in steps:
                core, vert = delete_edge(core, at, t)
                if len(vert) != expected:
                    raise InvariantBreach(
                        f"{blk.kind} deletion of {G.labels[t]} at {G.names(at)} "
                        f"added {len(vert)} vertices, expected {expected}"
                    )
        if len(core) != len(self.stem) + self.size:
            raise InvariantBreach("tail did not add one orbit per planned vertex")
        return replace(core, plan=self)


def grow_tail(core: Core, v0: Element, s0: int, s1: int, k: int) -> Core:
    """Delete k walls labelled alternately s1, s0, ... along a path from v0."""
    G = core.group
    if G.commute(s0, s1) or s0 == s1:
        raise CoreError("tail labels must not commute")
    if not core.contains(v0) or core.contains(G.reduce(v0 + (s1,))):
        raise NotBounding("tail must start at a core vertex whose first edge leaves the core")
    labels = tuple(s1 if j % 2 == 0 else s0 for j in range(k))
    plan = TailPlan(core, v0, s0, s1, s0, (Block("alt", labels),) if k else ())
    return plan.build()
