"""The permutation action on core vertices modulo the subgroup, and parity surgery.

A generator s sends the class of a core vertex g to the class of g s when that
edge stays in the core, and fixes it when the wall of (g, s) bounds the core.
Parities of generators are changed by rerouting short stretches of an
alternating tail; every surgery rebuilds the core from the stem and checks
the parity table against the flip it is meant to cause.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

from . import permgroup as pg
from .core import Block, Core, CoreError, InvariantBreach, TailPlan
from .graph import complement, shortest_path
from .words import Element


@dataclass(frozen=True)
class PermutationAction:
    points: tuple[Element, ...]
    images: tuple[pg.Perm, ...]
    base: int = 0

    @property
    def degree(self) -> int:
        return len(self.points)

    @property
    def rep_index(self) -> dict[Element, int]:
        return {p: i for i, p in enumerate(self.points)}

    def word_image(self, word: Sequence[int]) -> pg.Perm:
        """Permutation of a word, letters applied left to right (a right action)."""
        out = pg.identity(self.degree)
        for s in word:
            out = pg.compose(out, self.images[s])
        return out

    def moves_base(self, word: Sequence[int]) -> bool:
        return self.word_image(word)[self.base] != self.base

    def to_json(self, labels: Sequence[str]) -> dict:
        """Cycle notation is 1-indexed; ``base`` is the 1-indexed base point."""
        return {
            "degree": self.degree,
            "base": self.base + 1,
            "images": {labels[s]: pg.to_cycle_notation(p) for s, p in enumerate(self.images)},
        }

    @classmethod
    def from_json(cls, data: dict, labels: Sequence[str]) -> "PermutationAction":
        n = data["degree"]
        images = tuple(pg.from_cycle_notation(data["images"][l], n) for l in labels)
        return cls(tuple((i,) for i in range(n)), images, data["base"] - 1)


def check_action(action: PermutationAction, commutes) -> None:
    """Raise InvariantBreach unless images are involutions satisfying the relators, acting transitively."""
    imgs = action.images
    for s, p in enumerate(imgs):
        if not pg.is_identity(pg.compose(p, p)):
            raise InvariantBreach(f"image of generator {s} is not an involution")
    for s in range(len(imgs)):
        for t in range(s + 1, len(imgs)):
            if commutes[s][t] and pg.compose(imgs[s], imgs[t]) != pg.compose(imgs[t], imgs[s]):
                raise InvariantBreach(f"images of commuting generators {s}, {t} do not commute")
    if not pg.is_transitive(imgs, action.degree):
        raise InvariantBreach("coset action is not transitive")


def build_action(c: Core) -> PermutationAction:
    G = c.group
    points = tuple(c.sorted_reps())
    index = {p: i for i, p in enumerate(points)}
    images = []
    for s in range(G.rank):
        images.append(tuple(index.get(c.canonical(G.reduce(p + (s,))), i) for i, p in enumerate(points)))
    base = index.get(c.canonical(c.base))
    if base is None:
        raise CoreError("base vertex is not in the core")
    action = PermutationAction(points, tuple(images), base)
    check_action(action, G.commutes)
    return action


def parity_table(a: PermutationAction) -> list[int]:
    """Per-generator parity, 0 for even and 1 for odd."""
    return [pg.parity(p) for p in a.images]


def tail_parity_delta(c: Core, s: int, since: Core | None = None) -> int:
    """Number of s-labelled edges added (mod 2) by the deletions after ``since``.

    ``since`` defaults to the stem of the core's tail plan, or to the core as it
    was before its first recorded deletion.  Both the attaching edges and the
    edges inside each vertebra count; loops in the quotient do not.
    """
    if since is None:
        since = c.plan.stem if c.plan is not None else None
    start = len(since.tail) if since is not None else 0
    G = c.group
    attach = inner = 0
    for d in c.tail[start:]:
        if d.label == s:
            attach += len(d.vertebra)
            continue
        fresh = set(d.added)
        for v in d.vertebra:
            w = c.canonical(G.reduce(v + (s,)))
            if w in fresh and w != c.canonical(v):
                inner += 1
    # each edge inside a vertebra is seen from both of its ends
    return (attach + inner // 2) % 2


# -- tail surgery ------------------------------------------------------------


def label_history_distance(a: Sequence[int], b: Sequence[int]) -> int:
    """Edit distance between two deletion-label histories."""
    prev = list(range(len(b) + 1))
    for i, x in enumerate(a, 1):
        cur = [i]
        for j, y in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (x != y)))
        prev = cur
    return prev[-1]


def _plan(c: Core) -> TailPlan:
    if c.plan is None:
        raise CoreError("core has no tail plan; grow a tail first")
    return c.plan


def _exit_label(plan: TailPlan, k: int):
    if k < 0:
        return plan.incoming
    blk = plan.blocks[k]
    if blk.kind in ("alt", "path"):
        return blk.labels[-1] if blk.labels else _exit_label(plan, k - 1)
    return blk.labels[3] if blk.kind == "square3" else None


def _find_segment(plan: TailPlan, pattern: tuple, before: int, after: int):
    """First (block, offset) of an alternating stretch equal to ``pattern`` with
    ``before`` just ahead of it and ``after`` (or the end of the tail) just after."""
    L = len(pattern)
    for k, blk in enumerate(plan.blocks):
        if blk.kind != "alt":
            continue
        labels = blk.labels
        for p in range(len(labels) - L + 1):
            if labels[p : p + L] != pattern:
                continue
            pred = labels[p - 1] if p else _exit_label(plan, k - 1)
            if pred != before:
                continue
            if p + L < len(labels):
                follow_ok = labels[p + L] == after
            else:
                rest = plan.blocks[k + 1 :]
                follow_ok = not rest or rest[0].deletion_labels()[:1] == [after]
            if follow_ok:
                return k, p
    return None


def _splice(plan: TailPlan, k: int, p: int, length: int, new: Block) -> TailPlan:
    labels = plan.blocks[k].labels
    parts = []
    if p:
        parts.append(Block("alt", labels[:p]))
    parts.append(new)
    if p + length < len(labels):
        parts.append(Block("alt", labels[p + length :]))
    blocks = plan.blocks[:k] + tuple(parts) + plan.blocks[k + 1 :]
    return replace(plan, blocks=blocks)


def _check_flip(before: Core, after: Core, flipped: set, free: set = frozenset()) -> None:
    if len(after) != len(before):
        raise InvariantBreach("surgery changed the degree")
    old = parity_table(build_action(before))
    new = parity_table(build_action(after))
    for s in range(len(old)):
        if s in free:
            continue
        if (old[s] != new[s]) != (s in flipped):
            raise InvariantBreach(f"surgery changed parity of generator {s} unexpectedly")


def apply_parity_lemma(c: Core, i: int) -> Core:
    """Flip the parity of generator i by rerouting part of the tail through the complement graph.

    A stretch a, b, ..., a of length 2m+1 (m the complement distance from a to
    i) is replaced by the complement path from a to i and back.  Parities of a
    and b may change as well; every other generator keeps its parity.
    """
    plan = _plan(c)
    G = c.group
    a, b = plan.a, plan.b
    if i in (a, b):
        raise CoreError("the parity lemma applies to generators other than the tail labels")
    path = [G.graph.index(v) for v in shortest_path(complement(G.graph), G.labels[a], G.labels[i])]
    m = len(path) - 1
    pattern = tuple(a if j % 2 == 0 else b for j in range(2 * m + 1))
    hit = _find_segment(plan, pattern, b, b)
    if hit is None:
        raise CoreError(f"tail too short for a reroute of length {2 * m + 1}")
    route = tuple(path + path[-2::-1])
    new = _splice(plan, *hit, len(pattern), Block("path", route)).build()
    _check_flip(c, new, {i}, {a, b})
    return new


def _square_case(G, x: int, y: int):
    rank = range(G.rank)
    for z in rank:
        if z not in (x, y) and G.commute(z, y) and not G.commute(z, x):
            return Block("square1", (x, y, z)), (y, x, y), x, x
    for z in rank:
        if z not in (x, y) and G.commute(z, x) and not G.commute(z, y):
            return Block("square2", (x, y, z)), (x, y, x, y, x), y, y
    for z in rank:
        if z in (x, y) or not (G.commute(z, x) and G.commute(z, y)):
            continue
        for w in rank:
            if w not in (x, y, z) and not any(G.commute(w, t) for t in (x, y, z)):
                return Block("square3", (x, y, z, w)), (x, y, x, y, x), y, y
    return None


def apply_squares_lemma(c: Core, flip: int | None = None) -> Core:
    """Flip the parity of one tail label (default the first one) and nothing else."""
    plan = _plan(c)
    G = c.group
    x = plan.a if flip is None else flip
    if x not in (plan.a, plan.b):
        raise CoreError("the squares lemma flips one of the two tail labels")
    y = plan.b if x == plan.a else plan.a
    case = _square_case(G, x, y)
    if case is None:
        raise InvariantBreach("no square construction applies to this graph")
    block, pattern, before, after = case
    hit = _find_segment(plan, pattern, before, after)
    if hit is None:
        raise CoreError("tail too short for the squares construction")
    new = _splice(plan, *hit, len(pattern), block).build()
    _check_flip(c, new, {x})
    if label_history_distance(plan.deletion_labels(), new.plan.deletion_labels()) > 5:
        raise InvariantBreach("squares construction changed more than 5 deletions")
    return new


def fix_parities(c: Core, target: str = "all_even") -> Core:
    """Make every generator even, or every generator but the first tail label."""
    if target not in ("all_even", "one_odd"):
        raise ValueError(f"unknown parity target {target!r}")
    plan = _plan(c)
    a, b = plan.a, plan.b
    degree = len(c)
    table = parity_table(build_action(c))
    for i in range(c.group.rank):
        if i not in (a, b) and table[i]:
            c = apply_parity_lemma(c, i)
            table = parity_table(build_action(c))
    for x in (a, b):
        want = 1 if (target == "one_odd" and x == a) else 0
        if table[x] != want:
            c = apply_squares_lemma(c, x)
            table = parity_table(build_action(c))
    expected = [1 if (target == "one_odd" and s == a) else 0 for s in range(c.group.rank)]
    if table != expected or len(c) != degree:
        raise InvariantBreach("parity surgery did not reach its target")
    return c
