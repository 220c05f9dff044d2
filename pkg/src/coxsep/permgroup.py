"""Permutations, Schreier-Sims and recognition of alternating/symmetric groups.

Permutations are tuples ``p`` with ``p[i]`` the image of point ``i``; products
act left to right, ``compose(p, q)[i] == q[p[i]]``.
"""

from __future__ import annotations

import math
import random
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

Perm = tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(n))


def check(p: Sequence[int]) -> Perm:
    p = tuple(p)
    if sorted(p) != list(range(len(p))):
        raise ValueError(f"not a permutation: {p}")
    return p


def compose(p: Perm, q: Perm) -> Perm:
    return tuple(q[i] for i in p)


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def is_identity(p: Perm) -> bool:
    return all(i == j for i, j in enumerate(p))


def cycles(p: Perm) -> list[list[int]]:
    seen = set()
    out = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = p[j]
        out.append(cyc)
    return out


def parity(p: Perm) -> int:
    """0 for even, 1 for odd."""
    return sum(len(c) - 1 for c in cycles(p)) % 2


def support(p: Perm) -> int:
    return sum(1 for i, j in enumerate(p) if i != j)


def to_cycle_notation(p: Perm) -> str:
    """1-indexed cycle notation, ``()`` for the identity."""
    cs = cycles(p)
    if not cs:
        return "()"
    return "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in cs)


_CYCLE = re.compile(r"\(([^()]*)\)")


def from_cycle_notation(text: str, degree: int) -> Perm:
    text = text.strip()
    if _CYCLE.sub("", text).strip():
        raise ValueError(f"malformed cycle notation {text!r}")
    img = list(range(degree))
    seen: set[int] = set()
    for body in _CYCLE.findall(text):
        pts = [int(x) - 1 for x in body.replace(",", " ").split()]
        for x in pts:
            if not 0 <= x < degree or x in seen:
                raise ValueError(f"bad point {x + 1} in {text!r}")
            seen.add(x)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a] = b
    return tuple(img)


def orbit(gens: Sequence[Perm], point: int) -> list[int]:
    seen = {point}
    queue = deque([point])
    out = [point]
    while queue:
        x = queue.popleft()
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                out.append(y)
                queue.append(y)
    return out


def is_transitive(gens: Sequence[Perm], degree: int) -> bool:
    if degree <= 1:
        return True
    return len(orbit(gens, 0)) == degree


# -- stabilizer chains -------------------------------------------------------


@dataclass
class _Level:
    point: int
    gens: list[Perm]
    transversal: dict[int, Perm] = field(default_factory=dict)

    def rebuild(self, degree: int):
        u = {self.point: identity(degree)}
        queue = deque([self.point])
        while queue:
            x = queue.popleft()
            ux = u[x]
            for g in self.gens:
                y = g[x]
                if y not in u:
                    u[y] = compose(ux, g)
                    queue.append(y)
        self.transversal = u


class StabilizerChain:
    """Base and strong generating set built by random then deterministic Schreier-Sims."""

    def __init__(self, gens: Sequence[Perm], degree: int | None = None, seed: int = 0):
        gens = [check(g) for g in gens]
        if degree is None:
            degree = len(gens[0]) if gens else 0
        if any(len(g) != degree for g in gens):
            raise ValueError("generators of different degrees")
        self.degree = degree
        self.gens = [g for g in gens if not is_identity(g)]
        self.levels: list[_Level] = []
        self._rng = random.Random(seed)

    def order(self) -> int:
        return math.prod(len(lv.transversal) for lv in self.levels)

    def sift(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            b = g[lv.point]
            u = lv.transversal.get(b)
            if u is None:
                return g, i
            g = compose(g, inverse(u))
        return g, len(self.levels)

    def contains(self, g: Perm) -> bool:
        residue, _ = self.sift(check(g))
        return is_identity(residue)

    def _insert(self, h: Perm, level: int, lowest: int = 0):
        """Add h as a strong generator on levels lowest..level, extending the base if needed."""
        if level == len(self.levels):
            moved = next(i for i in range(self.degree) if h[i] != i)
            self.levels.append(_Level(moved, []))
        for j in range(lowest, level + 1):
            lv = self.levels[j]
            lv.gens.append(h)
            if len(lv.transversal) < self.degree - j or not lv.transversal:
                lv.rebuild(self.degree)

    def build(self, target: int | None = None, patience: int = 40):
        """Random Schreier-Sims until the order reaches ``target`` or ``patience``
        consecutive random elements sift through, then complete deterministically.

        The product of basic orbit lengths never exceeds the group order, so
        reaching ``target`` when ``target`` is an upper bound certifies the
        order without the deterministic pass.
        """
        if not self.gens:
            return self
        for g in self.gens:
            residue, lvl = self.sift(g)
            if not is_identity(residue):
                self._insert(residue, lvl)
        pool = list(self.gens)
        while len(pool) < 10:
            pool.append(self._rng.choice(self.gens))
        acc = identity(self.degree)
        quiet = 0
        while quiet < patience:
            if target is not None and self.order() >= target:
                return self
            i, j = self._rng.sample(range(len(pool)), 2)
            pool[i] = compose(pool[i], pool[j]) if self._rng.random() < 0.5 else compose(pool[j], pool[i])
            acc = compose(acc, pool[i])
            residue, lvl = self.sift(acc)
            if is_identity(residue):
                quiet += 1
            else:
                quiet = 0
                self._insert(residue, lvl)
        if target is not None and self.order() >= target:
            return self
        self._complete()
        return self

    def _complete(self):
        i = len(self.levels) - 1
        while i >= 0:
            lv = self.levels[i]
            failed = None
            for beta, u in list(lv.transversal.items()):
                for s in lv.gens:
                    schreier = compose(compose(u, s), inverse(lv.transversal[s[beta]]))
                    residue, lvl = self.sift(schreier, i + 1)
                    if not is_identity(residue):
                        failed = (residue, lvl)
                        break
                if failed:
                    break
            if failed:
                residue, lvl = failed
                self._insert(residue, lvl, lowest=i + 1)
                i = lvl
            else:
                i -= 1


def group_order(gens: Sequence[Perm], degree: int | None = None) -> int:
    gens = [check(g) for g in gens]
    if not gens:
        return 1
    n = len(gens[0]) if degree is None else degree
    bound = math.factorial(n) // (2 if all(parity(g) == 0 for g in gens) else 1)
    return StabilizerChain(gens, n).build(target=bound).order()


@dataclass(frozen=True)
class RecognitionResult:
    verdict: str
    order: int
    transitive: bool
    prime_degree: bool
    small_support_witness: tuple[int, int] | None
    all_even: bool

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "order": str(self.order),
            "evidence": {
                "transitive": self.transitive,
                "prime_degree": self.prime_degree,
                "small_support_witness": list(self.small_support_witness)
                if self.small_support_witness
                else None,
                "all_even": self.all_even,
            },
        }


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def recognize(gens: Sequence[Perm], degree: int) -> RecognitionResult:
    """Decide whether the generated group is A_n, S_n or something else, by order.

    The small-support witness is the index of a nontrivial generator of least
    support together with that support.
    """
    if degree < 1:
        raise ValueError("degree must be positive")
    gens = [check(g) for g in gens]
    order = group_order(gens, degree) if gens else 1
    full = math.factorial(degree)
    all_even = all(parity(g) == 0 for g in gens)
    if order == full:
        verdict = "symmetric"
    elif 2 * order == full:
        verdict = "alternating"
    else:
        verdict = "other"
    supports = [(support(g), i) for i, g in enumerate(gens) if not is_identity(g)]
    witness = None
    if supports:
        s, i = min(supports)
        witness = (i, s)
    result = RecognitionResult(
        verdict=verdict,
        order=order,
        transitive=is_transitive(gens, degree),
        prime_degree=is_prime(degree),
        small_support_witness=witness,
        all_even=all_even,
    )
    if verdict == "alternating" and degree > 2:
        assert all_even, "alternating verdict with an odd generator"
    if verdict == "symmetric" and degree > 1:
        assert not all_even, "symmetric verdict with only even generators"
    return result
