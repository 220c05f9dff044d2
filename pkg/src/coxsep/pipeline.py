"""End-to-end separation: from a graph, a subgroup and a finite set of elements
outside it to a verified surjection onto a finite alternating or symmetric group.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import asdict, dataclass, field

from . import permgroup as pg
from .core import (
    Core,
    CoreError,
    HypothesisFailure,
    OrbitInconclusive,
    SubgroupSpec,
    expand,
    absorb,
    grow_tail,
    infinite_index_windowed,
    parabolic_core,
    reduce_to_point,
    trivial_core,
    verify_core,
    words_core,
)
from .graph import SimplicialGraph, check_hypotheses, complement, components, diameter, double, embed_raag_word
from .quotient import build_action, check_action, fix_parities, parity_table
from .words import RACG, Element, shortlex_key


class BudgetExhausted(CoreError):
    pass


class InSubgroup(CoreError):
    pass


@dataclass(frozen=True)
class Config:
    window: int = 3
    prime_search_limit: int = 2000
    enumeration_bound: int = 8
    max_degree: int = 5000
    seed: int = 0


@dataclass
class SeparationRequest:
    graph: SimplicialGraph
    subgroup: SubgroupSpec
    gammas: list
    target: str = "alternating"
    config: Config = field(default_factory=Config)
    subgroup_reps: list | None = None

    def __post_init__(self):
        if not self.gammas:
            raise ValueError("at least one element to separate is required")
        if self.target not in ("alternating", "symmetric"):
            raise ValueError(f"unknown target {self.target!r}")


@dataclass
class QuotientReport:
    labels: tuple
    degree: int
    base: int
    images: tuple
    parities: list
    recognition: pg.RecognitionResult
    separation: list
    core_stats: dict
    assumptions: list
    config: Config
    target: str

    def generator_images(self) -> dict:
        return {l: p for l, p in zip(self.labels, self.images)}

    def to_json(self) -> dict:
        return {
            "target": self.target,
            "degree": self.degree,
            "base": self.base + 1,
            "generator_images": {l: pg.to_cycle_notation(p) for l, p in zip(self.labels, self.images)},
            "parities": {l: ("odd" if p else "even") for l, p in zip(self.labels, self.parities)},
            "recognition": self.recognition.to_json(),
            "separation": [{"gamma": g, "moves_base": ok} for g, ok in self.separation],
            "core_stats": self.core_stats,
            "assumptions": self.assumptions,
            "config": asdict(self.config),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


# -- guards ------------------------------------------------------------------


@dataclass(frozen=True)
class ProductSplit:
    """Complement components; more than one means the group is a direct product."""

    components: tuple[tuple[str, ...], ...]

    @property
    def obstructed(self) -> bool:
        return len(self.components) > 1

    def message(self) -> str:
        if not self.obstructed:
            return "complement graph is connected: no product obstruction"
        factors = " x ".join("C(" + ",".join(c) + ")" for c in self.components)
        return f"group splits as {factors}; its nontrivial quotients cannot all be alternating"


def guard_product(g: SimplicialGraph) -> ProductSplit:
    return ProductSplit(tuple(tuple(c) for c in components(complement(g))))


def _check_hypotheses(g: SimplicialGraph):
    split = guard_product(g)
    if split.obstructed:
        raise HypothesisFailure(split.message(), split.components)
    hyp = check_hypotheses(g)
    if not hyp.nondiscrete:
        raise HypothesisFailure("graph has no edges", hyp.complement_components)
    if not hyp.size_ok:
        raise HypothesisFailure("graph needs at least three vertices", hyp.complement_components)
    return hyp


# -- pipeline ----------------------------------------------------------------


def build_core(group: RACG, spec: SubgroupSpec, reps=None, window: int = 3) -> Core:
    if spec.kind == "trivial":
        core = trivial_core(group)
    elif spec.kind == "parabolic":
        core = parabolic_core(group, spec.generators)
    else:
        core = words_core(group, spec.generators, reps, spec.enumeration_bound, window)
    report = verify_core(core, window)
    if report.inconclusive:
        raise OrbitInconclusive(report.inconclusive[0])
    if report.violations:
        kind, witness = report.violations[0]
        raise CoreError(f"subgroup core fails the {kind} check at {group.names(witness)}")
    return core


def next_prime(n: int, limit: int) -> int | None:
    for m in range(max(n, 2), n + limit + 1):
        if pg.is_prime(m):
            return m
    return None


def verify_report(report: QuotientReport, group: RACG, gammas, subgroup: SubgroupSpec) -> None:
    """Re-check a report from its permutations alone; raise on any failure."""
    from .quotient import PermutationAction

    n = report.degree
    action = PermutationAction(tuple((i,) for i in range(n)), tuple(report.images), report.base)
    check_action(action, group.commutes)
    order = pg.group_order(list(report.images), n)
    full = math.factorial(n)
    expected = full // 2 if report.target == "alternating" else full
    if order != expected or order != report.recognition.order:
        raise CoreError("reported order does not match the target group")
    if not pg.is_prime(n):
        raise CoreError("degree is not prime")
    if [pg.parity(p) for p in report.images] != report.parities:
        raise CoreError("parity table disagrees with the images")
    for g in subgroup.generator_words():
        if action.moves_base(g):
            raise CoreError("a subgroup generator moves the base point")
    for g in gammas:
        if not action.moves_base(g):
            raise CoreError(f"{group.names(g)} fixes the base point")


def _first_outside(core: Core) -> int:
    G = core.group
    for s in range(G.rank):
        if core.canonical((s,)) != ():
            return s
    raise HypothesisFailure("subgroup contains every generator")


def separate(req: SeparationRequest) -> QuotientReport:
    cfg = req.config
    _check_hypotheses(req.graph)
    G = RACG(req.graph)
    spec = req.subgroup
    if spec.kind == "words" and spec.enumeration_bound != cfg.enumeration_bound:
        spec = SubgroupSpec("words", spec.generators, cfg.enumeration_bound)
    assumptions = []
    core = build_core(G, spec, req.subgroup_reps, cfg.window)
    if spec.kind == "words":
        grows = infinite_index_windowed(G, spec, cfg.window + 3)
        assumptions.append(
            "infinite index of the subgroup is assumed; "
            f"windowed orbit growth {'observed' if grows else 'NOT observed'}"
        )
    gammas = [G.reduce(tuple(g)) for g in req.gammas]
    for g in gammas:
        if core.canonical(g) == ():
            raise InSubgroup(f"{G.names(g) or ['e']} lies in the subgroup")
    initial = len(core)

    core = expand(core, 1)
    for g in sorted(gammas, key=shortlex_key):
        core = absorb(core, g)
    s0 = _first_outside(core)
    stem, last = reduce_to_point(core, s0)
    v0 = stem.tail[-1].vertebra[0]
    s1 = next(t for t in range(G.rank) if t != s0 and not G.commute(s0, t))
    d = diameter(complement(G.graph))
    margin = (G.rank - 2) * (2 * d + 1) + 16
    n0 = len(stem)
    stem_action = build_action(stem)
    threshold = 4 * max(pg.support(p) for p in stem_action.images) + margin
    parity_target = "all_even" if req.target == "alternating" else "one_odd"

    tried = []
    while True:
        n = next_prime(max(threshold, n0 + margin), cfg.prime_search_limit)
        if n is None or n > cfg.max_degree:
            raise BudgetExhausted(f"no suitable prime degree up to {cfg.max_degree} (tried {tried})")
        if tried and n == tried[-1]:
            threshold *= 2
            continue
        tried.append(n)
        tailed = grow_tail(stem, v0, s0, s1, n - n0)
        fixed = fix_parities(tailed, parity_target)
        action = build_action(fixed)
        rec = pg.recognize(action.images, action.degree)
        if rec.verdict == req.target:
            break
        threshold *= 2

    report = QuotientReport(
        labels=G.labels,
        degree=action.degree,
        base=action.base,
        images=action.images,
        parities=parity_table(action),
        recognition=rec,
        separation=[(G.names(g), action.moves_base(g)) for g in gammas],
        core_stats={
            "initial_reps": initial,
            "stem_reps": n0,
            "final_reps": len(fixed),
            "tail_length": len(fixed) - n0,
            "deletion_count": len(fixed.tail),
            "tail_labels": [G.labels[s0], G.labels[s1]],
            "parity_margin": margin,
            "degrees_tried": tried,
        },
        assumptions=assumptions,
        config=cfg,
        target=req.target,
    )
    verify_report(report, G, gammas, spec)
    return report


def raag_separate(
    graph: SimplicialGraph, subgroup_words, gammas, target: str = "alternating", config: Config | None = None
) -> QuotientReport:
    """Separate in the right-angled Artin group of ``graph`` through its Coxeter double."""
    if len(graph) < 2:
        raise HypothesisFailure("graph needs at least two vertices")
    split = guard_product(graph)
    if split.obstructed:
        raise HypothesisFailure(split.message(), split.components)
    if not gammas:
        raise ValueError("at least one element to separate is required")
    config = config or Config()
    doubled = double(graph)
    G = RACG(doubled)
    words = [G.word(embed_raag_word(graph, w)) for w in subgroup_words]
    words = [w for w in words if w]
    spec = SubgroupSpec.words(words, config.enumeration_bound) if words else SubgroupSpec.trivial()
    elements = [G.word(embed_raag_word(graph, w)) for w in gammas]
    return separate(SeparationRequest(doubled, spec, elements, target, config))


# -- DOT export --------------------------------------------------------------


def export_dot(core: Core, window: int = 2) -> str:
    """Core vertices within ``window`` steps of the base, walking inside the core."""
    G = core.group
    dist = {core.base: 0}
    queue = deque([core.base])
    while queue:
        x = queue.popleft()
        if dist[x] == window:
            continue
        for y in G.neighbours(x):
            if y not in dist and core.contains(y):
                dist[y] = dist[x] + 1
                queue.append(y)
    nodes = sorted(dist, key=shortlex_key)

    def name(x: Element) -> str:
        return "e" if not x else " ".join(G.names(x))

    lines = ["graph core {"]
    for x in nodes:
        lines.append(f'  "{name(x)}";')
    for x in nodes:
        for s in range(G.rank):
            y = G.reduce(x + (s,))
            if y in dist and shortlex_key(x) < shortlex_key(y):
                lines.append(f'  "{name(x)}" -- "{name(y)}" [label="{G.labels[s]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
