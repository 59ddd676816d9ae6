"""Exact round complexity of the switch-search games by memoized minimax
over knowledge states.

The value of a state is 0 when the goal is already determined, otherwise
1 plus the best over question sets of the worst over answer combinations.
Because revealing strictly more switches never hurts the questioner, the
recursion only needs question sets of maximal size; the root move scan
still ranges over every nonempty set up to the budget so the reported
optimal first moves are exhaustive.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Any, Iterable, Sequence

from .game import (
    GraphIndex,
    determined_key,
    followflow_bound_key,
    frontier_of_key,
    min_unknowns_on_path_key,
)
from .graph import Graph, GraphError
from .strategies.shared import StrategyError, pyramid_structure


@dataclass
class SolverConfig:
    max_askable: int = 16
    symmetry_reduction: bool = False
    parallel: bool = False


@dataclass
class SolveStats:
    states: int = 0
    memo_hits: int = 0
    ms: float = 0.0


@dataclass
class SolveResult:
    value: int
    optimal_first_moves: list[list[str]]
    stats: SolveStats

    def to_json_doc(self) -> dict[str, Any]:
        return {
            "value": self.value,
            "optimal_first_moves": [list(m) for m in self.optimal_first_moves],
            "stats": {
                "states": self.stats.states,
                "memo_hits": self.stats.memo_hits,
                "ms": round(self.stats.ms, 3),
            },
        }


def _mirror_positions(g: Graph, idx: GraphIndex) -> dict[int, int] | None:
    """Left/right mirror of a pyramid as a permutation of askable positions."""
    try:
        py = pyramid_structure(g)
    except StrategyError:
        return None
    perm: dict[int, int] = {}
    for p, v in enumerate(idx.askable):
        i, j = py.coords[idx.ids[v]]
        mirrored = py.by_coord[(i, i + 1 - j)]
        perm[p] = idx.apos[idx.pos[mirrored]]
    return perm


class _Solver:
    def __init__(self, g: Graph, k: int, goal: str, cfg: SolverConfig):
        self.idx = GraphIndex(g)
        self.k = k
        self.goal = goal
        self.cfg = cfg
        self.memo: dict[tuple[int, ...], int] = {}
        self.hits = 0
        self.idx_choices = [
            range(1, len(self.idx.out_heads[v]) + 1) for v in self.idx.askable
        ]
        self.use_path_bound = goal == "path" and not self.idx.cyclic

    def lower_bound(self, key: tuple[int, ...]) -> int:
        if self.use_path_bound:
            need = min_unknowns_on_path_key(self.idx, key)
            return max(1, -(-need // self.k))
        return 1

    def unknown_positions(self, key: tuple[int, ...]) -> list[int]:
        unknown = [p for p, a in enumerate(key) if a == 0]
        f, at_sink, cycled = frontier_of_key(self.idx, key)
        if not at_sink and not cycled:
            fp = self.idx.apos.get(f)
            if fp is not None and key[fp] == 0:
                unknown.remove(fp)
                unknown.insert(0, fp)
        return unknown

    def set_worst(self, key: tuple[int, ...], positions: Sequence[int], cutoff: int) -> int:
        """Worst child value over the answer combinations of one question
        set, clamped at cutoff as soon as it cannot stay below it."""
        if cutoff <= 0:
            return cutoff
        worst = 0
        base = list(key)
        for combo in product(*(self.idx_choices[p] for p in positions)):
            child = base[:]
            for p, a in zip(positions, combo):
                child[p] = a
            ckey = tuple(child)
            if determined_key(self.idx, ckey, self.goal):
                continue
            if 1 >= cutoff:
                return cutoff
            v = self.value(ckey)
            if v >= cutoff:
                return cutoff
            if v > worst:
                worst = v
        return worst

    def value(self, key: tuple[int, ...]) -> int:
        """Exact value of an undetermined state."""
        cached = self.memo.get(key)
        if cached is not None:
            self.hits += 1
            return cached
        ub = followflow_bound_key(self.idx, key)
        lb = self.lower_bound(key)
        if lb >= ub:
            self.memo[key] = ub
            return ub
        unknown = self.unknown_positions(key)
        size = min(self.k, len(unknown))
        best = ub
        for positions in combinations(unknown, size):
            worst = self.set_worst(key, positions, best - 1)
            if worst + 1 < best:
                best = worst + 1
                if best <= lb:
                    break
        self.memo[key] = best
        return best

    def root_value(self, key: tuple[int, ...], mirror: dict[int, int] | None) -> int:
        ub = followflow_bound_key(self.idx, key)
        lb = self.lower_bound(key)
        if lb >= ub:
            return ub
        unknown = self.unknown_positions(key)
        size = min(self.k, len(unknown))
        sets: list[tuple[int, ...]] = []
        seen: set[tuple[int, ...]] = set()
        for positions in combinations(unknown, size):
            canon = tuple(sorted(positions))
            if mirror is not None:
                canon = min(canon, tuple(sorted(mirror[p] for p in positions)))
            if canon in seen:
                continue
            seen.add(canon)
            sets.append(positions)

        if self.cfg.parallel:
            with ThreadPoolExecutor(max_workers=4) as pool:
                worsts = list(
                    pool.map(lambda s: self.set_worst(key, s, 1 << 30), sets)
                )
            return min(ub, min(w + 1 for w in worsts))

        best = ub
        for positions in sets:
            worst = self.set_worst(key, positions, best - 1)
            if worst + 1 < best:
                best = worst + 1
                if best <= lb:
                    break
        return best

    def optimal_moves(self, key: tuple[int, ...], best: int) -> list[list[str]]:
        moves: list[list[str]] = []
        unknown = sorted(p for p, a in enumerate(key) if a == 0)
        for size in range(1, min(self.k, len(unknown)) + 1):
            for positions in combinations(unknown, size):
                if self.set_worst(key, positions, best) == best - 1:
                    moves.append(
                        sorted(self.idx.ids[self.idx.askable[p]] for p in positions)
                    )
        return moves


def solve_exact(g: Graph, k: int, goal: str, cfg: SolverConfig | None = None) -> SolveResult:
    """Optimal number of rounds with k questions per round, plus every
    first-round question set that achieves it."""
    if goal not in ("sink", "path"):
        raise ValueError(f"goal must be 'sink' or 'path', got {goal!r}")
    if k < 1:
        raise ValueError(f"round budget must be >= 1, got {k}")
    if not g.acyclic and goal == "sink":
        raise GraphError("sink search is only defined on acyclic graphs")
    cfg = cfg or SolverConfig()
    t0 = time.perf_counter()
    solver = _Solver(g, k, goal, cfg)
    idx = solver.idx
    if len(idx.askable) > cfg.max_askable:
        raise GraphError(
            f"{len(idx.askable)} askable vertices exceed max_askable={cfg.max_askable}"
        )
    key0 = idx.empty_key()
    if determined_key(idx, key0, goal):
        ms = (time.perf_counter() - t0) * 1000
        return SolveResult(0, [], SolveStats(0, 0, ms))
    mirror = _mirror_positions(g, idx) if cfg.symmetry_reduction else None
    value = solver.root_value(key0, mirror)
    moves = solver.optimal_moves(key0, value)
    ms = (time.perf_counter() - t0) * 1000
    return SolveResult(value, moves, SolveStats(len(solver.memo), solver.hits, ms))


def solve_curve(
    g: Graph, k_max: int, goal: str, cfg: SolverConfig | None = None
) -> list[tuple[int, int]]:
    """(k, optimal rounds) for k = 1 .. k_max; values never increase in k."""
    if k_max < 1:
        raise ValueError(f"k_max must be >= 1, got {k_max}")
    curve = []
    prev: int | None = None
    for k in range(1, k_max + 1):
        val = solve_exact(g, k, goal, cfg).value
        if prev is not None and val > prev:
            raise AssertionError(
                f"round complexity increased from {prev} to {val} at k={k}"
            )
        curve.append((k, val))
        prev = val
    return curve
