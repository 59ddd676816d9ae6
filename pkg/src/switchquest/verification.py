"""Verification harness: each acceptance check is a function producing a
Report, shared by the command-line verify suites and the test suite.

Checks are deterministic given a seed and a budget ("small" for quick CI
runs, "full" for the complete grids).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

from .formulas import (
    gpy_lower,
    pyramid_lower,
    pyramid_upper,
    ratio_bound,
    s_of_l,
    tree_rounds,
)
from .game import best_response_rounds, run_match, worst_case_rounds
from .generators import (
    gen_gpy_complete,
    gen_gpy_grid,
    gen_hl,
    gen_pyramid,
    gen_tree,
    gen_tree_remark,
    random_dag,
)
from .graph import Edge, Graph, validate
from .reduce import (
    longest_generalized_path_len,
    longest_path_len,
    reachability_preserved_check,
    reduce_multi,
    reduce_simple,
)
from .solver import SolverConfig, solve_exact
from .strategies import (
    GpyLeftCommitting,
    PyramidK2,
    PyramidRecursive,
    PyramidShorterSide,
    TreeLevels,
    TreeMinSubtree,
    make_questioner,
)

BUDGETS = ("small", "full")


@dataclass
class Check:
    name: str
    expected: str
    actual: str
    passed: bool

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"  [{mark}] {self.name}: expected {self.expected}, got {self.actual}"


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)

    def equal(self, name: str, expected: Any, actual: Any) -> None:
        self.checks.append(Check(name, str(expected), str(actual), expected == actual))

    def at_least(self, name: str, bound: Any, actual: Any) -> None:
        self.checks.append(Check(name, f">= {bound}", str(actual), actual >= bound))

    def at_most(self, name: str, bound: Any, actual: Any) -> None:
        self.checks.append(Check(name, f"<= {bound}", str(actual), actual <= bound))

    def truth(self, name: str, actual: bool) -> None:
        self.checks.append(Check(name, "true", str(actual).lower(), bool(actual)))

    def less(self, name: str, bound: Any, actual: Any) -> None:
        self.checks.append(Check(name, f"< {bound}", str(actual), actual < bound))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self) -> list[str]:
        status = "PASS" if self.passed else "FAIL"
        body = [c.line() for c in self.checks]
        return [f"{status} {self.title} ({len(self.checks)} checks)"] + body

    def failures(self) -> list[str]:
        return [c.line() for c in self.checks if not c.passed]

    def to_json_doc(self) -> dict[str, Any]:
        return {
            "title": self.title,
            "passed": self.passed,
            "checks": [
                {
                    "name": c.name,
                    "expected": c.expected,
                    "actual": c.actual,
                    "pass": c.passed,
                }
                for c in self.checks
            ],
        }


class ValueCache:
    """Solver values keyed by (graph label, goal) then budget, for the
    cross-cutting ratio and monotonicity checks."""

    def __init__(self) -> None:
        self.values: dict[tuple[str, str], dict[int, int]] = {}

    def record(self, label: str, goal: str, k: int, value: int) -> None:
        self.values.setdefault((label, goal), {})[k] = value

    def __len__(self) -> int:
        return sum(len(v) for v in self.values.values())


def _value(g: Graph, k: int, goal: str, cache: ValueCache | None = None) -> int:
    val = solve_exact(g, k, goal).value
    if cache is not None:
        cache.record(g.name, goal, k, val)
    return val


# -- random instance supply --------------------------------------------------


def _instance_seeds(seed: int, count: int) -> list[int]:
    rng = random.Random(seed)
    return [rng.randrange(1, 10**9) for _ in range(count)]


def random_cyclic_multigraph(n: int, seed: int) -> Graph:
    """Random single-source multigraph with min out-degree 2 and at least
    one directed cycle, built by closing existing edges of a random DAG."""
    rng = random.Random(seed)
    for attempt in range(50):
        g = random_dag(n, 3, 2, True, rng.randrange(1, 10**9))
        candidates = [
            e for e in g.edges if not g.is_sink(e.head) and e.tail != g.source
        ]
        if not candidates:
            continue
        back = rng.sample(candidates, min(len(candidates), rng.randint(1, 2)))
        extra = [
            Edge(f"c{i}", e.head, e.tail) for i, e in enumerate(back)
        ]
        cyclic = Graph(
            f"cyclic({n},seed={seed},try={attempt})",
            g.vertices,
            g.edges + tuple(extra),
            g.source,
            multigraph=True,
            allow_cycles=True,
        )
        if not cyclic.acyclic and not validate(cyclic):
            return cyclic
    raise AssertionError(f"could not build a cyclic instance for n={n}, seed={seed}")


# -- single-question oracle equivalences (reduced and unreduced dags) --------


def check_sink_equals_longest_path(seed: int = 1, instances: int = 50) -> Report:
    """One question per round on simple min-out-degree-2 dags: the sink
    game lasts exactly the longest path length."""
    rep = Report("sink rounds = longest path on min-out-degree-2 dags")
    for i, s in enumerate(_instance_seeds(seed, instances)):
        n = 6 + i % 4
        g = random_dag(n, 3, 2, False, s)
        rep.equal(f"{g.name}", longest_path_len(g), _value(g, 1, "sink"))
    return rep


def check_sink_equals_reduced_longest_path(seed: int = 1, instances: int = 50) -> Report:
    """With out-degree-1 vertices allowed, the sink game matches the
    longest path of the collapsed graph."""
    rep = Report("sink rounds = longest path of the collapsed graph")
    for i, s in enumerate(_instance_seeds(seed + 101, instances)):
        n = 6 + i % 5
        g = random_dag(n, 3, 1, False, s)
        rep.equal(f"{g.name}", longest_path_len(reduce_simple(g).graph), _value(g, 1, "sink"))
    return rep


def check_path_equals_reduced_longest_path(seed: int = 1, instances: int = 50) -> Report:
    """Multigraph path game matches the longest path of the parallel-edge
    preserving collapse."""
    rep = Report("path rounds = longest path of the multigraph collapse")
    for i, s in enumerate(_instance_seeds(seed + 202, instances)):
        n = 6 + i % 5
        g = random_dag(n, 3, 1, True, s)
        rep.equal(f"{g.name}", longest_path_len(reduce_multi(g).graph), _value(g, 1, "path"))
    return rep


def check_cyclic_path_equals_generalized(seed: int = 1, instances: int = 20) -> Report:
    """On cyclic multigraphs with min out-degree 2, the path game lasts
    exactly the longest generalized path from the source."""
    rep = Report("cyclic path rounds = longest generalized path")
    for i, s in enumerate(_instance_seeds(seed + 303, instances)):
        n = 6 + i % 3
        g = random_cyclic_multigraph(n, s)
        rep.equal(f"{g.name}", longest_generalized_path_len(g), _value(g, 1, "path"))
    return rep


# -- exact families -----------------------------------------------------------


def check_tree_exact(budget: str = "full", cache: ValueCache | None = None) -> Report:
    """Solver values on complete d-ary trees match the closed form for
    both goals."""
    rep = Report("complete d-ary tree values match the closed form")
    grids = (
        [(2, 3, 7), (3, 2, 4)] if budget == "full" else [(2, 2, 5), (3, 1, 3)]
    )
    for d, n_max, k_max in grids:
        for n in range(0, n_max + 1):
            g = gen_tree(d, n)
            for k in range(1, k_max + 1):
                want = tree_rounds(d, n, k)
                for goal in ("sink", "path"):
                    rep.equal(
                        f"tree(d={d},n={n}) k={k} {goal}",
                        want,
                        _value(g, k, goal, cache),
                    )
    return rep


def check_pyramid_exact(budget: str = "full", cache: ValueCache | None = None) -> Report:
    """Pyramid values for budgets 1..3 match n, ceil(2n/3) and ceil(n/2),
    and the sink and path games coincide there."""
    rep = Report("pyramid values for budgets 1..3 match the proven forms")
    n_max = 4 if budget == "full" else 3
    for n in range(1, n_max + 1):
        g = gen_pyramid(n)
        for k in (1, 2, 3):
            want = {1: n, 2: -(-2 * n // 3), 3: -(-n // 2)}[k]
            got = {}
            for goal in ("sink", "path"):
                got[goal] = _value(g, k, goal, cache)
                rep.equal(f"pyramid(n={n}) k={k} {goal}", want, got[goal])
            rep.equal(f"pyramid(n={n}) k={k} sink = path", got["sink"], got["path"])
    return rep


def check_hl_extremes(cache: ValueCache | None = None) -> Report:
    """Spine-with-sinks gadgets: one question per round needs the full
    spine, k per round needs one round per block."""
    rep = Report("spine gadget values hit both budget extremes")
    for k, l in ((2, 1), (2, 2), (3, 1)):
        g = gen_hl(k, l)
        for goal in ("sink", "path"):
            rep.equal(f"hl(k={k},l={l}) budget 1 {goal}", k * l, _value(g, 1, goal, cache))
            rep.equal(f"hl(k={k},l={l}) budget {k} {goal}", l, _value(g, k, goal, cache))
    return rep


# -- lower-bound adversaries ---------------------------------------------------


def check_pyramid_adversary_bound(budget: str = "full") -> Report:
    rep = Report("pyramid adversary forces the ceil(2n/(k+1)) bound")
    n_max, k_max = (5, 4) if budget == "full" else (4, 3)
    for n in range(1, n_max + 1):
        g = gen_pyramid(n)
        for k in range(1, k_max + 1):
            got = best_response_rounds(g, k, PyramidShorterSide(), "sink")
            rep.at_least(f"pyramid(n={n}) k={k}", pyramid_lower(n, k), got)
    return rep


def check_gpy_adversary_bound(budget: str = "full") -> Report:
    rep = Report("layered adversary forces the ceil(dn/(k-1+d)) bound")
    n_max, k_max = (4, 5) if budget == "full" else (3, 4)
    for d in (2, 3):
        for n in range(1, n_max + 1):
            g = gen_gpy_complete(d, n)
            for k in range(1, k_max + 1):
                got = best_response_rounds(g, k, GpyLeftCommitting(), "sink")
                rep.at_least(f"gpy_complete(d={d},n={n}) k={k}", gpy_lower(d, n, k), got)
    return rep


def check_tree_adversary_bound(budget: str = "full") -> Report:
    rep = Report("subtree-count adversary forces the tree closed form")
    grids = [(2, 3, 7), (3, 2, 4)] if budget == "full" else [(2, 2, 5), (3, 1, 3)]
    for d, n_max, k_max in grids:
        for n in range(1, n_max + 1):
            g = gen_tree(d, n)
            for k in range(1, k_max + 1):
                got = best_response_rounds(g, k, TreeMinSubtree(), "path")
                rep.at_least(f"tree(d={d},n={n}) k={k}", tree_rounds(d, n, k), got)
    return rep


# -- matching-bound duels at larger sizes --------------------------------------


def check_pyramid_k2_duel(budget: str = "full") -> Report:
    """The budget-2 pyramid pattern against the shorter-side adversary
    takes exactly ceil(2n/3) rounds at any height."""
    rep = Report("budget-2 pyramid duel lasts exactly ceil(2n/3) rounds")
    n_max = 30 if budget == "full" else 12
    for n in range(1, n_max + 1):
        g = gen_pyramid(n)
        want = -(-2 * n // 3)
        for goal in ("path", "sink"):
            res = run_match(g, 2, PyramidK2(), PyramidShorterSide(), goal)
            rep.equal(f"pyramid(n={n}) {goal}", want, res.rounds)
    return rep


def check_tree_duel(budget: str = "full") -> Report:
    rep = Report("tree level duel lasts exactly the closed form")
    n_max = 10 if budget == "full" else 6
    for n in range(1, n_max + 1):
        g = gen_tree(2, n)
        for k in (1, 3, 7):
            res = run_match(g, k, TreeLevels(), TreeMinSubtree(), "path")
            rep.equal(f"tree(d=2,n={n}) k={k}", tree_rounds(2, n, k), res.rounds)
    return rep


def check_pyramid_recursive_duel(budget: str = "full") -> Report:
    rep = Report("recursive pyramid play stays within ceil(n/l) rounds")
    n_max = 20 if budget == "full" else 10
    for l in (1, 2, 3):
        k = s_of_l(l)
        for n in range(1, n_max + 1):
            g = gen_pyramid(n)
            for adversary in (PyramidShorterSide(), GpyLeftCommitting()):
                res = run_match(g, k, PyramidRecursive(l), adversary, "path")
                rep.at_most(
                    f"pyramid(n={n}) l={l} vs {adversary.name}",
                    pyramid_upper(n, l),
                    res.rounds,
                )
    return rep


# -- cross-cutting properties ---------------------------------------------------


def _battery(cache: ValueCache) -> None:
    for k in (1, 2, 3):
        for goal in ("sink", "path"):
            cache.record(
                "pyramid(n=3)", goal, k, solve_exact(gen_pyramid(3), k, goal).value
            )
    g = gen_hl(2, 2)
    for k in (1, 2, 3):
        for goal in ("sink", "path"):
            cache.record(g.name, goal, k, solve_exact(g, k, goal).value)
    t = gen_tree(2, 2)
    for k in (1, 2, 3):
        for goal in ("sink", "path"):
            cache.record(t.name, goal, k, solve_exact(t, k, goal).value)


def check_monotonicity(cache: ValueCache | None = None) -> Report:
    """Round counts never increase with the budget, and the sink game is
    never harder than the path game."""
    rep = Report("budget monotonicity and goal ordering")
    if cache is None or len(cache) == 0:
        cache = cache or ValueCache()
        _battery(cache)
    for (label, goal), series in sorted(cache.values.items()):
        ks = sorted(series)
        for a, b in zip(ks, ks[1:]):
            if b == a + 1:
                rep.truth(
                    f"{label} {goal}: value({b}) <= value({a})",
                    series[b] <= series[a],
                )
    for (label, goal), series in sorted(cache.values.items()):
        if goal != "sink":
            continue
        other = cache.values.get((label, "path"))
        if not other:
            continue
        for k, v in sorted(series.items()):
            if k in other:
                rep.truth(f"{label} k={k}: sink <= path", v <= other[k])
    return rep


def check_ratio_bound(cache: ValueCache | None = None) -> Report:
    """value(m) <= ceil(k/m) * value(k) for every cached pair m <= k."""
    rep = Report("budget ratio bound")
    if cache is None or len(cache) == 0:
        cache = cache or ValueCache()
        _battery(cache)
    for (label, goal), series in sorted(cache.values.items()):
        ks = sorted(series)
        for m in ks:
            for k in ks:
                if m < k:
                    rep.at_most(
                        f"{label} {goal}: value({m}) vs {ratio_bound(m, k)}*value({k})",
                        ratio_bound(m, k) * series[k],
                        series[m],
                    )
    return rep


def check_reduction_order_independence(seed: int = 1, graphs: int = 20, orders: int = 20) -> Report:
    """Collapsing out-degree-1 vertices in any order gives the same graph,
    and reductions preserve reachability."""
    rep = Report("reduction order independence and reachability preservation")
    for i, s in enumerate(_instance_seeds(seed + 404, graphs)):
        n = 6 + i % 5
        g = random_dag(n, 3, 1, False, s)
        base = reduce_simple(g)
        base_shape = (
            set(base.graph.vertex_ids),
            {(e.tail, e.head) for e in base.graph.edges},
        )
        same = True
        order_rng = random.Random(s ^ 0xA5A5)
        for _ in range(orders):
            alt = reduce_simple(g, rng=order_rng)
            shape = (
                set(alt.graph.vertex_ids),
                {(e.tail, e.head) for e in alt.graph.edges},
            )
            if shape != base_shape or alt.map != base.map:
                same = False
                break
        rep.truth(f"{g.name}: all orders agree", same)
        rep.truth(f"{g.name}: reachability preserved", reachability_preserved_check(g, base))
    return rep


def check_greedy_tree_suboptimal() -> Report:
    """On the path-then-binary-tree family the full-level greedy play is
    strictly beaten by the optimum."""
    rep = Report("greedy level play is strictly suboptimal on the remark tree")
    g = gen_tree_remark(3)
    optimal = solve_exact(g, 2, "path").value
    greedy = worst_case_rounds(g, 2, TreeLevels(), "path")
    rep.less("tree_remark(3) k=2: optimal < greedy worst case", greedy, optimal)
    return rep


# -- suites --------------------------------------------------------------------


def _suite_thm3(seed: int, budget: str) -> list[Report]:
    n = 50 if budget == "full" else 15
    return [check_sink_equals_longest_path(seed, n)]


def _suite_thm4(seed: int, budget: str) -> list[Report]:
    n = 50 if budget == "full" else 15
    m = 20 if budget == "full" else 8
    return [
        check_path_equals_reduced_longest_path(seed, n),
        check_cyclic_path_equals_generalized(seed, m),
    ]


def _suite_cor_reductions(seed: int, budget: str) -> list[Report]:
    n = 50 if budget == "full" else 15
    graphs = 20 if budget == "full" else 8
    orders = 20 if budget == "full" else 8
    return [
        check_sink_equals_reduced_longest_path(seed, n),
        check_reduction_order_independence(seed, graphs, orders),
    ]


def _suite_tree(seed: int, budget: str) -> list[Report]:
    return [
        check_tree_exact(budget),
        check_tree_adversary_bound(budget),
        check_tree_duel(budget),
    ]


def _suite_pyramid(seed: int, budget: str) -> list[Report]:
    return [
        check_pyramid_exact(budget),
        check_pyramid_adversary_bound(budget),
        check_pyramid_k2_duel(budget),
        check_pyramid_recursive_duel(budget),
    ]


def _suite_gpy(seed: int, budget: str) -> list[Report]:
    return [check_gpy_adversary_bound(budget)]


def _suite_hl(seed: int, budget: str) -> list[Report]:
    return [check_hl_extremes()]


def _suite_ratios(seed: int, budget: str) -> list[Report]:
    return [check_ratio_bound()]


def _suite_monotonicity(seed: int, budget: str) -> list[Report]:
    return [check_monotonicity()]


def _suite_remark_tree(seed: int, budget: str) -> list[Report]:
    return [check_greedy_tree_suboptimal()]


SUITES: dict[str, Callable[[int, str], list[Report]]] = {
    "thm3": _suite_thm3,
    "thm4": _suite_thm4,
    "cor_reductions": _suite_cor_reductions,
    "tree": _suite_tree,
    "pyramid": _suite_pyramid,
    "gpy": _suite_gpy,
    "hl": _suite_hl,
    "ratios": _suite_ratios,
    "monotonicity": _suite_monotonicity,
    "remark_tree": _suite_remark_tree,
}


def run_suite(name: str, seed: int = 1, budget: str = "small") -> list[Report]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; available: {', '.join(sorted(SUITES))}")
    if budget not in BUDGETS:
        raise ValueError(f"budget must be one of {BUDGETS}, got {budget!r}")
    return SUITES[name](seed, budget)
