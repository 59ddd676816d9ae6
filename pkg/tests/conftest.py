"""Shared fixtures and independent reference oracles for the test suite."""

from __future__ import annotations

from itertools import combinations, product

import pytest

from switchquest.game import askable_vertices, is_determined
from switchquest.graph import Edge, Graph, Vertex


@pytest.fixture
def diamond() -> Graph:
    """s -> a, s -> b, a -> t, b -> t: one sink, two routes."""
    return Graph(
        "diamond",
        (Vertex("s"), Vertex("a"), Vertex("b"), Vertex("t")),
        (Edge("e0", "s", "a"), Edge("e1", "s", "b"), Edge("e2", "a", "t"), Edge("e3", "b", "t")),
        "s",
    )


@pytest.fixture
def spine3() -> Graph:
    """Directed path x1 -> x2 -> x3 -> x4."""
    return Graph(
        "spine3",
        tuple(Vertex(f"x{i}") for i in range(1, 5)),
        tuple(Edge(f"e{i}", f"x{i}", f"x{i + 1}") for i in range(1, 4)),
        "x1",
    )


def brute_value(g: Graph, k: int, goal: str, knowledge: dict | None = None) -> int:
    """Reference game value straight from the definition: min over every
    nonempty question set of at most k unknown askable vertices of the max
    over all answer combinations, with no memoization or pruning."""
    knowledge = knowledge or {}
    if is_determined(g, knowledge, goal):
        return 0
    unknown = [v for v in askable_vertices(g) if v not in knowledge]
    best = None
    for size in range(1, min(k, len(unknown)) + 1):
        for asked in combinations(unknown, size):
            worst = 0
            for combo in product(*[[e.id for e in g.out_list(v)] for v in asked]):
                child = dict(knowledge)
                child.update(zip(asked, combo))
                worst = max(worst, 1 + brute_value(g, k, goal, child))
                if best is not None and worst >= best:
                    break
            best = worst if best is None else min(best, worst)
    assert best is not None
    return best


def _joint_refine(g1: Graph, g2: Graph) -> tuple[dict[str, int], dict[str, int]]:
    """Color refinement over the disjoint union, so codes are comparable."""
    vs = [(0, v) for v in g1.vertex_ids] + [(1, v) for v in g2.vertex_ids]
    graphs = (g1, g2)

    def neighbors(tag: int, vid: str):
        g = graphs[tag]
        outs = [(tag, e.head) for e in g.out_list(vid)]
        ins = [(tag, e.tail) for e in g.edges if e.head == vid]
        return outs, ins

    code = {
        (tag, vid): (graphs[tag].in_degree[vid], graphs[tag].out_degree(vid))
        for tag, vid in vs
    }
    for _ in range(max(len(vs), 1)):
        raw = {}
        for key in vs:
            outs, ins = neighbors(*key)
            raw[key] = (code[key], tuple(sorted(code[o] for o in outs)), tuple(sorted(code[i] for i in ins)))
        palette = {c: i for i, c in enumerate(sorted(set(raw.values())))}
        new = {key: palette[raw[key]] for key in vs}
        if new == code:
            break
        code = new
    return (
        {vid: code[(0, vid)] for vid in g1.vertex_ids},
        {vid: code[(1, vid)] for vid in g2.vertex_ids},
    )


def isomorphic(g1: Graph, g2: Graph) -> bool:
    """Digraph isomorphism by color refinement plus backtracking; meant for
    the small layered instances in this suite."""
    if len(g1.vertices) != len(g2.vertices) or len(g1.edges) != len(g2.edges):
        return False
    c1, c2 = _joint_refine(g1, g2)
    if sorted(c1.values()) != sorted(c2.values()):
        return False
    order = sorted(g1.vertex_ids, key=lambda v: (c1[v], v))
    candidates = {v: [w for w in g2.vertex_ids if c2[w] == c1[v]] for v in order}
    adj1 = {(e.tail, e.head) for e in g1.edges}
    adj2 = {(e.tail, e.head) for e in g2.edges}
    mapping: dict[str, str] = {}
    used: set[str] = set()

    def place(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in candidates[v]:
            if w in used:
                continue
            ok = True
            for u, m in mapping.items():
                if ((u, v) in adj1) != ((m, w) in adj2) or ((v, u) in adj1) != ((w, m) in adj2):
                    ok = False
                    break
            if ok:
                mapping[v] = w
                used.add(w)
                if place(i + 1):
                    return True
                used.remove(w)
                del mapping[v]
        return False

    return place(0)
