"""Graph contractions: vertex-set merging, out-degree-1 elimination, answer
application, and longest (generalized) path lengths.

Merged vertices are named by joining their constituent original ids with
"+" in sorted order, so any merge order produces the same labels and the
reduced graphs of different orders can be compared directly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Sequence

from .graph import Edge, Graph, GraphError, Vertex, to_json_doc

VertexMap = dict[str, str]


@dataclass
class ReductionResult:
    graph: Graph
    map: VertexMap

    def to_json_doc(self) -> dict[str, Any]:
        return {"graph": to_json_doc(self.graph), "map": dict(sorted(self.map.items()))}


def _identity(g: Graph) -> ReductionResult:
    return ReductionResult(g, {vid: vid for vid in g.vertex_ids})


def blob_name(ids: Iterable[str]) -> str:
    """Canonical name for a merged vertex: sorted original constituents joined by '+'."""
    parts: set[str] = set()
    for vid in ids:
        parts.update(vid.split("+"))
    return "+".join(sorted(parts))


def _contract(
    g: Graph,
    members: set[str],
    new_id: str,
    *,
    collapse_parallel: bool,
    keep_internal_loops: bool = False,
    drop_edge_ids: frozenset[str] = frozenset(),
    multigraph: bool | None = None,
) -> ReductionResult:
    """Replace a vertex set by a single vertex, redirecting boundary edges.

    Edges inside the set are dropped, except that with keep_internal_loops
    they survive as self-loops on the new vertex (needed when reducing
    cyclic graphs, where an internal back edge still carries flow
    information). Edges listed in drop_edge_ids are removed outright.
    """
    if not members:
        raise GraphError("cannot merge an empty vertex set")
    for vid in members:
        if not g.has_vertex(vid):
            raise GraphError(f"unknown vertex id: {vid!r}")
    if new_id in set(g.vertex_ids) - members:
        raise GraphError(f"merged vertex name collides with existing vertex: {new_id!r}")

    vmap: VertexMap = {
        vid: (new_id if vid in members else vid) for vid in g.vertex_ids
    }
    vertices: list[Vertex] = []
    placed = False
    for v in g.vertices:
        if v.id in members:
            if not placed:
                vertices.append(Vertex(new_id))
                placed = True
        else:
            vertices.append(v)

    edges: list[Edge] = []
    seen_pairs: set[tuple[str, str]] = set()
    for e in g.edges:
        if e.id in drop_edge_ids:
            continue
        tail, head = vmap[e.tail], vmap[e.head]
        if tail == new_id and head == new_id:
            if not keep_internal_loops:
                continue
        if collapse_parallel:
            if (tail, head) in seen_pairs:
                continue
            seen_pairs.add((tail, head))
        edges.append(Edge(e.id, tail, head))

    return ReductionResult(
        Graph(
            g.name,
            tuple(vertices),
            tuple(edges),
            vmap[g.source],
            multigraph=g.multigraph if multigraph is None else multigraph,
            allow_cycles=g.allow_cycles,
        ),
        vmap,
    )


def merge_set_simple(g: Graph, members: Iterable[str], new_id: str) -> ReductionResult:
    """Contract a vertex set, collapsing any parallel edges that arise."""
    if g.multigraph:
        raise GraphError("merge_set_simple requires a simple graph")
    return _contract(g, set(members), new_id, collapse_parallel=True)


def merge_set_multi(g: Graph, members: Iterable[str], new_id: str) -> ReductionResult:
    """Contract a vertex set, keeping parallel edges as distinct edges."""
    return _contract(g, set(members), new_id, collapse_parallel=False, multigraph=True)


def _compose(first: VertexMap, second: VertexMap) -> VertexMap:
    return {old: second[mid] for old, mid in first.items()}


def _reduce(g: Graph, *, simple: bool, rng: random.Random | None = None) -> ReductionResult:
    """Merge out-degree-1 vertices into their out-neighbors until none remain.

    The candidate picked each step is the first in vertex order, or a
    random one when rng is given (the result is the same graph either
    way, which the order-independence tests rely on). Self-loop-forced
    vertices in cyclic graphs are left alone.
    """
    if simple and g.multigraph:
        raise GraphError("simple reduction requires a simple graph")
    if simple and not g.acyclic:
        raise GraphError("simple reduction rejects cyclic graphs")

    cur = g
    total: VertexMap = {vid: vid for vid in g.vertex_ids}
    merged_any = False
    while True:
        candidates = [
            vid
            for vid, es in cur.out_lists.items()
            if len(es) == 1 and es[0].head != vid
        ]
        if not candidates:
            break
        pick = candidates[0] if rng is None else rng.choice(candidates)
        edge = cur.out_list(pick)[0]
        new_id = blob_name([pick, edge.head])
        step = _contract(
            cur,
            {pick, edge.head},
            new_id,
            collapse_parallel=simple,
            keep_internal_loops=not simple,
            drop_edge_ids=frozenset({edge.id}),
            multigraph=None if simple else True,
        )
        cur = step.graph
        total = _compose(total, step.map)
        merged_any = True
    if not merged_any:
        return _identity(g)
    return ReductionResult(cur, total)


def reduce_simple(g: Graph, rng: random.Random | None = None) -> ReductionResult:
    """Collapse out-degree-1 vertices with parallel edges merged (sink-search form)."""
    return _reduce(g, simple=True, rng=rng)


def reduce_multi(g: Graph, rng: random.Random | None = None) -> ReductionResult:
    """Collapse out-degree-1 vertices keeping parallel edges (path-search form)."""
    return _reduce(g, simple=False, rng=rng)


def _restrict_to_answer(g: Graph, x: str, eid: str) -> tuple[Graph, Edge]:
    if g.is_sink(x):
        raise GraphError(f"cannot apply an answer at sink {x}")
    chosen = None
    for e in g.out_list(x):
        if e.id == eid:
            chosen = e
            break
    if chosen is None:
        raise GraphError(f"edge {eid!r} is not an out-edge of {x}")
    edges = tuple(e for e in g.edges if e.tail != x or e.id == eid)
    return (
        Graph(g.name, g.vertices, edges, g.source, g.multigraph, g.allow_cycles),
        chosen,
    )


def apply_answer_simple(g: Graph, x: str, eid: str) -> ReductionResult:
    """Residual graph after learning switch (x, eid) in the sink-search game.

    Deletes the other out-edges of x, merges x into the answered head and
    then collapses every out-degree-1 vertex the merge exposes.
    """
    if g.multigraph:
        raise GraphError("apply_answer_simple requires a simple graph")
    if not g.acyclic:
        raise GraphError("apply_answer_simple rejects cyclic graphs")
    restricted, chosen = _restrict_to_answer(g, x, eid)
    merged = _contract(
        restricted,
        {x, chosen.head},
        blob_name([x, chosen.head]),
        collapse_parallel=True,
        drop_edge_ids=frozenset({chosen.id}),
    )
    reduced = reduce_simple(merged.graph)
    result = ReductionResult(reduced.graph, _compose(merged.map, reduced.map))
    bad = [
        vid
        for vid, es in result.graph.out_lists.items()
        if len(es) == 1 and es[0].head != vid
    ]
    if bad:
        raise AssertionError(f"answer application left out-degree-1 vertices: {bad}")
    return result


def apply_answer_multi(g: Graph, x: str, eid: str) -> ReductionResult:
    """Residual graph after learning switch (x, eid) in the path-search game.

    Same as the simple variant but parallel edges survive; on graphs that
    already have minimum out-degree 2 the trailing reduction is a no-op.
    """
    restricted, chosen = _restrict_to_answer(g, x, eid)
    had_min_two = all(len(es) != 1 for es in g.out_lists.values())
    if chosen.head == x:
        # self-loop answer: nothing to merge, x keeps its forced loop
        merged = _identity(restricted)
    else:
        merged = _contract(
            restricted,
            {x, chosen.head},
            blob_name([x, chosen.head]),
            collapse_parallel=False,
            keep_internal_loops=True,
            drop_edge_ids=frozenset({chosen.id}),
            multigraph=True,
        )
    reduced = reduce_multi(merged.graph)
    if had_min_two:
        assert all(vid == reduced.map[vid] for vid in merged.graph.vertex_ids), (
            "reduction after a min-out-degree-2 merge must be a no-op"
        )
    return ReductionResult(reduced.graph, _compose(merged.map, reduced.map))


def longest_path_len(g: Graph) -> int:
    """Edge count of the longest directed path from the source (acyclic only)."""
    if not g.acyclic:
        raise GraphError(
            "longest_path_len requires an acyclic graph; use longest_generalized_path_len"
        )
    dist = {vid: None for vid in g.vertex_ids}
    dist[g.source] = 0
    best = 0
    for vid in g.topo_order:
        d = dist.get(vid)
        if d is None:
            continue
        best = max(best, d)
        for e in g.out_lists[vid]:
            if dist.get(e.head) is None or dist[e.head] < d + 1:
                dist[e.head] = d + 1
    return best


def longest_path_len_global(g: Graph) -> int:
    """Edge count of the longest directed path anywhere in the graph."""
    if not g.acyclic:
        raise GraphError("longest_path_len_global requires an acyclic graph")
    dist = {vid: 0 for vid in g.vertex_ids}
    best = 0
    for vid in g.topo_order:
        d = dist[vid]
        best = max(best, d)
        for e in g.out_lists[vid]:
            dist[e.head] = max(dist[e.head], d + 1)
    return best


def longest_generalized_path_len(g: Graph, max_vertices: int = 20) -> int:
    """Longest source-anchored simple path, optionally closed by one edge
    back into the path (a self-loop on the last vertex counts).

    Exhaustive depth-first search, so the graph size is capped.
    """
    if len(g.vertices) > max_vertices:
        raise GraphError(
            f"graph has {len(g.vertices)} vertices, above the exhaustive-search cap "
            f"of {max_vertices}"
        )
    best = 0
    on_path: set[str] = {g.source}
    order: list[str] = [g.source]

    def visit(vid: str) -> None:
        nonlocal best
        edges = len(order) - 1
        best = max(best, edges)
        for e in g.out_lists[vid]:
            if e.head in on_path:
                best = max(best, edges + 1)
            else:
                on_path.add(e.head)
                order.append(e.head)
                visit(e.head)
                order.pop()
                on_path.remove(e.head)

    visit(g.source)
    return best


def reachability_preserved_check(g: Graph, r: ReductionResult) -> bool:
    """True iff every reachability x ->* y in g survives between the images in r.graph."""
    def closure(h: Graph) -> dict[str, set[str]]:
        return {vid: h.reachable_from(vid) for vid in h.vertex_ids}

    reach_g = closure(g)
    reach_r = closure(r.graph)
    for x, reachable in reach_g.items():
        for y in reachable:
            if r.map[y] not in reach_r[r.map[x]]:
                return False
    return True
