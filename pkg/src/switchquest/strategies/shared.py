"""Structural views that strategies need: pyramid coordinates, rooted-tree
indexes, layered-width checks, spine extraction and longest-path search."""

from __future__ import annotations

from dataclasses import dataclass

from ..game import StrategyError
from ..graph import Graph


@dataclass
class PyramidView:
    coords: dict[str, tuple[int, int]]
    by_coord: dict[tuple[int, int], str]
    n: int  # edge height; levels run 1 .. n+1

    def at(self, i: int, j: int) -> str:
        try:
            return self.by_coord[(i, j)]
        except KeyError:
            raise StrategyError(f"no pyramid vertex at ({i}, {j})") from None


def pyramid_structure(g: Graph) -> PyramidView:
    """Validate the triangular left/right layout and return the coordinate maps."""
    coords: dict[str, tuple[int, int]] = {}
    for v in g.vertices:
        t = v.tags or {}
        if "i" not in t or "j" not in t:
            raise StrategyError(f"not a pyramid: vertex {v.id} lacks i/j coordinates")
        coords[v.id] = (t["i"], t["j"])
    by_coord = {c: vid for vid, c in coords.items()}
    if len(by_coord) != len(coords):
        raise StrategyError("not a pyramid: duplicate coordinates")
    n = max(i for i, _ in by_coord) - 1
    if coords.get(g.source) != (1, 1):
        raise StrategyError("not a pyramid: source is not at (1, 1)")
    for i in range(1, n + 2):
        for j in range(1, i + 1):
            if (i, j) not in by_coord:
                raise StrategyError(f"not a pyramid: missing vertex ({i}, {j})")
            vid = by_coord[(i, j)]
            outs = g.out_list(vid)
            if i == n + 1:
                if outs:
                    raise StrategyError(f"not a pyramid: bottom vertex {vid} has out-edges")
            else:
                heads = [e.head for e in outs]
                if heads != [by_coord[(i + 1, j)], by_coord[(i + 1, j + 1)]]:
                    raise StrategyError(f"not a pyramid: {vid} lacks left/right children")
    return PyramidView(coords, by_coord, n)


@dataclass
class TreeView:
    parent: dict[str, str | None]
    tin: dict[str, int]
    tout: dict[str, int]

    def in_subtree(self, root: str, vid: str) -> bool:
        return self.tin[root] <= self.tin[vid] < self.tout[root]


def tree_structure(g: Graph) -> TreeView:
    """Validate a rooted out-tree and return Euler intervals for subtree tests."""
    if not g.acyclic:
        raise StrategyError("not a tree: graph has a cycle")
    parent: dict[str, str | None] = {g.source: None}
    for e in g.edges:
        if e.head in parent and parent.get(e.head, "?") is not None:
            raise StrategyError(f"not a tree: {e.head} has two parents")
        if e.head == g.source:
            raise StrategyError("not a tree: the root has a parent")
        parent[e.head] = e.tail
    if len(parent) != len(g.vertices):
        raise StrategyError("not a tree: some vertex is unreachable")
    tin: dict[str, int] = {}
    tout: dict[str, int] = {}
    clock = 0
    stack: list[tuple[str, bool]] = [(g.source, False)]
    while stack:
        vid, done = stack.pop()
        if done:
            tout[vid] = clock
            continue
        tin[vid] = clock
        clock += 1
        stack.append((vid, True))
        for e in reversed(g.out_list(vid)):
            stack.append((e.head, False))
    return TreeView(parent, tin, tout)


@dataclass
class LayeredView:
    level_of: dict[str, int]
    levels: dict[int, list[str]]
    d: int
    last_nonsink: int
    nonsink_levels: list[int]


def layered_structure(g: Graph) -> LayeredView:
    """Validate a layered graph with constant non-sink out-degree d whose
    first out-edges form a matching between consecutive levels."""
    level_of: dict[str, int] = {}
    for v in g.vertices:
        if v.level is None:
            raise StrategyError(f"not layered: vertex {v.id} has no level")
        level_of[v.id] = v.level
    levels: dict[int, list[str]] = {}
    for v in g.vertices:
        levels.setdefault(level_of[v.id], []).append(v.id)
    degs = {g.out_degree(vid) for vid in g.vertex_ids if not g.is_sink(vid)}
    if len(degs) != 1:
        raise StrategyError(f"not width-regular: non-sink out-degrees {sorted(degs)}")
    d = degs.pop()
    if d < 2:
        raise StrategyError("layered play needs out-degree at least 2")
    nonsink_levels = sorted({level_of[vid] for vid in g.vertex_ids if not g.is_sink(vid)})
    for lev in nonsink_levels:
        matched = [g.out_list(vid)[0].head for vid in levels[lev] if not g.is_sink(vid)]
        if len(set(matched)) != len(matched):
            raise StrategyError(f"first out-edges on level {lev} do not form a matching")
    return LayeredView(level_of, levels, d, max(nonsink_levels), nonsink_levels)


def spine_of(g: Graph) -> list[str]:
    """Vertices tagged with integer spine indexes, in index order."""
    tagged: list[tuple[int, str]] = []
    for v in g.vertices:
        t = v.tags or {}
        s = t.get("spine")
        if isinstance(s, int):
            tagged.append((s, v.id))
    if len(tagged) < 2:
        raise StrategyError("graph carries no spine tags")
    tagged.sort()
    return [vid for _, vid in tagged]


def lex_longest_path(
    g: Graph, *, generalized: bool = False, max_vertices: int = 26
) -> tuple[tuple[str, ...], list[str]]:
    """Exhaustively find the longest source path, breaking ties toward the
    lexicographically least vertex sequence (then edge ids).

    With generalized=True a path may be closed by one extra edge from its
    last vertex back onto itself, and that edge counts toward the length.
    Returns (vertex sequence, edge ids); a closing edge appears in the edge
    list but not in the vertex sequence.
    """
    if len(g.vertices) > max_vertices:
        raise StrategyError(
            f"graph has {len(g.vertices)} vertices, above the exhaustive path-search cap"
        )
    best: tuple[int, tuple[str, ...], tuple[str, ...]] | None = None

    def consider(vseq: tuple[str, ...], eids: tuple[str, ...]) -> None:
        nonlocal best
        cand = (-len(eids), vseq, eids)
        if best is None or cand < best:
            best = cand

    on_path = {g.source}
    vstack = [g.source]
    estack: list[str] = []

    def visit(vid: str) -> None:
        consider(tuple(vstack), tuple(estack))
        for e in g.out_list(vid):
            if e.head in on_path:
                if generalized:
                    consider(tuple(vstack), tuple(estack) + (e.id,))
            else:
                on_path.add(e.head)
                vstack.append(e.head)
                estack.append(e.id)
                visit(e.head)
                estack.pop()
                vstack.pop()
                on_path.remove(e.head)

    visit(g.source)
    assert best is not None
    return best[1], list(best[2])
