"""Generators for every graph family the game engine is exercised on.

All generators are pure: the same parameters produce the same graph,
including vertex ids, edge ids and out-list order. Ids are short
human-readable labels so match transcripts stay diffable.
"""

from __future__ import annotations

import random
from typing import Iterable

from .graph import Edge, Graph, GraphError, Vertex


class _Builder:
    """Accumulates vertices/edges; edge ids are e0, e1, ... in insertion order."""

    def __init__(self, name: str, multigraph: bool = False, allow_cycles: bool = False):
        self.name = name
        self.multigraph = multigraph
        self.allow_cycles = allow_cycles
        self.vertices: list[Vertex] = []
        self.edges: list[Edge] = []

    def vertex(self, vid: str, level: int | None = None, **tags) -> str:
        self.vertices.append(Vertex(vid, level, dict(tags) if tags else None))
        return vid

    def edge(self, tail: str, head: str) -> str:
        eid = f"e{len(self.edges)}"
        self.edges.append(Edge(eid, tail, head))
        return eid

    def build(self, source: str) -> Graph:
        return Graph(
            self.name,
            tuple(self.vertices),
            tuple(self.edges),
            source,
            multigraph=self.multigraph,
            allow_cycles=self.allow_cycles,
        )


def gen_tree(d: int, n: int) -> Graph:
    """Complete d-ary tree on n+1 levels, edges directed away from the root.

    Vertices are numbered u1, u2, ... in breadth-first order, so the
    children of the vertex numbered t are d*(t-1)+2 ... d*(t-1)+d+1.
    """
    if d < 2:
        raise GraphError(f"tree arity must be >= 2, got {d}")
    if n < 0:
        raise GraphError(f"tree depth must be >= 0, got {n}")
    b = _Builder(f"tree(d={d},n={n})")
    total = (d ** (n + 1) - 1) // (d - 1)
    # level of the t-th vertex (1-based breadth-first numbering)
    level_starts = [1]
    for i in range(n + 1):
        level_starts.append(level_starts[-1] + d**i)
    lev = 1
    for t in range(1, total + 1):
        while t >= level_starts[lev]:
            lev += 1
        b.vertex(f"u{t}", level=lev)
    for t in range(1, total + 1):
        first_child = d * (t - 1) + 2
        if first_child <= total:
            for c in range(first_child, first_child + d):
                b.edge(f"u{t}", f"u{c}")
    return b.build("u1")


def gen_pyramid(n: int) -> Graph:
    """Triangular pyramid with n+1 levels; level i holds v_{i,1} ... v_{i,i}.

    Every non-sink v_{i,j} has out-list [left to v_{i+1,j}, right to
    v_{i+1,j+1}]. The full vertex count is (n+1)(n+2)/2; the non-sink
    count is n(n+1)/2.
    """
    if n < 1:
        raise GraphError(f"pyramid height must be >= 1, got {n}")
    b = _Builder(f"pyramid(n={n})")
    for i in range(1, n + 2):
        for j in range(1, i + 1):
            b.vertex(f"v{i}_{j}", level=i, i=i, j=j)
    for i in range(1, n + 1):
        for j in range(1, i + 1):
            b.edge(f"v{i}_{j}", f"v{i + 1}_{j}")
            b.edge(f"v{i}_{j}", f"v{i + 1}_{j + 1}")
    return b.build("v1_1")


def gen_gpy_complete(d: int, n: int) -> Graph:
    """Layered graph with one source and d vertices on every later level.

    Every non-sink is connected to all d vertices of the next level. The
    matching (the "left" edges) is position identity and sits first in
    each out-list.
    """
    if d < 2:
        raise GraphError(f"width must be >= 2, got {d}")
    if n < 1:
        raise GraphError(f"height must be >= 1, got {n}")
    b = _Builder(f"gpy_complete(d={d},n={n})")
    b.vertex("w1_1", level=1, pos=1)
    for i in range(2, n + 2):
        for j in range(1, d + 1):
            b.vertex(f"w{i}_{j}", level=i, pos=j)
    for i in range(1, n + 1):
        width = 1 if i == 1 else d
        for j in range(1, width + 1):
            match = j if i > 1 else 1
            b.edge(f"w{i}_{j}", f"w{i + 1}_{match}")
            for t in range(1, d + 1):
                if t != match:
                    b.edge(f"w{i}_{j}", f"w{i + 1}_{t}")
    return b.build("w1_1")


def gen_gpy_grid(d: int, n: int) -> Graph:
    """d-dimensional lattice pyramid: points with coordinate sum <= n.

    The level of a point is its coordinate sum plus one; each edge adds
    one unit to a single coordinate, in coordinate-index order, so the
    first out-edge (+first coordinate) forms the level matching.
    """
    if d < 2:
        raise GraphError(f"dimension must be >= 2, got {d}")
    if n < 1:
        raise GraphError(f"height must be >= 1, got {n}")

    def vid(p: tuple[int, ...]) -> str:
        return "g" + "_".join(str(c) for c in p)

    b = _Builder(f"gpy_grid(d={d},n={n})")
    all_points: list[tuple[int, ...]] = []
    for s in range(0, n + 1):
        for p in gen_level_points(d, s):
            all_points.append(p)
            b.vertex(vid(p), level=s + 1, coords=list(p))
    for p in all_points:
        if sum(p) < n:
            for axis in range(d):
                q = list(p)
                q[axis] += 1
                b.edge(vid(p), vid(tuple(q)))
    return b.build(vid((0,) * d))


def gen_level_points(d: int, total: int) -> list[tuple[int, ...]]:
    """All non-negative d-tuples with the given coordinate sum, lexicographic."""
    out: list[tuple[int, ...]] = []

    def rec(idx: int, rem: int, acc: list[int]) -> None:
        if idx == d - 1:
            acc.append(rem)
            out.append(tuple(acc))
            acc.pop()
            return
        for c in range(rem + 1):
            acc.append(c)
            rec(idx + 1, rem - c, acc)
            acc.pop()

    rec(0, total, [])
    return out


def gen_hl(k: int, l: int) -> Graph:
    """Spine x1 ... x(kl+1) where every spine vertex but the last also owns a private sink.

    The spine edge sits first in each out-list. Spine vertices carry a
    spine index tag. 2kl+1 vertices, 2kl edges.
    """
    if k < 1 or l < 1:
        raise GraphError(f"parameters must be >= 1, got k={k}, l={l}")
    b = _Builder(f"hl(k={k},l={l})")
    m = k * l
    for i in range(1, m + 2):
        b.vertex(f"x{i}", spine=i)
    for i in range(1, m + 1):
        b.vertex(f"x{i}s")
    for i in range(1, m + 1):
        b.edge(f"x{i}", f"x{i + 1}")
        b.edge(f"x{i}", f"x{i}s")
    return b.build("x1")


def gen_spine_forks(k: int, l: int) -> Graph:
    """Spine of length kl with decoy forks: each x_i (i < kl) has k-1 extra
    children that each split into two sinks, and x_kl has k-1 sink children.

    Fork children are named b{i}_{t} so that id order puts them before the
    spine continuation x{i+1}; a breadth-first questioner that fills its
    budget in id order will waste questions on them.
    """
    if k < 2 or l < 1:
        raise GraphError(f"parameters must be k >= 2 and l >= 1, got k={k}, l={l}")
    b = _Builder(f"spine_forks(k={k},l={l})")
    m = k * l
    for i in range(1, m + 2):
        b.vertex(f"x{i}", spine=i)
    for i in range(1, m):
        for t in range(1, k):
            b.vertex(f"b{i}_{t}")
            b.vertex(f"b{i}_{t}s1")
            b.vertex(f"b{i}_{t}s2")
    for t in range(1, k):
        b.vertex(f"x{m}s{t}")
    for i in range(1, m + 1):
        b.edge(f"x{i}", f"x{i + 1}")
        if i < m:
            for t in range(1, k):
                b.edge(f"x{i}", f"b{i}_{t}")
        else:
            for t in range(1, k):
                b.edge(f"x{m}", f"x{m}s{t}")
    for i in range(1, m):
        for t in range(1, k):
            b.edge(f"b{i}_{t}", f"b{i}_{t}s1")
            b.edge(f"b{i}_{t}", f"b{i}_{t}s2")
    return b.build("x1")


def gen_tree_remark(n: int) -> Graph:
    """Path p1 ... pn with one sink child per inner vertex, then a complete
    binary tree with n levels rooted at pn.

    The smallest family where asking greedy full levels near the root is
    provably suboptimal.
    """
    if n < 2:
        raise GraphError(f"size must be >= 2, got {n}")
    b = _Builder(f"tree_remark(n={n})")
    for i in range(1, n + 1):
        b.vertex(f"p{i}")
    for i in range(1, n):
        b.vertex(f"p{i}s")
    total = 2**n - 1  # binary part, pn acts as its vertex number 1
    for t in range(2, total + 1):
        b.vertex(f"q{t}")
    def bname(t: int) -> str:
        return f"p{n}" if t == 1 else f"q{t}"
    for i in range(1, n):
        b.edge(f"p{i}", f"p{i + 1}")
        b.edge(f"p{i}", f"p{i}s")
    for t in range(1, total + 1):
        if 2 * t <= total:
            b.edge(bname(t), bname(2 * t))
            b.edge(bname(t), bname(2 * t + 1))
    return b.build("p1")


def gen_tree_of_h(k: int, l: int) -> Graph:
    """k-ary tree with l levels where every node is a spine-with-sinks gadget.

    Each copy is a spine of k+1 vertices whose first k members own a
    private sink. In a non-leaf copy the last spine vertex fans out to the
    first spine vertex of each of the k child copies; in leaves it stays a
    sink.
    """
    if k < 2 or l < 1:
        raise GraphError(f"parameters must be k >= 2 and l >= 1, got k={k}, l={l}")
    b = _Builder(f"tree_of_h(k={k},l={l})")
    copies = (k**l - 1) // (k - 1)
    leaves_start = (k ** (l - 1) - 1) // (k - 1) + 1  # first leaf copy number
    for c in range(1, copies + 1):
        for i in range(1, k + 2):
            b.vertex(f"c{c}x{i}", spine=(c, i))
        for i in range(1, k + 1):
            b.vertex(f"c{c}x{i}s")
    for c in range(1, copies + 1):
        for i in range(1, k + 1):
            b.edge(f"c{c}x{i}", f"c{c}x{i + 1}")
            b.edge(f"c{c}x{i}", f"c{c}x{i}s")
        if c < leaves_start:
            first_child = k * (c - 1) + 2
            for t in range(first_child, first_child + k):
                b.edge(f"c{c}x{k + 1}", f"c{t}x1")
    return b.build("c1x1")


def random_dag(
    n_vertices: int,
    max_outdeg: int,
    min_outdeg: int,
    multigraph: bool,
    seed: int,
) -> Graph:
    """Seeded random single-source DAG with non-sink out-degrees in [min, max].

    Vertices r0 ... r{n-1} are in topological order with r0 the source.
    Every later vertex receives one guaranteed in-edge from an earlier
    non-sink, which forces the single-source and reachability invariants.
    """
    if n_vertices < 1:
        raise GraphError(f"vertex count must be >= 1, got {n_vertices}")
    if max_outdeg < 2:
        raise GraphError(f"max out-degree must be >= 2, got {max_outdeg}")
    if not (1 <= min_outdeg <= max_outdeg):
        raise GraphError(
            f"need 1 <= min_outdeg <= max_outdeg, got min={min_outdeg}, max={max_outdeg}"
        )
    name = (
        f"random_dag(n={n_vertices},max={max_outdeg},min={min_outdeg},"
        f"multi={multigraph},seed={seed})"
    )
    b = _Builder(name, multigraph=multigraph)
    n = n_vertices
    for i in range(n):
        b.vertex(f"r{i}")
    if n == 1:
        return b.build("r0")

    # a vertex can keep min_outdeg distinct successors only if enough follow it
    def is_sink_idx(i: int) -> bool:
        if multigraph:
            return i == n - 1
        return n - 1 - i < min_outdeg

    if is_sink_idx(0):
        raise GraphError(
            f"infeasible degree constraints: {n_vertices} vertices cannot support min out-degree {min_outdeg}"
        )

    rng = random.Random(seed)
    out: dict[int, list[int]] = {i: [] for i in range(n)}
    for j in range(1, n):
        candidates = [i for i in range(j) if not is_sink_idx(i) and len(out[i]) < max_outdeg]
        if not candidates:
            raise GraphError(
                f"infeasible degree constraints: no spare out-capacity for vertex r{j}"
            )
        p = rng.choice(candidates)
        out[p].append(j)
    for i in range(n):
        if is_sink_idx(i):
            continue
        want = rng.randint(min_outdeg, max_outdeg)
        want = max(want, len(out[i]))
        if want > max_outdeg:
            raise GraphError(f"infeasible degree constraints: r{i} exceeds max out-degree")
        while len(out[i]) < want:
            if multigraph:
                out[i].append(rng.randint(i + 1, n - 1))
            else:
                unused = [j for j in range(i + 1, n) if j not in out[i]]
                if not unused:
                    break
                out[i].append(rng.choice(unused))
        if len(out[i]) < min_outdeg:
            raise GraphError(f"infeasible degree constraints: r{i} cannot reach min out-degree")
    for i in range(n):
        for j in out[i]:
            b.edge(f"r{i}", f"r{j}")
    return b.build("r0")
