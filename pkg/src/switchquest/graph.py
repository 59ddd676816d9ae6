"""Single-source directed (multi)graph model with validation and JSON/DOT interchange.

Graphs are immutable after construction: every transform returns a new
instance, so graphs can be shared freely between threads. Vertices carry
an optional level label plus free-form tags that generators use to mark
coordinates or spine membership. Out-edge order is significant: the first
out-edge of a vertex is its "left" edge, and strategies key off that
position.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Mapping


class GraphError(ValueError):
    """A graph operation was asked to do something structurally impossible."""


class SchemaError(GraphError):
    """A graph JSON document is malformed; the message names the field."""


@dataclass
class Vertex:
    id: str
    level: int | None = None
    tags: dict[str, Any] | None = None


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str


# A switch assignment maps every non-sink vertex to one of its out-edges.
# A knowledge state is the same mapping restricted to revealed switches.
SwitchAssignment = dict[str, str]
Knowledge = Mapping[str, str]


@dataclass
class Graph:
    name: str
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    source: str
    multigraph: bool = False
    allow_cycles: bool = False

    def __post_init__(self) -> None:
        self.vertices = tuple(self.vertices)
        self.edges = tuple(self.edges)

    # -- lookups ---------------------------------------------------------

    @cached_property
    def vertex_ids(self) -> tuple[str, ...]:
        return tuple(v.id for v in self.vertices)

    @cached_property
    def _vmap(self) -> dict[str, Vertex]:
        m: dict[str, Vertex] = {}
        for v in self.vertices:
            m.setdefault(v.id, v)
        return m

    @cached_property
    def _emap(self) -> dict[str, Edge]:
        m: dict[str, Edge] = {}
        for e in self.edges:
            m.setdefault(e.id, e)
        return m

    def vertex(self, vid: str) -> Vertex:
        try:
            return self._vmap[vid]
        except KeyError:
            raise GraphError(f"unknown vertex id: {vid!r}") from None

    def edge(self, eid: str) -> Edge:
        try:
            return self._emap[eid]
        except KeyError:
            raise GraphError(f"unknown edge id: {eid!r}") from None

    def has_vertex(self, vid: str) -> bool:
        return vid in self._vmap

    @cached_property
    def out_lists(self) -> dict[str, tuple[Edge, ...]]:
        """Ordered out-edges per vertex; order is the edge-array order."""
        lists: dict[str, list[Edge]] = {v.id: [] for v in self.vertices}
        for e in self.edges:
            if e.tail in lists:
                lists[e.tail].append(e)
        return {vid: tuple(es) for vid, es in lists.items()}

    def out_list(self, vid: str) -> tuple[Edge, ...]:
        try:
            return self.out_lists[vid]
        except KeyError:
            raise GraphError(f"unknown vertex id: {vid!r}") from None

    def out_degree(self, vid: str) -> int:
        return len(self.out_list(vid))

    @cached_property
    def in_degree(self) -> dict[str, int]:
        deg = {v.id: 0 for v in self.vertices}
        for e in self.edges:
            if e.head in deg:
                deg[e.head] += 1
        return deg

    def is_sink(self, vid: str) -> bool:
        return self.out_degree(vid) == 0

    @cached_property
    def sinks(self) -> tuple[str, ...]:
        return tuple(v.id for v in self.vertices if not self.out_lists[v.id])

    @cached_property
    def forced(self) -> dict[str, Edge]:
        """Out-degree-1 vertices and their single out-edge (switch known for free)."""
        return {
            vid: es[0] for vid, es in self.out_lists.items() if len(es) == 1
        }

    @cached_property
    def acyclic(self) -> bool:
        state: dict[str, int] = {}  # 0 = visiting, 1 = done
        for start in self.vertex_ids:
            if start in state:
                continue
            stack: list[tuple[str, int]] = [(start, 0)]
            state[start] = 0
            while stack:
                vid, i = stack[-1]
                outs = self.out_lists.get(vid, ())
                if i < len(outs):
                    stack[-1] = (vid, i + 1)
                    nxt = outs[i].head
                    if nxt not in self._vmap:
                        continue
                    st = state.get(nxt)
                    if st == 0:
                        return False
                    if st is None:
                        state[nxt] = 0
                        stack.append((nxt, 0))
                else:
                    state[vid] = 1
                    stack.pop()
        return True

    @cached_property
    def topo_order(self) -> tuple[str, ...]:
        """Topological vertex order; raises on cyclic graphs."""
        if not self.acyclic:
            raise GraphError(f"graph {self.name!r} is cyclic; no topological order")
        indeg = dict(self.in_degree)
        ready = [vid for vid in self.vertex_ids if indeg[vid] == 0]
        order: list[str] = []
        while ready:
            vid = ready.pop()
            order.append(vid)
            for e in self.out_lists[vid]:
                indeg[e.head] -= 1
                if indeg[e.head] == 0:
                    ready.append(e.head)
        return tuple(order)

    def reachable_from(self, vid: str) -> set[str]:
        seen = {vid}
        stack = [vid]
        while stack:
            cur = stack.pop()
            for e in self.out_lists.get(cur, ()):
                if e.head not in seen and e.head in self._vmap:
                    seen.add(e.head)
                    stack.append(e.head)
        return seen


def validate(g: Graph) -> list[str]:
    """Check every graph invariant; returns human-readable violations (empty if valid)."""
    problems: list[str] = []
    seen_v: set[str] = set()
    for v in g.vertices:
        if v.id in seen_v:
            problems.append(f"duplicate vertex id: {v.id}")
        seen_v.add(v.id)
    seen_e: set[str] = set()
    for e in g.edges:
        if e.id in seen_e:
            problems.append(f"duplicate edge id: {e.id}")
        seen_e.add(e.id)
        for end, role in ((e.tail, "tail"), (e.head, "head")):
            if end not in seen_v:
                problems.append(f"edge {e.id} has undeclared {role} vertex: {end}")
    if g.source not in seen_v:
        problems.append(f"source vertex not declared: {g.source}")

    zero_in = [vid for vid, d in g.in_degree.items() if d == 0]
    if sorted(zero_in) != sorted({g.source} & seen_v):
        extras = [vid for vid in zero_in if vid != g.source]
        if extras:
            problems.append(f"multiple sources: in-degree 0 at {', '.join(sorted(extras))}")
        if g.source in seen_v and g.source not in zero_in:
            problems.append(f"source {g.source} has incoming edges")

    if not g.allow_cycles and not g.acyclic:
        problems.append("cycle detected: allow_cycles is false but the edge relation has a cycle")

    if not g.multigraph:
        pairs: set[tuple[str, str]] = set()
        for e in g.edges:
            key = (e.tail, e.head)
            if key in pairs:
                problems.append(f"parallel edge in simple graph: {e.tail}->{e.head} (edge {e.id})")
            pairs.add(key)

    if g.source in seen_v:
        unreachable = set(seen_v) - g.reachable_from(g.source)
        if unreachable:
            problems.append(f"unreachable from source: {', '.join(sorted(unreachable))}")

    for e in g.edges:
        if e.tail in seen_v and e.head in seen_v:
            lt, lh = g.vertex(e.tail).level, g.vertex(e.head).level
            if lt is not None and lh is not None and lh != lt + 1:
                problems.append(
                    f"edge {e.id} does not increase level by 1: {e.tail}(level {lt}) -> {e.head}(level {lh})"
                )
    return problems


def check_assignment(g: Graph, assignment: Knowledge) -> list[str]:
    """Validate a switch assignment: total over non-sinks, each edge from the vertex's out-list."""
    problems: list[str] = []
    for vid in g.vertex_ids:
        if g.is_sink(vid):
            if vid in assignment:
                problems.append(f"sink {vid} has an assigned switch")
            continue
        eid = assignment.get(vid)
        if eid is None:
            problems.append(f"non-sink {vid} has no assigned switch")
        elif eid not in {e.id for e in g.out_list(vid)}:
            problems.append(f"assigned edge {eid} is not an out-edge of {vid}")
    for vid in assignment:
        if not g.has_vertex(vid):
            problems.append(f"assignment names unknown vertex {vid}")
    return problems


# -- JSON interchange ----------------------------------------------------


def to_json_doc(g: Graph) -> dict[str, Any]:
    """Canonical JSON document; vertex/edge order is the stored order."""
    vs = []
    for v in g.vertices:
        d: dict[str, Any] = {"id": v.id}
        if v.level is not None:
            d["level"] = v.level
        if v.tags:
            d["tags"] = dict(v.tags)
        vs.append(d)
    return {
        "name": g.name,
        "multigraph": g.multigraph,
        "allow_cycles": g.allow_cycles,
        "source": g.source,
        "vertices": vs,
        "edges": [{"id": e.id, "from": e.tail, "to": e.head} for e in g.edges],
    }


def _field(doc: Mapping[str, Any], name: str, types: tuple, where: str) -> Any:
    if name not in doc:
        raise SchemaError(f"missing field: {where}{name}")
    val = doc[name]
    if not isinstance(val, types):
        raise SchemaError(f"wrong type for field {where}{name}: expected {types[0].__name__}")
    return val


def from_json_doc(doc: Mapping[str, Any]) -> Graph:
    if not isinstance(doc, Mapping):
        raise SchemaError("graph document must be a JSON object")
    name = _field(doc, "name", (str,), "")
    multigraph = _field(doc, "multigraph", (bool,), "")
    allow_cycles = _field(doc, "allow_cycles", (bool,), "")
    source = _field(doc, "source", (str,), "")
    raw_vs = _field(doc, "vertices", (list,), "")
    raw_es = _field(doc, "edges", (list,), "")
    vertices = []
    for i, rv in enumerate(raw_vs):
        if not isinstance(rv, Mapping):
            raise SchemaError(f"vertices[{i}] must be an object")
        vid = _field(rv, "id", (str,), f"vertices[{i}].")
        level = rv.get("level")
        if level is not None and not isinstance(level, int):
            raise SchemaError(f"wrong type for field vertices[{i}].level: expected int")
        tags = rv.get("tags")
        if tags is not None and not isinstance(tags, Mapping):
            raise SchemaError(f"wrong type for field vertices[{i}].tags: expected object")
        vertices.append(Vertex(vid, level, dict(tags) if tags else None))
    edges = []
    for i, re_ in enumerate(raw_es):
        if not isinstance(re_, Mapping):
            raise SchemaError(f"edges[{i}] must be an object")
        edges.append(
            Edge(
                _field(re_, "id", (str,), f"edges[{i}]."),
                _field(re_, "from", (str,), f"edges[{i}]."),
                _field(re_, "to", (str,), f"edges[{i}]."),
            )
        )
    return Graph(name, tuple(vertices), tuple(edges), source, multigraph, allow_cycles)


def dumps(g: Graph) -> str:
    return json.dumps(to_json_doc(g), indent=2)


def loads(text: str) -> Graph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None
    return from_json_doc(doc)


def to_dot(g: Graph) -> str:
    """DOT rendering; edges appear in out-list order and ordering=out preserves it."""
    def q(s: str) -> str:
        return '"' + s.replace('"', '\\"') + '"'

    lines = [f"digraph {q(g.name)} {{", '  graph [ordering="out"];']
    for v in g.vertices:
        attrs = []
        if v.level is not None:
            attrs.append(f"level={v.level}")
        if v.id == g.source:
            attrs.append("shape=invtriangle")
        elif g.is_sink(v.id):
            attrs.append("shape=doublecircle")
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {q(v.id)}{suffix};")
    for v in g.vertices:
        for e in g.out_lists[v.id]:
            lines.append(f"  {q(e.tail)} -> {q(e.head)} [label={q(e.id)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
