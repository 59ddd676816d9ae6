"""Graph model, validation, generators and interchange formats."""

import json

import pytest

from switchquest.generators import (
    gen_gpy_complete,
    gen_gpy_grid,
    gen_hl,
    gen_pyramid,
    gen_spine_forks,
    gen_tree,
    gen_tree_of_h,
    gen_tree_remark,
    random_dag,
)
from switchquest.graph import (
    Edge,
    Graph,
    GraphError,
    SchemaError,
    Vertex,
    dumps,
    from_json_doc,
    loads,
    to_dot,
    to_json_doc,
    validate,
)

from conftest import isomorphic


def test_validate_accepts_generator_output():
    assert validate(gen_pyramid(2)) == []


def test_validate_flags_multiple_sources():
    g = Graph(
        "two_sources",
        (Vertex("a"), Vertex("b"), Vertex("t")),
        (Edge("e0", "a", "t"), Edge("e1", "b", "t")),
        "a",
    )
    assert any("multiple sources" in p for p in validate(g))


def test_validate_flags_cycles():
    g = Graph(
        "loop",
        (Vertex("s"), Vertex("a"), Vertex("b")),
        (Edge("e0", "s", "a"), Edge("e1", "a", "b"), Edge("e2", "b", "a")),
        "s",
    )
    assert any("cycle detected" in p for p in validate(g))


def test_validate_flags_parallel_edges_and_unknown_endpoints():
    g = Graph(
        "bad",
        (Vertex("s"), Vertex("t")),
        (Edge("e0", "s", "t"), Edge("e1", "s", "t"), Edge("e2", "s", "ghost")),
        "s",
    )
    problems = validate(g)
    assert any("parallel edge" in p for p in problems)
    assert any("ghost" in p for p in problems)


def test_tree_counts():
    g = gen_tree(2, 2)
    assert len(g.vertices) == 7
    assert len(g.edges) == 6
    assert len(g.sinks) == 4
    assert len(gen_tree(3, 1).vertices) == 4
    degenerate = gen_tree(2, 0)
    assert len(degenerate.vertices) == 1
    assert degenerate.source in degenerate.sinks


def test_tree_rejects_bad_params():
    with pytest.raises(GraphError):
        gen_tree(1, 2)
    with pytest.raises(GraphError):
        gen_tree(2, -1)


def test_pyramid_counts_and_left_edges():
    g = gen_pyramid(2)
    assert len(g.vertices) == 6
    assert len(g.edges) == 6
    assert set(g.sinks) == {"v3_1", "v3_2", "v3_3"}
    outs = [e.head for e in g.out_list("v2_1")]
    assert outs == ["v3_1", "v3_2"]
    assert len(gen_pyramid(1).vertices) == 3
    assert len(gen_pyramid(1).edges) == 2
    with pytest.raises(GraphError):
        gen_pyramid(0)


def test_gpy_complete_shape():
    g = gen_gpy_complete(2, 3)
    assert len(g.vertices) == 7
    assert len(g.edges) == 10
    assert len(gen_gpy_complete(3, 2).vertices) == 7
    assert len(gen_gpy_complete(3, 2).edges) == 12
    # every non-first level has exactly d vertices, matching edge first
    levels = {}
    for v in g.vertices:
        levels.setdefault(v.level, []).append(v.id)
    assert all(len(vs) == 2 for lev, vs in levels.items() if lev > 1)
    assert g.out_list("w2_2")[0].head == "w3_2"


def test_gpy_grid_shape():
    g = gen_gpy_grid(3, 2)
    assert len(g.vertices) == 10
    assert len(g.edges) == 12
    assert validate(gen_gpy_grid(3, 3)) == []
    assert all(
        g.out_degree(v.id) in (0, 3) for v in g.vertices
    )


@pytest.mark.parametrize("n", range(1, 7))
def test_gpy_grid_dim2_is_a_pyramid(n):
    assert isomorphic(gen_gpy_grid(2, n), gen_pyramid(n))


def test_hl_counts():
    g = gen_hl(2, 1)
    assert len(g.vertices) == 5
    assert len(g.edges) == 4
    g = gen_hl(3, 2)
    assert len(g.vertices) == 13
    assert len(g.edges) == 12


def test_spine_forks_counts():
    g = gen_spine_forks(2, 1)
    assert len(g.vertices) == 7
    assert len(g.edges) == 6


def test_tree_remark_counts():
    g = gen_tree_remark(3)
    assert len(g.vertices) == 11


def test_tree_of_h_counts():
    g = gen_tree_of_h(2, 2)
    assert len(g.vertices) == 15
    assert len(g.edges) == 14


def test_random_dag_is_deterministic_and_valid():
    a = random_dag(8, 3, 2, False, 42)
    b = random_dag(8, 3, 2, False, 42)
    assert a == b
    assert validate(random_dag(10, 3, 2, False, 7)) == []
    single = random_dag(1, 2, 2, False, 0)
    assert len(single.vertices) == 1
    assert single.source in single.sinks


def test_random_dag_respects_degree_window():
    g = random_dag(12, 3, 2, False, 5)
    for vid in g.vertex_ids:
        assert g.out_degree(vid) in (0, 2, 3)


def test_random_dag_rejects_infeasible():
    with pytest.raises(GraphError):
        random_dag(2, 2, 2, False, 0)
    with pytest.raises(GraphError):
        random_dag(5, 3, 4, False, 0)


@pytest.mark.parametrize(
    "g",
    [gen_pyramid(3), gen_tree(2, 3), gen_gpy_complete(3, 2), gen_gpy_grid(3, 2)],
    ids=lambda g: g.name,
)
def test_layered_edges_increase_level_by_one(g):
    for e in g.edges:
        assert g.vertex(e.head).level == g.vertex(e.tail).level + 1


def test_generators_are_pure():
    assert gen_pyramid(3) == gen_pyramid(3)
    assert gen_tree_of_h(2, 2) == gen_tree_of_h(2, 2)


def test_json_roundtrip_is_byte_stable():
    g = gen_gpy_grid(2, 2)
    text = dumps(g)
    again = dumps(loads(text))
    assert text == again
    assert loads(text) == g


def test_json_schema_errors_name_the_field():
    with pytest.raises(SchemaError, match="source"):
        from_json_doc({"name": "x", "multigraph": False, "allow_cycles": False,
                       "vertices": [], "edges": []})
    with pytest.raises(SchemaError, match=r"vertices\[0\]\.id"):
        from_json_doc({"name": "x", "multigraph": False, "allow_cycles": False,
                       "source": "s", "vertices": [{}], "edges": []})
    with pytest.raises(SchemaError, match=r"edges\[0\]\.from"):
        from_json_doc({"name": "x", "multigraph": False, "allow_cycles": False,
                       "source": "s", "vertices": [{"id": "s"}],
                       "edges": [{"id": "e", "to": "s"}]})


def test_dot_export_lists_edges_in_out_order():
    g = gen_pyramid(1)
    dot = to_dot(g)
    assert 'ordering="out"' in dot
    assert dot.index('"v1_1" -> "v2_1"') < dot.index('"v1_1" -> "v2_2"')


def test_json_doc_holds_out_list_order():
    g = gen_pyramid(2)
    doc = to_json_doc(g)
    per_vertex = {}
    for e in doc["edges"]:
        per_vertex.setdefault(e["from"], []).append(e["to"])
    assert per_vertex["v1_1"] == ["v2_1", "v2_2"]
