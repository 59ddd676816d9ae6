"""Contraction, reduction, answer application and longest-path measures."""

import random

import pytest

from switchquest.generators import gen_hl, gen_pyramid, random_dag
from switchquest.graph import Edge, Graph, GraphError, Vertex
from switchquest.reduce import (
    apply_answer_multi,
    apply_answer_simple,
    longest_generalized_path_len,
    longest_path_len,
    longest_path_len_global,
    merge_set_multi,
    merge_set_simple,
    reachability_preserved_check,
    reduce_multi,
    reduce_simple,
)


def test_merge_simple_on_diamond(diamond):
    res = merge_set_simple(diamond, {"a", "t"}, "m")
    assert len(res.graph.vertices) == 3
    assert {(e.tail, e.head) for e in res.graph.edges} == {("s", "m"), ("s", "b"), ("b", "m")}
    assert res.map == {"s": "s", "a": "m", "t": "m", "b": "b"}


def test_merge_simple_everything(diamond):
    res = merge_set_simple(diamond, set(diamond.vertex_ids), "all")
    assert len(res.graph.vertices) == 1
    assert len(res.graph.edges) == 0
    assert res.graph.source == "all"


def test_merge_simple_on_pyramid_keeps_other_edges():
    g = gen_pyramid(2)
    res = merge_set_simple(g, {"v1_1", "v2_1"}, "m")
    assert len(res.graph.vertices) == 5
    heads = {e.head for e in res.graph.out_list("m")}
    assert heads == {"v3_1", "v3_2", "v2_2"}


def test_merge_multi_keeps_parallel_edges(diamond):
    step1 = merge_set_multi(diamond, {"a", "t"}, "m1")
    step2 = merge_set_multi(step1.graph, {"b", "m1"}, "m2")
    outs = step2.graph.out_list("s")
    assert len(outs) == 2
    assert all(e.head == "m2" for e in outs)


def test_merge_multi_single_vertex_is_relabel(diamond):
    res = merge_set_multi(diamond, {"a"}, "a2")
    assert res.map["a"] == "a2"
    assert len(res.graph.edges) == 4


def test_merge_multi_spine(spine3):
    res = merge_set_multi(spine3, {"x2", "x3"}, "m")
    assert {(e.tail, e.head) for e in res.graph.edges} == {("x1", "m"), ("m", "x4")}


def test_merge_rejects_bad_input(diamond):
    with pytest.raises(GraphError):
        merge_set_simple(diamond, set(), "m")
    with pytest.raises(GraphError):
        merge_set_simple(diamond, {"nope"}, "m")


def test_reduce_simple_diamond_collapses_fully(diamond):
    res = reduce_simple(diamond)
    assert len(res.graph.vertices) == 1
    assert len(res.graph.edges) == 0
    assert len(set(res.map.values())) == 1


def test_reduce_simple_pyramid_is_identity():
    g = gen_pyramid(3)
    res = reduce_simple(g)
    assert res.graph == g
    assert res.map == {vid: vid for vid in g.vertex_ids}


def test_reduce_simple_path(spine3):
    res = reduce_simple(spine3)
    assert len(res.graph.vertices) == 1


def test_reduce_multi_diamond(diamond):
    res = reduce_multi(diamond)
    assert len(res.graph.vertices) == 2
    outs = res.graph.out_list(res.graph.source)
    assert len(outs) == 2
    assert longest_path_len(res.graph) == 1


def test_reduce_multi_hl_unchanged():
    g = gen_hl(2, 2)
    res = reduce_multi(g)
    assert res.graph == g


def test_reduce_outputs_have_min_outdegree_two():
    for seed in range(8):
        g = random_dag(9, 3, 1, False, 300 + seed)
        for res in (reduce_simple(g), reduce_multi(g)):
            assert all(
                len(es) != 1 for es in res.graph.out_lists.values()
            ), res.graph.name
            assert res.graph.acyclic


def test_reduce_order_independence_small():
    g = random_dag(9, 3, 1, False, 77)
    base = reduce_simple(g)
    rng = random.Random(5)
    for _ in range(10):
        alt = reduce_simple(g, rng=rng)
        assert set(alt.graph.vertex_ids) == set(base.graph.vertex_ids)
        assert {(e.tail, e.head) for e in alt.graph.edges} == {
            (e.tail, e.head) for e in base.graph.edges
        }
        assert alt.map == base.map


def test_apply_answer_simple_on_pyramid():
    g = gen_pyramid(2)
    left = g.out_list("v1_1")[0]
    res = apply_answer_simple(g, "v1_1", left.id)
    assert len(res.graph.vertices) == 5
    merged = res.map["v1_1"]
    assert merged == res.map["v2_1"]
    assert {e.head for e in res.graph.out_list(merged)} == {"v3_1", "v3_2"}
    assert longest_path_len(res.graph) == 1


def test_apply_answer_simple_forced_vertex_is_pure_merge(spine3):
    res = apply_answer_simple(spine3, "x1", "e1")
    assert len(res.graph.vertices) == 1


def test_apply_answer_simple_chain_collapse():
    # z's only two out-neighbors are x and y, so answering x -> y absorbs z too
    g = Graph(
        "chain",
        (Vertex("s"), Vertex("z"), Vertex("x"), Vertex("y"), Vertex("t1"), Vertex("t2")),
        (
            Edge("e0", "s", "z"),
            Edge("e1", "s", "x"),
            Edge("e2", "z", "x"),
            Edge("e3", "z", "y"),
            Edge("e4", "x", "y"),
            Edge("e5", "x", "t1"),
            Edge("e6", "y", "t1"),
            Edge("e7", "y", "t2"),
        ),
        "s",
    )
    res = apply_answer_simple(g, "x", "e4")
    blob = res.map["x"]
    assert res.map["y"] == blob
    assert res.map["z"] == blob


def test_apply_answer_multi_on_hl():
    # answering the spine edge drops x1's sink-child edge, so the blob
    # carries exactly x2's two out-edges
    g = gen_hl(2, 1)
    spine_edge = g.out_list("x1")[0]
    res = apply_answer_multi(g, "x1", spine_edge.id)
    blob = res.map["x1"]
    assert blob == res.map["x2"]
    assert {e.head for e in res.graph.out_list(blob)} == {"x3", "x2s"}


def test_apply_answer_multi_no_cascade_on_min_two():
    g = gen_hl(2, 2)
    e = g.out_list("x2")[0]
    res = apply_answer_multi(g, "x2", e.id)
    merged = {v for v in g.vertex_ids if res.map[v] != v}
    assert merged == {"x2", "x3"}


def test_apply_answer_rejects_bad_edge(diamond):
    with pytest.raises(GraphError):
        apply_answer_simple(diamond, "a", "e0")
    with pytest.raises(GraphError):
        apply_answer_simple(diamond, "t", "e0")


def test_longest_path_values():
    assert longest_path_len(gen_pyramid(3)) == 3
    assert longest_path_len(gen_hl(2, 3)) == 6
    single = Graph("one", (Vertex("s"),), (), "s")
    assert longest_path_len(single) == 0


def test_longest_path_source_anchored_equals_global():
    for seed in range(6):
        g = random_dag(9, 3, 1, False, 700 + seed)
        assert longest_path_len(g) == longest_path_len_global(g)


def test_longest_path_rejects_cycles():
    g = Graph(
        "cyc",
        (Vertex("s"), Vertex("a"), Vertex("b")),
        (Edge("e0", "s", "a"), Edge("e1", "a", "b"), Edge("e2", "b", "a")),
        "s",
        allow_cycles=True,
    )
    with pytest.raises(GraphError):
        longest_path_len(g)


def test_generalized_path_matches_plain_on_acyclic():
    for seed in range(5):
        g = random_dag(8, 3, 1, False, 900 + seed)
        assert longest_generalized_path_len(g) == longest_path_len(g)


def test_generalized_path_counts_cycle_closing_edge():
    g = Graph(
        "tail_cycle",
        (Vertex("s"), Vertex("a"), Vertex("b"), Vertex("c")),
        (
            Edge("e0", "s", "a"),
            Edge("e1", "a", "b"),
            Edge("e2", "b", "c"),
            Edge("e3", "c", "a"),
        ),
        "s",
        allow_cycles=True,
    )
    assert longest_generalized_path_len(g) == 4


def test_generalized_path_counts_self_loop():
    g = Graph(
        "selfie",
        (Vertex("s"), Vertex("a")),
        (Edge("e0", "s", "a"), Edge("e1", "a", "a")),
        "s",
        allow_cycles=True,
        multigraph=True,
    )
    assert longest_generalized_path_len(g) == 2


def test_generalized_path_cap():
    with pytest.raises(GraphError):
        longest_generalized_path_len(gen_pyramid(6), max_vertices=20)


def test_reachability_preserved(diamond):
    assert reachability_preserved_check(diamond, reduce_simple(diamond))
    g = gen_pyramid(3)
    assert reachability_preserved_check(g, reduce_simple(g))
    m = random_dag(8, 3, 1, True, 5)
    assert reachability_preserved_check(m, reduce_multi(m))


def test_reduce_multi_keeps_cycle_information_as_self_loop():
    # x is forced into y and y can answer back into the blob
    g = Graph(
        "back",
        (Vertex("s"), Vertex("x"), Vertex("y"), Vertex("t0"), Vertex("t1")),
        (
            Edge("e0", "s", "x"),
            Edge("e1", "s", "t0"),
            Edge("e2", "x", "y"),
            Edge("e3", "y", "x"),
            Edge("e4", "y", "t1"),
        ),
        "s",
        allow_cycles=True,
    )
    res = reduce_multi(g)
    blob = res.map["x"]
    assert res.map["y"] == blob
    loops = [e for e in res.graph.edges if e.tail == blob and e.head == blob]
    assert len(loops) == 1
    assert longest_generalized_path_len(res.graph) == 2
