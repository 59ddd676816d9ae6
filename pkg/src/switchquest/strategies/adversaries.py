"""Adversary strategies: worst-case answer rules extracted from lower-bound
arguments, plus simple baselines.

Every adversary answers each asked vertex with one of its real out-edges
and never contradicts earlier answers, so the transcript always embeds a
consistent switch assignment.
"""

from __future__ import annotations

from typing import Hashable

from ..game import Adversary, AdversaryResponse, Knowledge, StrategyError, flow, known_edge
from ..graph import Graph
from ..reduce import apply_answer_simple
from .shared import layered_structure, lex_longest_path, pyramid_structure, tree_structure


class AllLeft(Adversary):
    """Always answers the first out-edge; the simplest consistent opponent."""

    name = "all_left"

    def _answer(self, g: Graph, knowledge: Knowledge, asked: list[str]) -> AdversaryResponse:
        return AdversaryResponse([(q, g.out_list(q)[0].id) for q in asked])


class FixedLongestPath(Adversary):
    """Commits to one longest (generalized, when cyclic) source path up
    front and answers its edges for path vertices, first edges elsewhere.

    Forces the path game to last as long as that path on graphs with
    minimum out-degree 2.
    """

    name = "fixed_longest_path"

    def __init__(self) -> None:
        self._answers: dict[str, str] = {}

    def reset(self, g: Graph) -> None:
        vseq, eids = lex_longest_path(g, generalized=not g.acyclic)
        self._answers = {}
        for eid in eids:
            e = g.edge(eid)
            self._answers[e.tail] = eid

    def _answer(self, g: Graph, knowledge: Knowledge, asked: list[str]) -> AdversaryResponse:
        return AdversaryResponse(
            [(q, self._answers.get(q) or g.out_list(q)[0].id) for q in asked]
        )

    def snapshot(self) -> Hashable:
        return tuple(sorted(self._answers.items()))

    def restore(self, snap) -> None:
        self._answers = dict(snap)


class TreeMinSubtree(Adversary):
    """On a rooted tree, sends each asked vertex toward the child whose
    subtree contains the fewest questions of the round (leftmost on ties).

    All answers of a round are computed from the question set alone."""

    name = "tree_min_subtree"

    def __init__(self) -> None:
        self._tree = None

    def reset(self, g: Graph) -> None:
        self._tree = tree_structure(g)

    def _answer(self, g: Graph, knowledge: Knowledge, asked: list[str]) -> AdversaryResponse:
        tree = self._tree
        answers = []
        for v in asked:
            best_edge = None
            best_count = None
            for e in g.out_list(v):
                count = sum(1 for s in asked if tree.in_subtree(e.head, s))
                if best_count is None or count < best_count:
                    best_count = count
                    best_edge = e
            answers.append((v, best_edge.id))
        return AdversaryResponse(answers)


def _known_chain_len(g: Graph, work: Knowledge, start: str) -> int:
    """Edges of the path from start that current answers already determine."""
    cur = start
    n = 0
    while True:
        e = known_edge(g, work, cur)
        if e is None:
            return n
        cur = e.head
        n += 1


class PyramidShorterSide(Adversary):
    """Pyramid lower-bound play: answer deepest questions first with left;
    when the asked vertex is the flow frontier, continue toward whichever
    child has the shorter already-known continuation (left on ties)."""

    name = "pyramid_shorter_side"

    def reset(self, g: Graph) -> None:
        pyramid_structure(g)

    def _answer(self, g: Graph, knowledge: Knowledge, asked: list[str]) -> AdversaryResponse:
        work = dict(knowledge)
        answers = []
        endpoint_hits = 0
        ordered = sorted(asked, key=lambda v: (-(g.vertex(v).level or 0), v))
        for v in ordered:
            fl = flow(g, work)
            if not fl.complete and not fl.cycled and fl.frontier == v:
                endpoint_hits += 1
                assert endpoint_hits <= 1, "two frontier extensions in one round"
                left, right = g.out_list(v)
                l_u = _known_chain_len(g, work, left.head)
                l_w = _known_chain_len(g, work, right.head)
                eid = left.id if l_u <= l_w else right.id
            else:
                eid = g.out_list(v)[0].id
            answers.append((v, eid))
            work[v] = eid
        return AdversaryResponse(answers)


class GpyLeftCommitting(Adversary):
    """Layered lower-bound play with volunteered commitments.

    Deepest questions are answered first. A non-frontier vertex gets its
    matching ("left") edge; when that makes d-1 known states on its level
    the whole level is volunteered as left. The frontier is routed, through
    the fully known levels below it, onto a still-unknown vertex of the
    first level that is not fully known."""

    name = "gpy_left_committing"

    def __init__(self) -> None:
        self._ly = None

    def reset(self, g: Graph) -> None:
        self._ly = layered_structure(g)

    def _answer(self, g: Graph, knowledge: Knowledge, asked: list[str]) -> AdversaryResponse:
        ly = self._ly
        work = dict(knowledge)
        answers: list[tuple[str, str]] = []
        volunteered: list[tuple[str, str]] = []
        endpoint_hits = 0
        ordered = sorted(asked, key=lambda v: (-ly.level_of[v], v))
        for v in ordered:
            fl = flow(g, work)
            if not fl.complete and not fl.cycled and fl.frontier == v:
                endpoint_hits += 1
                assert endpoint_hits <= 1, "two frontier extensions in one round"
                eid = self._route_frontier(g, work, v)
            else:
                lev = ly.level_of[v]
                known_others = sum(
                    1
                    for u in ly.levels[lev]
                    if u != v and known_edge(g, work, u) is not None
                )
                eid = g.out_list(v)[0].id
                if known_others >= ly.d - 1:
                    answers.append((v, eid))
                    work[v] = eid
                    for u in ly.levels[lev]:
                        if known_edge(g, work, u) is None:
                            ueid = g.out_list(u)[0].id
                            volunteered.append((u, ueid))
                            work[u] = ueid
                    continue
            answers.append((v, eid))
            work[v] = eid
        return AdversaryResponse(answers, volunteered)

    def _route_frontier(self, g: Graph, work: Knowledge, v: str) -> str:
        ly = self._ly
        i = ly.level_of[v]
        target = None
        for lev in range(i + 1, ly.last_nonsink + 1):
            if any(known_edge(g, work, u) is None for u in ly.levels[lev]):
                target = lev
                break
        if target is None:
            return g.out_list(v)[0].id
        landing: list[str] = []
        for e in g.out_list(v):
            cur = e.head
            while ly.level_of[cur] < target:
                step = known_edge(g, work, cur)
                assert step is not None, "levels above the target must be fully known"
                cur = step.head
            landing.append(cur)
        assert len(set(landing)) == len(landing), "matching routes collided"
        for e, cand in zip(g.out_list(v), landing):
            if known_edge(g, work, cand) is None:
                return e.id
        raise AssertionError("no unknown landing vertex on the target level")


class ContractingLongestPath(Adversary):
    """Sink lower-bound play on simple min-out-degree-2 DAGs at one
    question per round.

    Keeps a working reduced graph and a longest path in it. Questions that
    fell inside an already merged blob are answered arbitrarily; live
    questions are answered so the path shrinks by at most one vertex, and
    the working graph absorbs the answer by edge deletion plus merging."""

    name = "contracting_longest_path"

    def __init__(self) -> None:
        self._w: Graph | None = None
        self._map: dict[str, str] = {}
        self._path: tuple[str, ...] = ()

    def reset(self, g: Graph) -> None:
        if g.multigraph:
            raise StrategyError("requires a simple graph")
        if not g.acyclic:
            raise StrategyError("requires an acyclic graph")
        if any(len(es) == 1 for es in g.out_lists.values()):
            raise StrategyError("requires minimum out-degree 2 (reduce the graph first)")
        self._w = g
        self._map = {vid: vid for vid in g.vertex_ids}
        vseq, _ = lex_longest_path(g)
        self._path = vseq

    def snapshot(self):
        return (self._w, dict(self._map), self._path)

    def restore(self, snap) -> None:
        self._w, m, self._path = snap
        self._map = dict(m)

    def memo_key(self) -> Hashable:
        return ("clp", self._path)

    def _answer(self, g: Graph, knowledge: Knowledge, asked: list[str]) -> AdversaryResponse:
        if len(asked) > 1:
            raise StrategyError("answers one question per round")
        x = asked[0]
        w = self._map[x]
        images: list[str] = []
        for e in g.out_list(x):
            im = self._map[e.head]
            if im != w and im not in images:
                images.append(im)
        if len(images) < 2:
            assert not images, "a live vertex cannot have exactly one surviving branch"
            return AdversaryResponse([(x, g.out_list(x)[0].id)])

        target = self._pick_target(w)
        eid = next(
            e.id for e in g.out_list(x) if self._map[e.head] == target
        )
        self._absorb(w, target)
        return AdversaryResponse([(x, eid)])

    def _pick_target(self, w: str) -> str:
        wg = self._w
        path = self._path
        pos = {p: t for t, p in enumerate(path)}
        neighbors: list[str] = []
        for e in wg.out_list(w):
            if e.head not in neighbors:
                neighbors.append(e.head)
        t = pos.get(w)
        if t is not None:
            succ = path[t + 1]
            shortcut = t >= 1 and any(
                e.head == succ for e in wg.out_list(path[t - 1])
            )
            if shortcut:
                off = [y for y in neighbors if y not in pos and y != succ]
                others = off + [y for y in neighbors if y != succ]
                return others[0]
            return succ
        off = [y for y in neighbors if y not in pos]
        if off:
            return off[0]
        return max(neighbors, key=lambda y: pos[y])

    def _absorb(self, w: str, target: str) -> None:
        wg = self._w
        w_edge = next(e for e in wg.out_list(w) if e.head == target)
        res = apply_answer_simple(wg, w, w_edge.id)
        pos = {p: t for t, p in enumerate(self._path)}
        t = pos.get(w)
        pre = self._path if t is None else self._path[:t] + self._path[t + 1 :]
        mapped: list[str] = []
        for p in pre:
            q = res.map[p]
            if not mapped or mapped[-1] != q:
                mapped.append(q)
        old_len = len(self._path) - 1
        new_graph = res.graph
        for a, b in zip(mapped, mapped[1:]):
            assert any(
                e.head == b for e in new_graph.out_list(a)
            ), "surviving path lost an edge"
        assert len(mapped) - 1 >= old_len - 1, "path shrank by more than one"
        self._w = new_graph
        self._map = {orig: res.map[cur] for orig, cur in self._map.items()}
        self._path = tuple(mapped)
