"""Game semantics: knowledge states, flow, determination, the round-based
match runner, and the worst-case / best-response evaluators.

A knowledge state maps vertices to the out-edge their switch was revealed
to be. Out-degree-1 vertices are free knowledge: they are never asked and
their switch is implied. The flow is the path the source water takes
through all known switches; its last vertex is the frontier.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Any, Hashable, Iterable, Mapping, Sequence

from .graph import Edge, Graph, GraphError, Knowledge, SwitchAssignment

GOALS = ("sink", "path")


class ProtocolViolation(RuntimeError):
    """One side broke the question/answer protocol; names the offender."""

    def __init__(self, offender: str, detail: str):
        super().__init__(f"{offender}: {detail}")
        self.offender = offender
        self.detail = detail


def _check_goal(goal: str) -> str:
    if goal not in GOALS:
        raise ValueError(f"goal must be one of {GOALS}, got {goal!r}")
    return goal


@dataclass
class FlowPath:
    """The source path determined by current knowledge."""

    vertices: list[str]
    edges: list[str]
    complete: bool  # reached a sink
    cycled: bool = False  # revisited a vertex (cyclic graphs only)

    @property
    def frontier(self) -> str:
        return self.vertices[-1]


def known_edge(g: Graph, knowledge: Knowledge, vid: str) -> Edge | None:
    """The revealed or forced out-edge of a vertex, if any."""
    eid = knowledge.get(vid)
    if eid is not None:
        return g.edge(eid)
    return g.forced.get(vid)


def flow(g: Graph, knowledge: Knowledge) -> FlowPath:
    """Follow known switches from the source until a sink, an unknown
    switch, or (in cyclic graphs) a repeated vertex."""
    vertices = [g.source]
    edges: list[str] = []
    seen = {g.source}
    cur = g.source
    while True:
        if g.is_sink(cur):
            return FlowPath(vertices, edges, complete=True)
        e = known_edge(g, knowledge, cur)
        if e is None:
            return FlowPath(vertices, edges, complete=False)
        vertices.append(e.head)
        edges.append(e.id)
        cur = e.head
        if cur in seen:
            return FlowPath(vertices, edges, complete=False, cycled=True)
        seen.add(cur)


def possible_sinks(g: Graph, knowledge: Knowledge) -> set[str]:
    """Sinks still consistent with the knowledge: those reachable from the
    frontier when known vertices keep only their known edge."""
    fl = flow(g, knowledge)
    if fl.complete:
        return {fl.frontier}
    if fl.cycled:
        return set()
    found: set[str] = set()
    seen: set[str] = set()
    stack = [fl.frontier]
    while stack:
        cur = stack.pop()
        if cur in seen:
            continue
        seen.add(cur)
        if g.is_sink(cur):
            found.add(cur)
            continue
        e = known_edge(g, knowledge, cur)
        if e is not None:
            stack.append(e.head)
        else:
            stack.extend(edge.head for edge in g.out_list(cur))
    return found


def is_determined(g: Graph, knowledge: Knowledge, goal: str) -> bool:
    """Path goal: the flow reaches a sink (or closes a cycle, when cycles
    are allowed). Sink goal: exactly one sink remains possible."""
    _check_goal(goal)
    if goal == "path":
        fl = flow(g, knowledge)
        return fl.complete or fl.cycled
    return len(possible_sinks(g, knowledge)) == 1


@dataclass
class AdversaryResponse:
    answers: list[tuple[str, str]]
    volunteered: list[tuple[str, str]] = field(default_factory=list)


@dataclass
class RoundRecord:
    round: int
    questions: list[str]
    answers: list[tuple[str, str]]
    volunteered: list[tuple[str, str]]


@dataclass
class MatchResult:
    rounds: int
    transcript: list[RoundRecord]
    outcome: dict[str, Any]
    knowledge: dict[str, str]

    @property
    def assignment(self) -> dict[str, str]:
        """Switches implied by the transcript (answers plus volunteered)."""
        return dict(self.knowledge)

    def to_json_doc(self) -> dict[str, Any]:
        return {
            "rounds": self.rounds,
            "transcript": [
                {
                    "round": r.round,
                    "questions": list(r.questions),
                    "answers": [list(a) for a in r.answers],
                    "volunteered": [list(v) for v in r.volunteered],
                }
                for r in self.transcript
            ],
            "outcome": self.outcome,
        }


# -- strategy interfaces ---------------------------------------------------


class StrategyError(ValueError):
    """A strategy was bound to a graph it does not support."""


class Questioner:
    """Deterministic question source. Subclasses override reset/step."""

    name = "questioner"

    def reset(self, g: Graph) -> None:
        pass

    def step(self, g: Graph, k: int, knowledge: Knowledge) -> list[str]:
        raise NotImplementedError

    def snapshot(self) -> Hashable:
        return None

    def restore(self, snap: Hashable) -> None:
        pass


class Adversary:
    """Deterministic answer source.

    step() repeats the recorded answer for any re-asked known vertex and
    delegates genuinely new questions to _answer, so strategies only see
    unknown vertices.
    """

    name = "adversary"

    def reset(self, g: Graph) -> None:
        pass

    def step(self, g: Graph, knowledge: Knowledge, questions: Sequence[str]) -> AdversaryResponse:
        repeats: list[tuple[str, str]] = []
        fresh: list[str] = []
        for q in questions:
            e = known_edge(g, knowledge, q)
            if e is not None:
                repeats.append((q, e.id))
            else:
                fresh.append(q)
        if not fresh:
            return AdversaryResponse(repeats)
        resp = self._answer(g, knowledge, fresh)
        resp.answers.extend(repeats)
        return resp

    def _answer(self, g: Graph, knowledge: Knowledge, asked: list[str]) -> AdversaryResponse:
        raise NotImplementedError

    def snapshot(self) -> Any:
        return None

    def restore(self, snap: Any) -> None:
        pass

    def memo_key(self) -> Hashable:
        """Hashable digest of internal state; None means knowledge-derived."""
        return None


class FixedAssignmentAdversary(Adversary):
    """Answers truthfully from a fixed switch assignment; never volunteers."""

    name = "fixed_assignment"

    def __init__(self, assignment: Mapping[str, str]):
        self.assignment = dict(assignment)

    def _answer(self, g: Graph, knowledge: Knowledge, asked: list[str]) -> AdversaryResponse:
        answers = []
        for q in asked:
            eid = self.assignment.get(q)
            if eid is None:
                eid = g.out_list(q)[0].id
            answers.append((q, eid))
        return AdversaryResponse(answers)


# -- protocol -------------------------------------------------------------


def askable_vertices(g: Graph) -> list[str]:
    """Vertices that are legal questions: non-sink with out-degree at least 2."""
    return [vid for vid in g.vertex_ids if len(g.out_lists[vid]) >= 2]


def _validate_questions(g: Graph, k: int, questions: Sequence[str]) -> None:
    if not questions:
        raise ProtocolViolation("questioner", "emitted no questions while undetermined")
    if len(questions) > k:
        raise ProtocolViolation("questioner", f"asked {len(questions)} questions with budget {k}")
    seen = set()
    for q in questions:
        if q in seen:
            raise ProtocolViolation("questioner", f"asked {q} twice in one round")
        seen.add(q)
        if not g.has_vertex(q):
            raise ProtocolViolation("questioner", f"asked unknown vertex {q}")
        deg = g.out_degree(q)
        if deg == 0:
            raise ProtocolViolation("questioner", f"asked sink {q}")
        if deg == 1:
            raise ProtocolViolation("questioner", f"asked forced vertex {q}")


def _validate_response(
    g: Graph,
    knowledge: dict[str, str],
    questions: Sequence[str],
    resp: AdversaryResponse,
) -> None:
    answered = {v for v, _ in resp.answers}
    missing = [q for q in questions if q not in answered]
    if missing:
        raise ProtocolViolation("adversary", f"omitted an answer for {missing[0]}")
    extra = [v for v in answered if v not in set(questions)]
    if extra:
        raise ProtocolViolation("adversary", f"answered unasked vertex {extra[0]}")
    if len(resp.answers) != len(set(answered)):
        raise ProtocolViolation("adversary", "answered a vertex twice")
    for v, eid in list(resp.answers) + list(resp.volunteered):
        if not g.has_vertex(v) or g.is_sink(v):
            raise ProtocolViolation("adversary", f"gave a switch for non-askable vertex {v}")
        if eid not in {e.id for e in g.out_list(v)}:
            raise ProtocolViolation("adversary", f"edge {eid} is not an out-edge of {v}")
        prior = knowledge.get(v)
        if prior is not None and prior != eid:
            raise ProtocolViolation(
                "adversary", f"contradicted commitment at {v}: said {prior} before, now {eid}"
            )


def run_match(
    g: Graph,
    k: int,
    questioner: Questioner,
    adversary: Adversary,
    goal: str,
    *,
    validate_protocol: bool = True,
) -> MatchResult:
    """Play rounds of up to k questions until the goal is determined."""
    _check_goal(goal)
    if k < 1:
        raise ValueError(f"round budget must be >= 1, got {k}")
    if not g.acyclic and goal == "sink":
        raise GraphError("sink search is only defined on acyclic graphs")
    questioner.reset(g)
    adversary.reset(g)
    knowledge: dict[str, str] = {}
    transcript: list[RoundRecord] = []
    rounds = 0
    limit = len(askable_vertices(g)) + 2
    while not is_determined(g, knowledge, goal):
        questions = list(questioner.step(g, k, knowledge))
        if validate_protocol:
            _validate_questions(g, k, questions)
        resp = adversary.step(g, knowledge, questions)
        if validate_protocol:
            _validate_response(g, knowledge, questions, resp)
        before = len(knowledge)
        for v, eid in list(resp.answers) + list(resp.volunteered):
            knowledge[v] = eid
        rounds += 1
        transcript.append(
            RoundRecord(rounds, questions, list(resp.answers), list(resp.volunteered))
        )
        if len(knowledge) == before and not is_determined(g, knowledge, goal):
            raise ProtocolViolation("questioner", "round produced no new knowledge")
        if rounds > limit:
            raise ProtocolViolation("questioner", f"match exceeded {limit} rounds")

    if goal == "sink":
        outcome: dict[str, Any] = {"sink": next(iter(possible_sinks(g, knowledge)))}
    else:
        fl = flow(g, knowledge)
        outcome = {"path": {"vertices": fl.vertices, "edges": fl.edges, "cycled": fl.cycled}}
    return MatchResult(rounds, transcript, outcome, knowledge)


# -- assignment enumeration -------------------------------------------------


def enumerate_assignments(g: Graph) -> Iterable[SwitchAssignment]:
    """All switch assignments, iterating the free (out-degree >= 2) choices."""
    free = askable_vertices(g)
    forced = {vid: e.id for vid, e in g.forced.items()}
    option_lists = [[e.id for e in g.out_list(vid)] for vid in free]
    for combo in product(*option_lists):
        a = dict(forced)
        a.update(zip(free, combo))
        yield a


def random_assignment(g: Graph, rng: random.Random) -> SwitchAssignment:
    a = {vid: e.id for vid, e in g.forced.items()}
    for vid in askable_vertices(g):
        a[vid] = rng.choice(g.out_list(vid)).id
    return a


def worst_case_rounds(
    g: Graph,
    k: int,
    questioner: Questioner,
    goal: str,
    *,
    cap: int = 22,
    sample_size: int | None = None,
    seed: int = 0,
) -> int:
    """Max rounds of the questioner over switch assignments.

    Exhaustive when the free-vertex count is within the cap; otherwise a
    seeded sample must be requested explicitly and the result is only a
    lower estimate.
    """
    _check_goal(goal)
    free = askable_vertices(g)
    if len(free) > cap and sample_size is None:
        raise GraphError(
            f"{len(free)} free vertices exceed the exhaustive cap of {cap}; "
            "pass sample_size for a sampled lower estimate"
        )
    if len(free) <= cap:
        assignments: Iterable[SwitchAssignment] = enumerate_assignments(g)
    else:
        rng = random.Random(seed)
        assignments = (random_assignment(g, rng) for _ in range(sample_size or 0))
    worst = 0
    for assignment in assignments:
        result = run_match(g, k, questioner, FixedAssignmentAdversary(assignment), goal)
        worst = max(worst, result.rounds)
    return worst


# -- integer-indexed view for the solver and the best-response search -------


class GraphIndex:
    """Integer-indexed graph view with the askable-vertex key encoding.

    A knowledge key is a tuple with one entry per askable vertex:
    0 for unknown, otherwise 1 + the index of the chosen out-edge.
    """

    def __init__(self, g: Graph):
        self.graph = g
        self.ids: list[str] = list(g.vertex_ids)
        self.pos: dict[str, int] = {vid: i for i, vid in enumerate(self.ids)}
        n = len(self.ids)
        self.out_heads: list[list[int]] = [[] for _ in range(n)]
        self.out_eids: list[list[str]] = [[] for _ in range(n)]
        for vid in self.ids:
            i = self.pos[vid]
            for e in g.out_lists[vid]:
                self.out_heads[i].append(self.pos[e.head])
                self.out_eids[i].append(e.id)
        self.is_sink = [len(h) == 0 for h in self.out_heads]
        self.source = self.pos[g.source]
        self.cyclic = not g.acyclic
        self.askable: list[int] = [i for i in range(n) if len(self.out_heads[i]) >= 2]
        self.apos: dict[int, int] = {v: p for p, v in enumerate(self.askable)}
        self.forced_head: list[int | None] = [
            self.out_heads[i][0] if len(self.out_heads[i]) == 1 else None for i in range(n)
        ]
        self.edge_choice: dict[tuple[int, str], int] = {}
        for v in self.askable:
            for j, eid in enumerate(self.out_eids[v]):
                self.edge_choice[(v, eid)] = j + 1
        if not self.cyclic:
            topo = [self.pos[vid] for vid in g.topo_order]
            self.rtopo = list(reversed(topo))
        else:
            self.rtopo = None

    def empty_key(self) -> tuple[int, ...]:
        return (0,) * len(self.askable)

    def key_of(self, knowledge: Knowledge) -> tuple[int, ...]:
        key = [0] * len(self.askable)
        for vid, eid in knowledge.items():
            v = self.pos[vid]
            p = self.apos.get(v)
            if p is not None:
                key[p] = self.edge_choice[(v, eid)]
        return tuple(key)

    def knowledge_of(self, key: Sequence[int]) -> dict[str, str]:
        out: dict[str, str] = {}
        for p, a in enumerate(key):
            if a:
                v = self.askable[p]
                out[self.ids[v]] = self.out_eids[v][a - 1]
        return out


def frontier_of_key(idx: GraphIndex, key: Sequence[int]) -> tuple[int, bool, bool]:
    """(frontier vertex, reached sink, closed cycle) for a knowledge key."""
    cur = idx.source
    seen = {cur} if idx.cyclic else None
    while True:
        if idx.is_sink[cur]:
            return cur, True, False
        p = idx.apos.get(cur)
        if p is None:
            nxt = idx.forced_head[cur]
        else:
            a = key[p]
            if a == 0:
                return cur, False, False
            nxt = idx.out_heads[cur][a - 1]
        cur = nxt
        if seen is not None:
            if cur in seen:
                return cur, False, True
            seen.add(cur)


def determined_key(idx: GraphIndex, key: Sequence[int], goal: str) -> bool:
    cur, at_sink, cycled = frontier_of_key(idx, key)
    if goal == "path":
        return at_sink or cycled
    if at_sink:
        return True
    if cycled:
        return False
    # count distinct reachable sinks, stopping at two
    found = 0
    seen: set[int] = set()
    stack = [cur]
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        if idx.is_sink[v]:
            found += 1
            if found > 1:
                return False
            continue
        p = idx.apos.get(v)
        if p is None:
            stack.append(idx.forced_head[v])  # type: ignore[arg-type]
        else:
            a = key[p]
            if a:
                stack.append(idx.out_heads[v][a - 1])
            else:
                stack.extend(idx.out_heads[v])
    return found == 1


def followflow_bound_key(idx: GraphIndex, key: Sequence[int]) -> int:
    """Rounds the ask-the-frontier strategy needs from this state in the
    worst case: the max count of unknown switches on a flow continuation."""
    if idx.cyclic or idx.rtopo is None:
        return sum(1 for a in key if a == 0)
    rem = [0] * len(idx.ids)
    for v in idx.rtopo:
        if idx.is_sink[v]:
            continue
        p = idx.apos.get(v)
        if p is None:
            rem[v] = rem[idx.forced_head[v]]  # type: ignore[index]
        else:
            a = key[p]
            if a:
                rem[v] = rem[idx.out_heads[v][a - 1]]
            else:
                rem[v] = 1 + max(rem[h] for h in idx.out_heads[v])
    return rem[idx.source]


def min_unknowns_on_path_key(idx: GraphIndex, key: Sequence[int]) -> int:
    """Min over flow continuations of the unknown switches they cross; a
    lower bound on the questions any path-goal strategy still needs."""
    if idx.cyclic or idx.rtopo is None:
        return 0
    low = [0] * len(idx.ids)
    for v in idx.rtopo:
        if idx.is_sink[v]:
            continue
        p = idx.apos.get(v)
        if p is None:
            low[v] = low[idx.forced_head[v]]  # type: ignore[index]
        else:
            a = key[p]
            if a:
                low[v] = low[idx.out_heads[v][a - 1]]
            else:
                low[v] = 1 + min(low[h] for h in idx.out_heads[v])
    return low[idx.source]


# -- best response against a fixed adversary --------------------------------


def best_response_rounds(
    g: Graph,
    k: int,
    adversary: Adversary,
    goal: str,
    *,
    max_askable: int = 16,
) -> int:
    """Minimum rounds any questioner needs against the fixed adversary.

    Iterative-deepening depth-first search over question sets; adversary
    state is snapshot/restored around each probe and memo keys combine the
    knowledge key with the adversary's own state digest.
    """
    _check_goal(goal)
    if k < 1:
        raise ValueError(f"round budget must be >= 1, got {k}")
    if not g.acyclic and goal == "sink":
        raise GraphError("sink search is only defined on acyclic graphs")
    idx = GraphIndex(g)
    if len(idx.askable) > max_askable:
        raise GraphError(
            f"{len(idx.askable)} askable vertices exceed the search cap of {max_askable}"
        )
    adversary.reset(g)
    root_key = idx.empty_key()
    if determined_key(idx, root_key, goal):
        return 0
    base_snap = adversary.snapshot()

    # achievable upper bound: ask the frontier every round
    knowledge: dict[str, str] = {}
    key = root_key
    ub = 0
    while not determined_key(idx, key, goal):
        f, _, _ = frontier_of_key(idx, key)
        resp = adversary.step(g, knowledge, [idx.ids[f]])
        for v, eid in list(resp.answers) + list(resp.volunteered):
            knowledge[v] = eid
        key = idx.key_of(knowledge)
        ub += 1
        if ub > len(idx.askable) + 1:
            raise ProtocolViolation("adversary", "follow-flow probe failed to terminate")
    adversary.restore(base_snap)

    fail_below: dict[Hashable, int] = {}
    succ_at: dict[Hashable, int] = {}

    def candidate_sets(key: tuple[int, ...]) -> Iterable[tuple[int, ...]]:
        unknown = [p for p, a in enumerate(key) if a == 0]
        f, _, _ = frontier_of_key(idx, key)
        fp = idx.apos.get(f)
        if fp is not None and fp in unknown:
            unknown.remove(fp)
            unknown.insert(0, fp)
        top = min(k, len(unknown))
        for size in range(top, 0, -1):
            yield from combinations(unknown, size)

    def attempt(kdict: dict[str, str], key: tuple[int, ...], budget: int) -> bool:
        if determined_key(idx, key, goal):
            return True
        if budget == 0:
            return False
        mk = (key, adversary.memo_key())
        if succ_at.get(mk, 1 << 30) <= budget:
            return True
        if budget <= fail_below.get(mk, 0):
            return False
        for positions in candidate_sets(key):
            snap = adversary.snapshot()
            questions = [idx.ids[idx.askable[p]] for p in positions]
            resp = adversary.step(g, kdict, questions)
            child = dict(kdict)
            child_key = list(key)
            for v, eid in list(resp.answers) + list(resp.volunteered):
                child[v] = eid
                ap = idx.apos.get(idx.pos[v])
                if ap is not None:
                    child_key[ap] = idx.edge_choice[(idx.pos[v], eid)]
            if attempt(child, tuple(child_key), budget - 1):
                adversary.restore(snap)
                succ_at[mk] = min(succ_at.get(mk, 1 << 30), budget)
                return True
            adversary.restore(snap)
        fail_below[mk] = max(fail_below.get(mk, 0), budget)
        return False

    for d in range(1, ub):
        adversary.restore(base_snap)
        if attempt({}, root_key, d):
            return d
    return ub
