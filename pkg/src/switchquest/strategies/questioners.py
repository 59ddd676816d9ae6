"""Questioner strategies: deterministic rules for picking each round's questions.

All of them derive their next question set purely from the current
knowledge, so snapshot/restore is trivial and instances can be reused
across matches after reset().
"""

from __future__ import annotations

from typing import Sequence

from ..game import Knowledge, Questioner, StrategyError, flow
from ..graph import Graph
from .shared import layered_structure, pyramid_structure, spine_of, tree_structure


class FollowFlow(Questioner):
    """Ask the flow frontier, one question per round, whatever the budget."""

    name = "follow_flow"

    def step(self, g: Graph, k: int, knowledge: Knowledge) -> list[str]:
        fl = flow(g, knowledge)
        if fl.complete or fl.cycled:
            return []
        return [fl.frontier]


class FrontierBfs(Questioner):
    """Sweep outward from the frontier by distance classes until the budget
    is spent; a partial final class is filled in ascending id order."""

    name = "frontier_bfs"

    def step(self, g: Graph, k: int, knowledge: Knowledge) -> list[str]:
        fl = flow(g, knowledge)
        if fl.complete or fl.cycled:
            return []
        layer = [fl.frontier]
        seen = {fl.frontier}
        asked: list[str] = []
        while layer and len(asked) < k:
            fresh = sorted(
                v for v in layer if g.out_degree(v) >= 2 and v not in knowledge
            )
            room = k - len(asked)
            asked.extend(fresh[:room])
            nxt: list[str] = []
            for v in layer:
                for e in g.out_list(v):
                    if e.head not in seen:
                        seen.add(e.head)
                        nxt.append(e.head)
            layer = nxt
        return asked


class SpineBlocks(Questioner):
    """Ask the next k spine vertices past the confirmed flow; if the flow
    has left the spine, fall back to asking the frontier."""

    name = "spine_blocks"

    def __init__(self) -> None:
        self._spine: list[str] = []
        self._spine_pos: dict[str, int] = {}

    def reset(self, g: Graph) -> None:
        self._spine = spine_of(g)
        self._spine_pos = {vid: i for i, vid in enumerate(self._spine)}

    def step(self, g: Graph, k: int, knowledge: Knowledge) -> list[str]:
        fl = flow(g, knowledge)
        if fl.complete or fl.cycled:
            return []
        f = fl.frontier
        pos = self._spine_pos.get(f)
        if pos is None:
            return [f]
        window = [
            v
            for v in self._spine[pos:]
            if g.out_degree(v) >= 2 and v not in knowledge
        ]
        return window[:k] or [f]


class TreeLevels(Questioner):
    """On a rooted tree, ask whole levels of the frontier's subtree while
    the cumulative number of askable vertices still fits the budget."""

    name = "tree_levels"

    def reset(self, g: Graph) -> None:
        tree_structure(g)

    def step(self, g: Graph, k: int, knowledge: Knowledge) -> list[str]:
        fl = flow(g, knowledge)
        if fl.complete or fl.cycled:
            return []
        asked = [fl.frontier]
        layer = [fl.frontier]
        while True:
            layer = [e.head for v in layer for e in g.out_list(v)]
            fresh = [v for v in layer if g.out_degree(v) >= 2 and v not in knowledge]
            if not fresh or len(asked) + len(fresh) > k:
                return asked
            asked.extend(fresh)


class PyramidRecursive(Questioner):
    """Ask the top l levels of the sub-pyramid rooted at the frontier,
    clipped at the bottom; needs a budget of at least l(l+1)/2."""

    name = "pyramid_recursive"

    def __init__(self, l: int = 1) -> None:
        if l < 1:
            raise StrategyError(f"level span must be >= 1, got {l}")
        self.l = l
        self._py = None

    def reset(self, g: Graph) -> None:
        self._py = pyramid_structure(g)

    def step(self, g: Graph, k: int, knowledge: Knowledge) -> list[str]:
        need = self.l * (self.l + 1) // 2
        if k < need:
            raise StrategyError(
                f"budget {k} is below the {need} questions needed for {self.l} levels"
            )
        fl = flow(g, knowledge)
        if fl.complete or fl.cycled:
            return []
        py = self._py
        i, j = py.coords[fl.frontier]
        asked: list[str] = []
        for a in range(self.l):
            if i + a > py.n:
                break
            for b in range(a + 1):
                vid = py.at(i + a, j + b)
                if vid not in knowledge:
                    asked.append(vid)
        return asked


class PyramidK2(Questioner):
    """The two-round pyramid pattern for a budget of exactly 2: ask the
    block root with its middle grandchild, then the revealed-side child
    with that child's still-unknown grandchild, advancing three levels per
    two rounds; the short tail falls back to asking the frontier."""

    name = "pyramid_k2"

    def __init__(self) -> None:
        self._py = None

    def reset(self, g: Graph) -> None:
        self._py = pyramid_structure(g)

    def step(self, g: Graph, k: int, knowledge: Knowledge) -> list[str]:
        if k != 2:
            raise StrategyError(f"this pattern requires a budget of exactly 2, got {k}")
        fl = flow(g, knowledge)
        if fl.complete or fl.cycled:
            return []
        py = self._py
        f = fl.frontier
        i, j = py.coords[f]
        known: list[str] = []
        if i + 1 <= py.n:
            left = py.at(i + 1, j)
            right = py.at(i + 1, j + 1)
            known = [c for c in (left, right) if c in knowledge]
        if len(known) == 1:
            other = right if known[0] == left else left
            pair = [f, other]
        elif not known and i + 2 <= py.n:
            pair = [f, py.at(i + 2, j + 1)]
        else:
            pair = [f]
        return [v for v in pair if v not in knowledge]


class LayeredComplete(Questioner):
    """On a layered graph of constant width d, ask the frontier plus the
    next floor((k-1)/d) complete levels below it."""

    name = "layered_complete"

    def __init__(self) -> None:
        self._ly = None

    def reset(self, g: Graph) -> None:
        ly = layered_structure(g)
        widths = {len(ly.levels[lev]) for lev in ly.nonsink_levels if lev > 1}
        if widths and widths != {ly.d}:
            raise StrategyError(
                f"level widths {sorted(widths)} do not match the out-degree {ly.d}"
            )
        self._ly = ly

    def step(self, g: Graph, k: int, knowledge: Knowledge) -> list[str]:
        fl = flow(g, knowledge)
        if fl.complete or fl.cycled:
            return []
        ly = self._ly
        f = fl.frontier
        i = ly.level_of[f]
        asked = [f]
        depth = (k - 1) // ly.d
        for lev in range(i + 1, min(i + depth, ly.last_nonsink) + 1):
            asked.extend(v for v in ly.levels[lev] if v not in knowledge)
        return asked
