"""Strategy registry: questioners and adversaries addressable by name.

Parameterized strategies take a suffix, e.g. "pyramid_recursive:l=2".
"""

from __future__ import annotations

from ..game import Adversary, FixedAssignmentAdversary, Questioner, StrategyError
from .adversaries import (
    AllLeft,
    ContractingLongestPath,
    FixedLongestPath,
    GpyLeftCommitting,
    PyramidShorterSide,
    TreeMinSubtree,
)
from .questioners import (
    FollowFlow,
    FrontierBfs,
    LayeredComplete,
    PyramidK2,
    PyramidRecursive,
    SpineBlocks,
    TreeLevels,
)

QUESTIONERS = {
    "follow_flow": FollowFlow,
    "frontier_bfs": FrontierBfs,
    "spine_blocks": SpineBlocks,
    "tree_levels": TreeLevels,
    "pyramid_recursive": PyramidRecursive,
    "pyramid_k2": PyramidK2,
    "layered_complete": LayeredComplete,
}

ADVERSARIES = {
    "all_left": AllLeft,
    "contracting_longest_path": ContractingLongestPath,
    "fixed_longest_path": FixedLongestPath,
    "tree_min_subtree": TreeMinSubtree,
    "pyramid_shorter_side": PyramidShorterSide,
    "gpy_left_committing": GpyLeftCommitting,
}


def _parse(spec: str) -> tuple[str, dict[str, int]]:
    name, _, raw = spec.partition(":")
    params: dict[str, int] = {}
    if raw:
        for part in raw.split(","):
            key, _, val = part.partition("=")
            if not key or not val:
                raise StrategyError(f"malformed strategy parameter {part!r} in {spec!r}")
            try:
                params[key.strip()] = int(val)
            except ValueError:
                raise StrategyError(f"strategy parameter {part!r} must be an integer") from None
    return name.strip(), params


def make_questioner(spec: str) -> Questioner:
    name, params = _parse(spec)
    cls = QUESTIONERS.get(name)
    if cls is None:
        raise StrategyError(
            f"unknown questioner {name!r}; available: {', '.join(sorted(QUESTIONERS))}"
        )
    try:
        return cls(**params)
    except TypeError:
        raise StrategyError(f"bad parameters {params!r} for questioner {name!r}") from None


def make_adversary(spec: str) -> Adversary:
    name, params = _parse(spec)
    cls = ADVERSARIES.get(name)
    if cls is None:
        raise StrategyError(
            f"unknown adversary {name!r}; available: {', '.join(sorted(ADVERSARIES))}"
        )
    try:
        return cls(**params)
    except TypeError:
        raise StrategyError(f"bad parameters {params!r} for adversary {name!r}") from None


__all__ = [
    "QUESTIONERS",
    "ADVERSARIES",
    "make_questioner",
    "make_adversary",
    "FixedAssignmentAdversary",
    "FollowFlow",
    "FrontierBfs",
    "SpineBlocks",
    "TreeLevels",
    "PyramidRecursive",
    "PyramidK2",
    "LayeredComplete",
    "AllLeft",
    "ContractingLongestPath",
    "FixedLongestPath",
    "TreeMinSubtree",
    "PyramidShorterSide",
    "GpyLeftCommitting",
]
