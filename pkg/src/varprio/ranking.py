"""Configuration prioritizers: CoPro, additional, SP and random."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from . import conditions as cond
from .configspace import Configuration, contains


@dataclass(frozen=True)
class RankedConfiguration:
    config: Configuration
    score: int
    rank: int


def _rank(pairs) -> list:
    return [RankedConfiguration(c, s, i) for i, (c, s) in enumerate(pairs, 1)]


def suspiciousness(c: Configuration, sels) -> int:
    """Number of suspicious selections contained in ``c``."""
    return sum(1 for s in sels if contains(c, s.literals))


def copro_prioritize(configs: Sequence[Configuration], sels) -> list:
    scored = [(c, suspiciousness(c, sels)) for c in configs]
    # sorted() is stable, so ties keep input order
    return _rank(sorted(scored, key=lambda cs: -cs[1]))


def additional_prioritize(configs: Sequence[Configuration], sels) -> list:
    """Greedy: each pick maximizes the number of not yet covered selections.

    Once no remaining configuration adds anything new, the rest follow
    by raw score (descending), then input order, each with score 0.
    """
    covered_by = [frozenset(i for i, s in enumerate(sels) if contains(c, s.literals)) for c in configs]
    remaining = list(range(len(configs)))
    covered = set()
    out = []
    while remaining:
        gains = [(len(covered_by[i] - covered), i) for i in remaining]
        best_gain = max(g for g, _ in gains)
        if best_gain == 0:
            rest = sorted(remaining, key=lambda i: (-len(covered_by[i]), i))
            out.extend((configs[i], 0) for i in rest)
            break
        pick = next(i for g, i in gains if g == best_gain)
        out.append((configs[pick], best_gain))
        covered |= covered_by[pick]
        remaining.remove(pick)
    return _rank(out)


def _feature_vector(c: Configuration, blocks) -> tuple:
    if blocks is None:
        return c.values
    env = c.assignment
    return tuple(cond.evaluate(b, env) for b in blocks)


def sp_prioritize(configs: Sequence[Configuration], blocks=None) -> list:
    """Similarity-based prioritization.

    A configuration's features are the code blocks it enables: each entry
    of ``blocks`` is a presence condition.  Without blocks every option
    counts as one feature.  The first pick has the most features; each
    later pick maximizes the minimum Hamming distance (over feature
    vectors) to everything picked so far.  Ties keep input order.
    """
    if not configs:
        return []
    vecs = [_feature_vector(c, blocks) for c in configs]
    first = max(range(len(configs)), key=lambda i: (sum(vecs[i]), -i))
    out = [(configs[first], sum(vecs[first]))]
    mind = {i: _hamming(vecs[i], vecs[first]) for i in range(len(configs)) if i != first}
    while mind:
        pick = max(mind, key=lambda i: (mind[i], -i))
        out.append((configs[pick], mind.pop(pick)))
        for i in mind:
            mind[i] = min(mind[i], _hamming(vecs[i], vecs[pick]))
    return _rank(out)


def _hamming(a, b) -> int:
    return sum(x != y for x, y in zip(a, b))


def random_prioritize(configs: Sequence[Configuration], seed: int) -> list:
    """Uniform permutation drawn with ``random.Random(seed).shuffle``."""
    order = list(configs)
    random.Random(seed).shuffle(order)
    return _rank((c, 0) for c in order)


STRATEGIES = ("copro", "additional", "sp", "random")


def prioritize(strategy: str, configs, sels=(), seed=0, blocks=None) -> list:
    if strategy == "copro":
        return copro_prioritize(configs, sels)
    if strategy == "additional":
        return additional_prioritize(configs, sels)
    if strategy == "sp":
        return sp_prioritize(configs, blocks)
    if strategy == "random":
        return random_prioritize(configs, seed)
    raise ValueError(f"unknown strategy {strategy!r}")
