"""Configuration sampling algorithms.

All samplers enumerate the valid configuration space (T before F,
declared option order) and break ties by that order, so results are
deterministic.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field

from . import conditions as cond
from .configspace import Configuration
from .errors import EmptySpace

log = logging.getLogger(__name__)

ALGORITHMS = ("t-wise", "one-enabled", "one-disabled", "most-enabled-disabled", "statement-coverage")


@dataclass(frozen=True)
class SamplePlan:
    algorithm: str
    t: int = 2
    blocks: tuple = field(default=())

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown sampling algorithm {self.algorithm!r}")
        if self.algorithm == "t-wise" and self.t < 2:
            raise ValueError("t-wise sampling needs t >= 2")


def _renumber(configs):
    return [Configuration(c.options, c.values, i) for i, c in enumerate(configs)]


def _valid(fm, bound):
    configs = cond.valid_configurations(fm, bound)
    if not configs:
        raise EmptySpace("no configuration satisfies the feature model")
    return configs


def _one_at_a_time(fm, value):
    out = []
    for o in fm.options:
        values = tuple(value if p == o else not value for p in fm.options)
        c = Configuration(fm.options, values)
        if fm.allows(c.assignment):
            out.append(c)
        else:
            log.info("dropping invalid candidate %s (%s=%s)", c.render(), o, "T" if value else "F")
    return _renumber(out)


def sample_one_enabled(fm: cond.FeatureModel) -> list:
    return _one_at_a_time(fm, True)


def sample_one_disabled(fm: cond.FeatureModel) -> list:
    return _one_at_a_time(fm, False)


def sample_most_enabled_disabled(fm: cond.FeatureModel, bound=cond.DEFAULT_BOUND) -> list:
    valid = _valid(fm, bound)
    most = max(valid, key=lambda c: (c.enabled_count(), -c.id))
    least = min(valid, key=lambda c: (c.enabled_count(), c.id))
    return _renumber([most] if most == least else [most, least])


def _tuples(c: Configuration, t: int) -> set:
    idx = range(len(c.options))
    return {(combo, tuple(c.values[i] for i in combo)) for combo in itertools.combinations(idx, t)}


def _greedy_cover(valid, cover_sets, targets):
    chosen, uncovered = [], set(targets)
    while uncovered:
        gains = [len(s & uncovered) for s in cover_sets]
        best = max(gains)
        pick = gains.index(best)  # first maximum = lexicographic tie-break
        chosen.append(valid[pick])
        uncovered -= cover_sets[pick]
    return _renumber(chosen)


def sample_t_wise(fm: cond.FeatureModel, t: int = 2, bound=cond.DEFAULT_BOUND) -> list:
    """Greedy covering set of all satisfiable t-tuples."""
    if not 2 <= t <= len(fm.options):
        raise ValueError(f"t must be between 2 and {len(fm.options)}, got {t}")
    valid = _valid(fm, bound)
    cover_sets = [_tuples(c, t) for c in valid]
    targets = set().union(*cover_sets)  # exactly the satisfiable tuples
    return _greedy_cover(valid, cover_sets, targets)


def dead_blocks(fm: cond.FeatureModel, blocks) -> list:
    """Blocks no valid configuration can enable."""
    fmf = fm.formula()
    return [b for b in blocks if not cond.is_satisfiable(cond.conj(fmf, b))]


def sample_statement_coverage(fm: cond.FeatureModel, blocks, bound=cond.DEFAULT_BOUND) -> list:
    """Greedy set cover so every live block is enabled at least once."""
    valid = _valid(fm, bound)
    blocks = list(dict.fromkeys(blocks))
    for b in dead_blocks(fm, blocks):
        log.warning("dead block: %s", cond.to_infix(b))
    cover_sets = [frozenset(i for i, b in enumerate(blocks) if cond.evaluate(b, c.assignment)) for c in valid]
    targets = set().union(*cover_sets)
    return _greedy_cover(valid, cover_sets, targets)


def sample(plan: SamplePlan, fm: cond.FeatureModel, bound=cond.DEFAULT_BOUND) -> list:
    if plan.algorithm == "t-wise":
        return sample_t_wise(fm, plan.t, bound)
    if plan.algorithm == "one-enabled":
        return sample_one_enabled(fm)
    if plan.algorithm == "one-disabled":
        return sample_one_disabled(fm)
    if plan.algorithm == "most-enabled-disabled":
        return sample_most_enabled_disabled(fm, bound)
    return sample_statement_coverage(fm, plan.blocks, bound)
