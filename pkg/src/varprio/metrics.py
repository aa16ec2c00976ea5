"""APFD and related statistics for a ranked list against known bugs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .configspace import PartialAssignment, contains
from .errors import NoBugs

TOP_K = (1, 3, 5, 10)


@dataclass(frozen=True)
class BugSpec:
    bugs: dict  # bug id -> PartialAssignment

    def __post_init__(self):
        object.__setattr__(self, "bugs", {k: PartialAssignment(v) for k, v in dict(self.bugs).items()})

    def __len__(self):
        return len(self.bugs)


@dataclass(frozen=True)
class EvalReport:
    n: int
    apfd: float
    cf: dict
    avg_rank: float
    top_k: dict
    undetected: tuple


def apfd(cf_values, n: int) -> float:
    """1 - sum(CF)/(n*m) + 1/(2n)."""
    m = len(cf_values)
    if m == 0:
        raise NoBugs("APFD needs at least one bug")
    return 1 - sum(cf_values) / (n * m) + 1 / (2 * n)


def first_detection(configs, assignment) -> int:
    """1-based position of the first configuration containing ``assignment``, else n+1."""
    for i, c in enumerate(configs, 1):
        if contains(c, assignment):
            return i
    return len(configs) + 1


def evaluate(ranked, bugs) -> EvalReport:
    """Evaluate a ranked list (RankedConfiguration or Configuration items)."""
    if isinstance(bugs, Mapping):
        bugs = BugSpec(bugs)
    if len(bugs) == 0:
        raise NoBugs("empty bug specification")
    configs = [getattr(r, "config", r) for r in ranked]
    if not configs:
        raise ValueError("cannot evaluate an empty ranking")
    n = len(configs)
    cf = {b: first_detection(configs, p) for b, p in bugs.bugs.items()}
    m = len(cf)
    return EvalReport(
        n=n,
        apfd=apfd(list(cf.values()), n),
        cf=cf,
        avg_rank=sum(cf.values()) / m,
        top_k={k: sum(1 for v in cf.values() if v <= min(k, n)) / m for k in TOP_K},
        undetected=tuple(b for b, v in cf.items() if v > n),
    )
