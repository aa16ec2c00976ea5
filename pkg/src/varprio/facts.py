"""Selection functions over extracted operation records.

For each (option, value) selection, alpha/beta/gamma/delta hold the
entities declared/assigned/used/destructed by code whose presence
condition requires that selection.  The core sets hold entities operated
on by code that is always present.

Membership: entity e is in set(o, v) when some record of the matching
operation has a satisfiable, non-tautological pc and (o, v) occurs in a
prime implicant of that pc.  For conjunctions of literals (the usual
shape of nested ``#ifdef`` blocks) this is exactly pc-entails-(o = v);
for disjunctions such as ``defined(R) || defined(W)`` it places the
entity under each alternative.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Tuple

from . import conditions as cond
from .varfront import ASSIGN, DECLARE, DESTRUCT, USE, OperationRecord

CORE = None  # pseudo-selection for always-present code

ALPHA, BETA, BETA_NON_NULL, GAMMA, DELTA = "alpha", "beta", "betaNonNull", "gamma", "delta"
SET_NAMES = (ALPHA, BETA, BETA_NON_NULL, GAMMA, DELTA)
_OP_OF_SET = {ALPHA: DECLARE, BETA: ASSIGN, BETA_NON_NULL: ASSIGN, GAMMA: USE, DELTA: DESTRUCT}

Selection = Optional[Tuple[str, bool]]


def record_in_set(record: OperationRecord, set_name: str) -> bool:
    if record.op != _OP_OF_SET[set_name]:
        return False
    return not (set_name == BETA_NON_NULL and record.is_null_assign)


@functools.lru_cache(maxsize=16384)
def pc_selections(pc) -> frozenset:
    """Selections a record with presence condition ``pc`` contributes to.

    Returns ``frozenset({CORE})`` for tautologies and the empty set for
    unsatisfiable conditions.
    """
    if not cond.is_satisfiable(pc):
        return frozenset()
    if cond.is_valid(pc):
        return frozenset([CORE])
    return frozenset(cond.implicant_literals(pc))


@dataclass(frozen=True)
class SelectionTables:
    """alpha/beta/betaNonNull/gamma/delta per selection, with witnesses.

    ``sets[name][sel]`` is a frozenset of entities; ``sel`` is an
    (option, value) pair or CORE.  ``witnesses[(name, sel, entity)]`` lists
    the records justifying that membership, in source order.
    """

    options: tuple
    sets: dict
    witnesses: dict = field(compare=False, repr=False)
    records: tuple = field(compare=False, repr=False)

    def get(self, set_name: str, sel: Selection) -> frozenset:
        return self.sets[set_name].get(sel, frozenset())

    def alpha(self, o, v):
        return self.get(ALPHA, (o, v))

    def beta(self, o, v):
        return self.get(BETA, (o, v))

    def beta_non_null(self, o, v):
        return self.get(BETA_NON_NULL, (o, v))

    def gamma(self, o, v):
        return self.get(GAMMA, (o, v))

    def delta(self, o, v):
        return self.get(DELTA, (o, v))

    @property
    def core(self):
        return tuple(self.get(n, CORE) for n in (ALPHA, BETA, GAMMA, DELTA))

    def selections(self) -> list:
        """All (option, value) selections, T before F per option, then CORE."""
        sels = [(o, v) for o in self.options for v in (True, False)]
        return sels + [CORE]

    def witness(self, set_name, sel, entity) -> tuple:
        return self.witnesses.get((set_name, sel, entity), ())

    def entity_records(self, entity, op=None) -> tuple:
        return tuple(r for r in self.records if r.entity == entity and (op is None or r.op == op))


def build_tables(records: Iterable[OperationRecord], options=None) -> SelectionTables:
    records = tuple(records)
    if options is None:
        names = set()
        for r in records:
            names |= cond.atoms(r.pc)
        options = sorted(names)
    sets = {n: {} for n in SET_NAMES}
    witnesses = {}
    for r in records:
        for sel in pc_selections(r.pc):
            for name in SET_NAMES:
                if record_in_set(r, name):
                    sets[name].setdefault(sel, set()).add(r.entity)
                    witnesses.setdefault((name, sel, r.entity), []).append(r)
    frozen = {n: {sel: frozenset(es) for sel, es in d.items()} for n, d in sets.items()}
    return SelectionTables(
        tuple(options), frozen, {k: tuple(v) for k, v in witnesses.items()}, records
    )


def collect_program_entities(records, o: str, v: bool):
    """(alpha, beta, gamma, delta) for the selection o = v."""
    t = build_tables(records, [o])
    return tuple(t.get(n, (o, v)) for n in (ALPHA, BETA, GAMMA, DELTA))


def collect_core(records):
    """(A, B, Gamma, Delta): entities operated on by always-present code."""
    return build_tables(records, []).core
