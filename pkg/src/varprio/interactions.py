"""Feature interactions and suspicious selections.

An interaction is a program entity shared by two selections through a
pair of operation sets.  Ten rules turn interactions into suspicious
selections: partial assignments under which one side's operation is
present and (for most rules) the other side's operation is absent.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from . import conditions as cond
from .configspace import PartialAssignment
from .facts import ALPHA, BETA, BETA_NON_NULL, CORE, DELTA, GAMMA, SelectionTables
from .varfront import ASSIGN, DECLARE, DESTRUCT, USE


class InteractionKind(NamedTuple):
    name: str
    left: str
    right: str
    symmetric: bool


INTERACTION_KINDS = (
    InteractionKind("declare-declare", ALPHA, ALPHA, True),
    InteractionKind("declare-assign", ALPHA, BETA, False),
    InteractionKind("declare-use", ALPHA, GAMMA, False),
    InteractionKind("declare-destruct", ALPHA, DELTA, False),
    InteractionKind("assign-assign", BETA, BETA, True),
    InteractionKind("assign-use", BETA, GAMMA, False),
    InteractionKind("assign-destruct", BETA, DELTA, False),
    InteractionKind("use-destruct", GAMMA, DELTA, False),
    InteractionKind("destruct-destruct", DELTA, DELTA, True),
)


@dataclass(frozen=True)
class Rule:
    number: int
    kind: str
    left: str
    right: str
    flip: Optional[str]  # "left", "right" or None
    violation: str

    @property
    def symmetric(self):
        return self.left == self.right


RULES = (
    Rule(1, "declare-declare", ALPHA, ALPHA, None, "Declaration duplication"),
    Rule(2, "declare-use", ALPHA, GAMMA, "left", "Use without declaration"),
    Rule(3, "declare-use", ALPHA, GAMMA, "right", "Unused variables/functions"),
    Rule(4, "declare-destruct", ALPHA, DELTA, "left", "Destruction without declaration"),
    Rule(5, "declare-assign", ALPHA, BETA, "left", "Assignment without declaration"),
    Rule(6, "assign-use", BETA_NON_NULL, GAMMA, "left", "Use without assignment"),
    Rule(7, "assign-destruct", BETA, DELTA, "left", "Destruction without definition"),
    Rule(8, "assign-destruct", BETA, DELTA, "right", "Memory leak"),
    Rule(9, "destruct-destruct", DELTA, DELTA, None, "Destruction duplication"),
    Rule(10, "use-destruct", DELTA, GAMMA, None, "Use after destruction"),
)
RULES_BY_NUMBER = {r.number: r for r in RULES}
VIOLATIONS = tuple(r.violation for r in RULES)
# Rule 3 flags every conditionally used global as potentially unused; it is
# available on request but not part of the default rule set.
DEFAULT_RULES = tuple(r.number for r in RULES if r.number != 3)

_MISSING_OP = {ALPHA: DECLARE, BETA: ASSIGN, BETA_NON_NULL: ASSIGN, GAMMA: USE, DELTA: DESTRUCT}


class Interaction(NamedTuple):
    kind: str
    entity: object
    first: object  # selection (option, value) or CORE
    second: object


@dataclass(frozen=True)
class SuspiciousSelection:
    literals: PartialAssignment
    violation: str
    entity: object
    rule: int
    entities: tuple = field(default=(), compare=False)

    def sort_key(self):
        return (self.rule, self.entity, self.literals.sorted())

    def render(self) -> str:
        return f"{self.rule}\t{self.violation}\t{self.entity}\t{self.literals.render()}"


def _distinct_pair(w1, w2):
    return any(a is not b for a in w1 for b in w2)


def detect_interactions(tables: SelectionTables) -> list:
    """Every (kind, entity, selection, selection) with a shared entity.

    Symmetric kinds are reported once per unordered pair of selections.
    Pairs of identical selections, core-core pairs and pairs whose only
    witness on both sides is one and the same record are left out.
    """
    sels = tables.selections()
    out = []
    for kind in INTERACTION_KINDS:
        if kind.symmetric:
            pairs = itertools.combinations(sels, 2)
        else:
            pairs = ((a, b) for a in sels for b in sels if a != b)
        for s1, s2 in pairs:
            if s1 is CORE and s2 is CORE:
                continue
            shared = tables.get(kind.left, s1) & tables.get(kind.right, s2)
            for e in sorted(shared):
                w1 = tables.witness(kind.left, s1, e)
                w2 = tables.witness(kind.right, s2, e)
                if _distinct_pair(w1, w2):
                    out.append(Interaction(kind.name, e, s1, s2))
    return out


def _literals(rule, s1, s2):
    """Suspicious literal set for a rule on (s1, s2), or None if none applies."""
    lits = []
    for side, sel in (("left", s1), ("right", s2)):
        if sel is CORE:
            if rule.flip == side:
                return None
            continue
        o, v = sel
        lits.append((o, (not v) if rule.flip == side else v))
    if len({o for o, _ in lits}) != len(set(lits)):
        return None  # the same option with both values
    return PartialAssignment(lits)


def _jointly_present(p, ws1, ws2=None):
    if ws2 is None:
        return any(cond.is_satisfiable(cond.conj(p, w.pc)) for w in ws1)
    return any(
        a is not b and cond.is_satisfiable(cond.conj(p, a.pc, b.pc)) for a in ws1 for b in ws2
    )


def _forced(tables, entity, op, p, non_null):
    """Some record of ``op`` on ``entity`` is present whenever ``p`` holds."""
    for r in tables.records:
        if r.entity != entity or r.op != op or (non_null and r.is_null_assign):
            continue
        if not cond.is_satisfiable(cond.conj(p, cond.neg(r.pc))):
            return True
    return False


def _apply(rule, tables, s1, s2, entity):
    p_lits = _literals(rule, s1, s2)
    if p_lits is None:
        return None
    p = p_lits.formula()
    w1 = tables.witness(rule.left, s1, entity)
    w2 = tables.witness(rule.right, s2, entity)
    if rule.flip is None:
        return p_lits if _jointly_present(p, w1, w2) else None
    present, missing, missing_set = (w2, w1, rule.left) if rule.flip == "left" else (w1, w2, rule.right)
    # the flipped side's operations must be absent under the selection ...
    if any(cond.is_satisfiable(cond.conj(p, w.pc)) for w in missing):
        return None
    # ... the other side's operation must be possible ...
    if not _jointly_present(p, present):
        return None
    # ... and no other record may supply the missing operation for sure
    if _forced(tables, entity, _MISSING_OP[missing_set], p, missing_set == BETA_NON_NULL):
        return None
    return p_lits


def detect_suspicious_selections(tables: SelectionTables, rules=DEFAULT_RULES) -> list:
    """Suspicious selections, merged per (literals, violation), sorted by (rule, entity, literals)."""
    merged = {}
    sels = tables.selections()
    for number in sorted(rules):
        rule = RULES_BY_NUMBER[number]
        if rule.symmetric:
            pairs = itertools.combinations(sels, 2)
        else:
            pairs = ((a, b) for a in sels for b in sels if a != b)
        for s1, s2 in pairs:
            if s1 is CORE and s2 is CORE:
                continue
            shared = tables.get(rule.left, s1) & tables.get(rule.right, s2)
            for e in sorted(shared):
                p = _apply(rule, tables, s1, s2, e)
                if p is None:
                    continue
                key = (p, rule.violation)
                if key in merged:
                    merged[key][1].add(e)
                else:
                    merged[key] = (rule.number, {e})
    out = []
    for (p, violation), (number, entities) in merged.items():
        ents = tuple(sorted(entities))
        out.append(SuspiciousSelection(p, violation, ents[0], number, ents))
    out.sort(key=SuspiciousSelection.sort_key)
    return out
