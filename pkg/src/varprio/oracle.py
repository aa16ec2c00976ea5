"""Brute-force reference semantics for the violation kinds.

``check_variant`` evaluates each record's presence condition under one
configuration and inspects the resulting variant directly, without any
reasoning over presence conditions.  It is meant for tests and small
fixtures.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import conditions as cond
from .configspace import Configuration
from .varfront import ASSIGN, DECLARE, DESTRUCT, GLOBAL, USE, VARIABLE, OperationRecord, ProgramEntity

USE_WITHOUT_DECLARATION = "Use without declaration"
DESTRUCTION_WITHOUT_DECLARATION = "Destruction without declaration"
ASSIGNMENT_WITHOUT_DECLARATION = "Assignment without declaration"
USE_WITHOUT_ASSIGNMENT = "Use without assignment"
DESTRUCTION_WITHOUT_DEFINITION = "Destruction without definition"
MEMORY_LEAK = "Memory leak"
DECLARATION_DUPLICATION = "Declaration duplication"
DESTRUCTION_DUPLICATION = "Destruction duplication"
UNUSED = "Unused variables/functions"
USE_AFTER_DESTRUCTION = "Use after destruction"


@dataclass(frozen=True)
class VariantFacts:
    declared: dict  # entity -> number of active declare records
    assigned: frozenset
    assigned_non_null: frozenset
    used: frozenset
    destructed: dict  # entity -> number of active destruct records
    destructible: frozenset  # entities with any destruct record at all


def variant_facts(records, c: Configuration) -> VariantFacts:
    env = c.assignment
    declared, destructed = {}, {}
    assigned, assigned_nn, used, destructible = set(), set(), set(), set()
    for r in records:
        if r.op == DESTRUCT:
            destructible.add(r.entity)
        if not cond.evaluate(r.pc, env):
            continue
        if r.op == DECLARE:
            declared[r.entity] = declared.get(r.entity, 0) + 1
        elif r.op == ASSIGN:
            assigned.add(r.entity)
            if not r.is_null_assign:
                assigned_nn.add(r.entity)
        elif r.op == USE:
            used.add(r.entity)
        else:
            destructed[r.entity] = destructed.get(r.entity, 0) + 1
    return VariantFacts(declared, frozenset(assigned), frozenset(assigned_nn), frozenset(used),
                        destructed, frozenset(destructible))


def check_variant(records, c: Configuration) -> list:
    """Sorted (violation, entity) pairs present in the variant for ``c``."""
    f = variant_facts(records, c)
    entities = {r.entity for r in records}
    flags = set()
    for e in entities:
        declared = e in f.declared
        used = e in f.used
        destructed = e in f.destructed
        assigned = e in f.assigned
        if used and not declared:
            flags.add((USE_WITHOUT_DECLARATION, e))
        if destructed and not declared:
            flags.add((DESTRUCTION_WITHOUT_DECLARATION, e))
        if assigned and not declared:
            flags.add((ASSIGNMENT_WITHOUT_DECLARATION, e))
        if e.kind == VARIABLE and used and declared and e not in f.assigned_non_null:
            flags.add((USE_WITHOUT_ASSIGNMENT, e))
        if destructed and not assigned:
            flags.add((DESTRUCTION_WITHOUT_DEFINITION, e))
        if assigned and not destructed and e in f.destructible:
            flags.add((MEMORY_LEAK, e))
        if f.declared.get(e, 0) >= 2:
            flags.add((DECLARATION_DUPLICATION, e))
        if f.destructed.get(e, 0) >= 2:
            flags.add((DESTRUCTION_DUPLICATION, e))
        if declared and not used:
            flags.add((UNUSED, e))
        if used and destructed:
            flags.add((USE_AFTER_DESTRUCTION, e))
    return sorted(flags)


def generate_rule_shaped(rng: random.Random, max_options=8, max_entities=4):
    """Random records where every entity has each operation under a single-literal guard.

    Guards of one entity's records are pairwise distinct literals, at most
    one record per entity is unguarded, and every entity has at least one
    guarded non-null assignment.  Returns (options, records).
    """
    n_opts = rng.randint(2, max_options)
    options = [f"O{i}" for i in range(n_opts)]
    literals = [(o, v) for o in options for v in (True, False)]
    records = []
    line = 0
    for k in range(rng.randint(1, max_entities)):
        entity = ProgramEntity(GLOBAL, f"v{k}", VARIABLE)
        pool = rng.sample(literals, len(literals))
        ops = [DECLARE, ASSIGN, USE, DESTRUCT]
        ops += [rng.choice(ops) for _ in range(rng.randint(0, min(4, len(pool) - 4)))]
        rng.shuffle(ops)
        core_slot = rng.randrange(len(ops) + 1)  # == len(ops): no core record
        plan = []
        for i, op in enumerate(ops):
            guard = None if i == core_slot else pool.pop()
            plan.append((op, guard))
        # make sure each kind keeps a guarded record
        for op in (DECLARE, ASSIGN, USE, DESTRUCT):
            if not any(o == op and g is not None for o, g in plan):
                plan.append((op, pool.pop()))
        nn_guarded = [i for i, (o, g) in enumerate(plan) if o == ASSIGN and g is not None]
        keep_nn = rng.choice(nn_guarded)
        for i, (op, guard) in enumerate(plan):
            pc = cond.TRUE if guard is None else cond.literal(*guard)
            null = op == ASSIGN and i != keep_nn and rng.random() < 0.3
            line += 1
            records.append(OperationRecord(op, entity, pc, ("<generated>", line), null))
    return options, records
