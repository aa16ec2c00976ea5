from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import linux_records
from varprio import conditions as cond
from varprio.conditions import TRUE, Atom
from varprio.facts import ALPHA, BETA, BETA_NON_NULL, CORE, DELTA, GAMMA, build_tables, collect_core, collect_program_entities
from varprio.varfront import GLOBAL, OperationRecord, ProgramEntity, SourceUnit, parse_unit


def names(s):
    return {str(e) for e in s}


def test_linux_of_irq_true():
    records, _, _ = linux_records()
    a, b, g, d = collect_program_entities(records, "OF_IRQ", True)
    assert (names(a), names(b), names(g), names(d)) == (
        set(), {"twl_probe.ops"}, {"GLOBAL.irq_domain_simple_ops"}, set(),
    )


def test_linux_sparc_false():
    records, _, _ = linux_records()
    a, _, _, _ = collect_program_entities(records, "SPARC", False)
    assert names(a) == {"GLOBAL.of_platform_populate", "of_platform_populate.node", "of_platform_populate.t"}


def test_unmentioned_option_is_empty():
    records, _, _ = linux_records()
    assert collect_program_entities(records, "NOT_AN_OPTION", True) == (frozenset(),) * 4


def test_linux_core_is_empty():
    records, _, _ = linux_records()
    assert collect_core(records) == (frozenset(),) * 4
    assert all(cond.atoms(r.pc) for r in records)


def test_top_level_declaration_is_core():
    A, _, _, _ = collect_core(parse_unit(SourceUnit("g.c", "int g;\n")))
    assert A == {ProgramEntity(GLOBAL, "g")}


def test_tautological_pc_is_core():
    e = ProgramEntity(GLOBAL, "x")
    pc = cond.disj(Atom("A"), cond.neg(Atom("A")))
    r = OperationRecord("declare", e, pc, ("f", 1))
    t = build_tables([r], ["A"])
    assert t.get(ALPHA, CORE) == {e}
    assert t.alpha("A", True) == set() and t.alpha("A", False) == set()


def test_unsatisfiable_pc_contributes_nothing():
    e = ProgramEntity(GLOBAL, "x")
    r = OperationRecord("use", e, cond.conj(Atom("A"), cond.neg(Atom("A"))), ("f", 1))
    t = build_tables([r], ["A"])
    assert all(not s for d in t.sets.values() for s in d.values())


def test_beta_non_null_excludes_null_assignments():
    records, tables, _ = linux_records()
    assert names(tables.beta("TWL4030_CORE", True)) >= {"twl_probe.ops"}
    nulls = [w for w in tables.witness(BETA, ("TWL4030_CORE", True), ProgramEntity("twl_probe", "ops")) if w.is_null_assign]
    assert nulls
    for w in tables.witness(BETA_NON_NULL, ("TWL4030_CORE", True), ProgramEntity("twl_probe", "ops")):
        assert not w.is_null_assign


def test_disjunctive_pc_places_entity_under_each_alternative():
    e = ProgramEntity(GLOBAL, "f", "function")
    r = OperationRecord("declare", e, cond.parse_formula("R || W"), ("f", 1))
    t = build_tables([r], ["R", "W"])
    assert t.alpha("R", True) == {e} and t.alpha("W", True) == {e}
    assert not cond.entails_literal(r.pc, "R", True)  # deliberately broader than entailment


# -- properties on random conjunctive records ---------------------------------

OPTS = ("A", "B", "C")
ENTS = [ProgramEntity(GLOBAL, n) for n in ("x", "y", "z")]

conjunctive_pcs = st.lists(st.tuples(st.sampled_from(OPTS), st.booleans()), max_size=3).map(
    lambda lits: cond.conj(*(cond.literal(o, v) for o, v in lits))
)
record_lists = st.lists(
    st.builds(
        lambda op, e, pc, null: OperationRecord(op, e, pc, ("g", 1), null and op == "assign"),
        st.sampled_from(["declare", "assign", "use", "destruct"]),
        st.sampled_from(ENTS), conjunctive_pcs, st.booleans(),
    ),
    max_size=12,
)
OP = {ALPHA: "declare", BETA: "assign", GAMMA: "use", DELTA: "destruct"}


@settings(max_examples=150, deadline=None)
@given(record_lists)
def test_membership_soundness_and_completeness(records):
    t = build_tables(records, OPTS)
    for name, op in OP.items():
        for o in OPTS:
            for v in (True, False):
                expected = {r.entity for r in records if r.op == op and not cond.is_valid(r.pc)
                            and cond.entails_literal(r.pc, o, v)}
                assert t.get(name, (o, v)) == expected
        core = {r.entity for r in records if r.op == op and cond.is_valid(r.pc)}
        assert t.get(name, CORE) == core


@settings(max_examples=150, deadline=None)
@given(record_lists)
def test_opposite_values_overlap_only_with_distinct_witnesses(records):
    t = build_tables(records, OPTS)
    for name in OP:
        for o in OPTS:
            for e in t.get(name, (o, True)) & t.get(name, (o, False)):
                wt = set(map(id, t.witness(name, (o, True), e)))
                wf = set(map(id, t.witness(name, (o, False), e)))
                assert not (wt & wf)


def test_pc_true_records_are_not_in_option_sets():
    e = ProgramEntity(GLOBAL, "x")
    t = build_tables([OperationRecord("use", e, TRUE, ("f", 1))], ["A"])
    assert t.gamma("A", True) == set() and t.get(GAMMA, CORE) == {e}
