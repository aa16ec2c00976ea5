import random

from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import analyze, lits, linux_records, selection_set
from varprio import conditions as cond
from varprio.conditions import TRUE, Atom
from varprio.facts import CORE, build_tables
from varprio.interactions import (
    RULES, RULES_BY_NUMBER, Interaction, detect_interactions, detect_suspicious_selections,
)
from varprio.oracle import generate_rule_shaped
from varprio.varfront import GLOBAL, OperationRecord, ProgramEntity

X = ProgramEntity(GLOBAL, "x")
A, B = Atom("A"), Atom("B")


def rec(op, pc, null=False, entity=X):
    return OperationRecord(op, entity, pc, ("t", 0), null)


def rendered(sels):
    return [s.render() for s in sels]


def test_linux_assign_use_interaction():
    _, tables, _ = linux_records()
    found = detect_interactions(tables)
    ops = ProgramEntity("twl_probe", "ops")
    assert Interaction("assign-use", ops, ("OF_IRQ", True), ("TWL4030_CORE", True)) in found


def test_empty_tables():
    t = build_tables([], [])
    assert detect_interactions(t) == []
    assert detect_suspicious_selections(t) == []


def test_two_file_declare_declare():
    _, tables, sels = analyze("twofile")
    dd = [i for i in detect_interactions(tables) if i.kind == "declare-declare"]
    assert dd == [Interaction("declare-declare", ProgramEntity(GLOBAL, "shared"), ("A", True), ("B", True))]
    assert rendered(sels) == ["1\tDeclaration duplication\tGLOBAL.shared\tA=T,B=T"]


def test_same_record_on_both_sides_is_not_an_interaction():
    t = build_tables([rec("declare", cond.conj(A, B))], ["A", "B"])
    assert detect_interactions(t) == []


def test_linux_five_selections():
    _, _, sels = linux_records()
    assert selection_set(sels) == {
        lits("OF_IRQ=F, TWL4030_CORE=T"), lits("SPARC=T, TWL4030_CORE=T"), lits("SPARC=T, OF_DEVICE=T"),
        lits("IRQ_DOMAIN=F, OF_IRQ=T"), lits("IRQ_DOMAIN=F, TWL4030_CORE=T"),
    }
    assert [s.rule for s in sels] == sorted(s.rule for s in sels)


def test_merged_selection_keeps_all_entities():
    _, _, sels = linux_records()
    merged = [s for s in sels if s.literals == lits("IRQ_DOMAIN=F, TWL4030_CORE=T")]
    assert len(merged) == 1
    assert [str(e) for e in merged[0].entities] == ["GLOBAL.irq_domain_add", "GLOBAL.irq_domain_simple_ops"]
    assert str(merged[0].entity) == "GLOBAL.irq_domain_add"


def test_core_declaration_suppresses_use_without_declaration():
    records = [rec("declare", A), rec("use", TRUE), rec("declare", TRUE)]
    # only the duplicate declaration under A=T remains
    assert rendered(detect_suspicious_selections(build_tables(records, ["A"]))) == [
        "1\tDeclaration duplication\tGLOBAL.x\tA=T"
    ]
    # without the core declaration the conditional declaration is suspicious
    sels = detect_suspicious_selections(build_tables(records[:2], ["A"]))
    assert rendered(sels) == ["2\tUse without declaration\tGLOBAL.x\tA=F"]


def test_memory_leak_fixture():
    _, _, sels = analyze("memleak")
    assert rendered(sels) == [
        "7\tDestruction without definition\trun.buf\tA=F,B=T",
        "8\tMemory leak\trun.buf\tA=T,B=F",
    ]


def test_rule5_uses_declare_assign():
    sels = detect_suspicious_selections(build_tables([rec("declare", A), rec("assign", B)], ["A", "B"]))
    assert "5\tAssignment without declaration\tGLOBAL.x\tA=F,B=T" in rendered(sels)
    assert RULES_BY_NUMBER[5].left == "alpha" and RULES_BY_NUMBER[5].right == "beta"


def test_intra_option_collapse():
    sels = detect_suspicious_selections(build_tables([rec("declare", A), rec("use", cond.neg(A))], ["A"]))
    assert rendered(sels) == ["2\tUse without declaration\tGLOBAL.x\tA=F"]


def test_rule10_is_pure_intersection():
    sels = detect_suspicious_selections(build_tables([rec("destruct", A), rec("use", B)], ["A", "B"]), rules=[10])
    assert rendered(sels) == ["10\tUse after destruction\tGLOBAL.x\tA=T,B=T"]


def test_null_only_assignment_does_not_defuse_use_without_assignment():
    records = [rec("declare", TRUE), rec("assign", TRUE, null=True), rec("assign", A), rec("use", B)]
    sels = detect_suspicious_selections(build_tables(records, ["A", "B"]), rules=[6])
    assert rendered(sels) == ["6\tUse without assignment\tGLOBAL.x\tA=F,B=T"]
    records[1] = rec("assign", TRUE)
    assert detect_suspicious_selections(build_tables(records, ["A", "B"]), rules=[6]) == []


def test_core_side_is_never_flipped():
    # declared under A, used in core: rule 3 would need to flip the core use
    records = [rec("declare", A), rec("use", TRUE)]
    sels = detect_suspicious_selections(build_tables(records, ["A"]), rules=range(1, 11))
    assert rendered(sels) == ["2\tUse without declaration\tGLOBAL.x\tA=F"]


def test_unused_rule_is_opt_in():
    records = [rec("declare", TRUE), rec("use", A)]
    assert detect_suspicious_selections(build_tables(records, ["A"])) == []
    sels = detect_suspicious_selections(build_tables(records, ["A"]), rules=[3])
    assert rendered(sels) == ["3\tUnused variables/functions\tGLOBAL.x\tA=F"]


def test_three_feature_chain_implicates_all_options():
    _, _, sels = analyze("chain")
    assert rendered(sels) == [
        "6\tUse without assignment\tGLOBAL.x\tA=F,B=T",
        "6\tUse without assignment\tGLOBAL.y\tB=F,C=T",
    ]
    assert set().union(*(s.literals.options for s in sels)) == {"A", "B", "C"}


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_emissions_are_consistent_and_justified(seed):
    options, records = generate_rule_shaped(random.Random(seed), max_options=5)
    tables = build_tables(records, options)
    sels = detect_suspicious_selections(tables, rules=range(1, 11))
    assert sels == sorted(sels, key=lambda s: s.sort_key())
    for s in sels:
        assert cond.is_satisfiable(s.literals.formula())
        rule = RULES_BY_NUMBER[s.rule]
        # some pair of selections compatible with the literals shares the entity
        candidates = [sel for sel in tables.selections() if sel is CORE or sel in s.literals
                      or (sel[0], not sel[1]) in s.literals]
        assert any(
            s.entity in tables.get(rule.left, s1) & tables.get(rule.right, s2)
            for s1 in candidates for s2 in candidates if s1 != s2
        )
    keys = [(s.literals, s.violation) for s in sels]
    assert len(keys) == len(set(keys))


def test_rule_table_shape():
    assert [r.number for r in RULES] == list(range(1, 11))
    assert len({r.violation for r in RULES}) == 10
