import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import linux_bugs, linux_records, lits, sp_table
from varprio.configspace import Configuration, PartialAssignment, contains
from varprio.errors import UnknownOption
from varprio.interactions import SuspiciousSelection
from varprio.ranking import (
    additional_prioritize, copro_prioritize, prioritize, random_prioritize, sp_prioritize, suspiciousness,
)
from varprio.varfront import presence_blocks


def sel(text):
    return SuspiciousSelection(lits(text), "v", "e", 2)


def rows(ranked):
    return [r.config.id + 1 for r in ranked]


def test_linux_scores_per_row():
    # hand count of the five selections per SP-table row (1-based):
    # row 4 FTTTF: {OF_IRQ=F,TWL=T}; row 5 TTFTT: {SPARC=T,TWL=T};
    # row 6 TTTTT: both SPARC selections; row 7 FTTTT: those two plus {OF_IRQ=F,TWL=T}
    _, _, sels = linux_records()
    assert [suspiciousness(c, sels) for c in sp_table()] == [0, 0, 0, 1, 1, 2, 3]


def test_linux_copro_order():
    _, _, sels = linux_records()
    ranked = copro_prioritize(sp_table(), sels)
    assert rows(ranked) == [7, 6, 4, 5, 1, 2, 3]
    assert [r.score for r in ranked] == [3, 2, 1, 1, 0, 0, 0]
    assert [r.rank for r in ranked] == list(range(1, 8))


def test_reference_rank3_values_score_two():
    # the printed rank-3 row is not among the SP table's rows but scores 2
    _, _, sels = linux_records()
    c = Configuration.from_mapping(
        {"OF_IRQ": True, "IRQ_DOMAIN": False, "OF_DEVICE": True, "TWL4030_CORE": False, "SPARC": True}
    )
    assert suspiciousness(c, sels) == 2
    assert c.values not in {r.values for r in sp_table()}


def test_rank1_contains_both_bugs():
    _, _, sels = linux_records()
    top = copro_prioritize(sp_table(), sels)[0].config
    assert all(contains(top, p) for p in linux_bugs().bugs.values())


def test_copro_trivial_cases():
    configs = [Configuration(("A",), (True,), 0), Configuration(("A",), (False,), 1)]
    assert [(r.config.id, r.score) for r in copro_prioritize(configs, [])] == [(0, 0), (1, 0)]
    assert [r.score for r in copro_prioritize(configs, [sel("A=T")])] == [1, 0]
    assert rows(copro_prioritize(configs[::-1], [sel("A=T")])) == [1, 2]
    with pytest.raises(UnknownOption):
        copro_prioritize(configs, [sel("Z=T")])


def test_additional_hand_example():
    opts = ("A", "B")
    configs = [Configuration(opts, (True, False), 0), Configuration(opts, (False, True), 1),
               Configuration(opts, (True, True), 2)]
    ranked = additional_prioritize(configs, [sel("A=T"), sel("B=T")])
    assert rows(ranked) == [3, 1, 2]
    assert [r.score for r in ranked] == [2, 0, 0]


def test_additional_trivial_cases():
    configs = [Configuration(("A",), (v,), i) for i, v in enumerate((False, True, False))]
    assert rows(additional_prioritize(configs, [])) == [1, 2, 3]
    same = [Configuration(("A",), (True,), i) for i in range(3)]
    assert rows(additional_prioritize(same, [sel("A=T")])) == [1, 2, 3]


def test_additional_falls_back_to_raw_score():
    _, _, sels = linux_records()
    ranked = additional_prioritize(sp_table(), sels)
    # row 7 covers three selections; no row covers the IRQ_DOMAIN=F pair
    assert rows(ranked) == [7, 6, 4, 5, 1, 2, 3]
    assert [r.score for r in ranked] == [3, 0, 0, 0, 0, 0, 0]


def test_sp_first_two_rows_with_blocks():
    records, _, _ = linux_records()
    ranked = sp_prioritize(sp_table(), presence_blocks(records))
    assert rows(ranked)[:2] == [1, 2]
    assert ranked[0].config.render() == "TTTTF"
    assert ranked[1].config.render() == "FFFFT"
    assert ranked[1].score == 5


def test_sp_counts_options_without_blocks():
    ranked = sp_prioritize(sp_table())
    assert rows(ranked)[0] == 6  # five enabled options


def test_sp_single_and_empty():
    c = Configuration(("A",), (True,))
    assert [r.config for r in sp_prioritize([c])] == [c]
    assert sp_prioritize([]) == []


def test_sp_uses_minimum_distance_to_all_selected():
    opts = ("A", "B", "C", "D")
    cs = [Configuration(opts, v, i) for i, v in enumerate([
        (True, True, True, True), (False, False, False, False), (True, True, False, False), (False, False, True, True),
    ])]
    # after TTTT and FFFF every remaining row is at distance 2 from both: input order decides
    assert rows(sp_prioritize(cs)) == [1, 2, 3, 4]


def test_random_permutation_and_determinism():
    configs = sp_table()
    a = random_prioritize(configs, 7)
    assert sorted(r.config.id for r in a) == list(range(7))
    assert a == random_prioritize(configs, 7)


def test_random_reaches_every_permutation():
    configs = [Configuration(("A",), (True,), i) for i in range(3)]
    seen = {tuple(r.config.id for r in random_prioritize(configs, s)) for s in range(200)}
    assert seen == set(itertools.permutations(range(3)))


def test_prioritize_dispatch():
    with pytest.raises(ValueError):
        prioritize("nope", [])


OPTS = ("A", "B", "C")
configs_st = st.lists(st.tuples(*[st.booleans()] * 3), min_size=1, max_size=8).map(
    lambda vs: [Configuration(OPTS, v, i) for i, v in enumerate(vs)]
)
sels_st = st.lists(
    st.dictionaries(st.sampled_from(OPTS), st.booleans(), min_size=1, max_size=2).map(
        lambda d: SuspiciousSelection(PartialAssignment(d), "v", "e", 1)
    ),
    max_size=6,
)


@given(configs_st, sels_st)
def test_copro_properties(configs, sels):
    ranked = copro_prioritize(configs, sels)
    assert sorted(r.config.id for r in ranked) == [c.id for c in configs]
    scores = [r.score for r in ranked]
    assert scores == sorted(scores, reverse=True)
    for r in ranked:
        assert r.score == sum(1 for s in sels if all(r.config.assignment[o] == v for o, v in s.literals))
    # stable: equal scores keep input order
    for a, b in zip(ranked, ranked[1:]):
        if a.score == b.score:
            assert a.config.id < b.config.id


@given(configs_st, sels_st)
def test_additional_is_a_permutation_covering_greedily(configs, sels):
    ranked = additional_prioritize(configs, sels)
    assert sorted(r.config.id for r in ranked) == [c.id for c in configs]
    assert sum(r.score for r in ranked) == sum(
        1 for s in sels if any(contains(c, s.literals) for c in configs)
    )
