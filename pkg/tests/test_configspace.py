import pytest
from hypothesis import given
from hypothesis import strategies as st

from varprio import conditions as cond
from varprio.configspace import Configuration, PartialAssignment, contains, parse_literals, validate
from varprio.errors import UnknownOption

OPTS = ("A", "B", "C", "D")


def test_contains_linux_rank1_row():
    c = Configuration.from_mapping(
        {"OF_IRQ": False, "IRQ_DOMAIN": True, "OF_DEVICE": True, "TWL4030_CORE": True, "SPARC": True}
    )
    assert contains(c, parse_literals("OF_IRQ=F, TWL4030_CORE=T"))


def test_contains_trivial_cases():
    c = Configuration(("A",), (False,))
    assert contains(c, PartialAssignment())
    assert not contains(c, parse_literals("A=T"))
    with pytest.raises(UnknownOption):
        contains(c, parse_literals("Z=T"))


def test_partial_assignment_rejects_contradictions():
    with pytest.raises(ValueError):
        PartialAssignment([("A", True), ("A", False)])
    assert PartialAssignment([("A", True), ("A", True)]) == parse_literals("A=T")


def test_partial_assignment_rendering():
    p = parse_literals("B=F A=T")
    assert p.render() == "A=T,B=F"
    assert cond.to_infix(p.formula()) == "A && !B"


@pytest.mark.parametrize("text", ["A", "A=X", "=T"])
def test_parse_literals_errors(text):
    with pytest.raises(ValueError):
        parse_literals(text)


def test_validate_examples():
    a, b = cond.Atom("A"), cond.Atom("B")
    assert validate(Configuration(("A", "B"), (True, False)), cond.FeatureModel(("A", "B")))
    assert not validate(Configuration(("A", "B"), (True, False)), cond.FeatureModel(("A", "B"), (cond.implies(a, b),)))
    fm = cond.FeatureModel(("A", "B"), (cond.disj(a, b), cond.neg(cond.conj(a, b))))
    assert validate(Configuration(("A", "B"), (True, False)), fm)


def test_validate_option_mismatch():
    with pytest.raises(UnknownOption):
        validate(Configuration(("A",), (True,)), cond.FeatureModel(("A", "B")))


def test_configuration_accessors():
    c = Configuration(("A", "B"), (1, 0), id=3)
    assert c["A"] is True and c.enabled_count() == 1
    assert repr(c) == "Configuration#3(TF)"
    with pytest.raises(UnknownOption):
        c["Z"]


configs = st.tuples(*[st.booleans()] * 4).map(lambda vs: Configuration(OPTS, vs))
partials = st.dictionaries(st.sampled_from(OPTS), st.booleans()).map(PartialAssignment)


@given(configs, partials, partials)
def test_contains_is_monotone(c, p, q):
    merged = dict(q)
    for o, v in p:
        merged.setdefault(o, v)
    q = PartialAssignment(merged)
    p = PartialAssignment(lit for lit in p if lit in q)
    assert p <= q
    if contains(c, q):
        assert contains(c, p)


@given(st.lists(st.sampled_from([cond.parse_formula(t) for t in ("A -> B", "!(C && D)", "A || D", "B <-> C")]), max_size=3))
def test_validate_agrees_with_enumeration(constraints):
    fm = cond.FeatureModel(OPTS, tuple(constraints))
    valid = {c.values for c in cond.valid_configurations(fm)}
    for c in cond.valid_configurations(cond.FeatureModel(OPTS)):
        assert validate(c, fm) == (c.values in valid)
