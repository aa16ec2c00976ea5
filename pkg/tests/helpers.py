"""Shared loaders for fixture-based tests."""

from functools import lru_cache
from pathlib import Path

from varprio import formats
from varprio.facts import build_tables
from varprio.interactions import detect_suspicious_selections
from varprio.varfront import SourceUnit, extract_options, parse_project

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
LINUX = FIXTURES / "linux_twl"
TWL = "TWL4030_CORE"


def units(name):
    return [SourceUnit.read(p) for p in sorted((FIXTURES / name).glob("*.c"))]


def analyze(name, rules=None):
    us = units(name)
    options = extract_options(us)
    records = parse_project(us, options)
    tables = build_tables(records, options)
    sels = detect_suspicious_selections(tables) if rules is None else detect_suspicious_selections(tables, rules)
    return records, tables, sels


@lru_cache(maxsize=None)
def linux_records():
    return analyze("linux_twl")


def sp_table():
    return formats.parse_configs((LINUX / "sp_table.tsv").read_text())


def linux_bugs():
    return formats.parse_bugs((LINUX / "bugs.txt").read_text())


def lits(text):
    from varprio.configspace import parse_literals

    return parse_literals(text)


def selection_set(sels):
    return {s.literals for s in sels}


def oracle_correlation(seed, rules=None, ignore=(), max_options=8, correlation=True):
    """Check detector recall and score/oracle correlation on one generated fixture.

    Returns a list of problem strings (empty when the fixture passes).
    """
    import random

    from varprio.conditions import FeatureModel, valid_configurations
    from varprio.oracle import check_variant, generate_rule_shaped
    from varprio.ranking import copro_prioritize, suspiciousness

    options, records = generate_rule_shaped(random.Random(seed), max_options=max_options)
    tables = build_tables(records, options)
    sels = detect_suspicious_selections(tables) if rules is None else detect_suspicious_selections(tables, rules)
    configs = valid_configurations(FeatureModel(tuple(options)))
    flags = {c.id: [f for f in check_variant(records, c) if f[0] not in ignore] for c in configs}
    score = {c.id: suspiciousness(c, sels) for c in configs}
    problems = []
    flagged = [i for i in flags if flags[i]]
    clean_max = max((score[i] for i in flags if not flags[i]), default=0)
    for i in flagged:
        if score[i] < 1:
            problems.append(f"seed {seed}: config {i} flagged {flags[i][0]} but scores 0")
        if correlation and score[i] < clean_max:
            problems.append(f"seed {seed}: flagged config {i} scores below a clean config")
    if flagged and not flags[copro_prioritize(configs, sels)[0].config.id]:
        problems.append(f"seed {seed}: rank-1 configuration is not oracle-flagged")
    return problems



def run_every_subcommand(out):
    """Run each subcommand on the Linux fixture into ``out``; return {file: bytes}."""
    from varprio.cli import main

    out = Path(out)
    twl, table, bugs = str(LINUX / "twl.c"), str(LINUX / "sp_table.tsv"), str(LINUX / "bugs.txt")
    steps = [
        ["analyze", twl, "--out", str(out / "a")],
        ["sample", twl, "--algorithm", "t-wise", "--t", "3", "--out", str(out / "sample.tsv")],
        ["sample", "--facts", str(out / "a" / "facts.tsv"), "--algorithm", "statement-coverage",
         "--out", str(out / "stmt.tsv")],
        ["prioritize", table, str(out / "a" / "selections.tsv"), "--out", str(out / "copro.tsv")],
        ["prioritize", table, str(out / "a" / "selections.tsv"), "--strategy", "random", "--seed", "7",
         "--out", str(out / "random.tsv")],
        ["prioritize", table, str(out / "a" / "selections.tsv"), "--strategy", "sp",
         "--facts", str(out / "a" / "facts.tsv"), "--out", str(out / "sp.tsv")],
        ["evaluate", str(out / "copro.tsv"), bugs, "--out", str(out / "report.txt")],
        ["pipeline", twl, "--configs", table, "--bugs", bugs, "--out", str(out / "p")],
        ["oracle", twl, "--configs", table, "--out", str(out / "oracle.tsv")],
    ]
    import contextlib
    import io

    for argv in steps:
        with contextlib.redirect_stdout(io.StringIO()):
            code = main(argv)
        if code != 0:
            raise AssertionError(f"{argv[0]} exited {code}")
    return {str(p.relative_to(out)): p.read_bytes() for p in sorted(out.rglob("*")) if p.is_file()}
