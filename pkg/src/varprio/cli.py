"""Command-line interface: analyze, sample, prioritize, evaluate, pipeline."""

from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import dataclass, field

from . import conditions as cond
from . import formats
from .configspace import Configuration
from .errors import EmptySpace, NoBugs, ParseError, UnknownOption, VarprioError
from .facts import build_tables
from .interactions import DEFAULT_RULES, detect_suspicious_selections
from .metrics import evaluate
from .oracle import check_variant
from .ranking import STRATEGIES, prioritize
from .sampling import ALGORITHMS, SamplePlan, sample
from .varfront import DEFAULT_DESTRUCTORS, DEFAULT_PREFIX, SourceUnit, extract_options, parse_project, presence_blocks

log = logging.getLogger("varprio")

EXIT_PARSE, EXIT_EMPTY, EXIT_MISMATCH, EXIT_NO_BUGS = 2, 3, 4, 5


@dataclass
class ProjectConfig:
    sources: list
    prefix: str = DEFAULT_PREFIX
    destructors: tuple = DEFAULT_DESTRUCTORS
    feature_model: str = None
    bound: int = cond.DEFAULT_BOUND
    out: str = None
    rules: tuple = field(default=DEFAULT_RULES)

    def __post_init__(self):
        if self.bound < 1:
            raise ValueError("enumeration bound must be at least 1")
        for p in self.sources:
            if not os.path.exists(p):
                raise FileNotFoundError(p)

    def units(self):
        return [SourceUnit.read(p) for p in self.sources]


def _read(path):
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _rules(text):
    if text in (None, "default"):
        return DEFAULT_RULES
    if text == "all":
        return tuple(range(1, 11))
    rules = tuple(sorted({int(x) for x in text.split(",")}))
    if not all(1 <= r <= 10 for r in rules):
        raise argparse.ArgumentTypeError("rules are numbered 1 to 10")
    return rules


def load_feature_model(path, options):
    if path is None:
        return cond.FeatureModel(tuple(options))
    try:
        return cond.parse_feature_model(_read(path), options)
    except ParseError as e:
        raise ParseError(e.message, path, e.line) from None


# -- steps -------------------------------------------------------------------

def analyze(project: ProjectConfig):
    """Return (records, options, selections) for a project."""
    units = project.units()
    options = extract_options(units, project.prefix)
    records = parse_project(units, options, project.destructors, project.prefix)
    tables = build_tables(records, options)
    return records, options, detect_suspicious_selections(tables, project.rules)


def _check_options(configs, sels):
    if not configs:
        return
    known = set(configs[0].options)
    for s in sels:
        missing = s.literals.options - known
        if missing:
            raise UnknownOption(f"selection mentions option(s) {sorted(missing)} absent from the configurations")


def _blocks_from(records):
    return presence_blocks(records)


def _write_or_print(path, text):
    if path:
        formats.write_atomic(path, text)
    else:
        sys.stdout.write(text)


# -- subcommands -------------------------------------------------------------

def cmd_analyze(args):
    project = _project(args)
    records, _, sels = analyze(project)
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        formats.write_atomic(os.path.join(args.out, "facts.tsv"), formats.format_facts(records))
        formats.write_atomic(os.path.join(args.out, "selections.tsv"), formats.format_selections(sels))
    else:
        sys.stdout.write(formats.format_selections(sels))
    return 0


def _sample_inputs(args):
    if args.options:
        options = [o for o in args.options.split(",") if o]
        blocks = []
        if args.facts:
            blocks = _blocks_from(formats.parse_facts(_read(args.facts), args.facts))
    elif args.facts:
        records = formats.parse_facts(_read(args.facts), args.facts)
        blocks = _blocks_from(records)
        names = set()
        for r in records:
            names |= cond.atoms(r.pc)
        options = sorted(names)
    else:
        project = _project(args)
        units = project.units()
        options = extract_options(units, project.prefix)
        blocks = _blocks_from(parse_project(units, options, project.destructors, project.prefix))
    return options, blocks


def _plan(args, blocks):
    return SamplePlan(args.algorithm, args.t, tuple(blocks))


def cmd_sample(args):
    options, blocks = _sample_inputs(args)
    fm = load_feature_model(args.feature_model, options)
    configs = sample(_plan(args, blocks), fm, args.max_options)
    _write_or_print(args.out, formats.format_configs(configs, fm.options))
    return 0


def cmd_prioritize(args):
    configs = formats.parse_configs(_read(args.configs), args.configs)
    sels = formats.parse_selections(_read(args.selections), args.selections)
    _check_options(configs, sels)
    blocks = None
    if args.facts:
        blocks = _blocks_from(formats.parse_facts(_read(args.facts), args.facts))
    ranked = prioritize(args.strategy, configs, sels, args.seed, blocks)
    options = configs[0].options if configs else ()
    _write_or_print(args.out, formats.format_ranked(ranked, options))
    return 0


def _evaluate(ranked, bugs):
    if len(bugs) == 0:
        raise NoBugs("the bug specification is empty")
    if ranked:
        known = set(ranked[0].config.options)
        for b, p in bugs.bugs.items():
            if not p.options <= known:
                raise UnknownOption(f"bug {b} mentions option(s) {sorted(p.options - known)} absent from the ranking")
    return evaluate(ranked, bugs)


def cmd_evaluate(args):
    ranked = formats.parse_ranked(_read(args.ranked), args.ranked)
    bugs = formats.parse_bugs(_read(args.bugs), args.bugs)
    report = _evaluate(ranked, bugs)
    sys.stdout.write(formats.format_report_text(report))
    if args.out:
        formats.write_atomic(args.out, formats.format_report_kv(report))
    return 0


def cmd_pipeline(args):
    project = _project(args)
    out = args.out
    os.makedirs(out, exist_ok=True)
    records, options, sels = analyze(project)
    formats.write_atomic(os.path.join(out, "facts.tsv"), formats.format_facts(records))
    formats.write_atomic(os.path.join(out, "selections.tsv"), formats.format_selections(sels))
    blocks = _blocks_from(records)
    if args.configs:
        configs = formats.parse_configs(_read(args.configs), args.configs)
    else:
        fm = load_feature_model(args.feature_model, options)
        configs = sample(_plan(args, blocks), fm, args.max_options)
    formats.write_atomic(os.path.join(out, "configs.tsv"), formats.format_configs(configs, options if not configs else None))
    _check_options(configs, sels)
    ranked = prioritize(args.strategy, configs, sels, args.seed, blocks)
    formats.write_atomic(os.path.join(out, "ranked.tsv"), formats.format_ranked(ranked))
    if args.bugs:
        bugs = formats.parse_bugs(_read(args.bugs), args.bugs)
        report = _evaluate(ranked, bugs)
        formats.write_atomic(os.path.join(out, "report.txt"), formats.format_report_kv(report))
        sys.stdout.write(formats.format_report_text(report))
    return 0


def cmd_oracle(args):
    project = _project(args)
    units = project.units()
    options = extract_options(units, project.prefix)
    records = parse_project(units, options, project.destructors, project.prefix)
    configs = formats.parse_configs(_read(args.configs), args.configs)
    lines = []
    for c in configs:
        for violation, entity in check_variant(records, c):
            lines.append(f"{c.render()}\t{violation}\t{entity}\n")
    _write_or_print(args.out, "".join(lines))
    return 0


# -- argument parsing ----------------------------------------------------------

def _project(args) -> ProjectConfig:
    return ProjectConfig(
        sources=list(args.sources),
        prefix=args.options_prefix,
        destructors=tuple(d for d in args.destructors.split(",") if d),
        feature_model=getattr(args, "feature_model", None),
        bound=getattr(args, "max_options", cond.DEFAULT_BOUND),
        out=getattr(args, "out", None),
        rules=getattr(args, "rules", DEFAULT_RULES),
    )


def _source_flags(p, required=True):
    p.add_argument("sources", nargs="+" if required else "*", help="C source files")
    p.add_argument("--options-prefix", default=DEFAULT_PREFIX, help="prefix stripped from option names (default: %(default)s)")
    p.add_argument("--destructors", default=",".join(DEFAULT_DESTRUCTORS), help="comma-separated destructor function names")
    p.add_argument("--rules", type=_rules, default=DEFAULT_RULES, help="'default', 'all' or a comma list of rule numbers")


def _sample_flags(p):
    p.add_argument("--algorithm", "--sampler", dest="algorithm", choices=ALGORITHMS, default="t-wise")
    p.add_argument("--t", type=int, default=2, help="interaction strength for t-wise sampling")
    p.add_argument("--feature-model", help="constraint file, one formula per line")
    p.add_argument("--max-options", type=int, default=cond.DEFAULT_BOUND, help="enumeration bound")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="varprio", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("analyze", help="extract facts and suspicious selections")
    _source_flags(p)
    p.add_argument("--out", help="output directory for facts.tsv and selections.tsv")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sample", help="sample configurations")
    _source_flags(p, required=False)
    _sample_flags(p)
    p.add_argument("--options", help="comma-separated option names (instead of sources)")
    p.add_argument("--facts", help="facts file supplying options and blocks")
    p.add_argument("--out", help="output configuration table")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("prioritize", help="rank configurations")
    p.add_argument("configs")
    p.add_argument("selections")
    p.add_argument("--strategy", choices=STRATEGIES, default="copro")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--facts", help="facts file; its blocks are SP's features")
    p.add_argument("--out", help="output ranked table")
    p.set_defaults(func=cmd_prioritize)

    p = sub.add_parser("evaluate", help="APFD of a ranking against known bugs")
    p.add_argument("ranked")
    p.add_argument("bugs")
    p.add_argument("--out", help="write key=value report here")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("pipeline", help="analyze, sample, prioritize and evaluate")
    _source_flags(p)
    _sample_flags(p)
    p.add_argument("--configs", help="use this configuration table instead of sampling")
    p.add_argument("--strategy", choices=STRATEGIES, default="copro")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bugs", help="bug specification; evaluation is skipped without it")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("oracle")  # debugging aid, deliberately undocumented
    _source_flags(p)
    p.add_argument("--configs", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_oracle)
    sub._choices_actions = [a for a in sub._choices_actions if a.dest != "oracle"]
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except EmptySpace as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_EMPTY
    except UnknownOption as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_MISMATCH
    except NoBugs as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NO_BUGS
    except (VarprioError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
