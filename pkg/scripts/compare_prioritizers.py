#!/usr/bin/env python3
"""Compare prioritization strategies across sampling algorithms on one fixture.

Random is averaged over ``--seeds`` seeds; the others are deterministic.
"""

import argparse
import statistics
from dataclasses import dataclass, field
from pathlib import Path

from varprio import formats
from varprio.conditions import FeatureModel
from varprio.facts import build_tables
from varprio.interactions import detect_suspicious_selections
from varprio.metrics import evaluate
from varprio.ranking import prioritize
from varprio.sampling import ALGORITHMS, SamplePlan, sample
from varprio.varfront import SourceUnit, extract_options, parse_project, presence_blocks

ROOT = Path(__file__).resolve().parent.parent


@dataclass
class Experiment:
    fixture: Path = ROOT / "fixtures" / "linux_twl"
    bugs: Path | None = None
    seeds: int = 50
    t_values: tuple = (2, 3, 4)
    strategies: tuple = ("copro", "additional", "sp", "random")
    extra_tables: list = field(default_factory=list)


def plans(exp, blocks):
    for alg in ALGORITHMS:
        if alg == "t-wise":
            for t in exp.t_values:
                yield f"{t}-wise", SamplePlan(alg, t=t)
        elif alg == "statement-coverage":
            yield alg, SamplePlan(alg, blocks=tuple(blocks))
        else:
            yield alg, SamplePlan(alg)


def run(exp):
    units = [SourceUnit.read(p) for p in sorted(exp.fixture.glob("*.c"))]
    options = extract_options(units)
    records = parse_project(units, options)
    sels = detect_suspicious_selections(build_tables(records, options))
    blocks = presence_blocks(records)
    bugs = formats.parse_bugs((exp.bugs or exp.fixture / "bugs.txt").read_text())
    fm = FeatureModel(tuple(options))

    inputs = []
    for name, plan in plans(exp, blocks):
        if plan.algorithm == "t-wise" and plan.t > len(options):
            continue
        inputs.append((name, sample(plan, fm)))
    for path in exp.extra_tables:
        inputs.append((Path(path).name, formats.parse_configs(Path(path).read_text())))

    print(f"{'sample':24} {'n':>3}  " + "  ".join(f"{s:>10}" for s in exp.strategies))
    for name, configs in inputs:
        cells = []
        for strategy in exp.strategies:
            seeds = range(exp.seeds) if strategy == "random" else [0]
            scores = [evaluate(prioritize(strategy, configs, sels, seed=s, blocks=blocks), bugs).apfd for s in seeds]
            cells.append(f"{statistics.fmean(scores):10.4f}")
        print(f"{name:24} {len(configs):>3}  " + "  ".join(cells))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--fixture", type=Path, default=Experiment.fixture)
    ap.add_argument("--bugs", type=Path)
    ap.add_argument("--seeds", type=int, default=Experiment.seeds)
    ap.add_argument("--table", action="append", default=[], help="extra configuration table to rank")
    args = ap.parse_args()
    table = args.fixture / "sp_table.tsv"
    extra = args.table or ([table] if table.exists() else [])
    run(Experiment(fixture=args.fixture, bugs=args.bugs, seeds=args.seeds, extra_tables=extra))


if __name__ == "__main__":
    main()
