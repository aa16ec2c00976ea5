#!/usr/bin/env python3
"""Walk through the Linux TWL fixture: facts, selections, rankings, metrics."""

import argparse
from pathlib import Path

from varprio import formats
from varprio.facts import ALPHA, BETA, DELTA, GAMMA, build_tables
from varprio.interactions import detect_suspicious_selections
from varprio.metrics import evaluate
from varprio.ranking import copro_prioritize, sp_prioritize
from varprio.varfront import SourceUnit, extract_options, parse_project, presence_blocks

ROOT = Path(__file__).resolve().parent.parent
DEFAULT = ROOT / "fixtures" / "linux_twl"


def show_tables(tables):
    print("== selection functions (non-empty rows) ==")
    for sel in tables.selections()[:-1]:
        row = {n: sorted(str(e) for e in tables.get(n, sel)) for n in (ALPHA, BETA, GAMMA, DELTA)}
        if any(row.values()):
            print(f"{sel[0]}={'T' if sel[1] else 'F'}")
            for n, ents in row.items():
                if ents:
                    print(f"  {n:6} {', '.join(ents)}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--fixture", type=Path, default=DEFAULT, help="directory with *.c, sp_table.tsv, bugs.txt")
    args = ap.parse_args()

    units = [SourceUnit.read(p) for p in sorted(args.fixture.glob("*.c"))]
    options = extract_options(units)
    records = parse_project(units, options)
    tables = build_tables(records, options)
    show_tables(tables)

    sels = detect_suspicious_selections(tables)
    print("\n== suspicious selections ==")
    print(formats.format_selections(sels), end="")

    table = formats.parse_configs((args.fixture / "sp_table.tsv").read_text())
    bugs = formats.parse_bugs((args.fixture / "bugs.txt").read_text())
    copro = copro_prioritize(table, sels)
    print("\n== CoPro ranking of the SP-ordered table ==")
    print(formats.format_ranked(copro), end="")

    sp = sp_prioritize(table, presence_blocks(records))
    print("\n== SP re-ordering (presence blocks as features) ==")
    print(formats.format_ranked(sp), end="")

    for label, order in (("table order", table), ("CoPro", copro), ("SP (ours)", sp)):
        r = evaluate(order, bugs)
        cf = ", ".join(f"{b}={v}" for b, v in sorted(r.cf.items()))
        print(f"\n{label:12} APFD {r.apfd:.4f}  CF {cf}")


if __name__ == "__main__":
    main()
