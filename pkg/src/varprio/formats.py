"""Plain-text file formats for facts, selections, configurations, rankings and bugs."""

from __future__ import annotations

import os
import tempfile

from . import conditions as cond
from .configspace import Configuration, parse_literals
from .errors import ParseError
from .interactions import SuspiciousSelection
from .metrics import BugSpec, EvalReport
from .varfront import OPS, GLOBAL, OperationRecord, ProgramEntity


def write_atomic(path, text: str):
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _read(path):
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _data_lines(text):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.rstrip("\r")
        if line.strip() and not line.lstrip().startswith("#"):
            yield lineno, line


# facts: OP<TAB>entity<TAB>pc

def format_facts(records) -> str:
    return "".join(f"{r.tag}\t{r.entity}\t{cond.to_infix(r.pc)}\n" for r in records)


def parse_facts(text: str, path=None) -> list:
    """Records from a facts file.  Entity kinds are not stored and come back as variables."""
    out = []
    for lineno, line in _data_lines(text):
        parts = line.split("\t")
        if len(parts) != 3:
            raise ParseError("expected OP<TAB>entity<TAB>pc", path, lineno)
        tag, ent, pc = parts
        op = tag.lower()
        null = op == "assign_null"
        if null:
            op = "assign"
        if op not in OPS:
            raise ParseError(f"unknown operation {tag!r}", path, lineno)
        scope, dot, name = ent.partition(".")
        if not dot:
            scope, name = GLOBAL, ent
        try:
            formula = cond.parse_formula(pc)
        except ParseError as e:
            raise ParseError(e.message, path, lineno) from None
        out.append(OperationRecord(op, ProgramEntity(scope, name), formula, (path, lineno), null))
    return out


# selections: RULE<TAB>violation<TAB>entity<TAB>lit[,lit]

def format_selections(sels) -> str:
    return "".join(s.render() + "\n" for s in sels)


def parse_selections(text: str, path=None) -> list:
    out = []
    for lineno, line in _data_lines(text):
        parts = line.split("\t")
        if len(parts) != 4:
            raise ParseError("expected RULE<TAB>violation<TAB>entity<TAB>literals", path, lineno)
        try:
            rule = int(parts[0])
            lits = parse_literals(parts[3])
        except ValueError as e:
            raise ParseError(str(e), path, lineno) from None
        out.append(SuspiciousSelection(lits, parts[1], parts[2], rule, (parts[2],)))
    return out


# configuration tables: header of option names, then T/F rows

def _tf(v):
    return "T" if v else "F"


def format_configs(configs, options=None) -> str:
    if options is None:
        options = configs[0].options if configs else ()
    lines = ["\t".join(options)]
    lines += ["\t".join(_tf(v) for v in c.values) for c in configs]
    return "\n".join(lines) + "\n"


def _parse_row(cells, path, lineno):
    values = []
    for cell in cells:
        if cell not in ("T", "F"):
            raise ParseError(f"expected T or F, found {cell!r}", path, lineno)
        values.append(cell == "T")
    return tuple(values)


def parse_configs(text: str, path=None) -> list:
    lines = list(_data_lines(text))
    if not lines:
        raise ParseError("missing header line", path, 1)
    options = tuple(lines[0][1].split("\t")) if lines[0][1] else ()
    out = []
    for lineno, line in lines[1:]:
        cells = line.split("\t")
        if len(cells) != len(options):
            raise ParseError(f"expected {len(options)} values, found {len(cells)}", path, lineno)
        out.append(Configuration(options, _parse_row(cells, path, lineno), len(out)))
    return out


# ranked tables: rank<TAB>score<TAB>values...

def format_ranked(ranked, options=None) -> str:
    if options is None:
        options = ranked[0].config.options if ranked else ()
    lines = ["\t".join(("rank", "score") + tuple(options))]
    for r in ranked:
        lines.append("\t".join([str(r.rank), str(r.score)] + [_tf(v) for v in r.config.values]))
    return "\n".join(lines) + "\n"


def parse_ranked(text: str, path=None) -> list:
    from .ranking import RankedConfiguration

    lines = list(_data_lines(text))
    if not lines or lines[0][1].split("\t")[:2] != ["rank", "score"]:
        raise ParseError("expected header starting with rank<TAB>score", path, 1)
    options = tuple(lines[0][1].split("\t")[2:])
    out = []
    for lineno, line in lines[1:]:
        cells = line.split("\t")
        if len(cells) != len(options) + 2:
            raise ParseError(f"expected {len(options) + 2} columns", path, lineno)
        try:
            rank, score = int(cells[0]), int(cells[1])
        except ValueError:
            raise ParseError("rank and score must be integers", path, lineno) from None
        config = Configuration(options, _parse_row(cells[2:], path, lineno), len(out))
        out.append(RankedConfiguration(config, score, rank))
    return out


# bug specs: id: A=T, B=F

def format_bugs(spec: BugSpec) -> str:
    return "".join(f"{b}: {', '.join(f'{o}={_tf(v)}' for o, v in p.sorted())}\n" for b, p in spec.bugs.items())


def parse_bugs(text: str, path=None) -> BugSpec:
    bugs = {}
    for lineno, line in _data_lines(text):
        bug, sep, rest = line.partition(":")
        if not sep or not bug.strip():
            raise ParseError("expected 'id: OPT=T, OPT=F'", path, lineno)
        try:
            bugs[bug.strip()] = parse_literals(rest)
        except ValueError as e:
            raise ParseError(str(e), path, lineno) from None
    return BugSpec(bugs)


# evaluation reports

def format_report_kv(report: EvalReport) -> str:
    lines = [
        "# undetected bugs are counted at position n+1",
        f"n={report.n}",
        f"m={len(report.cf)}",
        f"apfd={report.apfd:.4f}",
        f"avg_rank={report.avg_rank:.4f}",
    ]
    lines += [f"cf.{b}={v}" for b, v in report.cf.items()]
    lines += [f"top{k}={f:.4f}" for k, f in report.top_k.items()]
    lines.append("undetected=" + ",".join(report.undetected))
    return "\n".join(lines) + "\n"


def format_report_text(report: EvalReport) -> str:
    width = max([len(b) for b in report.cf] + [3])
    lines = [f"APFD     {report.apfd:.4f}", f"avgRank  {report.avg_rank:.4f}", ""]
    lines.append(f"{'bug':<{width}}  CF")
    lines += [f"{b:<{width}}  {v}" + ("  (undetected)" if b in report.undetected else "") for b, v in report.cf.items()]
    lines.append("")
    lines += [f"top-{k:<3} {f:.4f}" for k, f in report.top_k.items()]
    lines.append("undetected: " + (", ".join(report.undetected) or "none"))
    return "\n".join(lines) + "\n"
