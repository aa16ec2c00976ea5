"""Configurations and partial option assignments."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from . import conditions
from .errors import UnknownOption


@dataclass(frozen=True)
class Configuration:
    """A total assignment of T/F to every option, plus its input index."""

    options: tuple
    values: tuple
    id: int = 0

    def __post_init__(self):
        object.__setattr__(self, "options", tuple(self.options))
        object.__setattr__(self, "values", tuple(bool(v) for v in self.values))
        if len(self.options) != len(self.values):
            raise ValueError("options and values differ in length")

    @classmethod
    def from_mapping(cls, assignment: Mapping[str, bool], options=None, id=0):
        options = tuple(assignment) if options is None else tuple(options)
        return cls(options, tuple(assignment[o] for o in options), id)

    @property
    def assignment(self) -> dict:
        return dict(zip(self.options, self.values))

    def __getitem__(self, option):
        try:
            return self.values[self.options.index(option)]
        except ValueError:
            raise UnknownOption(option) from None

    def enabled_count(self) -> int:
        return sum(self.values)

    def render(self) -> str:
        return "".join("T" if v else "F" for v in self.values)

    def __repr__(self):
        return f"Configuration#{self.id}({self.render()})"


class PartialAssignment(frozenset):
    """A consistent set of (option, value) literals."""

    def __new__(cls, literals: Iterable = ()):
        if isinstance(literals, Mapping):
            literals = literals.items()
        lits = frozenset((str(o), bool(v)) for o, v in literals)
        names = [o for o, _ in lits]
        if len(names) != len(set(names)):
            raise ValueError(f"inconsistent partial assignment: {sorted(lits)}")
        return super().__new__(cls, lits)

    @property
    def options(self) -> frozenset:
        return frozenset(o for o, _ in self)

    def sorted(self) -> list:
        return sorted(self)

    def render(self) -> str:
        return ",".join(f"{o}={'T' if v else 'F'}" for o, v in self.sorted())

    def formula(self):
        return conditions.conj(*(conditions.literal(o, v) for o, v in self.sorted()))

    def __repr__(self):
        return "{" + self.render() + "}"


def parse_literals(text: str) -> PartialAssignment:
    """Parse ``A=T, B=F`` (comma or whitespace separated)."""
    lits = []
    for part in text.replace(",", " ").split():
        name, sep, val = part.partition("=")
        if not sep or not name or val not in ("T", "F"):
            raise ValueError(f"malformed literal {part!r}")
        lits.append((name, val == "T"))
    return PartialAssignment(lits)


def contains(c: Configuration, p) -> bool:
    """True iff ``c`` assigns every literal of ``p`` as stated."""
    env = c.assignment
    for o, v in p:
        if o not in env:
            raise UnknownOption(f"option {o!r} is not part of the configuration")
        if env[o] != v:
            return False
    return True


def validate(c: Configuration, fm: conditions.FeatureModel) -> bool:
    env = c.assignment
    missing = set(fm.options) - set(env)
    if missing:
        raise UnknownOption(f"configuration lacks option(s) {sorted(missing)}")
    extra = set(env) - set(fm.options)
    if extra:
        raise UnknownOption(f"configuration has undeclared option(s) {sorted(extra)}")
    return fm.allows(env)
