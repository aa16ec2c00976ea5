"""Boolean formulas over configuration options.

Presence conditions and feature-model constraints share one small AST:
constants, atoms (option names), negation, n-ary conjunction and
disjunction.  Satisfiability and entailment are decided by exhaustive
case splitting over the atoms of a formula, which is complete and fast
enough for the handful of options a presence condition mentions.
"""

from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

from .errors import ParseError, TooManyAtoms, TooManyOptions, UnknownOption

DEFAULT_BOUND = 24


@dataclass(frozen=True)
class Const:
    value: bool


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class And:
    args: tuple


@dataclass(frozen=True)
class Or:
    args: tuple


Formula = Union[Const, Atom, Not, And, Or]

TRUE = Const(True)
FALSE = Const(False)


def neg(f):
    if isinstance(f, Const):
        return Const(not f.value)
    if isinstance(f, Not):
        return f.arg
    return Not(f)


def conj(*fs):
    """Conjunction that keeps its arguments as given (no flattening).

    Nested presence conditions rely on this: the condition of a record
    inside k directive branches is the conjunction of exactly k branch
    conditions.
    """
    fs = tuple(f for f in fs if f != TRUE)
    if not fs:
        return TRUE
    if len(fs) == 1:
        return fs[0]
    return And(fs)


def disj(*fs):
    fs = tuple(f for f in fs if f != FALSE)
    if not fs:
        return FALSE
    if len(fs) == 1:
        return fs[0]
    return Or(fs)


def implies(a, b):
    return disj(neg(a), b)


def iff(a, b):
    return conj(implies(a, b), implies(b, a))


def literal(name, value=True):
    return Atom(name) if value else Not(Atom(name))


def atoms(f) -> frozenset:
    if isinstance(f, Atom):
        return frozenset([f.name])
    if isinstance(f, Const):
        return frozenset()
    if isinstance(f, Not):
        return atoms(f.arg)
    out = frozenset()
    for a in f.args:
        out |= atoms(a)
    return out


def evaluate(f, env: Mapping[str, bool]) -> bool:
    if isinstance(f, Atom):
        try:
            return env[f.name]
        except KeyError:
            raise UnknownOption(f"no value for option {f.name!r}") from None
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Not):
        return not evaluate(f.arg, env)
    if isinstance(f, And):
        return all(evaluate(a, env) for a in f.args)
    return any(evaluate(a, env) for a in f.args)


def substitute(f, env: Mapping[str, bool]):
    """Partially evaluate ``f`` under ``env`` and fold constants."""
    if isinstance(f, Atom):
        if f.name in env:
            return Const(env[f.name])
        return f
    if isinstance(f, Const):
        return f
    if isinstance(f, Not):
        return neg(substitute(f.arg, env))
    if isinstance(f, And):
        parts = []
        for a in f.args:
            s = substitute(a, env)
            if s == FALSE:
                return FALSE
            if s != TRUE:
                parts.append(s)
        return conj(*parts)
    parts = []
    for a in f.args:
        s = substitute(a, env)
        if s == TRUE:
            return TRUE
        if s != FALSE:
            parts.append(s)
    return disj(*parts)


def simplify(f):
    """Constant folding, double-negation removal and flattening."""
    if isinstance(f, (Atom, Const)):
        return f
    if isinstance(f, Not):
        return neg(simplify(f.arg))
    kind = type(f)
    unit, zero = (TRUE, FALSE) if kind is And else (FALSE, TRUE)
    parts = []
    for a in f.args:
        s = simplify(a)
        if s == zero:
            return zero
        if s == unit:
            continue
        if type(s) is kind:
            parts.extend(s.args)
        else:
            parts.append(s)
    parts = list(dict.fromkeys(parts))
    if not parts:
        return unit
    if len(parts) == 1:
        return parts[0]
    return kind(tuple(parts))


def to_nnf(f, negate=False):
    """Push negations down to the atoms (De Morgan)."""
    if isinstance(f, Atom):
        return Not(f) if negate else f
    if isinstance(f, Const):
        return Const(f.value != negate)
    if isinstance(f, Not):
        return to_nnf(f.arg, not negate)
    args = tuple(to_nnf(a, negate) for a in f.args)
    if isinstance(f, And):
        return Or(args) if negate else And(args)
    return And(args) if negate else Or(args)


def _check_bound(f, bound):
    names = atoms(f)
    if bound is not None and len(names) > bound:
        raise TooManyAtoms(f"formula has {len(names)} atoms, bound is {bound}")
    return names


@functools.lru_cache(maxsize=65536)
def _sat(f) -> bool:
    f = simplify(f)
    if isinstance(f, Const):
        return f.value
    name = min(atoms(f))
    return _sat(substitute(f, {name: True})) or _sat(substitute(f, {name: False}))


def is_satisfiable(f, bound=DEFAULT_BOUND) -> bool:
    _check_bound(f, bound)
    return _sat(f)


def is_valid(f, bound=DEFAULT_BOUND) -> bool:
    return not is_satisfiable(neg(f), bound)


def entails(f, g, bound=DEFAULT_BOUND) -> bool:
    return not is_satisfiable(conj(f, neg(g)), bound)


def entails_literal(f, option: str, value: bool, bound=DEFAULT_BOUND) -> bool:
    """True iff ``f`` is satisfiable and every model of ``f`` sets option=value."""
    if not is_satisfiable(f, bound):
        return False
    return not is_satisfiable(conj(f, literal(option, not value)), bound)


def models(f, names=None):
    """Yield all satisfying assignments over ``names`` (T before F)."""
    names = sorted(atoms(f)) if names is None else list(names)
    for values in itertools.product((True, False), repeat=len(names)):
        env = dict(zip(names, values))
        if evaluate(f, env):
            yield env


# -- prime implicants ------------------------------------------------------

def _dnf(f):
    """DNF of an NNF formula as a set of literal frozensets."""
    if isinstance(f, Const):
        return {frozenset()} if f.value else set()
    if isinstance(f, Atom):
        return {frozenset([(f.name, True)])}
    if isinstance(f, Not):
        return {frozenset([(f.arg.name, False)])}
    if isinstance(f, Or):
        out = set()
        for a in f.args:
            out |= _dnf(a)
        return out
    out = {frozenset()}
    for a in f.args:
        sub = _dnf(a)
        out = {t | s for t in out for s in sub}
    return out


def _consistent(term):
    names = [n for n, _ in term]
    return len(names) == len(set(names))


def _absorb(terms):
    ordered = sorted(terms, key=len)
    kept = []
    for t in ordered:
        if not any(k <= t for k in kept):
            kept.append(t)
    return set(kept)


def prime_implicants(f, bound=DEFAULT_BOUND) -> list:
    """All prime implicants of ``f`` as frozensets of (atom, value).

    Computed as the Blake canonical form (iterated consensus), so the
    result depends only on the function ``f`` denotes, not on its syntax.
    """
    _check_bound(f, bound)
    terms = _absorb({t for t in _dnf(to_nnf(f)) if _consistent(t)})
    changed = True
    while changed:
        changed = False
        current = sorted(terms, key=lambda t: (len(t), sorted(t)))
        for t1, t2 in itertools.combinations(current, 2):
            clash = [(n, v) for n, v in t1 if (n, not v) in t2]
            if len(clash) != 1:
                continue
            n, v = clash[0]
            cons = (t1 | t2) - {(n, v), (n, not v)}
            if any(t <= cons for t in terms):
                continue
            terms.add(cons)
            changed = True
        terms = _absorb(terms)
    return sorted(terms, key=lambda t: (len(t), sorted(t)))


def implicant_literals(f, bound=DEFAULT_BOUND) -> frozenset:
    """Literals that occur in some prime implicant of ``f``.

    For a satisfiable conjunction of literals this is exactly the set of
    literals the formula entails.
    """
    out = set()
    for term in prime_implicants(f, bound):
        out |= term
    return frozenset(out)


# -- canonical infix syntax ------------------------------------------------

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_KEYWORDS = {"TRUE", "FALSE"}


def _atom_text(name):
    if _IDENT.match(name) and name not in _KEYWORDS:
        return name
    return f"[{name}]"


def to_infix(f) -> str:
    """Render with ``!``, ``&&``, ``||`` and parentheses; round-trips through parse_formula."""
    if isinstance(f, Const):
        return "TRUE" if f.value else "FALSE"
    if isinstance(f, Atom):
        return _atom_text(f.name)
    if isinstance(f, Not):
        inner = to_infix(f.arg)
        if isinstance(f.arg, (And, Or)):
            inner = f"({inner})"
        return "!" + inner
    sep = " && " if isinstance(f, And) else " || "
    parts = []
    for a in f.args:
        s = to_infix(a)
        if isinstance(a, (And, Or)):
            s = f"({s})"
        parts.append(s)
    return sep.join(parts)


_TOKEN = re.compile(r"\s*(?:(<->|->|&&|\|\||!|\(|\))|(\[[^\]]*\])|([A-Za-z_][A-Za-z0-9_]*))")


def _tokenize(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:].strip()[:1]!r} in {text!r}")
        op, opaque, ident = m.groups()
        if op:
            out.append(op)
        elif opaque:
            out.append(("atom", opaque[1:-1]))
        else:
            out.append(("atom", ident))
        pos = m.end()
    return out


class _FormulaParser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, tok=None):
        t = self.peek()
        if t is None or (tok is not None and t != tok):
            raise ParseError(f"expected {tok or 'operand'} in {self.text!r}")
        self.i += 1
        return t

    def parse(self):
        f = self.iff()
        if self.peek() is not None:
            raise ParseError(f"trailing input in {self.text!r}")
        return f

    def iff(self):
        left = self.imp()
        while self.peek() == "<->":
            self.take()
            left = iff(left, self.imp())
        return left

    def imp(self):
        left = self.orr()
        if self.peek() == "->":
            self.take()
            return implies(left, self.imp())
        return left

    def orr(self):
        parts = [self.andd()]
        while self.peek() == "||":
            self.take()
            parts.append(self.andd())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def andd(self):
        parts = [self.unary()]
        while self.peek() == "&&":
            self.take()
            parts.append(self.unary())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def unary(self):
        t = self.peek()
        if t == "!":
            self.take()
            return Not(self.unary())
        if t == "(":
            self.take()
            f = self.iff()
            self.take(")")
            return f
        if isinstance(t, tuple):
            self.take()
            name = t[1]
            if name == "TRUE":
                return TRUE
            if name == "FALSE":
                return FALSE
            return Atom(name)
        raise ParseError(f"expected operand in {self.text!r}")


def parse_formula(text: str):
    """Parse ``!``, ``&&``, ``||``, ``->``, ``<->``, parentheses, TRUE/FALSE and names."""
    return _FormulaParser(text).parse()


# -- feature models --------------------------------------------------------

@dataclass(frozen=True)
class FeatureModel:
    options: tuple
    constraints: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "options", tuple(self.options))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        if len(set(self.options)) != len(self.options):
            raise ValueError("duplicate option in feature model")
        known = set(self.options)
        for c in self.constraints:
            unknown = atoms(c) - known
            if unknown:
                raise UnknownOption(f"constraint mentions undeclared option(s): {sorted(unknown)}")

    def allows(self, env: Mapping[str, bool]) -> bool:
        return all(evaluate(c, env) for c in self.constraints)

    def formula(self):
        return conj(*self.constraints)


def parse_feature_model(text: str, options: Iterable[str]) -> FeatureModel:
    """One constraint per line; ``#`` starts a comment."""
    constraints = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            constraints.append(parse_formula(line))
        except ParseError as e:
            raise ParseError(e.message, line=lineno) from None
    return FeatureModel(tuple(options), tuple(constraints))


def valid_configurations(fm: FeatureModel, bound=DEFAULT_BOUND):
    """Every configuration satisfying all constraints, T-before-F lexicographic."""
    from .configspace import Configuration

    n = len(fm.options)
    if bound is not None and n > bound:
        raise TooManyOptions(f"{n} options exceed the enumeration bound {bound}")
    out = []
    for values in itertools.product((True, False), repeat=n):
        env = dict(zip(fm.options, values))
        if fm.allows(env):
            out.append(Configuration(fm.options, values, len(out)))
    return out
