"""Fact extraction from conditionally compiled C-like sources.

The front end works in three passes:

1. ``preprocess`` strips comments, joins continuation lines and walks the
   conditional directives, tagging every code token with the presence
   condition of the branch it sits in.
2. ``_Parser`` runs a recursive-descent parser for a C subset over the
   tagged token stream (tokens of all branches, in file order) and emits
   raw operation events.
3. ``_resolve`` maps identifier names to program entities using the
   declarations seen in the unit (or the whole project).

Directives must wrap whole declarations, statements or expression
fragments that still parse when all branches are concatenated.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from . import conditions as cond
from .errors import ParseError, UnknownOption

DECLARE, ASSIGN, USE, DESTRUCT = "declare", "assign", "use", "destruct"
OPS = (DECLARE, ASSIGN, USE, DESTRUCT)
VARIABLE, FUNCTION, LABEL = "variable", "function", "label"
GLOBAL = "GLOBAL"
DEFAULT_PREFIX = "CONFIG_"
DEFAULT_DESTRUCTORS = ("free",)


@dataclass(frozen=True)
class SourceUnit:
    path: str
    text: str

    @classmethod
    def read(cls, path):
        with open(path, encoding="utf-8", errors="replace") as fh:
            return cls(str(path), fh.read())


@dataclass(frozen=True, order=True)
class ProgramEntity:
    scope: str
    name: str
    kind: str = VARIABLE

    def __str__(self):
        return f"{self.scope}.{self.name}"


@dataclass(frozen=True)
class OperationRecord:
    op: str
    entity: ProgramEntity
    pc: object
    loc: tuple
    is_null_assign: bool = False

    def __post_init__(self):
        if self.op not in OPS:
            raise ValueError(f"unknown operation {self.op!r}")
        if self.is_null_assign and self.op != ASSIGN:
            raise ValueError("only assignments can be NULL assignments")
        if self.entity.kind in (FUNCTION, LABEL) and self.op not in (DECLARE, USE):
            raise ValueError(f"{self.op} is not applicable to a {self.entity.kind}")

    @property
    def tag(self) -> str:
        if self.op == ASSIGN and self.is_null_assign:
            return "ASSIGN_NULL"
        return self.op.upper()


# -- preprocessing ---------------------------------------------------------

class Token(NamedTuple):
    kind: str  # ident, number, string, char, punct
    text: str
    line: int
    pc: object
    seq: int


_COMMENT_OR_LITERAL = re.compile(
    r'//[^\n]*|/\*.*?\*/|"(?:\\.|[^"\\\n])*"|\'(?:\\.|[^\'\\\n])*\'', re.S
)


def _strip_comments(text, path):
    def repl(m):
        s = m.group(0)
        if s.startswith("/*") or s.startswith("//"):
            return " " + "\n" * s.count("\n")
        return s

    out = _COMMENT_OR_LITERAL.sub(repl, text)
    if "/*" in _COMMENT_OR_LITERAL.sub("", out):
        line = out[: out.find("/*")].count("\n") + 1
        raise ParseError("unterminated comment", path, line)
    return out


def _logical_lines(text):
    """Yield (first physical line number, text) with continuations joined."""
    buf, start = [], None
    for lineno, raw in enumerate(text.split("\n"), 1):
        if start is None:
            start = lineno
        if raw.endswith("\\"):
            buf.append(raw[:-1])
            continue
        buf.append(raw)
        yield start, " ".join(buf)
        buf, start = [], None
    if buf:
        yield start, " ".join(buf)


_CODE_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<number>0[xX][0-9A-Fa-f]+[uUlL]*|(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?[fFuUlL]*)
  | (?P<string>"(?:\\.|[^"\\])*")
  | (?P<char>'(?:\\.|[^'\\])*')
  | (?P<punct>\.\.\.|<<=|>>=|->|\+\+|--|<<|>>|<=|>=|==|!=|&&|\|\||[-+*/%&|^]=|[{}()\[\];,.:?~!<>=+\-*/%&|^#])
    """,
    re.X,
)

_DIRECTIVE = re.compile(r"\s*#\s*([A-Za-z_]\w*)?(.*)$")


class _CondParser:
    """Parser for ``#if``/``#elif`` expressions.

    ``defined(X)``, ``defined X`` and bare identifiers become option
    atoms; comparisons and arithmetic are kept as a single opaque atom.
    """

    _TOK = re.compile(r"\s*(?:(defined)\b|(&&|\|\||!(?!=)|\(|\))|([A-Za-z_]\w*|\d\w*)|(==|!=|<=|>=|<<|>>|[<>+\-*/%&|^~?:]))")

    def __init__(self, text, strip, path, line):
        self.text, self.strip, self.path, self.line = text, strip, path, line
        self.toks = []
        pos, text = 0, text.rstrip()
        while pos < len(text):
            m = self._TOK.match(text, pos)
            if not m or m.end() == pos:
                raise ParseError(f"cannot parse condition {self.text.strip()!r}", path, line)
            kw, logic, word, arith = m.groups()
            if kw:
                self.toks.append(("defined", kw))
            elif logic:
                self.toks.append((logic, logic))
            elif word:
                self.toks.append(("word", word))
            else:
                self.toks.append(("arith", arith))
            pos = m.end()
        self.i = 0

    def error(self):
        return ParseError(f"cannot parse condition {self.text.strip()!r}", self.path, self.line)

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def take(self, kind=None):
        if self.i >= len(self.toks) or (kind and self.toks[self.i][0] != kind):
            raise self.error()
        self.i += 1
        return self.toks[self.i - 1][1]

    def parse(self):
        if not self.toks:
            raise self.error()
        f = self.orr()
        if self.i != len(self.toks):
            raise self.error()
        return f

    def orr(self):
        parts = [self.andd()]
        while self.peek() == "||":
            self.take()
            parts.append(self.andd())
        return parts[0] if len(parts) == 1 else cond.Or(tuple(parts))

    def andd(self):
        parts = [self.unary()]
        while self.peek() == "&&":
            self.take()
            parts.append(self.unary())
        return parts[0] if len(parts) == 1 else cond.And(tuple(parts))

    def unary(self):
        if self.peek() == "!":
            self.take()
            return cond.Not(self.unary())
        return self.primary()

    def primary(self):
        k = self.peek()
        if k == "defined":
            self.take()
            if self.peek() == "(":
                self.take()
                name = self.take("word")
                self.take(")")
            else:
                name = self.take("word")
            return cond.Atom(self.strip(name))
        if k == "(":
            start = self.i
            self.take()
            f = self.orr()
            self.take(")")
            if self.peek() == "arith":
                self.i = start
                return self.opaque()
            return f
        if k in ("word", "arith"):
            return self.opaque()
        raise self.error()

    def opaque(self):
        # maximal run of operands/operators up to && || or an unbalanced ')'
        parts, depth = [], 0
        while self.i < len(self.toks):
            k, text = self.toks[self.i]
            if k in ("&&", "||") and depth == 0:
                break
            if k == ")":
                if depth == 0:
                    break
                depth -= 1
            elif k == "(":
                depth += 1
            elif k == "defined":
                raise self.error()
            parts.append(text)
            self.i += 1
        if not parts:
            raise self.error()
        if len(parts) == 1:
            word = parts[0]
            if word[0].isdigit():
                return cond.FALSE if _int_value(word) == 0 else cond.TRUE
            return cond.Atom(self.strip(word))
        text = "".join(self.strip(p) if re.match(r"[A-Za-z_]", p) else p for p in parts)
        return cond.Atom(text)


def _int_value(word):
    digits = word.rstrip("uUlL")
    try:
        return int(digits, 0)
    except ValueError:
        return 1


def _make_strip(prefix):
    def strip(name):
        if prefix and name.startswith(prefix) and len(name) > len(prefix):
            return name[len(prefix):]
        return name
    return strip


@dataclass
class _Preprocessed:
    tokens: list
    defines: list = field(default_factory=list)  # (name, line, pc, seq)
    options: set = field(default_factory=set)


def preprocess(src: SourceUnit, prefix=DEFAULT_PREFIX) -> _Preprocessed:
    """Tokenize ``src`` and tag every token with its presence condition."""
    strip = _make_strip(prefix)
    text = _strip_comments(src.text, src.path)
    out = _Preprocessed(tokens=[])
    # each frame: [raw conditions of earlier branches, raw current, effective current, saw_else, line]
    stack = []

    def current_pc():
        return cond.conj(*(frame[2] for frame in stack))

    def parse_cond(expr, line):
        f = _CondParser(expr, strip, src.path, line).parse()
        out.options |= cond.atoms(f)
        return f

    def push(c, line):
        stack.append([[], c, c, False, line])

    for line, logical in _logical_lines(text):
        m = _DIRECTIVE.match(logical)
        if m and logical.lstrip().startswith("#"):
            name, rest = m.group(1) or "", m.group(2).strip()
            if name in ("ifdef", "ifndef"):
                word = rest.split()[0] if rest.split() else ""
                if not re.match(r"[A-Za-z_]\w*$", word):
                    raise ParseError(f"#{name} needs a macro name", src.path, line)
                atom = cond.Atom(strip(word))
                out.options.add(atom.name)
                push(atom if name == "ifdef" else cond.Not(atom), line)
            elif name == "if":
                push(parse_cond(rest, line), line)
            elif name in ("elif", "else"):
                if not stack or stack[-1][3]:
                    raise ParseError(f"#{name} without matching #if", src.path, line)
                frame = stack[-1]
                frame[0].append(frame[1])
                negs = [cond.neg(c) for c in frame[0]]
                if name == "elif":
                    frame[1] = parse_cond(rest, line)
                    frame[2] = cond.conj(*negs, frame[1])
                else:
                    frame[1] = None
                    frame[2] = cond.conj(*negs)
                    frame[3] = True
            elif name == "endif":
                if not stack:
                    raise ParseError("#endif without matching #if", src.path, line)
                stack.pop()
            elif name == "define":
                dm = re.match(r"([A-Za-z_]\w*)(\()?", rest)
                if not dm:
                    raise ParseError("malformed #define", src.path, line)
                if not dm.group(2):
                    out.defines.append((dm.group(1), line, current_pc(), len(out.tokens) - 0.5))
            # include, undef, pragma, error, line and null directives carry no facts
            continue
        pc = current_pc()
        pos = 0
        while pos < len(logical):
            tm = _CODE_TOKEN.match(logical, pos)
            if not tm:
                raise ParseError(f"unexpected character {logical[pos]!r}", src.path, line)
            pos = tm.end()
            kind = tm.lastgroup
            if kind == "ws":
                continue
            out.tokens.append(Token(kind, tm.group(0), line, pc, len(out.tokens)))
    if stack:
        raise ParseError("unterminated conditional directive", src.path, stack[-1][4])
    return out


# -- parsing ---------------------------------------------------------------

KEYWORDS = {
    "if", "else", "while", "for", "do", "switch", "case", "default", "return",
    "break", "continue", "goto", "sizeof", "typedef", "struct", "union", "enum",
    "static", "extern", "const", "volatile", "register", "auto", "inline",
    "restrict", "void", "char", "short", "int", "long", "float", "double",
    "signed", "unsigned", "_Bool",
}
_TYPE_WORDS = {
    "void", "char", "short", "int", "long", "float", "double", "signed",
    "unsigned", "_Bool",
}
_SPEC_WORDS = {"static", "extern", "const", "volatile", "register", "auto", "inline", "restrict", "typedef"}
_NULL_WORDS = {"NULL"}

_ASSIGN_OPS = {"=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>="}
_BINARY = {
    "||": 1, "&&": 2, "|": 3, "^": 4, "&": 5, "==": 6, "!=": 6,
    "<": 7, ">": 7, "<=": 7, ">=": 7, "<<": 8, ">>": 8,
    "+": 9, "-": 9, "*": 10, "/": 10, "%": 10,
}


class _Event(NamedTuple):
    op: str
    name: str
    hint: str  # variable, function, callee, ident, label
    func: object  # enclosing function name or None
    line: int
    pc: object
    seq: float
    null: bool = False


class _Parser:
    def __init__(self, tokens, path, destructors):
        self.toks = tokens
        self.path = path
        self.destructors = set(destructors)
        self.i = 0
        self.events = []
        self.func = None
        self.locals = {}  # function -> set of names
        self.global_kinds = {}  # name -> kind
        self.typedefs = set()

    # token helpers
    def peek(self, k=0):
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else None

    def at(self, text, k=0):
        t = self.peek(k)
        return t is not None and t.kind in ("punct", "ident") and t.text == text

    def take(self, text=None):
        t = self.peek()
        if t is None:
            last = self.toks[-1].line if self.toks else 1
            raise ParseError(f"unexpected end of input, expected {text or 'token'}", self.path, last)
        if text is not None and t.text != text:
            raise ParseError(f"expected {text!r}, found {t.text!r}", self.path, t.line)
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek() or (self.toks[-1] if self.toks else None)
        return ParseError(msg, self.path, tok.line if tok else 1)

    def emit(self, op, tok, hint, null=False):
        self.events.append(_Event(op, tok.text, hint, self.func, tok.line, tok.pc, tok.seq, null))

    def is_ident(self, k=0):
        t = self.peek(k)
        return t is not None and t.kind == "ident" and t.text not in KEYWORDS

    def starts_type(self, k=0):
        t = self.peek(k)
        if t is None or t.kind != "ident":
            return False
        w = t.text
        if w in _TYPE_WORDS or w in _SPEC_WORDS or w in ("struct", "union", "enum"):
            return True
        return w in self.typedefs

    def starts_declaration(self):
        if self.starts_type():
            return True
        # unknown type name followed by a declarator name: `png_structp p;`
        return self.is_ident() and self.is_ident(1)

    # top level
    def parse(self):
        while self.peek() is not None:
            self.external()
        return self

    def external(self):
        if self.at(";"):
            self.take()
            return
        implicit = self.is_ident() and self.at("(", 1) and not self.starts_type()
        if not implicit:
            if not self.starts_declaration():
                raise self.error(f"unexpected {self.peek().text!r} at file scope")
            is_typedef = self.specifiers()
        else:
            is_typedef = False
        if self.at(";"):
            self.take()
            return
        first = True
        while True:
            d = self.declarator()
            if first and d["function"] and self.at("{") and d["name"] is not None:
                self.function_definition(d)
                return
            first = False
            self.declare_global(d, is_typedef)
            if self.at("="):
                self.take()
                self.initializer(d["name"], None)
            if self.at(","):
                self.take()
                continue
            self.take(";")
            return

    def declare_global(self, d, is_typedef):
        if d["name"] is None:
            return
        if is_typedef:
            self.typedefs.add(d["name"].text)
            return
        kind = FUNCTION if d["function"] else VARIABLE
        self.global_kinds.setdefault(d["name"].text, kind)
        self.emit(DECLARE, d["name"], kind)
        if d["function"]:
            self.declare_params(d, d["name"].text)

    def declare_params(self, d, owner):
        saved = self.func
        self.func = owner
        names = self.locals.setdefault(owner, set())
        for p in d["params"]:
            names.add(p.text)
            self.emit(DECLARE, p, VARIABLE)
        self.func = saved

    def function_definition(self, d):
        name = d["name"]
        self.global_kinds[name.text] = FUNCTION
        self.emit(DECLARE, name, FUNCTION)
        self.declare_params(d, name.text)
        saved = self.func
        self.func = name.text
        self.block()
        self.func = saved

    # declarations
    def specifiers(self):
        """Consume declaration specifiers; return True for a typedef."""
        is_typedef = False
        seen_type = False
        while self.peek() is not None:
            t = self.peek()
            w = t.text
            if t.kind != "ident":
                break
            if w == "typedef":
                is_typedef = True
                self.take()
            elif w in _SPEC_WORDS or w in _TYPE_WORDS:
                seen_type = seen_type or w in _TYPE_WORDS
                self.take()
            elif w in ("struct", "union", "enum"):
                self.take()
                if self.is_ident():
                    self.take()
                if self.at("{"):
                    self.skip_braces()
                seen_type = True
            elif w in self.typedefs and not seen_type:
                self.take()
                seen_type = True
            elif not seen_type and self.is_ident() and (self.is_ident(1) or self.at("*", 1)) and w not in KEYWORDS:
                # unknown type name
                self.take()
                seen_type = True
            else:
                break
        return is_typedef

    def skip_braces(self):
        depth = 0
        while True:
            t = self.take()
            if t.text == "{":
                depth += 1
            elif t.text == "}":
                depth -= 1
                if depth == 0:
                    return

    def declarator(self):
        """Parse a (possibly abstract) declarator."""
        d = {"name": None, "function": False, "params": []}
        while self.at("*") or (self.peek() is not None and self.peek().text in ("const", "volatile", "restrict")):
            self.take()
        if self.at("(") and self.at("*", 1):
            self.take("(")
            inner = self.declarator()
            self.take(")")
            d["name"] = inner["name"]
            self.suffixes({"name": None, "function": False, "params": []})
            return d
        if self.is_ident():
            d["name"] = self.take()
        self.suffixes(d)
        return d

    def suffixes(self, d):
        while True:
            if self.at("["):
                self.take()
                if not self.at("]"):
                    self.walk(self.expression())
                self.take("]")
            elif self.at("("):
                self.take()
                d["function"] = True
                d["params"] = self.parameters()
            else:
                return

    def parameters(self):
        params = []
        if self.at(")"):
            self.take()
            return params
        if self.at("void") and self.at(")", 1):
            self.take()
            self.take()
            return params
        while True:
            if self.at("..."):
                self.take()
            else:
                self.specifiers()
                p = self.declarator()
                if p["name"] is not None:
                    params.append(p["name"])
            if self.at(","):
                self.take()
                continue
            self.take(")")
            return params

    def local_declaration(self):
        is_typedef = self.specifiers()
        if self.at(";"):
            self.take()
            return
        names = self.locals.setdefault(self.func, set())
        while True:
            d = self.declarator()
            if d["name"] is not None:
                if is_typedef:
                    self.typedefs.add(d["name"].text)
                elif d["function"]:
                    self.global_kinds.setdefault(d["name"].text, FUNCTION)
                    saved, self.func = self.func, None
                    self.emit(DECLARE, d["name"], FUNCTION)
                    self.func = saved
                else:
                    names.add(d["name"].text)
                    self.emit(DECLARE, d["name"], VARIABLE)
            if self.at("="):
                self.take()
                self.initializer(d["name"], self.func)
            if self.at(","):
                self.take()
                continue
            self.take(";")
            return

    def initializer(self, name_tok, func):
        if self.at("{"):
            node = self.brace_list()
        else:
            node = self.assignment_expr()
        if name_tok is not None:
            self.emit(ASSIGN, name_tok, VARIABLE, null=_is_null(node))
        self.walk(node)

    def brace_list(self):
        self.take("{")
        items = []
        while not self.at("}"):
            if self.at(".") and self.is_ident(1):
                self.take()
                self.take()
                self.take("=")
            elif self.at("["):
                self.take()
                self.walk(self.expression())
                self.take("]")
                self.take("=")
            if self.at("{"):
                items.append(self.brace_list())
            else:
                items.append(self.assignment_expr())
            if self.at(","):
                self.take()
            else:
                break
        self.take("}")
        return ("init", items)

    # statements
    def block(self):
        self.take("{")
        while not self.at("}"):
            if self.peek() is None:
                raise self.error("unterminated block")
            self.statement()
        self.take("}")

    def statement(self):
        t = self.peek()
        if t is None:
            raise self.error("expected statement")
        w = t.text
        if w == "{":
            self.block()
        elif w == ";":
            self.take()
        elif w == "if":
            self.take()
            self.paren_expr()
            self.statement()
            if self.at("else"):
                self.take()
                self.statement()
        elif w == "while":
            self.take()
            self.paren_expr()
            self.statement()
        elif w == "do":
            self.take()
            self.statement()
            self.take("while")
            self.paren_expr()
            self.take(";")
        elif w == "for":
            self.take()
            self.take("(")
            if self.starts_declaration():
                self.local_declaration()
            else:
                if not self.at(";"):
                    self.walk(self.expression())
                self.take(";")
            if not self.at(";"):
                self.walk(self.expression())
            self.take(";")
            if not self.at(")"):
                self.walk(self.expression())
            self.take(")")
            self.statement()
        elif w == "switch":
            self.take()
            self.paren_expr()
            self.statement()
        elif w == "case":
            self.take()
            self.walk(self.conditional())
            self.take(":")
        elif w == "default" and self.at(":", 1):
            self.take()
            self.take()
        elif w == "return":
            self.take()
            if not self.at(";"):
                self.walk(self.expression())
            self.take(";")
        elif w in ("break", "continue"):
            self.take()
            self.take(";")
        elif w == "goto":
            self.take()
            if not self.is_ident():
                raise self.error("goto needs a label")
            self.emit(USE, self.take(), LABEL)
            self.take(";")
        elif self.is_ident() and self.at(":", 1):
            self.emit(DECLARE, self.take(), LABEL)
            self.take(":")
        elif self.starts_declaration():
            self.local_declaration()
        else:
            self.walk(self.expression())
            self.take(";")

    def paren_expr(self):
        self.take("(")
        self.walk(self.expression())
        self.take(")")

    # expressions: small AST of tuples, walked once complete
    def expression(self):
        node = self.assignment_expr()
        while self.at(","):
            self.take()
            node = ("comma", node, self.assignment_expr())
        return node

    def assignment_expr(self):
        lhs = self.conditional()
        t = self.peek()
        if t is not None and t.kind == "punct" and t.text in _ASSIGN_OPS:
            self.take()
            return ("assign", t.text, lhs, self.assignment_expr())
        return lhs

    def conditional(self):
        c = self.binary(1)
        if self.at("?"):
            self.take()
            a = self.expression()
            self.take(":")
            b = self.conditional()
            return ("seq", [c, a, b])
        return c

    def binary(self, min_prec):
        left = self.unary()
        while True:
            t = self.peek()
            if t is None or t.kind != "punct" or t.text not in _BINARY:
                return left
            prec = _BINARY[t.text]
            if prec < min_prec:
                return left
            self.take()
            right = self.binary(prec + 1)
            left = ("seq", [left, right])

    def unary(self):
        t = self.peek()
        if t is None:
            raise self.error("expected expression")
        if t.text in ("++", "--"):
            self.take()
            return ("incdec", self.unary())
        if t.kind == "punct" and t.text in ("&", "*", "-", "+", "!", "~"):
            self.take()
            return ("seq", [self.unary()])
        if t.text == "sizeof":
            self.take()
            if self.at("(") and self.starts_type(1):
                self.take("(")
                self.type_name()
                self.take(")")
                return ("seq", [])
            return ("seq", [self.unary()])
        if self.at("(") and self.starts_type(1) and not (self.is_ident(1) and not self.starts_type(1)):
            self.take("(")
            self.type_name()
            self.take(")")
            if self.at("{"):
                return self.brace_list()
            return ("cast", self.unary())
        return self.postfix(self.primary())

    def type_name(self):
        self.specifiers()
        self.declarator()

    def primary(self):
        t = self.peek()
        if t.kind == "ident" and t.text not in KEYWORDS:
            self.take()
            if t.text in _NULL_WORDS:
                return ("null",)
            return ("name", t)
        if t.kind in ("number", "string", "char"):
            self.take()
            while self.peek() is not None and self.peek().kind == "string":
                self.take()
            if t.kind == "number" and _int_value(t.text) == 0 and re.fullmatch(r"0+[uUlL]*", t.text):
                return ("zero",)
            return ("lit",)
        if t.text == "(":
            self.take()
            node = self.expression()
            self.take(")")
            return node
        raise self.error(f"unexpected {t.text!r} in expression", t)

    def postfix(self, node):
        while True:
            if self.at("("):
                self.take()
                args = []
                if not self.at(")"):
                    args.append(self.assignment_expr())
                    while self.at(","):
                        self.take()
                        args.append(self.assignment_expr())
                self.take(")")
                node = ("call", node, args)
            elif self.at("["):
                self.take()
                idx = self.expression()
                self.take("]")
                node = ("seq", [node, idx])
            elif self.at(".") or self.at("->"):
                self.take()
                if not self.is_ident():
                    raise self.error("expected member name")
                self.take()
                node = ("member", node)
            elif self.at("++") or self.at("--"):
                self.take()
                node = ("incdec", node)
            else:
                return node

    def walk(self, node):
        tag = node[0]
        if tag == "name":
            self.emit(USE, node[1], "ident")
        elif tag in ("lit", "null", "zero"):
            pass
        elif tag == "seq":
            for n in node[1]:
                self.walk(n)
        elif tag in ("member", "cast"):
            self.walk(node[1])
        elif tag == "comma":
            self.walk(node[1])
            self.walk(node[2])
        elif tag == "init":
            for n in node[1]:
                self.walk(n)
        elif tag == "incdec":
            target = node[1]
            if target[0] == "name":
                self.emit(USE, target[1], "ident")
                self.emit(ASSIGN, target[1], VARIABLE)
            else:
                self.walk(target)
        elif tag == "assign":
            _, op, target, value = node
            if target[0] == "name":
                if op != "=":
                    self.emit(USE, target[1], "ident")
                self.emit(ASSIGN, target[1], VARIABLE, null=op == "=" and _is_null(value))
            else:
                self.walk(target)
            self.walk(value)
        elif tag == "call":
            _, callee, args = node
            if callee[0] == "name":
                self.emit(USE, callee[1], "callee")
                if callee[1].text in self.destructors and args:
                    target = _strip_casts(args[0])
                    if target[0] == "name":
                        self.emit(DESTRUCT, target[1], VARIABLE)
                        args = args[1:]
            else:
                self.walk(callee)
            for a in args:
                self.walk(a)
        else:  # pragma: no cover - every AST tag is handled above
            raise AssertionError(tag)


def _strip_casts(node):
    while node[0] == "cast":
        node = node[1]
    return node


def _is_null(node):
    return _strip_casts(node)[0] == "null"


# -- resolution ------------------------------------------------------------

@dataclass
class ParsedUnit:
    path: str
    events: list
    locals: dict
    global_kinds: dict
    options: set


def scan_unit(src: SourceUnit, destructors=DEFAULT_DESTRUCTORS, prefix=DEFAULT_PREFIX) -> ParsedUnit:
    """Preprocess and parse ``src`` without resolving names."""
    pre = preprocess(src, prefix)
    parser = _Parser(pre.tokens, src.path, destructors).parse()
    events = list(parser.events)
    for name, line, pc, seq in pre.defines:
        events.append(_Event(DECLARE, name, VARIABLE, None, line, pc, seq))
        parser.global_kinds.setdefault(name, VARIABLE)
    events.sort(key=lambda e: e.seq)
    return ParsedUnit(src.path, events, parser.locals, parser.global_kinds, pre.options)


def _resolve(unit: ParsedUnit, global_kinds: dict) -> list:
    records = []
    for e in unit.events:
        local_names = unit.locals.get(e.func, set()) if e.func else set()
        if e.hint == LABEL:
            entity = ProgramEntity(e.func or GLOBAL, e.name, LABEL)
        elif e.op == DECLARE and e.hint == FUNCTION:
            entity = ProgramEntity(GLOBAL, e.name, FUNCTION)
        elif e.func is None:
            kind = global_kinds.get(e.name, FUNCTION if e.hint == "callee" else VARIABLE)
            entity = ProgramEntity(GLOBAL, e.name, kind)
        elif e.name in local_names:
            entity = ProgramEntity(e.func, e.name, VARIABLE)
        elif e.name in global_kinds:
            entity = ProgramEntity(GLOBAL, e.name, global_kinds[e.name])
        elif e.hint == "callee":
            entity = ProgramEntity(GLOBAL, e.name, FUNCTION)
        else:
            # undeclared everywhere: attributed to the scope it occurs in
            entity = ProgramEntity(e.func, e.name, VARIABLE)
        if entity.kind == FUNCTION and e.op in (ASSIGN, DESTRUCT):
            entity = ProgramEntity(entity.scope, entity.name, VARIABLE)
        records.append(OperationRecord(e.op, entity, e.pc, (unit.path, e.line), e.null))
    return records


def _check_options(unit: ParsedUnit, options):
    if options is None:
        return
    unknown = sorted(unit.options - set(options))
    if unknown:
        raise UnknownOption(f"{unit.path}: undeclared option(s) {', '.join(unknown)}")


def parse_unit(src: SourceUnit, options=None, destructors=DEFAULT_DESTRUCTORS,
               prefix=DEFAULT_PREFIX, global_kinds=None) -> list:
    """Extract operation records from one source unit, in source order.

    ``options`` (if given) is the declared option set; any other option
    atom raises UnknownOption.  ``global_kinds`` supplies file-scope
    declarations from other units for name resolution.
    """
    unit = scan_unit(src, destructors, prefix)
    _check_options(unit, options)
    kinds = dict(global_kinds or {})
    kinds.update(unit.global_kinds)
    return _resolve(unit, kinds)


def parse_project(srcs: Iterable[SourceUnit], options=None, destructors=DEFAULT_DESTRUCTORS,
                  prefix=DEFAULT_PREFIX) -> list:
    """Records of several units, resolving globals across all of them."""
    units = [scan_unit(s, destructors, prefix) for s in srcs]
    kinds = {}
    for u in units:
        for name, kind in u.global_kinds.items():
            kinds.setdefault(name, kind)
    records = []
    for u in units:
        _check_options(u, options)
        records.extend(_resolve(u, kinds))
    return records


def extract_options(srcs: Iterable[SourceUnit], prefix=DEFAULT_PREFIX) -> list:
    """Sorted, deduplicated option names used in conditional directives."""
    names = set()
    for s in srcs:
        names |= preprocess(s, prefix).options
    return sorted(names)


def presence_blocks(records) -> list:
    """Distinct non-trivial presence conditions of ``records``, in first-seen order."""
    seen = {}
    for r in records:
        if r.pc not in seen and not cond.is_valid(r.pc) and cond.is_satisfiable(r.pc):
            seen[r.pc] = None
    return list(seen)
