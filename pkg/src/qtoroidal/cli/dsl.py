"""Relation-script language.

    stmt  := "check" IDENT "{" (key "=" value)* "}"
    value := integer | monomial ("q^-2", "-q^1/2") | range "a..b" | list "[..]"
             | word ("series", "+", "on") | call "basis(deg<=6)"

Comments start with ``#``; statements are separated by newlines, a
statement body may span lines.  ``parse(format_script(s)) == s`` holds for
every script.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..qscalar import QScalar, parse_monomial
from ..toroidal import DEFAULTS, RELATION_IDS


class DslError(Exception):
    def __init__(self, message: str, line: int, col: int, kind: str = "syntax"):
        super().__init__(message)
        self.message, self.line, self.col, self.kind = message, line, col, kind

    def __str__(self):
        return f"{self.kind} error at line {self.line}, column {self.col}: {self.message}"


# -- AST -----------------------------------------------------------------------------


@dataclass(frozen=True)
class Mono:
    text: str

    @property
    def value(self) -> QScalar:
        return parse_monomial(self.text)


@dataclass(frozen=True)
class Range:
    lo: int
    hi: int


@dataclass(frozen=True)
class Word:
    text: str


@dataclass(frozen=True)
class ListV:
    items: tuple


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple  # (key, op, value) with op in {"=", "<="}


@dataclass(frozen=True)
class Check:
    name: str
    params: tuple  # ordered (key, value) pairs
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)

    def get(self, key, default=None):
        for k, v in self.params:
            if k == key:
                return v
        return default


@dataclass(frozen=True)
class Script:
    checks: tuple = ()


# -- known checks and their parameters -------------------------------------------------

CONVENTION_KEYS = ("uv", "flip", "phi")
RELATION_KEYS = ("states", "window", "order") + CONVENTION_KEYS

SUITES = {
    "heisenberg": ("max_mode", "max_degree"),
    "exchange": ("kmax", "max_degree"),
    "contraction": ("window", "max_degree"),
    "limits": ("window", "max_degree"),
    "lemma4": ("order", "random_pairs", "seed"),
    "prop5": ("window", "max_degree"),
    "lemma7": (),
    "quartic_bracket": (),
    "serre_quartic": ("budget", "sign", "i", "j") + CONVENTION_KEYS,
    "gs14_display": ("window", "order", "states"),
    "gs16_conventions": ("window", "states", "phi"),
    "h_bracket": ("states", "perturb"),
}


def allowed_keys(name: str) -> tuple:
    if name in RELATION_IDS:
        return tuple(DEFAULTS[name]) + RELATION_KEYS
    return SUITES[name]


def known_checks() -> list:
    return list(RELATION_IDS) + list(SUITES)


# -- lexer -----------------------------------------------------------------------------

_TOKENS = [
    ("WS", r"[ \t\r]+"),
    ("COMMENT", r"#[^\n]*"),
    ("NL", r"\n"),
    ("RANGE", r"-?\d+\.\.-?\d+"),
    ("MONO", r"[+-]?\d*q(?:\^-?\d+(?:/2)?)?(?![A-Za-z0-9_])"),
    ("INT", r"[+-]?\d+(?![A-Za-z0-9_.])"),
    ("SIGN", r"[+-](?![0-9q])"),
    ("LE", r"<="),
    ("PUNCT", r"[{}\[\](),=]"),
    ("IDENT", r"[A-Za-z_][A-Za-z0-9_]*"),
]
_LEX = re.compile("|".join(f"(?P<{n}>{p})" for n, p in _TOKENS))


@dataclass
class Tok:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list:
    out, pos, line, start = [], 0, 1, 0
    while pos < len(text):
        m = _LEX.match(text, pos)
        if not m:
            raise DslError(f"unexpected character {text[pos]!r}", line, pos - start + 1)
        kind = m.lastgroup
        if kind == "NL":
            out.append(Tok("NL", "\n", line, pos - start + 1))
            line, start = line + 1, m.end()
        elif kind not in ("WS", "COMMENT"):
            out.append(Tok(kind, m.group(), line, pos - start + 1))
        pos = m.end()
    out.append(Tok("EOF", "", line, pos - start + 1))
    return out


# -- parser ----------------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    def peek(self, skip_nl=True) -> Tok:
        j = self.i
        while skip_nl and self.toks[j].kind == "NL":
            j += 1
        return self.toks[j]

    def next(self, skip_nl=True) -> Tok:
        while skip_nl and self.toks[self.i].kind == "NL":
            self.i += 1
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> Tok:
        t = self.next()
        if t.text != text:
            raise DslError(f"expected {text!r}, got {t.text or 'end of input'!r}", t.line, t.col)
        return t

    def script(self) -> Script:
        checks = []
        while self.peek().kind != "EOF":
            checks.append(self.stmt())
            t = self.peek(skip_nl=False)
            if t.kind not in ("NL", "EOF"):
                raise DslError("statements must be separated by newlines", t.line, t.col)
        return Script(tuple(checks))

    def stmt(self) -> Check:
        kw = self.next()
        if kw.text != "check":
            raise DslError(f"expected 'check', got {kw.text!r}", kw.line, kw.col)
        name = self.next()
        if name.kind != "IDENT":
            raise DslError(f"expected a check name, got {name.text!r}", name.line, name.col)
        if name.text not in known_checks():
            raise DslError(f"unknown identifier {name.text!r}", name.line, name.col)
        self.expect("{")
        params = []
        keys = allowed_keys(name.text)
        while self.peek().text != "}":
            key = self.next()
            if key.kind != "IDENT":
                raise DslError(f"expected a parameter name, got {key.text or 'end of input'!r}", key.line, key.col)
            if key.text not in keys:
                raise DslError(f"unknown parameter {key.text!r} for {name.text}", key.line, key.col)
            if any(k == key.text for k, _ in params):
                raise DslError(f"duplicate parameter {key.text!r}", key.line, key.col)
            self.expect("=")
            vt = self.peek()
            value = self.value()
            _validate(key.text, value, vt)
            params.append((key.text, value))
        self.expect("}")
        return Check(name.text, tuple(params), name.line, name.col)

    def value(self):
        t = self.next()
        if t.kind == "INT":
            return int(t.text)
        if t.kind == "MONO":
            return Mono(t.text)
        if t.kind == "RANGE":
            lo, hi = t.text.split("..")
            return Range(int(lo), int(hi))
        if t.kind == "SIGN":
            return Word(t.text)
        if t.text == "[":
            items = []
            while self.peek().text != "]":
                items.append(self.value())
                if self.peek().text == ",":
                    self.next()
            self.expect("]")
            return ListV(tuple(items))
        if t.kind == "IDENT":
            if self.peek(skip_nl=False).text != "(":
                return Word(t.text)
            self.next()
            args = []
            while self.peek().text != ")":
                k = self.next()
                if k.kind != "IDENT":
                    raise DslError(f"expected an argument name, got {k.text!r}", k.line, k.col)
                op = self.next()
                if op.text not in ("=", "<="):
                    raise DslError(f"expected '=' or '<=', got {op.text!r}", op.line, op.col)
                args.append((k.text, op.text, self.value()))
                if self.peek().text == ",":
                    self.next()
            self.expect(")")
            return Call(t.text, tuple(args))
        raise DslError(f"expected a value, got {t.text or 'end of input'!r}", t.line, t.col)


# -- semantic checks -------------------------------------------------------------------

_CHOICES = {
    "uv": ("asWritten", "negated"),
    "flip": ("on", "off"),
    "phi": ("uv", "heisenberg"),
    "form": ("printed", "series"),
}
_NONNEG = ("window", "order", "max_degree", "max_mode", "kmax", "random_pairs", "seed", "budget")


def _ints(value) -> list:
    if isinstance(value, int):
        return [value]
    if isinstance(value, Range):
        return list(range(value.lo, value.hi + 1))
    if isinstance(value, ListV):
        out = []
        for v in value.items:
            out.extend(_ints(v))
        return out
    raise TypeError


def _validate(key: str, value, tok: Tok):
    def bad(msg):
        raise DslError(msg, tok.line, tok.col, "semantic")

    if key in ("i", "j"):
        try:
            vals = _ints(value)
        except TypeError:
            bad(f"{key} must be an index or list of indices")
        if any(v not in (0, 1) for v in vals):
            bad("index out of {0,1}")
    elif key in _NONNEG:
        if not isinstance(value, int) or value < 0:
            bad(f"{key} must be a non-negative integer")
    elif key in ("m", "n", "mp"):
        try:
            _ints(value)
        except TypeError:
            bad(f"{key} must be an integer, range or list")
    elif key == "sign":
        items = value.items if isinstance(value, ListV) else (value,)
        for v in items:
            if not (isinstance(v, Word) and v.text in ("+", "-")) and v not in (1, -1):
                bad("sign must be + or -")
    elif key in _CHOICES:
        if not isinstance(value, Word) or value.text not in _CHOICES[key]:
            bad(f"{key} must be one of {', '.join(_CHOICES[key])}")
    elif key == "states":
        if not isinstance(value, Call) or value.name != "basis":
            bad("states must be basis(deg<=N, ...)")
        for k, op, v in value.args:
            if k not in ("deg", "lattice", "sample") or not isinstance(v, int) or v < 0:
                bad(f"bad basis argument {k}{op}{format_value(v)}")
        if not any(k == "deg" for k, _, _ in value.args):
            bad("basis() needs deg<=N")
    elif key == "perturb":
        if not isinstance(value, (int, Mono)):
            bad("perturb must be a monomial")
        try:
            ok = value.value if isinstance(value, Mono) else QScalar(value)
        except ValueError as exc:
            bad(str(exc))
        if not ok:
            bad("perturb must be nonzero")


# -- printing --------------------------------------------------------------------------


def format_value(v) -> str:
    if isinstance(v, bool):
        raise TypeError("booleans are not script values")
    if isinstance(v, int):
        return str(v)
    if isinstance(v, (Mono, Word)):
        return v.text
    if isinstance(v, Range):
        return f"{v.lo}..{v.hi}"
    if isinstance(v, ListV):
        return "[" + ", ".join(format_value(x) for x in v.items) + "]"
    if isinstance(v, Call):
        return f"{v.name}(" + ", ".join(f"{k}{op}{format_value(x)}" for k, op, x in v.args) + ")"
    raise TypeError(f"not a script value: {v!r}")


def format_check(c: Check) -> str:
    if not c.params:
        return f"check {c.name} {{}}"
    body = " ".join(f"{k}={format_value(v)}" for k, v in c.params)
    return f"check {c.name} {{ {body} }}"


def format_script(s: Script) -> str:
    return "".join(format_check(c) + "\n" for c in s.checks)


def parse(text: str) -> Script:
    return _Parser(text).script()
