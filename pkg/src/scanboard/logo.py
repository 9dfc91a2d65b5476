"""Tokenizer, parser, and evaluator for the keyboard's Logo dialect.

The dialect is the minimal common subset needed to run programs the
keyboard can produce: `to`/`end` procedure definitions, `make "var` /
`:var` variables, `repeat n [block]`, turtle motion and pen commands,
`print`, and infix arithmetic with standard precedence.

Lexical model: identifiers (bare words, `"quoted` words, and `:thing`
references) are runs of ASCII letters only, and numbers are digit runs
with an optional fraction.  Because the two alphabets are disjoint, a
word followed directly by a number ("n4") still tokenizes as two tokens,
which is what lets virtual-keyboard output concatenate without explicit
separator presses.

Turtle conventions: heading 0 points up (north), positive angles turn
clockwise, and a path segment is recorded only for fd/bk motion while
the pen is down (home/setpos jump without drawing).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

OPERATOR_CHARS = "+-*/<>="

# Single-character token kinds, keyed by the character itself.
_PUNCT = {
    "(": "open_paren",
    ")": "close_paren",
    "[": "open_bracket",
    "]": "close_bracket",
}

MAX_CALL_DEPTH = 100


class LogoError(Exception):
    """Tokenize, parse, or runtime error; carries a source offset when known."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.message = message
        self.position = position

    def __str__(self) -> str:
        if self.position is None:
            return self.message
        return f"{self.message} (at offset {self.position})"


@dataclass(frozen=True)
class Token:
    kind: str   # word | quoted_word | thing_ref | number | operator |
                # open_paren | close_paren | open_bracket | close_bracket | newline
    text: str = ""       # payload for word-likes and operators
    value: float = 0.0   # payload for numbers
    pos: int = 0         # source offset, for error reporting

    def _identity(self) -> tuple:
        # Position is provenance, not identity; numbers are identified
        # by value so "30" and "30.0" lex to equal tokens.
        if self.kind == "number":
            return (self.kind, self.value)
        if self.kind in ("word", "quoted_word", "thing_ref", "operator"):
            return (self.kind, self.text)
        return (self.kind,)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Token):
            return NotImplemented
        return self._identity() == other._identity()

    def __hash__(self) -> int:
        return hash(self._identity())


def _is_word_char(c: str) -> bool:
    return c.isascii() and c.isalpha()


def tokenize(source: str) -> list[Token]:
    """Lex Logo source into tokens, longest match first.

    Words are lowercased (the language is case-insensitive).  Raises
    LogoError for stray characters and for `"` or `:` not followed by a
    letter.
    """
    tokens: list[Token] = []
    i = 0
    n = len(source)
    while i < n:
        c = source[i]
        if c == "\n":
            tokens.append(Token("newline", pos=i))
            i += 1
        elif c in " \t\r":
            i += 1
        elif c in _PUNCT:
            tokens.append(Token(_PUNCT[c], text=c, pos=i))
            i += 1
        elif c in OPERATOR_CHARS:
            tokens.append(Token("operator", text=c, pos=i))
            i += 1
        elif c in "\":":
            start = i
            i += 1
            j = i
            while j < n and _is_word_char(source[j]):
                j += 1
            if j == i:
                what = "quote" if c == "\"" else "colon"
                raise LogoError(f"{what} must be followed by a word", start)
            kind = "quoted_word" if c == "\"" else "thing_ref"
            tokens.append(Token(kind, text=source[i:j].lower(), pos=start))
            i = j
        elif _is_word_char(c):
            j = i
            while j < n and _is_word_char(source[j]):
                j += 1
            tokens.append(Token("word", text=source[i:j].lower(), pos=i))
            i = j
        elif c.isdigit() or (c == "." and i + 1 < n and source[i + 1].isdigit()):
            j = i
            while j < n and source[j].isdigit():
                j += 1
            if j < n and source[j] == "." and j + 1 < n and source[j + 1].isdigit():
                j += 1
                while j < n and source[j].isdigit():
                    j += 1
            tokens.append(Token("number", text=source[i:j],
                                value=float(source[i:j]), pos=i))
            i = j
        else:
            raise LogoError(f"stray character {c!r}", i)
    return tokens


def format_number(x: float) -> str:
    """Canonical text for a numeric value: integral floats drop the point."""
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def token_text(tok: Token) -> str:
    """The canonical source text of a single token."""
    if tok.kind == "word":
        return tok.text
    if tok.kind == "quoted_word":
        return "\"" + tok.text
    if tok.kind == "thing_ref":
        return ":" + tok.text
    if tok.kind == "number":
        return format_number(tok.value)
    if tok.kind == "operator":
        return tok.text
    if tok.kind == "newline":
        return "\n"
    return tok.text  # parens and brackets carry their character


def render_tokens(tokens: list[Token]) -> str:
    """Render a token list back to source with single-space separation."""
    return " ".join(token_text(t) for t in tokens)


@dataclass(frozen=True)
class ListValue:
    """A Logo list literal, kept as its raw tokens so blocks can be re-run."""

    tokens: tuple[Token, ...]

    def text(self) -> str:
        return render_tokens(list(self.tokens))


Value = float | str | ListValue  # number | word | list


def format_value(v: Value) -> str:
    if isinstance(v, float):
        return format_number(v)
    if isinstance(v, ListValue):
        return v.text()
    return v


@dataclass(frozen=True)
class Procedure:
    name: str
    params: tuple[str, ...]
    body: tuple[Token, ...]


@dataclass
class TurtleState:
    x: float = 0.0
    y: float = 0.0
    heading: float = 0.0       # degrees, 0 = up/north, clockwise-positive
    pen_down: bool = True
    segments: list[tuple[float, float, float, float]] = field(default_factory=list)


class Environment:
    """Interpreter state: variables, procedures, turtle, and print log.

    Mutable and single-threaded; run() applies effects in place so that a
    failed program keeps everything it did before the error.
    """

    def __init__(self) -> None:
        self.variables: dict[str, Value] = {}
        self.procedures: dict[str, Procedure] = {}
        self.turtle = TurtleState()
        self.output_log: list[str] = []

    def define(self, proc: Procedure) -> None:
        """Register a procedure; redefinition replaces the old body."""
        if proc.name in BUILTIN_ARITY:
            raise LogoError(f"{proc.name} is a built-in and cannot be redefined")
        self.procedures[proc.name] = proc


@dataclass
class RunReport:
    """What one run() call produced: new segments, printed lines, cs flag."""

    segments: list[tuple[float, float, float, float]] = field(default_factory=list)
    printed: list[str] = field(default_factory=list)
    cleared: bool = False


# Arity of every built-in command (all are statements; none output a value).
BUILTIN_ARITY = {
    "fd": 1, "forward": 1, "bk": 1, "back": 1,
    "rt": 1, "right": 1, "lt": 1, "left": 1,
    "pu": 0, "penup": 0, "pd": 0, "pendown": 0,
    "cs": 0, "clearscreen": 0, "home": 0,
    "setheading": 1, "setpos": 1,
    "print": 1, "make": 2, "repeat": 2,
    "to": 0, "end": 0,  # syntax words, handled specially
}


class _Evaluator:
    """Cursor-based evaluator over a token list."""

    def __init__(self, env: Environment, report: RunReport, depth: int = 0):
        self.env = env
        self.report = report
        self.depth = depth

    # --- statement sequencing ----------------------------------------

    def run_sequence(self, tokens: list[Token], top_level: bool) -> None:
        pos = 0
        while pos < len(tokens):
            tok = tokens[pos]
            if tok.kind == "newline":
                pos += 1
                continue
            if tok.kind == "word" and tok.text == "to":
                if not top_level:
                    raise LogoError("to is only allowed at the top level", tok.pos)
                pos = self._capture_procedure(tokens, pos)
                continue
            if tok.kind == "word" and tok.text == "end":
                raise LogoError("end without to", tok.pos)
            pos = self._run_instruction(tokens, pos)

    def _capture_procedure(self, tokens: list[Token], pos: int) -> int:
        start = tokens[pos]
        pos += 1  # past 'to'
        if pos >= len(tokens) or tokens[pos].kind != "word":
            raise LogoError("to needs a procedure name", start.pos)
        name = tokens[pos].text
        if name in BUILTIN_ARITY:
            raise LogoError(f"{name} is a built-in and cannot be redefined",
                            tokens[pos].pos)
        pos += 1
        params = []
        while pos < len(tokens) and tokens[pos].kind == "thing_ref":
            params.append(tokens[pos].text)
            pos += 1
        # Body runs to the matching top-level 'end'; brackets shield any
        # 'end' word inside a list literal.
        body_start = pos
        depth = 0
        while pos < len(tokens):
            tok = tokens[pos]
            if tok.kind == "open_bracket":
                depth += 1
            elif tok.kind == "close_bracket":
                depth -= 1
            elif tok.kind == "word" and tok.text == "end" and depth == 0:
                body = tuple(tokens[body_start:pos])
                self.env.define(Procedure(name=name, params=tuple(params), body=body))
                return pos + 1
            pos += 1
        raise LogoError(f"to {name} has no matching end", start.pos)

    def _run_instruction(self, tokens: list[Token], pos: int) -> int:
        tok = tokens[pos]
        if tok.kind != "word":
            raise LogoError(
                f"you don't say what to do with {token_text(tok)}", tok.pos)
        name = tok.text
        pos += 1
        if name in BUILTIN_ARITY:
            args = []
            for _ in range(BUILTIN_ARITY[name]):
                value, pos = self._expression(tokens, pos, name)
                args.append(value)
            self._apply_builtin(name, args, tok)
            return pos
        proc = self.env.procedures.get(name)
        if proc is None:
            raise LogoError(f"I don't know how to {name}", tok.pos)
        args = []
        for _ in range(len(proc.params)):
            value, pos = self._expression(tokens, pos, name)
            args.append(value)
        self._call_procedure(proc, args)
        return pos

    def _call_procedure(self, proc: Procedure, args: list[Value]) -> None:
        if self.depth + 1 > MAX_CALL_DEPTH:
            raise LogoError(
                f"procedure calls nested deeper than {MAX_CALL_DEPTH}")
        saved: dict[str, tuple[bool, Value | None]] = {}
        for param, arg in zip(proc.params, args):
            saved[param] = (param in self.env.variables,
                            self.env.variables.get(param))
            self.env.variables[param] = arg
        inner = _Evaluator(self.env, self.report, self.depth + 1)
        try:
            inner.run_sequence(list(proc.body), top_level=False)
        finally:
            for param, (existed, old) in saved.items():
                if existed:
                    self.env.variables[param] = old  # type: ignore[assignment]
                else:
                    self.env.variables.pop(param, None)

    # --- expressions ---------------------------------------------------
    # expr := additive ((< | > | =) additive)*
    # additive := multiplicative ((+ | -) multiplicative)*
    # multiplicative := unary ((* | /) unary)*
    # unary := - unary | primary
    # primary := number | "word | :thing | ( expr ) | [ list ]

    def _expression(self, tokens: list[Token], pos: int, needer: str) -> tuple[Value, int]:
        if pos >= len(tokens) or tokens[pos].kind == "newline":
            raise LogoError(f"not enough inputs to {needer}")
        return self._comparison(tokens, pos)

    def _comparison(self, tokens: list[Token], pos: int) -> tuple[Value, int]:
        left, pos = self._additive(tokens, pos)
        while pos < len(tokens) and tokens[pos].kind == "operator" \
                and tokens[pos].text in "<>=":
            op = tokens[pos]
            right, pos = self._additive(tokens, pos + 1)
            left = self._compare(op, left, right)
        return left, pos

    def _additive(self, tokens: list[Token], pos: int) -> tuple[Value, int]:
        left, pos = self._multiplicative(tokens, pos)
        while pos < len(tokens) and tokens[pos].kind == "operator" \
                and tokens[pos].text in "+-":
            op = tokens[pos]
            right, pos = self._multiplicative(tokens, pos + 1)
            left = self._arith(op, left, right)
        return left, pos

    def _multiplicative(self, tokens: list[Token], pos: int) -> tuple[Value, int]:
        left, pos = self._unary(tokens, pos)
        while pos < len(tokens) and tokens[pos].kind == "operator" \
                and tokens[pos].text in "*/":
            op = tokens[pos]
            right, pos = self._unary(tokens, pos + 1)
            left = self._arith(op, left, right)
        return left, pos

    def _unary(self, tokens: list[Token], pos: int) -> tuple[Value, int]:
        if pos < len(tokens) and tokens[pos].kind == "operator" \
                and tokens[pos].text == "-":
            op = tokens[pos]
            value, pos = self._unary(tokens, pos + 1)
            return -self._need_number(value, op), pos
        return self._primary(tokens, pos)

    def _primary(self, tokens: list[Token], pos: int) -> tuple[Value, int]:
        if pos >= len(tokens):
            raise LogoError("expression ends unexpectedly")
        tok = tokens[pos]
        if tok.kind == "number":
            return tok.value, pos + 1
        if tok.kind == "quoted_word":
            return tok.text, pos + 1
        if tok.kind == "thing_ref":
            if tok.text not in self.env.variables:
                raise LogoError(f"no value for :{tok.text}", tok.pos)
            return self.env.variables[tok.text], pos + 1
        if tok.kind == "open_paren":
            value, pos = self._comparison(tokens, pos + 1)
            if pos >= len(tokens) or tokens[pos].kind != "close_paren":
                raise LogoError("unclosed parenthesis", tok.pos)
            return value, pos + 1
        if tok.kind == "open_bracket":
            inner, pos = self._capture_list(tokens, pos)
            return ListValue(tokens=tuple(inner)), pos
        if tok.kind == "word":
            raise LogoError(f"{tok.text} does not output a value", tok.pos)
        raise LogoError(f"unexpected {token_text(tok)!r} in expression", tok.pos)

    @staticmethod
    def _capture_list(tokens: list[Token], pos: int) -> tuple[list[Token], int]:
        opener = tokens[pos]
        depth = 0
        i = pos
        while i < len(tokens):
            if tokens[i].kind == "open_bracket":
                depth += 1
            elif tokens[i].kind == "close_bracket":
                depth -= 1
                if depth == 0:
                    return tokens[pos + 1:i], i + 1
            i += 1
        raise LogoError("unclosed bracket", opener.pos)

    # --- operators -------------------------------------------------------

    def _need_number(self, v: Value, tok: Token | None) -> float:
        if not isinstance(v, float):
            raise LogoError(f"expected a number, got {format_value(v)}",
                            tok.pos if tok else None)
        return v

    def _arith(self, op: Token, left: Value, right: Value) -> float:
        a = self._need_number(left, op)
        b = self._need_number(right, op)
        if op.text == "+":
            result = a + b
        elif op.text == "-":
            result = a - b
        elif op.text == "*":
            result = a * b
        else:
            if b == 0:
                raise LogoError("division by zero", op.pos)
            result = a / b
        if not math.isfinite(result):
            raise LogoError("arithmetic overflow", op.pos)
        return result

    def _compare(self, op: Token, left: Value, right: Value) -> str:
        if op.text == "=":
            result = left == right
        else:
            a = self._need_number(left, op)
            b = self._need_number(right, op)
            result = a < b if op.text == "<" else a > b
        return "true" if result else "false"

    # --- built-ins ---------------------------------------------------

    def _apply_builtin(self, name: str, args: list[Value], tok: Token) -> None:
        turtle = self.env.turtle
        if name in ("fd", "forward"):
            self._move(self._need_number(args[0], tok))
        elif name in ("bk", "back"):
            self._move(-self._need_number(args[0], tok))
        elif name in ("rt", "right"):
            turtle.heading = (turtle.heading + self._need_number(args[0], tok)) % 360.0
        elif name in ("lt", "left"):
            turtle.heading = (turtle.heading - self._need_number(args[0], tok)) % 360.0
        elif name in ("pu", "penup"):
            turtle.pen_down = False
        elif name in ("pd", "pendown"):
            turtle.pen_down = True
        elif name in ("cs", "clearscreen"):
            turtle.segments.clear()
            turtle.x = turtle.y = 0.0
            turtle.heading = 0.0
            turtle.pen_down = True
            self.report.cleared = True
            self.report.segments.clear()
        elif name == "home":
            turtle.x = turtle.y = 0.0
            turtle.heading = 0.0
        elif name == "setheading":
            turtle.heading = self._need_number(args[0], tok) % 360.0
        elif name == "setpos":
            x, y = self._pos_pair(args[0], tok)
            turtle.x, turtle.y = x, y
        elif name == "print":
            line = format_value(args[0])
            self.env.output_log.append(line)
            self.report.printed.append(line)
        elif name == "make":
            varname = args[0]
            if not isinstance(varname, str):
                raise LogoError("make needs a word as its first input", tok.pos)
            self.env.variables[varname] = args[1]
        elif name == "repeat":
            count = math.floor(self._need_number(args[0], tok))
            block = args[1]
            if not isinstance(block, ListValue):
                raise LogoError("repeat needs a [block] as its second input", tok.pos)
            for _ in range(max(0, count)):
                self.run_sequence(list(block.tokens), top_level=False)
        else:  # pragma: no cover - dispatch table and arity map agree
            raise LogoError(f"unhandled builtin {name}", tok.pos)

    def _move(self, dist: float) -> None:
        turtle = self.env.turtle
        rad = math.radians(turtle.heading)
        nx = turtle.x + dist * math.sin(rad)
        ny = turtle.y + dist * math.cos(rad)
        if turtle.pen_down:
            seg = (turtle.x, turtle.y, nx, ny)
            turtle.segments.append(seg)
            self.report.segments.append(seg)
        turtle.x, turtle.y = nx, ny

    def _pos_pair(self, v: Value, tok: Token) -> tuple[float, float]:
        if not isinstance(v, ListValue):
            raise LogoError("setpos needs an [x y] list", tok.pos)
        values = []
        pos = 0
        toks = list(v.tokens)
        while pos < len(toks):
            value, pos = self._comparison(toks, pos)
            values.append(value)
        if len(values) != 2 or not all(isinstance(n, float) for n in values):
            raise LogoError("setpos needs exactly two numbers", tok.pos)
        return values[0], values[1]  # type: ignore[return-value]


def run(source: str, env: Environment) -> RunReport:
    """Tokenize and execute every top-level instruction of `source`.

    Effects apply to `env` in place.  The first error aborts the rest of
    the program (raising LogoError) but keeps everything already done.
    """
    tokens = tokenize(source)
    report = RunReport()
    evaluator = _Evaluator(env, report)
    try:
        evaluator.run_sequence(tokens, top_level=True)
    except RecursionError:
        raise LogoError("program recursed too deeply") from None
    return report


def define(env: Environment, proc: Procedure) -> None:
    """Register `proc` in `env`; rejects built-in name collisions."""
    env.define(proc)


def segments_to_svg(segments: list[tuple[float, float, float, float]],
                    width: float, height: float) -> str:
    """Render path segments as an SVG document.

    The turtle origin maps to the canvas center and the y-axis flips so
    that heading 0 (up) draws upward on screen.
    """
    if width <= 0 or height <= 0:
        raise ValueError("canvas dimensions must be positive")
    cx, cy = width / 2.0, height / 2.0

    def fmt(x: float) -> str:
        return format_number(round(x, 6))

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{fmt(width)}" height="{fmt(height)}" '
        f'viewBox="0 0 {fmt(width)} {fmt(height)}">',
        f'  <rect x="0" y="0" width="{fmt(width)}" height="{fmt(height)}" fill="white"/>',
    ]
    for x0, y0, x1, y1 in segments:
        lines.append(
            f'  <line x1="{fmt(cx + x0)}" y1="{fmt(cy - y0)}" '
            f'x2="{fmt(cx + x1)}" y2="{fmt(cy - y1)}" '
            f'stroke="black" stroke-width="1"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
