"""Concrete syntax for the formula language.

Grammar (ASCII only, whitespace-insensitive outside tokens):

    formula  := imp ("<->" formula)?                  right-associative
    imp      := or ("->" imp)?                        right-associative
    or       := and ("|" and)*                        left-associative
    and      := unary ("&" unary)*                    left-associative
    unary    := "~" unary | "<" coalition ">" unary | "[" coalition "]" unary
              | "pref" "(" AGENT ")" unary | "Pref" "(" AGENT ")" unary
              | primary
    primary  := "true" | "false" | "(" formula ")"
              | "rep" "(" AGENT "," OUTCOME "," OUTCOME ")"
              | macro | OUTCOME
    coalition := "{" (AGENT ("," AGENT)*)? "}" | "N"

Macros — ballot(i,[...]), ballotAll([[...],...]), better(i,f,g),
trueprofile([[...],...]), citsov, nodict, br(i), dom, mon, strproof,
scf("path") — are expanded at parse time by the encoding builders, so the
evaluator only ever sees the core grammar.

`format_formula` prints the canonical minimally-parenthesized core form;
parsing it back yields a structurally equal tree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

from . import encodings
from .core import InvalidDomain, LinearOrder, Profile, ScfTable
from .logic import (
    And,
    Box,
    Diamond,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    Out,
    Pref,
    PrefBox,
    Rep,
    Top,
    TRUE,
)

__all__ = [
    "SourceSpan",
    "ParseError",
    "Context",
    "parse",
    "format_formula",
]

KEYWORDS = frozenset(
    {
        "true",
        "false",
        "N",
        "rep",
        "pref",
        "Pref",
        "ballot",
        "ballotAll",
        "better",
        "trueprofile",
        "citsov",
        "nodict",
        "br",
        "dom",
        "mon",
        "strproof",
        "scf",
    }
)

_WORD_RE = re.compile(r"[A-Za-z0-9]+")


@dataclass(frozen=True)
class SourceSpan:
    """Byte offsets [start, end) into the parsed text."""

    start: int
    end: int

    def __post_init__(self) -> None:
        if self.start < 0 or self.end < self.start:
            raise ValueError(f"bad span {self.start}..{self.end}")

    def __str__(self) -> str:
        return f"{self.start}..{self.end}"


class ParseError(ValueError):
    def __init__(self, message: str, span: SourceSpan):
        self.span = span
        super().__init__(f"{message} at {span}")
        self.message = message


@dataclass(frozen=True)
class Context:
    """Parsing context: agent count, outcome names, and an optional loader
    resolving scf("path") macros to tables."""

    n: int
    outcomes: tuple[str, ...]
    scf_loader: Optional[Callable[[str], ScfTable]] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "outcomes", tuple(self.outcomes))
        if self.n < 1:
            raise InvalidDomain(f"need at least one agent, got n={self.n}")
        if not self.outcomes:
            raise InvalidDomain("outcome set must be non-empty")
        for name in self.outcomes:
            if not _WORD_RE.fullmatch(name):
                raise InvalidDomain(f"invalid outcome name: {name!r}")
            if name in KEYWORDS:
                raise InvalidDomain(f"outcome name {name!r} collides with a keyword")
        if len(set(self.outcomes)) != len(self.outcomes):
            raise InvalidDomain(f"duplicate outcome names in {self.outcomes}")


@dataclass(frozen=True)
class _Token:
    kind: str  # word | number | string | symbol | eof
    text: str
    span: SourceSpan


_SYMBOLS = ("<->", "->", "~", "&", "|", "<", ">", "[", "]", "{", "}", "(", ")", ",")


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    length = len(text)
    while i < length:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "'\"":
            end = text.find(ch, i + 1)
            if end < 0:
                raise ParseError("unterminated string literal", SourceSpan(i, length))
            tokens.append(_Token("string", text[i + 1 : end], SourceSpan(i, end + 1)))
            i = end + 1
            continue
        word = _WORD_RE.match(text, i)
        if word:
            kind = "number" if word.group().isdigit() else "word"
            tokens.append(_Token(kind, word.group(), SourceSpan(i, word.end())))
            i = word.end()
            continue
        for sym in _SYMBOLS:
            if text.startswith(sym, i):
                tokens.append(_Token("symbol", sym, SourceSpan(i, i + len(sym))))
                i += len(sym)
                break
        else:
            raise ParseError(f"unexpected character {ch!r}", SourceSpan(i, i + 1))
    tokens.append(_Token("eof", "", SourceSpan(length, length)))
    return tokens


class _Parser:
    def __init__(self, text: str, ctx: Context):
        self.text = text
        self.ctx = ctx
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        token = self.tokens[self.pos]
        if token.kind != "eof":
            self.pos += 1
        return token

    def expect(self, text: str) -> _Token:
        token = self.peek()
        if token.kind == "symbol" and token.text == text:
            return self.advance()
        raise ParseError(f"expected {text!r}, found {token.text or 'end of input'!r}", token.span)

    def at_symbol(self, text: str) -> bool:
        token = self.peek()
        return token.kind == "symbol" and token.text == text

    # --- grammar ---------------------------------------------------------

    def formula(self) -> Formula:
        left = self.imp()
        if self.at_symbol("<->"):
            self.advance()
            return Iff(left, self.formula())
        return left

    def imp(self) -> Formula:
        left = self.or_()
        if self.at_symbol("->"):
            self.advance()
            return Implies(left, self.imp())
        return left

    def or_(self) -> Formula:
        node = self.and_()
        while self.at_symbol("|"):
            self.advance()
            node = Or(node, self.and_())
        return node

    def and_(self) -> Formula:
        node = self.unary()
        while self.at_symbol("&"):
            self.advance()
            node = And(node, self.unary())
        return node

    def unary(self) -> Formula:
        token = self.peek()
        if self.at_symbol("~"):
            self.advance()
            return Not(self.unary())
        if self.at_symbol("<"):
            self.advance()
            coalition = self.coalition()
            self.expect(">")
            return Diamond(coalition, self.unary())
        if self.at_symbol("["):
            self.advance()
            coalition = self.coalition()
            self.expect("]")
            return Box(coalition, self.unary())
        if token.kind == "word" and token.text in ("pref", "Pref"):
            self.advance()
            self.expect("(")
            agent = self.agent()
            self.expect(")")
            child = self.unary()
            return Pref(agent, child) if token.text == "pref" else PrefBox(agent, child)
        return self.primary()

    def coalition(self) -> frozenset[int]:
        token = self.peek()
        if token.kind == "word" and token.text == "N":
            self.advance()
            return frozenset(range(1, self.ctx.n + 1))
        if self.at_symbol("{"):
            self.advance()
            members: set[int] = set()
            if not self.at_symbol("}"):
                members.add(self.agent())
                while self.at_symbol(","):
                    self.advance()
                    members.add(self.agent())
            self.expect("}")
            return frozenset(members)
        raise ParseError(
            f"malformed coalition: expected '{{' or 'N', found {token.text or 'end of input'!r}",
            token.span,
        )

    def agent(self) -> int:
        token = self.peek()
        if token.kind != "number":
            raise ParseError(
                f"expected an agent number, found {token.text or 'end of input'!r}", token.span
            )
        value = int(token.text)
        if not 1 <= value <= self.ctx.n:
            raise ParseError(f"unknown agent token {token.text!r} (agents are 1..{self.ctx.n})", token.span)
        self.advance()
        return value

    def outcome(self) -> str:
        token = self.peek()
        if token.kind in ("word", "number") and token.text in self.ctx.outcomes:
            self.advance()
            return token.text
        raise ParseError(
            f"unknown outcome token {token.text or 'end of input'!r}"
            f" (outcomes are {', '.join(self.ctx.outcomes)})",
            token.span,
        )

    def ranking(self) -> LinearOrder:
        start = self.expect("[")
        names = [self.outcome()]
        while self.at_symbol(","):
            self.advance()
            names.append(self.outcome())
        end = self.expect("]")
        if sorted(names) != sorted(self.ctx.outcomes):
            raise ParseError(
                "ranking is not a permutation of the outcome set",
                SourceSpan(start.span.start, end.span.end),
            )
        return LinearOrder(tuple(names))

    def profile_literal(self) -> Profile:
        start = self.expect("[")
        orders = [self.ranking()]
        while self.at_symbol(","):
            self.advance()
            orders.append(self.ranking())
        end = self.expect("]")
        if len(orders) != self.ctx.n:
            raise ParseError(
                f"profile literal needs {self.ctx.n} rankings, found {len(orders)}",
                SourceSpan(start.span.start, end.span.end),
            )
        return Profile(tuple(orders))

    def primary(self) -> Formula:
        token = self.peek()
        if self.at_symbol("("):
            self.advance()
            inner = self.formula()
            self.expect(")")
            return inner
        if token.kind == "string":
            raise ParseError("string literal outside scf(...)", token.span)
        if token.kind in ("word", "number"):
            text = token.text
            if text == "true":
                self.advance()
                return TRUE
            if text == "false":
                self.advance()
                return Not(TRUE)
            if text == "rep":
                self.advance()
                self.expect("(")
                agent = self.agent()
                self.expect(",")
                left = self.outcome()
                self.expect(",")
                right = self.outcome()
                self.expect(")")
                return Rep(agent, left, right)
            if text in ("ballot", "ballotAll", "better", "trueprofile", "br", "scf"):
                return self.macro_call(token)
            if text == "citsov":
                self.advance()
                return encodings.citsov(self.ctx.n, self.ctx.outcomes)
            if text == "nodict":
                self.advance()
                return encodings.nodict(self.ctx.n, self.ctx.outcomes)
            if text == "dom":
                self.advance()
                return encodings.dom(self.ctx.n, self.ctx.outcomes)
            if text == "mon":
                self.advance()
                return encodings.mon(self.ctx.n, self.ctx.outcomes)
            if text == "strproof":
                self.advance()
                return encodings.strproof(self.ctx.n, self.ctx.outcomes)
            return Out(self.outcome())
        raise ParseError(
            f"expected a formula, found {token.text or 'end of input'!r}", token.span
        )

    def macro_call(self, head: _Token) -> Formula:
        name = head.text
        self.advance()
        self.expect("(")
        if name == "ballot":
            agent = self.agent()
            self.expect(",")
            order = self.ranking()
            self.expect(")")
            return encodings.ballot_agent(agent, order)
        if name == "ballotAll":
            profile = self.profile_literal()
            self.expect(")")
            return encodings.ballot_profile(profile)
        if name == "better":
            agent = self.agent()
            self.expect(",")
            lo = self.formula()
            self.expect(",")
            hi = self.formula()
            self.expect(")")
            return encodings.better(self.ctx.n, self.ctx.outcomes, agent, lo, hi)
        if name == "trueprofile":
            profile = self.profile_literal()
            self.expect(")")
            return encodings.trueprofile(profile, self.ctx.outcomes)
        if name == "br":
            agent = self.agent()
            self.expect(")")
            return encodings.best_response(agent, self.ctx.n, self.ctx.outcomes)
        if name == "scf":
            token = self.peek()
            if token.kind != "string":
                raise ParseError("scf(...) takes a quoted path", token.span)
            self.advance()
            self.expect(")")
            if self.ctx.scf_loader is None:
                raise ParseError("no SCF loader configured for scf(...)", token.span)
            try:
                table = self.ctx.scf_loader(token.text)
            except (OSError, ValueError) as exc:
                raise ParseError(f"cannot load SCF {token.text!r}: {exc}", token.span) from exc
            if table.agents != self.ctx.n or set(table.outcomes) != set(self.ctx.outcomes):
                raise ParseError(
                    f"SCF {token.text!r} is over (n={table.agents}, K={table.outcomes}),"
                    f" context is (n={self.ctx.n}, K={self.ctx.outcomes})",
                    token.span,
                )
            return encodings.rho(table, "diamond")
        raise ParseError(f"unknown macro {name!r}", head.span)


def _as_context(ctx: Union[Context, tuple]) -> Context:
    if isinstance(ctx, Context):
        return ctx
    n, outcomes = ctx
    return Context(n, tuple(outcomes))


def parse(text: str, ctx: Union[Context, tuple]) -> Formula:
    """Parse `text` into a core-grammar formula over the context's (n, K).

    Raises ParseError, carrying a SourceSpan, on any lexical error,
    unbalanced bracketing, unknown agent/outcome token or malformed
    coalition.
    """
    parser = _Parser(text, _as_context(ctx))
    result = parser.formula()
    trailing = parser.peek()
    if trailing.kind != "eof":
        raise ParseError(f"unexpected trailing input {trailing.text!r}", trailing.span)
    return result


def _coalition_str(coalition: frozenset[int]) -> str:
    return "{" + ",".join(str(i) for i in sorted(coalition)) + "}"


def _needs_parens_under_prefix(child: Formula) -> bool:
    return type(child) is Or


def format_formula(formula: Formula) -> str:
    """Canonical minimally-parenthesized rendering of a core-grammar tree;
    `parse(format_formula(f))` is structurally equal to `f`."""
    kind = type(formula)
    if kind is Top:
        return "true"
    if kind is Rep:
        return f"rep({formula.agent},{formula.left},{formula.right})"
    if kind is Out:
        return formula.name
    if kind is Not:
        if type(formula.child) is Top:
            return "false"
        child = format_formula(formula.child)
        if _needs_parens_under_prefix(formula.child):
            return f"~({child})"
        return f"~{child}"
    if kind is Or:
        left = format_formula(formula.left)
        right = format_formula(formula.right)
        if type(formula.right) is Or:
            right = f"({right})"
        return f"{left} | {right}"
    if kind is Diamond:
        child = format_formula(formula.child)
        if _needs_parens_under_prefix(formula.child):
            child = f"({child})"
        return f"<{_coalition_str(formula.coalition)}> {child}"
    if kind is Pref:
        child = format_formula(formula.child)
        if _needs_parens_under_prefix(formula.child):
            child = f"({child})"
        return f"pref({formula.agent}) {child}"
    raise TypeError(f"not a formula node: {formula!r}")
