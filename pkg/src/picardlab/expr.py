"""Formal sums over indexed variables.

Expressions are built from ``Zero``, ``Var(j)`` (1-based), ``Neg`` and
binary ``Add``. They evaluate in any Picard groupoid, on objects or on
arrows, and carry an integer coefficient vector.

Literal syntax: ``0``, ``x1``, ``-(E)``, ``(E + E)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence


class ExprIndexError(IndexError):
    pass


class Expr:
    __slots__ = ()

    def coefficients(self, n: int) -> tuple:
        if self.max_index > n:
            raise ExprIndexError(f"variable x{self.max_index} out of range for arity {n}")
        out = [0] * n
        for j, c in self._coeffs.items():
            out[j - 1] += c
        return tuple(out)

    def __str__(self):
        return to_literal(self)


@dataclass(frozen=True, eq=True)
class Zero(Expr):
    max_index = 0
    _coeffs = {}


@dataclass(frozen=True, eq=True)
class Var(Expr):
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise ExprIndexError("variables are indexed from 1")

    @property
    def max_index(self):
        return self.index

    @property
    def _coeffs(self):
        return {self.index: 1}


@dataclass(frozen=True, eq=True)
class Neg(Expr):
    arg: Expr

    @cached_property
    def max_index(self):
        return self.arg.max_index

    @cached_property
    def _coeffs(self):
        return {j: -c for j, c in self.arg._coeffs.items()}


@dataclass(frozen=True, eq=True)
class Add(Expr):
    left: Expr
    right: Expr

    @cached_property
    def max_index(self):
        return max(self.left.max_index, self.right.max_index)

    @cached_property
    def _coeffs(self):
        out = dict(self.left._coeffs)
        for j, c in self.right._coeffs.items():
            out[j] = out.get(j, 0) + c
        return out

    @cached_property
    def _hash(self):
        return hash((Add, self.left, self.right))

    def __hash__(self):
        return self._hash


def _block(j: int, p: int) -> Expr:
    e: Expr = Var(j)
    for _ in range(p - 1):
        e = Add(e, Var(j))
    return e


def canonical_terms(coeffs: Sequence[int]) -> list:
    terms = []
    for j, p in enumerate(coeffs, start=1):
        if p > 0:
            terms.extend([Var(j)] * p)
        elif p < 0:
            terms.append(Neg(_block(j, -p)))
    return terms


def fold_left(terms: Sequence[Expr]) -> Expr:
    if not terms:
        return Zero()
    e = terms[0]
    for t in terms[1:]:
        e = Add(e, t)
    return e


def canonical_form(coeffs: Sequence[int]) -> Expr:
    """Left-nested sum over ascending index; negative blocks sit under one Neg."""
    return fold_left(canonical_terms(coeffs))


def substitute(e: Expr, subs: Sequence[Expr]) -> Expr:
    """Replace ``Var(j)`` by ``subs[j - 1]``."""
    if isinstance(e, Var):
        if e.index > len(subs):
            raise ExprIndexError(f"no substitute for x{e.index}")
        return subs[e.index - 1]
    if isinstance(e, Neg):
        return Neg(substitute(e.arg, subs))
    if isinstance(e, Add):
        return Add(substitute(e.left, subs), substitute(e.right, subs))
    return e


def eval_expr(e: Expr, env: Sequence, P):
    """Evaluate on objects of the Picard groupoid ``P``."""
    if isinstance(e, Zero):
        return P.neutral()
    if isinstance(e, Var):
        if e.index > len(env):
            raise ExprIndexError(f"x{e.index} with only {len(env)} inputs")
        return env[e.index - 1]
    if isinstance(e, Neg):
        return P.neg(eval_expr(e.arg, env, P))
    return P.add(eval_expr(e.left, env, P), eval_expr(e.right, env, P))


def eval_arrow(e: Expr, arrows: Sequence, P):
    """Evaluate on arrows: the same shape, with ``+`` and negation on arrows."""
    if isinstance(e, Zero):
        return P.identity(P.neutral())
    if isinstance(e, Var):
        if e.index > len(arrows):
            raise ExprIndexError(f"x{e.index} with only {len(arrows)} inputs")
        return arrows[e.index - 1]
    if isinstance(e, Neg):
        return P.neg_arrow(eval_arrow(e.arg, arrows, P))
    return P.add_arrows(eval_arrow(e.left, arrows, P), eval_arrow(e.right, arrows, P))


def to_literal(e: Expr) -> str:
    if isinstance(e, Zero):
        return "0"
    if isinstance(e, Var):
        return f"x{e.index}"
    if isinstance(e, Neg):
        return f"-({to_literal(e.arg)})"
    return f"({to_literal(e.left)} + {to_literal(e.right)})"


_TOKEN = re.compile(r"\s*(?:(x\d+)|(0)|(-)|(\()|(\))|(\+))")


class ExprSyntaxError(ValueError):
    pass


def parse_expr(text: str) -> Expr:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExprSyntaxError(f"unexpected character at offset {pos}: {text[pos:]!r}")
        tokens.append(m.group(m.lastindex))
        pos = m.end()

    def parse(i):
        if i >= len(tokens):
            raise ExprSyntaxError("unexpected end of expression")
        tok = tokens[i]
        if tok == "0":
            return Zero(), i + 1
        if tok.startswith("x"):
            if int(tok[1:]) < 1:
                raise ExprSyntaxError(f"variables are indexed from 1, got {tok}")
            return Var(int(tok[1:])), i + 1
        if tok == "-":
            if i + 1 >= len(tokens) or tokens[i + 1] != "(":
                raise ExprSyntaxError("negation must be written -(E)")
            inner, j = parse(i + 2)
            if j >= len(tokens) or tokens[j] != ")":
                raise ExprSyntaxError("missing ')' after negated expression")
            return Neg(inner), j + 1
        if tok == "(":
            left, j = parse(i + 1)
            if j >= len(tokens) or tokens[j] != "+":
                raise ExprSyntaxError("expected '+' inside parentheses")
            right, k = parse(j + 1)
            if k >= len(tokens) or tokens[k] != ")":
                raise ExprSyntaxError("missing ')'")
            return Add(left, right), k + 1
        raise ExprSyntaxError(f"unexpected token {tok!r}")

    e, end = parse(0)
    if end != len(tokens):
        raise ExprSyntaxError(f"trailing input after expression: {tokens[end:]}")
    return e
