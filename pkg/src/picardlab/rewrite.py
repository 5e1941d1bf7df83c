"""Normalization of formal sums with explicit coherence witnesses.

An expression is rewritten to ``canonical_form(coefficients)`` by macro
rules, each of which expands into primitive steps (one constraint of the
Picard groupoid applied at a position). Evaluating a witness in a model
composes the constraint arrows, each whiskered into place with identities
through ``+`` and arrow negation.

Two redex-selection strategies are provided: leftmost-innermost and
leftmost-outermost. Normal forms do not depend on the strategy; that the
witness arrows do not either is what coherence means, and is tested rather
than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Optional, Sequence

from .expr import Add, Expr, Neg, Var, Zero, canonical_form, eval_expr
from .picard import PArrow

INNERMOST = "innermost"
OUTERMOST = "outermost"

PRIMITIVE_RULES = (
    "assoc", "assoc^-1", "comm", "unitL", "unitL^-1", "unitR", "unitR^-1",
    "inv-cancel", "inv-cancel^-1", "neg-zero", "neg-distrib", "neg-distrib^-1", "neg-neg",
)


class RewriteError(ValueError):
    pass


class CoefficientMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class RewriteStep:
    rule: str
    path: tuple = ()
    # only needed by inv-cancel^-1, which has to be told what to introduce
    arg: Optional[Expr] = None

    def __post_init__(self):
        if self.rule not in PRIMITIVE_RULES:
            raise RewriteError(f"unknown rule {self.rule!r}")

    def __str__(self):
        return f"{self.rule}@{''.join(map(str, self.path)) or 'root'}"


def _descend(e: Expr, path: Sequence[int]) -> list:
    """The nodes from ``e`` down along ``path`` (inclusive)."""
    nodes = [e]
    for k in path:
        if isinstance(e, Add):
            e = e.left if k == 0 else e.right
        elif isinstance(e, Neg) and k == 0:
            e = e.arg
        else:
            raise RewriteError(f"path {tuple(path)} leaves the expression")
        nodes.append(e)
    return nodes


def _at(e: Expr, path: Sequence[int]) -> Expr:
    return _descend(e, path)[-1]


def _rebuild(nodes: list, path: Sequence[int], new: Expr) -> Expr:
    for node, k in zip(reversed(nodes[:-1]), reversed(path)):
        if isinstance(node, Neg):
            new = Neg(new)
        elif k == 0:
            new = Add(new, node.right)
        else:
            new = Add(node.left, new)
    return new


def _replace(e: Expr, path: Sequence[int], new: Expr) -> Expr:
    return _rebuild(_descend(e, path), path, new)


def _mismatch(step, e):
    return RewriteError(f"rule {step.rule} does not apply to {e}")


def rewrite_root(step: RewriteStep, e: Expr) -> Expr:
    r = step.rule
    if r == "assoc" and isinstance(e, Add) and isinstance(e.left, Add):
        return Add(e.left.left, Add(e.left.right, e.right))
    if r == "assoc^-1" and isinstance(e, Add) and isinstance(e.right, Add):
        return Add(Add(e.left, e.right.left), e.right.right)
    if r == "comm" and isinstance(e, Add):
        return Add(e.right, e.left)
    if r == "unitL" and isinstance(e, Add) and isinstance(e.left, Zero):
        return e.right
    if r == "unitL^-1":
        return Add(Zero(), e)
    if r == "unitR" and isinstance(e, Add) and isinstance(e.right, Zero):
        return e.left
    if r == "unitR^-1":
        return Add(e, Zero())
    if r == "inv-cancel" and isinstance(e, Add) and e.right == Neg(e.left):
        return Zero()
    if r == "inv-cancel^-1" and isinstance(e, Zero) and step.arg is not None:
        return Add(step.arg, Neg(step.arg))
    if r == "neg-zero" and isinstance(e, Neg) and isinstance(e.arg, Zero):
        return Zero()
    if r == "neg-distrib" and isinstance(e, Neg) and isinstance(e.arg, Add):
        return Add(Neg(e.arg.left), Neg(e.arg.right))
    if r == "neg-distrib^-1" and isinstance(e, Add) and isinstance(e.left, Neg) and isinstance(e.right, Neg):
        return Neg(Add(e.left.arg, e.right.arg))
    if r == "neg-neg" and isinstance(e, Neg) and isinstance(e.arg, Neg):
        return e.arg.arg
    raise _mismatch(step, e)


def _apply_traced(e: Expr, step: RewriteStep):
    """Apply ``step``; also return the redex and the parity of Neg nodes above it."""
    nodes = _descend(e, step.path)
    node = nodes[-1]
    sign = 1
    for n in nodes[:-1]:
        if type(n) is Neg:
            sign = -sign
    return _rebuild(nodes, step.path, rewrite_root(step, node)), node, sign


def apply_step(e: Expr, step: RewriteStep) -> Expr:
    return _apply_traced(e, step)[0]


class _Evaluator:
    """Object evaluation with a per-run memo on expression nodes."""

    def __init__(self, P, env):
        self.P, self.env = P, tuple(env)
        self._memo = {}

    def __call__(self, e: Expr):
        hit = self._memo.get(id(e))
        if hit is not None and hit[0] is e:
            return hit[1]
        P = self.P
        if isinstance(e, Add):
            v = P.add(self(e.left), self(e.right))
        elif isinstance(e, Neg):
            v = P.neg(self(e.arg))
        else:
            v = eval_expr(e, self.env, P)
        self._memo[id(e)] = (e, v)
        return v


def root_arrow(step: RewriteStep, e: Expr, ev: _Evaluator):
    """The constraint arrow for ``step`` applied at the root of ``e``."""
    P, r = ev.P, step.rule
    inv = P.inverse
    if r == "assoc":
        return P.assoc(ev(e.left.left), ev(e.left.right), ev(e.right))
    if r == "assoc^-1":
        return inv(P.assoc(ev(e.left), ev(e.right.left), ev(e.right.right)))
    if r == "comm":
        return P.comm(ev(e.left), ev(e.right))
    if r == "unitL":
        return P.unit_left(ev(e.right))
    if r == "unitL^-1":
        return inv(P.unit_left(ev(e)))
    if r == "unitR":
        return P.unit_right(ev(e.left))
    if r == "unitR^-1":
        return inv(P.unit_right(ev(e)))
    if r == "inv-cancel":
        return P.inv(ev(e.left))
    if r == "inv-cancel^-1":
        return inv(P.inv(ev(step.arg)))
    if r == "neg-zero":
        return P.neg_zero()
    if r == "neg-distrib":
        return P.neg_distrib(ev(e.arg.left), ev(e.arg.right))
    if r == "neg-distrib^-1":
        return inv(P.neg_distrib(ev(e.left.arg), ev(e.right.arg)))
    if r == "neg-neg":
        return P.neg_neg(ev(e.arg.arg))
    raise _mismatch(step, e)


def step_arrow(step: RewriteStep, e: Expr, ev: _Evaluator):
    """The root arrow of ``step`` whiskered up to the root of ``e``."""
    P = ev.P
    nodes = _descend(e, step.path)
    rewrite_root(step, nodes[-1])
    w = root_arrow(step, nodes[-1], ev)
    for node, k in zip(reversed(nodes[:-1]), reversed(step.path)):
        if isinstance(node, Neg):
            w = P.neg_arrow(w)
        elif k == 0:
            w = P.add_arrows(w, P.identity(ev(node.right)))
        else:
            w = P.add_arrows(P.identity(ev(node.left)), w)
    return w


@dataclass(frozen=True)
class RewriteWitness:
    source: Expr
    steps: tuple = ()

    def expressions(self) -> list:
        out = [self.source]
        for s in self.steps:
            out.append(apply_step(out[-1], s))
        return out

    @cached_property
    def _replay(self):
        trace, e = [], self.source
        for s in self.steps:
            e, node, sign = _apply_traced(e, s)
            trace.append((node, sign))
        return e, tuple(trace)

    @property
    def target(self) -> Expr:
        return self._replay[0]

    def evaluate(self, P, env, fast: Optional[bool] = None):
        """The composite arrow ``eval(source) -> eval(target)`` in ``P``.

        Models flagged ``payload_additive`` skip the whiskering: the composite
        payload is the signed sum of the root payloads, the sign being the
        parity of Neg nodes above the step. ``fast=False`` forces the general
        route (the two agree; see the tests).
        """
        if fast is None:
            fast = getattr(P, "payload_additive", False)
        ev = _Evaluator(P, env)
        if fast:
            target, trace = self._replay
            total = P.identity(ev(self.source)).payload
            for s, (node, sign) in zip(self.steps, trace):
                p = root_arrow(s, node, ev).payload
                total = total + p if sign > 0 else total - p
            return PArrow(ev(self.source), ev(target), total)
        e = self.source
        arrow = P.identity(ev(e))
        for s in self.steps:
            arrow = P.compose(step_arrow(s, e, ev), arrow)
            e = apply_step(e, s)
        return arrow

    def __len__(self):
        return len(self.steps)

    def __str__(self):
        return " ; ".join(map(str, self.steps)) or "(empty)"


# -- macro rules --------------------------------------------------------------


def _literal_key(e: Expr):
    if isinstance(e, Var):
        return (e.index, 0)
    if isinstance(e, Neg) and isinstance(e.arg, Var):
        return (e.arg.index, 1)
    return None


def _block_var(e: Expr) -> Optional[int]:
    """``j`` if ``e`` is a left-nested sum of copies of ``Var(j)``."""
    while isinstance(e, Add):
        if not isinstance(e.right, Var):
            return None
        j = e.right.index
        e = e.left
        if _block_var_leaf(e) not in (None, j):
            return None
    return e.index if isinstance(e, Var) else None


def _block_var_leaf(e: Expr):
    while isinstance(e, Add):
        e = e.right
    return e.index if isinstance(e, Var) else None


def _last_atom(e: Expr) -> Expr:
    while isinstance(e, Add):
        e = e.right
    return e


def _S(rule, *path):
    return RewriteStep(rule, tuple(path))


def _match_normalize(e: Expr):
    """Macro rules pushing negation inward, dropping units, left-nesting,
    cancelling and sorting literals. Returns relative steps or None."""
    if isinstance(e, Neg):
        a = e.arg
        if isinstance(a, Zero):
            return [_S("neg-zero")]
        if isinstance(a, Neg):
            return [_S("neg-neg")]
        if isinstance(a, Add):
            return [_S("neg-distrib")]
        return None
    if not isinstance(e, Add):
        return None
    left, right = e.left, e.right
    if isinstance(left, Zero):
        return [_S("unitL")]
    if isinstance(right, Zero):
        return [_S("unitR")]
    if isinstance(right, Add):
        return [_S("assoc^-1")]
    kb = _literal_key(right)
    if kb is None:
        return None
    ka = _literal_key(left)
    if ka is not None:
        if ka[0] == kb[0] and (ka[1], kb[1]) == (0, 1):
            return [_S("inv-cancel")]
        if kb < ka:
            return [_S("comm")]
        return None
    if isinstance(left, Add):
        ka = _literal_key(left.right)
        if ka is None:
            return None
        if ka[0] == kb[0] and (ka[1], kb[1]) == (0, 1):
            return [_S("assoc"), _S("inv-cancel", 1), _S("unitR")]
        if kb < ka:
            return [_S("assoc"), _S("comm", 1), _S("assoc^-1")]
    return None


def _match_fold(e: Expr):
    """Macro rules gathering a run of negative literals under one Neg."""
    if not (isinstance(e, Add) and isinstance(e.right, Neg) and isinstance(e.right.arg, Var)):
        return None
    j = e.right.arg.index
    left = e.left
    if isinstance(left, Neg) and _block_var(left.arg) == j:
        return [_S("neg-distrib^-1")]
    if isinstance(left, Add) and isinstance(left.right, Neg) and _block_var(left.right.arg) == j:
        last = _last_atom(left.left)
        if not (isinstance(last, Neg) and _block_var(last.arg) == j):
            return [_S("assoc"), _S("neg-distrib^-1", 1)]
    return None


def _find_redex(e: Expr, matcher, strategy: str, clean: dict, path=()):
    """First redex in the chosen order. ``clean`` remembers nodes whose whole
    subtree is redex-free; nodes are immutable, so this never goes stale."""
    hit = clean.get(id(e))
    if hit is e:
        return None
    if strategy == OUTERMOST:
        m = matcher(e)
        if m is not None:
            return path, m
    if isinstance(e, Add):
        children = ((0, e.left), (1, e.right))
    elif isinstance(e, Neg):
        children = ((0, e.arg),)
    else:
        children = ()
    for k, child in children:
        found = _find_redex(child, matcher, strategy, clean, path + (k,))
        if found is not None:
            return found
    if strategy == INNERMOST:
        m = matcher(e)
        if m is not None:
            return path, m
    clean[id(e)] = e
    return None


@lru_cache(maxsize=8192)
def rewrite_to_normal_form(e: Expr, strategy: str = INNERMOST, max_steps: int = 1_000_000) -> RewriteWitness:
    """The witness depends on the expression only, so it is cached."""
    if strategy not in (INNERMOST, OUTERMOST):
        raise ValueError(f"unknown strategy {strategy!r}")
    steps, trace = [], []
    cur = e
    for matcher in (_match_normalize, _match_fold):
        clean: dict = {}
        while True:
            hit = _find_redex(cur, matcher, strategy, clean)
            if hit is None:
                break
            path, rel = hit
            for s in rel:
                step = RewriteStep(s.rule, path + s.path)
                cur, node, sign = _apply_traced(cur, step)
                steps.append(step)
                trace.append((node, sign))
            if len(steps) > max_steps:
                raise RewriteError("rewriting did not terminate within the step budget")
    witness = RewriteWitness(e, tuple(steps))
    witness.__dict__["_replay"] = (cur, tuple(trace))
    return witness


@dataclass(frozen=True)
class Normalization:
    canonical: Expr
    witness: RewriteWitness
    arrow: object = field(default=None)


def normalize_with_witness(e: Expr, P=None, env: Sequence = (), strategy: str = INNERMOST) -> Normalization:
    """Rewrite ``e`` to its canonical form; evaluate the witness in ``P`` if given."""
    n = max(len(env), e.max_index)
    witness = rewrite_to_normal_form(e, strategy)
    target = witness.target
    expected = canonical_form(e.coefficients(n))
    if target != expected:
        raise RewriteError(f"normal form {target} differs from canonical form {expected}")
    arrow = witness.evaluate(P, env) if P is not None else None
    return Normalization(target, witness, arrow)


def coherence_iso(e1: Expr, e2: Expr, P, env: Sequence, strategy: str = INNERMOST):
    """The coherence arrow ``eval(e1) -> eval(e2)``."""
    n = max(len(env), e1.max_index, e2.max_index)
    if e1.coefficients(n) != e2.coefficients(n):
        raise CoefficientMismatchError(f"{e1} and {e2} have different coefficients")
    w1 = normalize_with_witness(e1, P, env, strategy).arrow
    w2 = normalize_with_witness(e2, P, env, strategy).arrow
    return P.compose(P.inverse(w2), w1)


def closed_form_witness(e: Expr, model, env):
    """Normalization arrow in a skeletal model computed without rewriting.

    Transport makes every witness ``e -> e'`` equal to the pi1-retraction of
    ``comparison(e) - comparison(e')``; this evaluates that directly and
    serves as an oracle for ``normalize_with_witness``.
    """
    canon = canonical_form(e.coefficients(max(len(env), e.max_index)))
    S = model.strict
    conj = S.compose(S.inverse(model.comparison(canon, env)), model.comparison(e, env))
    X = eval_expr(e, env, model)
    return PArrow(X, eval_expr(canon, env, model), model.complex.pi1.retract(conj.payload))
