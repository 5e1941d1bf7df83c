"""From Picard groupoids to algebras over the matrix theory and back.

``hat(P)`` sends arity ``n`` to the power ``P^n`` and a ``k x n`` matrix to
the functor whose row ``i`` evaluates the canonical formal sum of that row.
``A(Q) ∘ A(P)`` and ``A(QP)`` agree on objects but not on arrows bracketing,
so the construction carries compositors ``γ_{Q,P}``; they are coherence
isomorphisms produced by the rewrite engine. ``reconstruct`` reads a Picard
structure back off the arity-1 data and the compositors.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .expr import Expr, Neg, Var, Zero, canonical_form, eval_arrow, eval_expr, substitute
from .fuzz import random_arities, random_cell
from .picard import (
    AdditiveFunctor,
    AdditiveTransformation,
    PArrow,
    PicardGroupoid,
    PObject,
    _pick_object,
    _rng,
    check_picard_axioms,
    run_check,
)
from .report import Report
from .rewrite import INNERMOST, rewrite_to_normal_form
from .theory import NEGATE, SUM, SWAP, ArityMismatchError, OneCell, TwoCell, compose_cells, neutral_cell, product_structure
from .zlin import DimensionError, IntMatrix


def _as_cell(cell) -> OneCell:
    if isinstance(cell, OneCell):
        return cell
    if isinstance(cell, IntMatrix):
        return OneCell(cell.cols, cell.rows, cell)
    return OneCell.of(cell)


@dataclass(frozen=True)
class PowerGroupoid:
    """``P^n``: objects are columns (tuples) of objects, arrows rows of arrows."""

    base: PicardGroupoid
    n: int

    def identity(self, X: tuple) -> tuple:
        return tuple(self.base.identity(x) for x in X)

    def compose(self, g: tuple, f: tuple) -> tuple:
        return tuple(self.base.compose(gi, fi) for gi, fi in zip(g, f, strict=True))

    def compose_all(self, *arrows: tuple) -> tuple:
        out = arrows[-1]
        for g in reversed(arrows[:-1]):
            out = self.compose(g, out)
        return out

    def inverse(self, f: tuple) -> tuple:
        return tuple(self.base.inverse(fi) for fi in f)

    def is_arrow(self, f: tuple) -> bool:
        return len(f) == self.n and all(self.base.is_arrow(fi) for fi in f)

    def src(self, f: tuple) -> tuple:
        return tuple(fi.src for fi in f)

    def dst(self, f: tuple) -> tuple:
        return tuple(fi.dst for fi in f)

    def sample_object(self, rng: random.Random) -> tuple:
        return tuple(_pick_object(self.base, rng) for _ in range(self.n))

    def sample_arrow(self, rng: random.Random, X: tuple) -> tuple:
        return tuple(self.base.sample_arrow(rng, x) for x in X)

    def product(self, other: "PowerGroupoid") -> "PowerGroupoid":
        if other.base is not self.base:
            raise ValueError("powers of different groupoids")
        return PowerGroupoid(self.base, self.n + other.n)

    def pair(self, X: tuple, Y: tuple) -> tuple:
        return tuple(X) + tuple(Y)

    def split(self, X: tuple, n: int) -> tuple:
        return tuple(X[:n]), tuple(X[n:])

    def object_count(self) -> Optional[int]:
        k = self.base.object_count()
        return None if k is None else k ** self.n

    def arrow_count(self) -> Optional[int]:
        k = self.base.arrow_count()
        return None if k is None else k ** self.n


def _check_arity(cell: OneCell, values: Sequence):
    if len(values) != cell.source:
        raise DimensionError(f"a {cell.target}x{cell.source} matrix needs {cell.source} inputs, got {len(values)}")


def row_expressions(cell) -> tuple:
    cell = _as_cell(cell)
    return tuple(canonical_form(cell.row(i)) for i in range(cell.target))


def apply_matrix_objects(cell, objs: Sequence[PObject], P: PicardGroupoid) -> tuple:
    """Row ``i`` is the canonical sum of row ``i`` evaluated on ``objs``."""
    cell = _as_cell(cell)
    _check_arity(cell, objs)
    return tuple(eval_expr(e, objs, P) for e in row_expressions(cell))


def apply_matrix_arrows(cell, arrows: Sequence[PArrow], P: PicardGroupoid) -> tuple:
    """The same sums, built from arrows with ``+`` and arrow negation."""
    cell = _as_cell(cell)
    _check_arity(cell, arrows)
    return tuple(eval_arrow(e, arrows, P) for e in row_expressions(cell))


@dataclass(frozen=True)
class CellFunctor:
    base: PicardGroupoid
    cell: OneCell
    rows: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "rows", row_expressions(self.cell))

    def on_object(self, X: Sequence) -> tuple:
        _check_arity(self.cell, X)
        return tuple(eval_expr(e, X, self.base) for e in self.rows)

    def on_arrow(self, f: Sequence) -> tuple:
        _check_arity(self.cell, f)
        return tuple(eval_arrow(e, f, self.base) for e in self.rows)


class TwoAlgebra:
    """Interface of a 2-algebra over the matrix theory with explicit compositors."""

    base: PicardGroupoid

    def object(self, n: int) -> PowerGroupoid:
        raise NotImplementedError

    def cell(self, c) -> CellFunctor:
        raise NotImplementedError

    def compositor(self, Q, P, X: Sequence) -> tuple:
        raise NotImplementedError

    def unit_comparison(self, n: int, X: Sequence) -> tuple:
        raise NotImplementedError

    def product_comparison(self, n: int, m: int, X: Sequence) -> tuple:
        raise NotImplementedError

    def two_cell(self, t: TwoCell, X: Sequence) -> tuple:
        raise NotImplementedError


def compositor_source_expr(Q: OneCell, P: OneCell, i: int) -> Expr:
    """Row ``i`` of ``A(Q) ∘ A(P)`` as one formal sum in the inputs of P."""
    return substitute(canonical_form(Q.row(i)), row_expressions(P))


class HatAlgebra(TwoAlgebra):
    """``hat(P)``: powers of ``P``, canonical-sum functors, coherence compositors."""

    def __init__(self, base: PicardGroupoid, strategy: str = INNERMOST):
        self.base = base
        self.strategy = strategy
        self._cells: dict = {}
        self._gamma: dict = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"hat({self.base!r})"

    def object(self, n: int) -> PowerGroupoid:
        if n < 0:
            raise ValueError("arity must be non-negative")
        return PowerGroupoid(self.base, n)

    def cell(self, c) -> CellFunctor:
        c = _as_cell(c)
        with self._lock:
            f = self._cells.get(c)
        if f is None:
            f = CellFunctor(self.base, c)
            with self._lock:
                f = self._cells.setdefault(c, f)
        return f

    def compositor(self, Q, P, X: Sequence) -> tuple:
        """``γ_{Q,P}`` at ``X``: ``A(Q)(A(P) X) -> A(QP) X``."""
        Q, P = _as_cell(Q), _as_cell(P)
        if P.target != Q.source:
            raise ArityMismatchError(f"cannot compose {Q} after {P}")
        _check_arity(P, X)
        X = tuple(X)
        key = (Q, P, X)
        with self._lock:
            hit = self._gamma.get(key)
        if hit is not None:
            return hit
        out = tuple(self._component(Q, P, i, X) for i in range(Q.target))
        with self._lock:
            return self._gamma.setdefault(key, out)

    def _component(self, Q: OneCell, P: OneCell, i: int, X: tuple) -> PArrow:
        e = compositor_source_expr(Q, P, i)
        # the target canon((QP)_i) is already normal, so its witness is empty
        return rewrite_to_normal_form(e, self.strategy).evaluate(self.base, X)

    def unit_comparison(self, n: int, X: Sequence) -> tuple:
        """``A(id_n) = id`` on the nose."""
        return self.object(n).identity(tuple(X))

    def product_comparison(self, n: int, m: int, X: Sequence) -> tuple:
        """``A(n + m) -> A(n) x A(m)``: the identity, products are strict."""
        return self.object(n + m).identity(tuple(X))

    def two_cell(self, t: TwoCell, X: Sequence) -> tuple:
        return self.object(t.target.target).identity(self.cell(t.target).on_object(X))


def hat(P: PicardGroupoid, strategy: str = INNERMOST) -> HatAlgebra:
    return HatAlgebra(P, strategy)


# -- checks on a 2-algebra ----------------------------------------------------


def _eq(lhs, rhs, **inputs):
    return None if lhs == rhs else dict(inputs, lhs=lhs, rhs=rhs)


def _arrow_from(A: TwoAlgebra, n: int, X: tuple, rng) -> tuple:
    return A.object(n).sample_arrow(rng, X)


def check_hat(A: TwoAlgebra, cases: int = 20, seed: int = 0) -> Report:
    """Product preservation, functoriality of cells, compositor endpoints,
    naturality, cocycle and unit laws, sampled over random cells."""
    base = A.base
    report = Report()

    def cells(rng, k):
        ar = random_arities(rng, k + 1)
        return [random_cell(rng, ar[j], ar[j + 1]) for j in range(k)]

    def product_preservation(rng):
        n, m = random_arities(rng, 2)
        Pn, Pm, Pnm = A.object(n), A.object(m), A.object(n + m)
        if Pn.product(Pm) != Pnm:
            return {"n": n, "m": m, "issue": "product object"}
        X, Y = Pn.sample_object(rng), Pm.sample_object(rng)
        XY = Pnm.pair(X, Y)
        p1, p2, pair = product_structure(n, m)
        bad = _eq(A.cell(p1).on_object(XY), X, n=n, m=m) or _eq(A.cell(p2).on_object(XY), Y, n=n, m=m)
        if bad:
            return bad
        f, g = Pn.sample_arrow(rng, X), Pm.sample_arrow(rng, Y)
        bad = _eq(A.cell(p1).on_arrow(Pnm.pair(f, g)), f) or _eq(A.cell(p2).on_arrow(Pnm.pair(f, g)), g)
        if bad:
            return bad
        k = rng.randint(0, 4)
        F, G = random_cell(rng, k, n), random_cell(rng, k, m)
        Z = A.object(k).sample_object(rng)
        paired = A.cell(pair(F, G)).on_object(Z)
        bad = _eq(paired, Pnm.pair(A.cell(F).on_object(Z), A.cell(G).on_object(Z)), F=str(F), G=str(G))
        return bad or _eq(A.product_comparison(n, m, XY), Pnm.identity(XY), n=n, m=m)

    def cell_identity(rng):
        (P,) = cells(rng, 1)
        X = A.object(P.source).sample_object(rng)
        return _eq(A.cell(P).on_arrow(A.object(P.source).identity(X)),
                   A.object(P.target).identity(A.cell(P).on_object(X)), P=str(P), X=X)

    def cell_composition(rng):
        (P,) = cells(rng, 1)
        Pw = A.object(P.source)
        X = Pw.sample_object(rng)
        f = Pw.sample_arrow(rng, X)
        g = Pw.sample_arrow(rng, Pw.dst(f))
        F = A.cell(P)
        return _eq(F.on_arrow(Pw.compose(g, f)), A.object(P.target).compose(F.on_arrow(g), F.on_arrow(f)), P=str(P), f=f, g=g)

    def compositor_endpoints(rng):
        P, Q = cells(rng, 2)
        X = A.object(P.source).sample_object(rng)
        gamma = A.compositor(Q, P, X)
        Pk = A.object(Q.target)
        src = A.cell(Q).on_object(A.cell(P).on_object(X))
        dst = A.cell(compose_cells(Q, P)).on_object(X)
        if not Pk.is_arrow(gamma) or Pk.src(gamma) != src or Pk.dst(gamma) != dst:
            return {"Q": str(Q), "P": str(P), "X": X, "gamma": gamma}
        return None

    def compositor_naturality(rng):
        P, Q = cells(rng, 2)
        Pn = A.object(P.source)
        X = Pn.sample_object(rng)
        f = Pn.sample_arrow(rng, X)
        QP = compose_cells(Q, P)
        Pk = A.object(Q.target)
        lhs = Pk.compose(A.compositor(Q, P, Pn.dst(f)), A.cell(Q).on_arrow(A.cell(P).on_arrow(f)))
        rhs = Pk.compose(A.cell(QP).on_arrow(f), A.compositor(Q, P, X))
        return _eq(lhs, rhs, Q=str(Q), P=str(P), f=f)

    def compositor_cocycle(rng):
        P, Q, R = cells(rng, 3)
        X = A.object(P.source).sample_object(rng)
        Pk = A.object(R.target)
        PX = A.cell(P).on_object(X)
        RQ, QP = compose_cells(R, Q), compose_cells(Q, P)
        lhs = Pk.compose(A.compositor(RQ, P, X), A.compositor(R, Q, PX))
        rhs = Pk.compose(A.compositor(R, QP, X), A.cell(R).on_arrow(A.compositor(Q, P, X)))
        return _eq(lhs, rhs, R=str(R), Q=str(Q), P=str(P), X=X)

    def compositor_unit(rng):
        (P,) = cells(rng, 1)
        X = A.object(P.source).sample_object(rng)
        PX = A.cell(P).on_object(X)
        Pk = A.object(P.target)
        bad = _eq(A.compositor(OneCell.identity(P.target), P, X), Pk.identity(PX), P=str(P), side="left")
        bad = bad or _eq(A.compositor(P, OneCell.identity(P.source), X), Pk.identity(PX), P=str(P), side="right")
        return bad or _eq(A.unit_comparison(P.source, X), A.object(P.source).identity(X), P=str(P), side="unit")

    trials = {
        "hat.product_preservation": product_preservation,
        "hat.cell_identity": cell_identity,
        "hat.cell_composition": cell_composition,
        "hat.compositor_endpoints": compositor_endpoints,
        "hat.compositor_naturality": compositor_naturality,
        "hat.compositor_cocycle": compositor_cocycle,
        "hat.compositor_unit": compositor_unit,
    }
    if getattr(base, "kind", None) == "strict":

        def strict_degeneracy(rng):
            P, Q = cells(rng, 2)
            X = A.object(P.source).sample_object(rng)
            gamma = A.compositor(Q, P, X)
            if any(not g.payload.is_zero() for g in gamma):
                return {"Q": str(Q), "P": str(P), "X": X, "gamma": gamma}
            return None

        trials["hat.strict_degeneracy"] = strict_degeneracy

    for name, trial in sorted(trials.items()):
        rng = _rng(seed, name)
        report.add(run_check(name, cases, lambda i, t=trial, r=rng: t(r)))
    return report


# -- morphisms and modifications ---------------------------------------------


@dataclass(frozen=True)
class PowerFunctor:
    """``F^n`` applied componentwise."""

    functor: AdditiveFunctor
    n: int

    def on_object(self, X: Sequence) -> tuple:
        return tuple(self.functor.on_object(x) for x in X)

    def on_arrow(self, f: Sequence) -> tuple:
        return tuple(self.functor.on_arrow(fi) for fi in f)


@dataclass(frozen=True)
class TwoAlgebraMorphism:
    """Components per arity and fillers ``θ_P(X): F^k(A(P) X) -> A'(P)(F^n X)``."""

    source: TwoAlgebra
    target: TwoAlgebra
    component: Callable  # n -> object with on_object/on_arrow on tuples
    filler: Callable  # (cell, X) -> tuple of arrows


def _filler_row(F: AdditiveFunctor, e: Expr, X: tuple) -> PArrow:
    """``F(eval e X) -> eval(e, F X)`` built from the distributor."""
    T, S = F.target, F.source
    if isinstance(e, Zero):
        return F.unit_comparison()
    if isinstance(e, Var):
        return T.identity(F.on_object(X[e.index - 1]))
    if isinstance(e, Neg):
        inner = _filler_row(F, e.arg, X)
        return T.compose(T.neg_arrow(inner), F.neg_comparison(eval_expr(e.arg, X, S)))
    a, b = eval_expr(e.left, X, S), eval_expr(e.right, X, S)
    sigma = T.add_arrows(_filler_row(F, e.left, X), _filler_row(F, e.right, X))
    return T.compose(sigma, F.distributor(a, b))


def hat_functor(F: AdditiveFunctor, source: Optional[HatAlgebra] = None,
                target: Optional[HatAlgebra] = None) -> TwoAlgebraMorphism:
    """Components ``F^n``; fillers assembled from the distributor."""
    source = source or hat(F.source)
    target = target or hat(F.target)

    def filler(cell, X):
        cell = _as_cell(cell)
        _check_arity(cell, X)
        return tuple(_filler_row(F, e, tuple(X)) for e in row_expressions(cell))

    return TwoAlgebraMorphism(source, target, lambda n: PowerFunctor(F, n), filler)


def check_algebra_morphism(M: TwoAlgebraMorphism, cases: int = 20, seed: int = 0) -> Report:
    A1, A2 = M.source, M.target
    report = Report()

    def cells(rng, k):
        ar = random_arities(rng, k + 1)
        return [random_cell(rng, ar[j], ar[j + 1]) for j in range(k)]

    def filler_endpoints(rng):
        (P,) = cells(rng, 1)
        X = A1.object(P.source).sample_object(rng)
        theta = M.filler(P, X)
        Pk = A2.object(P.target)
        src = M.component(P.target).on_object(A1.cell(P).on_object(X))
        dst = A2.cell(P).on_object(M.component(P.source).on_object(X))
        if not Pk.is_arrow(theta) or Pk.src(theta) != src or Pk.dst(theta) != dst:
            return {"P": str(P), "X": X, "theta": theta}
        return None

    def filler_naturality(rng):
        (P,) = cells(rng, 1)
        Pn = A1.object(P.source)
        X = Pn.sample_object(rng)
        f = Pn.sample_arrow(rng, X)
        Fn, Fk = M.component(P.source), M.component(P.target)
        Pk = A2.object(P.target)
        lhs = Pk.compose(A2.cell(P).on_arrow(Fn.on_arrow(f)), M.filler(P, X))
        rhs = Pk.compose(M.filler(P, Pn.dst(f)), Fk.on_arrow(A1.cell(P).on_arrow(f)))
        return _eq(lhs, rhs, P=str(P), f=f)

    def filler_compositor(rng):
        P, Q = cells(rng, 2)
        X = A1.object(P.source).sample_object(rng)
        Pk = A2.object(Q.target)
        Fn, Fk = M.component(P.source), M.component(Q.target)
        FX = Fn.on_object(X)
        PX = A1.cell(P).on_object(X)
        lhs = Pk.compose(M.filler(compose_cells(Q, P), X), Fk.on_arrow(A1.compositor(Q, P, X)))
        rhs = Pk.compose_all(A2.compositor(Q, P, FX), A2.cell(Q).on_arrow(M.filler(P, X)), M.filler(Q, PX))
        return _eq(lhs, rhs, Q=str(Q), P=str(P), X=X)

    def filler_identity(rng):
        n = random_arities(rng, 1)[0]
        X = A1.object(n).sample_object(rng)
        FX = M.component(n).on_object(X)
        return _eq(M.filler(OneCell.identity(n), X), A2.object(n).identity(FX), n=n, X=X)

    trials = {
        "morphism.filler_endpoints": filler_endpoints,
        "morphism.filler_naturality": filler_naturality,
        "morphism.filler_compositor": filler_compositor,
        "morphism.filler_identity": filler_identity,
    }
    for name, trial in sorted(trials.items()):
        rng = _rng(seed, name)
        report.add(run_check(name, cases, lambda i, t=trial, r=rng: t(r)))
    return report


@dataclass(frozen=True)
class Modification:
    source: TwoAlgebraMorphism
    target: TwoAlgebraMorphism
    component: Callable  # (n, X) -> tuple of arrows F^n X -> G^n X


def hat_modification(u: AdditiveTransformation, F_hat: Optional[TwoAlgebraMorphism] = None,
                     G_hat: Optional[TwoAlgebraMorphism] = None) -> Modification:
    """Components ``u^n``."""
    F_hat = F_hat or hat_functor(u.source)
    G_hat = G_hat or hat_functor(u.target, F_hat.source, F_hat.target)
    return Modification(F_hat, G_hat, lambda n, X: tuple(u.component(x) for x in X))


def check_modification(m: Modification, cases: int = 20, seed: int = 0) -> Report:
    F, G = m.source, m.target
    A1, A2 = F.source, F.target
    report = Report()

    def components_valid(rng):
        n = random_arities(rng, 1)[0]
        X = A1.object(n).sample_object(rng)
        c = m.component(n, X)
        Pn = A2.object(n)
        if not Pn.is_arrow(c) or Pn.src(c) != F.component(n).on_object(X) or Pn.dst(c) != G.component(n).on_object(X):
            return {"n": n, "X": X, "component": c}
        return None

    def naturality(rng):
        n = random_arities(rng, 1)[0]
        Pn = A1.object(n)
        X = Pn.sample_object(rng)
        f = Pn.sample_arrow(rng, X)
        Q = A2.object(n)
        lhs = Q.compose(m.component(n, Pn.dst(f)), F.component(n).on_arrow(f))
        rhs = Q.compose(G.component(n).on_arrow(f), m.component(n, X))
        return _eq(lhs, rhs, n=n, f=f)

    def filler_compatibility(rng):
        ar = random_arities(rng, 2)
        P = random_cell(rng, ar[0], ar[1])
        X = A1.object(P.source).sample_object(rng)
        PX = A1.cell(P).on_object(X)
        Pk = A2.object(P.target)
        lhs = Pk.compose(G.filler(P, X), m.component(P.target, PX))
        rhs = Pk.compose(A2.cell(P).on_arrow(m.component(P.source, X)), F.filler(P, X))
        return _eq(lhs, rhs, P=str(P), X=X)

    trials = {
        "modification.components_valid": components_valid,
        "modification.naturality": naturality,
        "modification.filler_compatibility": filler_compatibility,
    }
    for name, trial in sorted(trials.items()):
        rng = _rng(seed, name)
        report.add(run_check(name, cases, lambda i, t=trial, r=rng: t(r)))
    return report


# -- reconstruction -----------------------------------------------------------

_ASSOC_LEFT = OneCell.of([[1, 1, 0], [0, 0, 1]])  # (x1 + x2, x3)
_ASSOC_RIGHT = OneCell.of([[1, 0, 0], [0, 1, 1]])  # (x1, x2 + x3)
_UNIT_LEFT = OneCell.of([[0], [1]])
_UNIT_RIGHT = OneCell.of([[1], [0]])
_INVERSE = OneCell.of([[1], [-1]])


class ReconstructedModel(PicardGroupoid):
    """The Picard structure carried by arity 1 of a 2-algebra.

    ``+`` is the cell (1,1), negation the cell (-1), ``e`` the cell 0 -> 1;
    every constraint is a compositor (composite) at a small matrix.
    """

    def __init__(self, A: TwoAlgebra):
        self.algebra = A
        self.kind = getattr(A.base, "kind", "reconstructed")
        self.payload_additive = getattr(A.base, "payload_additive", False)
        self._one = A.object(1)

    def __repr__(self):
        return f"ReconstructedModel({self.algebra!r})"

    def _gamma(self, Q, P, *X) -> PArrow:
        return self.algebra.compositor(Q, P, X)[0]

    def neutral(self):
        return self.algebra.cell(neutral_cell(1)).on_object(())[0]

    def add(self, X, Y):
        return self.algebra.cell(SUM).on_object((X, Y))[0]

    def neg(self, X):
        return self.algebra.cell(NEGATE).on_object((X,))[0]

    def identity(self, X):
        return self._one.identity((X,))[0]

    def compose(self, g, f):
        return self._one.compose((g,), (f,))[0]

    def inverse(self, f):
        return self._one.inverse((f,))[0]

    def add_arrows(self, f, g):
        return self.algebra.cell(SUM).on_arrow((f, g))[0]

    def neg_arrow(self, f):
        return self.algebra.cell(NEGATE).on_arrow((f,))[0]

    def assoc(self, X, Y, Z):
        # both bracketings map to the compositor target A((1,1,1)); go through it
        to_flat = self._gamma(SUM, _ASSOC_LEFT, X, Y, Z)
        from_flat = self.inverse(self._gamma(SUM, _ASSOC_RIGHT, X, Y, Z))
        return self.compose(from_flat, to_flat)

    def comm(self, X, Y):
        # A(swap)(Y, X) = (X, Y), so this compositor runs X + Y -> Y + X
        return self._gamma(SUM, SWAP, Y, X)

    def unit_left(self, X):
        return self._gamma(SUM, _UNIT_LEFT, X)

    def unit_right(self, X):
        return self._gamma(SUM, _UNIT_RIGHT, X)

    def phi(self):
        return self.algebra.compositor(SUM, neutral_cell(2), ())[0]

    def inv(self, X):
        return self._gamma(SUM, _INVERSE, X)

    def neg_zero(self):
        return self.algebra.compositor(NEGATE, neutral_cell(1), ())[0]

    def neg_distrib(self, X, Y):
        return self._gamma(NEGATE, SUM, X, Y)

    def neg_neg(self, X):
        return self._gamma(NEGATE, NEGATE, X)

    def is_arrow(self, f):
        return self._one.is_arrow((f,))

    def sample_object(self, rng):
        return self.algebra.base.sample_object(rng)

    def sample_arrow(self, rng, X):
        return self.algebra.base.sample_arrow(rng, X)

    def object_count(self):
        return self._one.object_count()

    def arrow_count(self):
        return self._one.arrow_count()


RECONSTRUCTED_DATA = (
    "neutral", "add", "neg", "add_arrows", "neg_arrow", "assoc", "comm",
    "unit_left", "unit_right", "phi", "inv", "neg_zero", "neg_distrib", "neg_neg",
)


def compare_models(R: PicardGroupoid, P: PicardGroupoid, cases: int = 20, seed: int = 0,
                   prefix: str = "round_trip.") -> Report:
    """Exact equality of every piece of Picard data on sampled inputs."""
    report = Report()
    arity = {"neutral": 0, "phi": 0, "neg_zero": 0, "add": 2, "comm": 2, "neg_distrib": 2,
             "assoc": 3, "add_arrows": 2}

    for name in sorted(RECONSTRUCTED_DATA):
        rng = _rng(seed, prefix + name)
        k = arity.get(name, 1)
        on_arrows = name in ("add_arrows", "neg_arrow")

        def trial(i, name=name, k=k, rng=rng, on_arrows=on_arrows):
            if on_arrows:
                args = [P.sample_arrow(rng, _pick_object(P, rng)) for _ in range(k)]
            else:
                args = [_pick_object(P, rng) for _ in range(k)]
            return _eq(getattr(R, name)(*args), getattr(P, name)(*args), args=args)

        report.add(run_check(prefix + name, cases, trial))
    return report


@dataclass
class Reconstruction:
    model: ReconstructedModel
    report: Report

    @property
    def ok(self) -> bool:
        return self.report.passed


def reconstruct(A: TwoAlgebra, original: Optional[PicardGroupoid] = None, cases: int = 20,
                seed: int = 0) -> Reconstruction:
    """Rebuild the Picard groupoid, validate it with the axiom suite and,
    when ``original`` is given, compare it with that model exactly."""
    R = ReconstructedModel(A)
    report = Report()
    report.extend(check_picard_axioms(R, cases, seed), prefix="reconstructed.")
    if original is not None:
        report.extend(compare_models(R, original, cases, seed))
    return Reconstruction(R, report)


def round_trip_report(F: AdditiveFunctor, morphism: Optional[TwoAlgebraMorphism] = None,
                      cases: int = 20, seed: int = 0) -> Report:
    """Compare the arity-1 data of ``morphism`` (default ``hat_functor(F)``)
    with ``F``: object map, arrow map and distributor (the filler at (1,1))."""
    M = morphism or hat_functor(F)
    S = F.source
    C1 = M.component(1)
    report = Report()

    def objects(rng):
        X = _pick_object(S, rng)
        return _eq(C1.on_object((X,)), (F.on_object(X),), X=X)

    def arrows(rng):
        f = S.sample_arrow(rng, _pick_object(S, rng))
        return _eq(C1.on_arrow((f,)), (F.on_arrow(f),), f=f)

    def distributor(rng):
        X, Y = _pick_object(S, rng), _pick_object(S, rng)
        return _eq(M.filler(SUM, (X, Y)), (F.distributor(X, Y),), X=X, Y=Y)

    for name, trial in (("hom_round_trip.arrows", arrows), ("hom_round_trip.distributor", distributor),
                        ("hom_round_trip.objects", objects)):
        rng = _rng(seed, name)
        report.add(run_check(name, cases, lambda i, t=trial, r=rng: t(r)))
    return report


def round_trip_hom(F: AdditiveFunctor, morphism: Optional[TwoAlgebraMorphism] = None,
                   cases: int = 20, seed: int = 0) -> bool:
    return round_trip_report(F, morphism, cases, seed).passed
