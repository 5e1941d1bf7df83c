"""Two-term complexes ``d: A -> B`` of finitely generated abelian groups.

Over the point these present strictly commutative Picard groupoids: objects
are elements of B, arrows are elements of A. ``pi0`` is the cokernel of d and
``pi1`` its kernel.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional

from .zlin import (
    Cokernel,
    FgAbelianGroup,
    GroupHom,
    IntMatrix,
    Kernel,
    hom_inverse,
    hom_kernel_cokernel,
    is_isomorphism,
)


class NonCommutingSquareError(ValueError):
    def __init__(self, message, generator=None, via_source=None, via_target=None):
        super().__init__(message)
        self.generator = generator
        self.via_source = via_source
        self.via_target = via_target


@dataclass(frozen=True)
class TwoTermComplex:
    A: FgAbelianGroup
    B: FgAbelianGroup
    d: GroupHom

    def __post_init__(self):
        if self.d.source != self.A or self.d.target != self.B:
            raise ValueError("differential does not go from A to B")

    @cached_property
    def _homology(self):
        return hom_kernel_cokernel(self.d)

    @property
    def pi0(self) -> Cokernel:
        return self._homology[1]

    @property
    def pi1(self) -> Kernel:
        return self._homology[0]

    def __str__(self):
        return f"[{self.A} -> {self.B}; d = {self.d.matrix}]"


def make_complex(A, B, d) -> TwoTermComplex:
    """Build and validate a complex.

    ``A`` and ``B`` may be factor lists; ``d`` a GroupHom or a list of rows
    (one per factor of B).
    """
    A = A if isinstance(A, FgAbelianGroup) else FgAbelianGroup(tuple(A))
    B = B if isinstance(B, FgAbelianGroup) else FgAbelianGroup(tuple(B))
    if not isinstance(d, GroupHom):
        rows = list(d)
        if not rows and B.ngens:
            rows = [[0] * A.ngens for _ in range(B.ngens)]
        d = GroupHom(A, B, IntMatrix.from_rows(rows, cols=A.ngens))
    return TwoTermComplex(A, B, d)


def trivial_complex() -> TwoTermComplex:
    """The complex of the one-object one-arrow Picard groupoid (A = B = 0)."""
    return make_complex((), (), [])


def pi0(c: TwoTermComplex) -> FgAbelianGroup:
    return c.pi0.group


def pi1(c: TwoTermComplex) -> FgAbelianGroup:
    return c.pi1.group


@dataclass(frozen=True)
class ComplexMorphism:
    source: TwoTermComplex
    target: TwoTermComplex
    fA: GroupHom
    fB: GroupHom

    def __matmul__(self, other: "ComplexMorphism") -> "ComplexMorphism":
        return make_complex_morphism(
            other.source, self.target, self.fA @ other.fA, self.fB @ other.fB
        )

    @cached_property
    def on_pi0(self) -> GroupHom:
        src, dst = self.source.pi0, self.target.pi0
        cols = [dst.projection(self.fB(src.lift(x))).coords for x in src.group.generators()]
        return GroupHom(src.group, dst.group, IntMatrix.from_columns(cols, rows=dst.group.ngens))

    @cached_property
    def on_pi1(self) -> GroupHom:
        src, dst = self.source.pi1, self.target.pi1
        cols = [dst.retract(self.fA(src.inclusion(k))).coords for k in src.group.generators()]
        return GroupHom(src.group, dst.group, IntMatrix.from_columns(cols, rows=dst.group.ngens))


def make_complex_morphism(c, c2, fA, fB) -> ComplexMorphism:
    if not isinstance(fA, GroupHom):
        fA = GroupHom(c.A, c2.A, IntMatrix.from_rows(fA, cols=c.A.ngens))
    if not isinstance(fB, GroupHom):
        fB = GroupHom(c.B, c2.B, IntMatrix.from_rows(fB, cols=c.B.ngens))
    if (fA.source, fA.target, fB.source, fB.target) != (c.A, c2.A, c.B, c2.B):
        raise ValueError("component maps do not match the complexes")
    for i, a in enumerate(c.A.generators()):
        lhs, rhs = fB(c.d(a)), c2.d(fA(a))
        if lhs != rhs:
            raise NonCommutingSquareError(
                f"square does not commute on generator {i} of A: "
                f"fB(d(a)) = {lhs} but d'(fA(a)) = {rhs}",
                generator=i,
                via_source=lhs,
                via_target=rhs,
            )
    return ComplexMorphism(c, c2, fA, fB)


def identity_morphism(c: TwoTermComplex) -> ComplexMorphism:
    return ComplexMorphism(c, c, GroupHom.identity(c.A), GroupHom.identity(c.B))


@dataclass(frozen=True)
class QuasiIsoCertificate:
    is_quasi_iso: bool
    on_pi0: GroupHom
    on_pi1: GroupHom
    pi0_inverse: Optional[GroupHom] = None
    pi1_inverse: Optional[GroupHom] = None
    failing: tuple = ()

    def __bool__(self):
        return self.is_quasi_iso


def is_quasi_iso(m: ComplexMorphism) -> QuasiIsoCertificate:
    f0, f1 = m.on_pi0, m.on_pi1
    failing = tuple(
        name for name, f in (("pi0", f0), ("pi1", f1)) if not is_isomorphism(f)
    )
    if failing:
        return QuasiIsoCertificate(False, f0, f1, failing=failing)
    return QuasiIsoCertificate(True, f0, f1, hom_inverse(f0), hom_inverse(f1))
