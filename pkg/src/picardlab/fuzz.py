"""Seeded random generators for complexes, models, morphisms, matrices and
expressions. Every generator takes a ``random.Random`` and nothing else
random, so a (seed, case) pair always reproduces the same object."""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd
from typing import Optional

from .complexes import ComplexMorphism, TwoTermComplex, make_complex_morphism
from .expr import Add, Expr, Neg, Var, Zero
from .picard import SkeletalModel, StrictModel, random_element
from .theory import OneCell
from .zlin import FgAbelianGroup, GroupElement, GroupHom, IllDefinedHomError, IntMatrix, canonical_group

FACTOR_CHOICES = (2, 3, 4, 6, 8, 0)
ENTRY_BOUND = 5


def case_rng(seed, index, label: str = "case") -> random.Random:
    return random.Random(f"{seed}:{label}:{index}")


def random_group(rng: random.Random, max_factors: int = 3) -> FgAbelianGroup:
    k = rng.randint(0, max_factors)
    return canonical_group(rng.choice(FACTOR_CHOICES) for _ in range(k))


def _admissible_entry(rng, src_order: int, dst_order: int, bound: int) -> int:
    """A random entry in [-bound, bound] for which the generator map is well defined."""
    if src_order == 0:
        return rng.randint(-bound, bound)
    if dst_order == 0:
        return 0
    step = dst_order // gcd(src_order, dst_order)
    k = bound // step
    return step * rng.randint(-k, k)


def random_hom(rng, source: FgAbelianGroup, target: FgAbelianGroup, bound: int = ENTRY_BOUND) -> GroupHom:
    rows = [
        [_admissible_entry(rng, ds, dt, bound) for ds in source.factors]
        for dt in target.factors
    ]
    return GroupHom(source, target, IntMatrix.from_rows(rows, cols=source.ngens))


def random_complex(rng: random.Random, max_factors: int = 3) -> TwoTermComplex:
    A, B = random_group(rng, max_factors), random_group(rng, max_factors)
    return TwoTermComplex(A, B, random_hom(rng, A, B))


@dataclass(frozen=True)
class RandomSection:
    """``s(x) = lift(x) + d(a(x))`` with ``a`` seeded by ``x``; ``a(0) = 0``."""

    complex: TwoTermComplex
    seed: str

    def __call__(self, x: GroupElement) -> GroupElement:
        c = self.complex
        base = c.pi0.lift(x)
        if x.is_zero():
            return base
        a = random_element(c.A, random.Random(f"{self.seed}:{x.coords}"), spread=3)
        return base + c.d(a)


@dataclass(frozen=True)
class RandomCochain:
    """Pseudo-random pi1-valued table on pi0 x pi0; ``normalized`` forces
    ``g(0, y) = g(x, 0) = 0``."""

    complex: TwoTermComplex
    seed: str
    normalized: bool = True

    def __call__(self, x: GroupElement, y: GroupElement) -> GroupElement:
        group = self.complex.pi1.group
        if self.normalized and (x.is_zero() or y.is_zero()):
            return group.zero()
        return random_element(group, random.Random(f"{self.seed}:{x.coords}:{y.coords}"), spread=4)


COCHAIN_VARIANTS = ("zero", "normalized", "raw")


def random_skeletal(rng: random.Random, c: TwoTermComplex, variant: str = "normalized",
                    random_section: Optional[bool] = None) -> SkeletalModel:
    """Skeletal model with a random section; ``variant`` picks the cochain:
    ``zero``, ``normalized`` or ``raw`` (not normalized)."""
    tag = rng.getrandbits(64)
    if random_section is None:
        random_section = rng.random() < 0.5
    section = RandomSection(c, f"s{tag}") if random_section else None
    if variant == "zero":
        cochain = None
    elif variant in ("normalized", "raw"):
        cochain = RandomCochain(c, f"g{tag}", normalized=variant == "normalized")
    else:
        raise ValueError(f"unknown cochain variant {variant!r}")
    return SkeletalModel(c, section, cochain)


def random_models(rng: random.Random, c: TwoTermComplex) -> dict:
    """The strict model and one skeletal model per cochain variant."""
    out = {"strict": StrictModel(c)}
    for v in COCHAIN_VARIANTS:
        out[f"skeletal-{v}"] = random_skeletal(rng, c, v)
    return out


def random_complex_morphism(rng: random.Random, c: TwoTermComplex, attempts: int = 20) -> ComplexMorphism:
    """A random morphism out of ``c``: pick a target complex and ``fB``, then
    solve for ``fA``. Falls back to a multiple of the identity on ``c``."""
    for _ in range(attempts):
        c2 = random_complex(rng)
        fB = random_hom(rng, c.B, c2.B)
        cols = []
        for a in c.A.generators():
            pre = c2.d.preimage(fB(c.d(a)))
            if pre is None:
                break
            # perturb by a random kernel element to avoid always-minimal solutions
            k = random_element(c2.pi1.group, rng, spread=2)
            cols.append((pre + c2.pi1.inclusion(k)).coords)
        else:
            try:
                fA = GroupHom(c.A, c2.A, IntMatrix.from_columns(cols, rows=c2.A.ngens))
            except IllDefinedHomError:
                continue
            return make_complex_morphism(c, c2, fA, fB)
    k = rng.randint(-3, 3)
    scale = lambda G: GroupHom(G, G, IntMatrix.from_rows([[k * int(i == j) for j in range(G.ngens)] for i in range(G.ngens)], cols=G.ngens))
    return make_complex_morphism(c, c, scale(c.A), scale(c.B))


def random_entry(rng: random.Random, bound: int = ENTRY_BOUND) -> int:
    """An entry in [-bound, bound], weighted toward small magnitudes so that
    composite matrices keep formal sums of manageable length."""
    r = rng.random()
    if r < 0.45:
        return 0
    if r < 0.8:
        return rng.choice((-1, 1))
    return rng.choice((-1, 1)) * rng.randint(2, bound)


def random_matrix(rng: random.Random, rows: int, cols: int, bound: int = ENTRY_BOUND) -> IntMatrix:
    return IntMatrix.from_rows([[random_entry(rng, bound) for _ in range(cols)] for _ in range(rows)], cols=cols)


def random_cell(rng: random.Random, source: int, target: int, bound: int = ENTRY_BOUND) -> OneCell:
    return OneCell(source, target, random_matrix(rng, target, source, bound))


def random_arities(rng: random.Random, count: int, max_arity: int = 4) -> list:
    # arity 0 is legal but rarely informative, so it is drawn less often
    return [rng.choice((0,) + tuple(range(1, max_arity + 1)) * 3) for _ in range(count)]


def random_expr(rng: random.Random, depth: int = 5, arity: int = 4) -> Expr:
    if depth == 0 or rng.random() < 0.2:
        if arity == 0 or rng.random() < 0.1:
            return Zero()
        return Var(rng.randint(1, arity))
    if rng.random() < 0.25:
        return Neg(random_expr(rng, depth - 1, arity))
    return Add(random_expr(rng, depth - 1, arity), random_expr(rng, depth - 1, arity))
