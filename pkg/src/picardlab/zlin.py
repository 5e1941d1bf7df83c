"""Exact integer linear algebra and finitely generated abelian groups.

Everything here works over Python integers, so nothing can overflow. The
Smith normal form drives the rest: linear solving, cokernel presentations,
kernels of group homomorphisms and deterministic preimages.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence


class DimensionError(ValueError):
    pass


class IllDefinedHomError(ValueError):
    pass


class GroupMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionError("negative matrix dimension")
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionError(
                f"entry grid does not have shape {self.rows}x{self.cols}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if cols is None:
            if not rows:
                raise DimensionError("column count of an empty matrix must be given")
            cols = len(rows[0])
        return cls(len(rows), cols, rows)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        return cls.from_rows(
            [[c[i] for c in columns] for i in range(rows)], cols=len(columns)
        )

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols, self.rows, tuple(self.column(j) for j in range(self.cols))
        )

    @property
    def T(self) -> "IntMatrix":
        return self.transpose()

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        ocols = [other.column(j) for j in range(other.cols)]
        return IntMatrix(
            self.rows,
            other.cols,
            tuple(
                tuple(sum(a * b for a, b in zip(r, c)) for c in ocols)
                for r in self.entries
            ),
        )

    def apply(self, v: Sequence[int]) -> tuple:
        if len(v) != self.cols:
            raise DimensionError(f"vector of length {len(v)} for {self.cols} columns")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.entries)

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise DimensionError("hstack needs equal row counts")
        return IntMatrix(
            self.rows,
            self.cols + other.cols,
            tuple(a + b for a, b in zip(self.entries, other.entries)),
        )

    def vstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.cols:
            raise DimensionError("vstack needs equal column counts")
        return IntMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)

    def det(self) -> int:
        """Determinant by fraction-free Bareiss elimination."""
        if self.rows != self.cols:
            raise DimensionError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = [list(r) for r in self.entries]
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def __str__(self):
        return ";".join(",".join(str(x) for x in r) for r in self.entries)


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ M @ V == D`` with ``U``, ``V`` unimodular; inverses kept alongside."""

    source: IntMatrix
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    U_inv: IntMatrix
    V_inv: IntMatrix

    @cached_property
    def diagonal(self) -> tuple:
        return tuple(self.D[i, i] for i in range(min(self.D.rows, self.D.cols)))

    @cached_property
    def rank(self) -> int:
        return sum(1 for x in self.diagonal if x != 0)


def smith_normal_form(M: IntMatrix) -> SmithDecomposition:
    r, c = M.rows, M.cols
    D = [list(row) for row in M.entries]
    U = [[int(i == j) for j in range(r)] for i in range(r)]
    Ui = [[int(i == j) for j in range(r)] for i in range(r)]
    V = [[int(i == j) for j in range(c)] for i in range(c)]
    Vi = [[int(i == j) for j in range(c)] for i in range(c)]

    # Row ops act on D, U (rows) and U_inv (columns); column ops on D, V
    # (columns) and V_inv (rows), so U_inv @ U and V @ V_inv stay identities.
    def row_swap(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]
        for row in Ui:
            row[i], row[j] = row[j], row[i]

    def row_add(i, j, q):  # row_i += q * row_j
        D[i] = [a + q * b for a, b in zip(D[i], D[j])]
        U[i] = [a + q * b for a, b in zip(U[i], U[j])]
        for row in Ui:
            row[j] -= q * row[i]

    def row_neg(i):
        D[i] = [-a for a in D[i]]
        U[i] = [-a for a in U[i]]
        for row in Ui:
            row[i] = -row[i]

    def col_swap(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def col_add(j, i, q):  # col_j += q * col_i
        for row in D:
            row[j] += q * row[i]
        for row in V:
            row[j] += q * row[i]
        Vi[i] = [a - q * b for a, b in zip(Vi[i], Vi[j])]

    def pick_pivot(t):
        best = None
        for i in range(t, r):
            for j in range(t, c):
                x = D[i][j]
                if x != 0 and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        return best

    for t in range(min(r, c)):
        best = pick_pivot(t)
        if best is None:
            break
        while True:
            _, i, j = best
            if i != t:
                row_swap(i, t)
            if j != t:
                col_swap(j, t)
            p = D[t][t]
            clean = True
            for i in range(t + 1, r):
                if D[i][t]:
                    row_add(i, t, -(D[i][t] // p))
                    clean = clean and D[i][t] == 0
            for j in range(t + 1, c):
                if D[t][j]:
                    col_add(j, t, -(D[t][j] // p))
                    clean = clean and D[t][j] == 0
            if not clean:
                best = pick_pivot(t)
                continue
            bad = next(
                (i for i in range(t + 1, r) for j in range(t + 1, c) if D[i][j] % p),
                None,
            )
            if bad is None:
                break
            row_add(t, bad, 1)
            best = (abs(p), t, t)
        if D[t][t] < 0:
            row_neg(t)

    def mat(rows, n_rows, n_cols):
        return IntMatrix(n_rows, n_cols, tuple(tuple(x) for x in rows))

    return SmithDecomposition(
        source=M,
        U=mat(U, r, r),
        D=mat(D, r, c),
        V=mat(V, c, c),
        U_inv=mat(Ui, r, r),
        V_inv=mat(Vi, c, c),
    )


def _solve_with(snf: SmithDecomposition, b: Sequence[int]):
    M = snf.source
    if len(b) != M.rows:
        raise DimensionError(f"right-hand side has length {len(b)}, expected {M.rows}")
    c = snf.U.apply(b)
    y = [0] * M.cols
    for i, ci in enumerate(c):
        di = snf.diagonal[i] if i < len(snf.diagonal) else 0
        if di == 0:
            if ci != 0:
                return None
        else:
            if ci % di:
                return None
            y[i] = ci // di
    x0 = snf.V.apply(y)
    kernel = [snf.V.column(j) for j in range(snf.rank, M.cols)]
    return x0, kernel


def solve_linear(M: IntMatrix, b: Sequence[int]):
    """Integer solutions of ``M x = b``.

    Returns ``None`` when there is no integer solution, else
    ``(x0, kernel_basis)``. ``x0`` is the solution obtained through the Smith
    change of basis with every free parameter set to zero.
    """
    return _solve_with(smith_normal_form(M), b)


@dataclass(frozen=True)
class FgAbelianGroup:
    """Direct sum of cyclic groups; factor 0 is a copy of Z, d >= 2 is Z/d."""

    factors: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(int(d) for d in self.factors))
        fs = self.factors
        if any(d < 0 or d == 1 for d in fs):
            raise ValueError(f"invalid invariant factors {fs}")
        torsion = [d for d in fs if d >= 2]
        if fs[: len(torsion)] != tuple(torsion):
            raise ValueError(f"torsion factors must precede free factors: {fs}")
        if any(b % a for a, b in zip(torsion, torsion[1:])):
            raise ValueError(f"torsion factors must form a divisibility chain: {fs}")

    @property
    def ngens(self) -> int:
        return len(self.factors)

    @property
    def rank(self) -> int:
        return sum(1 for d in self.factors if d == 0)

    def order(self) -> Optional[int]:
        if self.rank:
            return None
        n = 1
        for d in self.factors:
            n *= d
        return n

    def is_trivial(self) -> bool:
        return not self.factors

    def canonical(self, coords: Sequence[int]) -> tuple:
        if len(coords) != len(self.factors):
            raise DimensionError(
                f"{len(coords)} coordinates for a group with {len(self.factors)} factors"
            )
        return tuple(x % d if d else int(x) for x, d in zip(coords, self.factors))

    def element(self, coords: Sequence[int]) -> "GroupElement":
        return GroupElement(self, self.canonical(coords))

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * len(self.factors))

    def generators(self) -> list:
        n = len(self.factors)
        return [self.element([int(i == j) for j in range(n)]) for i in range(n)]

    def __str__(self):
        if not self.factors:
            return "0"
        return " + ".join(f"Z/{d}" if d else "Z" for d in self.factors)


@dataclass(frozen=True, slots=True)
class GroupElement:
    group: FgAbelianGroup
    coords: tuple

    def _check(self, other):
        if not isinstance(other, GroupElement) or other.group != self.group:
            raise GroupMismatchError(f"cannot combine elements of {self.group} and {getattr(other, 'group', other)}")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return GroupElement(
            self.group,
            tuple(
                (a + b) % d if d else a + b
                for a, b, d in zip(self.coords, other.coords, self.group.factors)
            ),
        )

    def __neg__(self) -> "GroupElement":
        return GroupElement(
            self.group,
            tuple(-a % d if d else -a for a, d in zip(self.coords, self.group.factors)),
        )

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def __mul__(self, k: int) -> "GroupElement":
        return self.group.element([k * a for a in self.coords])

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self):
        return str(list(self.coords))


def elem_add(x: GroupElement, y: GroupElement) -> GroupElement:
    return x + y


def _reduce_matrix(m: IntMatrix, target: FgAbelianGroup) -> IntMatrix:
    return IntMatrix(
        m.rows,
        m.cols,
        tuple(
            tuple(x % d for x in row) if d else row
            for row, d in zip(m.entries, target.factors)
        ),
    )


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism given by its action on canonical generators.

    The matrix has one column per source factor and one row per target
    factor; entries in torsion rows are stored reduced.
    """

    source: FgAbelianGroup
    target: FgAbelianGroup
    matrix: IntMatrix

    def __post_init__(self):
        m = self.matrix
        if m.shape != (self.target.ngens, self.source.ngens):
            raise DimensionError(
                f"matrix shape {m.shape} does not fit {self.source} -> {self.target}"
            )
        for i, di in enumerate(self.source.factors):
            if di == 0:
                continue
            for j, dj in enumerate(self.target.factors):
                v = di * m[j, i]
                if (dj == 0 and v != 0) or (dj and v % dj):
                    raise IllDefinedHomError(
                        f"generator {i} has order {di} but maps to {m[j, i]} in factor {j} "
                        f"({'Z' if dj == 0 else f'Z/{dj}'})"
                    )
        object.__setattr__(self, "matrix", _reduce_matrix(m, self.target))

    @classmethod
    def from_rows(cls, source, target, rows) -> "GroupHom":
        return cls(source, target, IntMatrix.from_rows(rows, cols=source.ngens))

    @classmethod
    def identity(cls, group: FgAbelianGroup) -> "GroupHom":
        return cls(group, group, IntMatrix.identity(group.ngens))

    @classmethod
    def zero(cls, source, target) -> "GroupHom":
        return cls(source, target, IntMatrix.zeros(target.ngens, source.ngens))

    def __call__(self, x: GroupElement) -> GroupElement:
        if x.group != self.source:
            raise GroupMismatchError(f"element of {x.group} given to a hom from {self.source}")
        return self.target.element(self.matrix.apply(x.coords))

    def __matmul__(self, other: "GroupHom") -> "GroupHom":
        if other.target != self.source:
            raise GroupMismatchError("composing homs with mismatched groups")
        return GroupHom(other.source, self.target, self.matrix @ other.matrix)

    def __add__(self, other: "GroupHom") -> "GroupHom":
        if (self.source, self.target) != (other.source, other.target):
            raise GroupMismatchError("adding homs with different endpoints")
        rows = [
            [a + b for a, b in zip(r1, r2)]
            for r1, r2 in zip(self.matrix.entries, other.matrix.entries)
        ]
        return GroupHom(self.source, self.target, IntMatrix.from_rows(rows, cols=self.source.ngens))

    def __neg__(self) -> "GroupHom":
        rows = [[-a for a in r] for r in self.matrix.entries]
        return GroupHom(self.source, self.target, IntMatrix.from_rows(rows, cols=self.source.ngens))

    @cached_property
    def _lifted_snf(self) -> SmithDecomposition:
        return smith_normal_form(_with_torsion_columns(self.matrix, self.target))

    def preimage(self, y: GroupElement) -> Optional[GroupElement]:
        """Deterministic preimage of ``y`` (free Smith parameters zero), or None."""
        if y.group != self.target:
            raise GroupMismatchError(f"element of {y.group} is not in {self.target}")
        sol = _solve_with(self._lifted_snf, y.coords)
        if sol is None:
            return None
        return self.source.element(sol[0][: self.source.ngens])


def _with_torsion_columns(m: IntMatrix, target: FgAbelianGroup) -> IntMatrix:
    """``[m | -T]`` where T holds one column ``d_j e_j`` per torsion target factor."""
    extra = [
        [(-d if i == j else 0) for i in range(target.ngens)]
        for j, d in enumerate(target.factors)
        if d
    ]
    return m.hstack(IntMatrix.from_columns(extra, target.ngens)) if extra else m


@dataclass(frozen=True)
class Presentation:
    """Cokernel ``Z^n / rowspace(relations)`` in invariant-factor form.

    ``projection`` maps generator coordinates to canonical coordinates;
    ``lift`` is a deterministic set-level section the other way.
    """

    group: FgAbelianGroup
    projection: IntMatrix
    lift_matrix: IntMatrix

    def project(self, coords: Sequence[int]) -> GroupElement:
        return self.group.element(self.projection.apply(coords))

    def lift(self, x: GroupElement) -> tuple:
        return self.lift_matrix.apply(x.coords)


def group_from_presentation(generators: int, relations: IntMatrix) -> Presentation:
    if relations.cols != generators:
        raise DimensionError(
            f"relation matrix has {relations.cols} columns for {generators} generators"
        )
    snf = smith_normal_form(relations)
    diag = [snf.diagonal[i] if i < len(snf.diagonal) else 0 for i in range(generators)]
    keep = [i for i, d in enumerate(diag) if d != 1]
    # In coordinates z = V^T x the relation lattice is diag(d_i).
    Vt = snf.V.transpose()
    projection = IntMatrix.from_rows([Vt.row(i) for i in keep], cols=generators)
    lift = IntMatrix.from_columns([snf.V_inv.row(i) for i in keep], rows=generators)
    return Presentation(FgAbelianGroup(tuple(diag[i] for i in keep)), projection, lift)


@dataclass(frozen=True)
class Kernel:
    group: FgAbelianGroup
    inclusion: GroupHom
    basis: IntMatrix
    presentation: Presentation

    @cached_property
    def _basis_snf(self) -> SmithDecomposition:
        return smith_normal_form(self.basis)

    def retract(self, x: GroupElement) -> GroupElement:
        """Kernel coordinates of an ambient element known to lie in the kernel."""
        if x.group != self.inclusion.target:
            raise GroupMismatchError("element is not in the ambient group")
        sol = _solve_with(self._basis_snf, x.coords)
        if sol is None:
            raise ValueError(f"{x} is not in the kernel")
        return self.presentation.project(sol[0])


@dataclass(frozen=True)
class Cokernel:
    group: FgAbelianGroup
    projection: GroupHom
    presentation: Presentation

    def lift(self, x: GroupElement) -> GroupElement:
        return self.projection.source.element(self.presentation.lift(x))


def hom_kernel_cokernel(f: GroupHom):
    G, H = f.source, f.target
    n, m = G.ngens, H.ngens

    rels = [[(d if i == j else 0) for i in range(m)] for j, d in enumerate(H.factors) if d]
    rels += [list(f.matrix.column(j)) for j in range(n)]
    coker_pres = group_from_presentation(m, IntMatrix.from_rows(rels, cols=m))
    cokernel = Cokernel(
        coker_pres.group,
        GroupHom(H, coker_pres.group, coker_pres.projection),
        coker_pres,
    )

    # x in Z^n maps into the torsion lattice of H iff (x, mu) solves [M | -T].
    N = _with_torsion_columns(f.matrix, H)
    snf = smith_normal_form(N)
    basis_cols = [snf.V.column(j)[:n] for j in range(snf.rank, N.cols)]
    basis = IntMatrix.from_columns(basis_cols, rows=n)
    p = len(basis_cols)
    ker_rels = []
    for i, d in enumerate(G.factors):
        if d:
            sol = solve_linear(basis, [d * int(i == k) for k in range(n)])
            ker_rels.append(sol[0])
    ker_pres = group_from_presentation(p, IntMatrix.from_rows(ker_rels, cols=p))
    inclusion = GroupHom(ker_pres.group, G, basis @ ker_pres.lift_matrix)
    kernel = Kernel(ker_pres.group, inclusion, basis, ker_pres)
    return kernel, cokernel


def is_isomorphism(f: GroupHom) -> bool:
    kernel, cokernel = hom_kernel_cokernel(f)
    return kernel.group.is_trivial() and cokernel.group.is_trivial()


def hom_inverse(f: GroupHom) -> GroupHom:
    if not is_isomorphism(f):
        raise ValueError("hom is not invertible")
    cols = [f.preimage(y).coords for y in f.target.generators()]
    return GroupHom(f.target, f.source, IntMatrix.from_columns(cols, rows=f.source.ngens))


def canonical_group(orders: Iterable[int]) -> FgAbelianGroup:
    """Invariant-factor form of the direct sum of Z/d for the given orders (0 = Z)."""
    orders = list(orders)
    n = len(orders)
    rels = IntMatrix.from_rows(
        [[(d if i == j else 0) for i in range(n)] for j, d in enumerate(orders)], cols=n
    )
    return group_from_presentation(n, rels).group
