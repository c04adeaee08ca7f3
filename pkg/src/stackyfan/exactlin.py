"""Exact integer linear algebra: Smith and Hermite normal forms, lattice kernels.

Everything works on Python ints, so there is no overflow however large the
intermediate pivots get.  Matrices are immutable :class:`IntMatrix` values;
most functions also accept a plain list of rows.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence, Union

Vector = tuple[int, ...]


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        rows = [tuple(int(x) for x in r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged matrix")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Iterable[Sequence[int]], rows: Optional[int] = None) -> "IntMatrix":
        columns = [tuple(int(x) for x in c) for c in columns]
        if rows is None:
            rows = len(columns[0]) if columns else 0
        return cls.from_rows(
            [[c[i] for c in columns] for i in range(rows)], cols=len(columns)
        )

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix.from_rows([self.column(j) for j in range(self.cols)], cols=self.rows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.columns()
        return IntMatrix.from_rows(
            [[sum(a * b for a, b in zip(self.row(i), c)) for c in cols] for i in range(self.rows)],
            cols=other.cols,
        )

    def apply(self, v: Sequence[int]) -> Vector:
        return tuple(sum(a * b for a, b in zip(self.row(i), v)) for i in range(self.rows))

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return IntMatrix.from_rows(
            [self.row(i) + other.row(i) for i in range(self.rows)], cols=self.cols + other.cols
        )

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __repr__(self):
        return f"IntMatrix({self.to_rows()!r})"


MatrixLike = Union[IntMatrix, Sequence[Sequence[int]]]


def as_matrix(M: MatrixLike) -> IntMatrix:
    if isinstance(M, IntMatrix):
        return M
    return IntMatrix.from_rows(M)


@dataclass(frozen=True)
class AbelianGroupInvariants:
    """Z^rank + Z/d_1 + ... + Z/d_k with d_i >= 2 and d_i | d_{i+1}."""

    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"torsion {self.torsion} is not a divisibility chain")
        if any(d < 2 for d in self.torsion):
            raise ValueError("torsion coefficients must be >= 2")

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self):
        parts = [f"Z^{self.rank}"] if self.rank > 1 else (["Z"] if self.rank == 1 else [])
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# vectors

def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def primitive(v: Sequence[int]) -> Vector:
    g = content(v)
    if g == 0:
        raise ValueError("zero vector has no primitive rescaling")
    return tuple(x // g for x in v)


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def first_nonzero_positive(v: Sequence[int]) -> Vector:
    for x in v:
        if x:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    return tuple(v)


# ---------------------------------------------------------------------------
# determinants and ranks

def determinant(M: MatrixLike) -> int:
    """Bareiss fraction-free determinant."""
    M = as_matrix(M)
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    n = M.rows
    if n == 0:
        return 1
    A = M.to_rows()
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def _rref(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    A = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A, pivots


def rank(vectors: Iterable[Sequence]) -> int:
    """Rank of a list of (integer or rational) vectors."""
    rows = [[Fraction(x) for x in v] for v in vectors]
    if not rows:
        return 0
    return len(_rref(rows, len(rows[0]))[1])


def rational_solve(A: MatrixLike, b: Sequence[int]) -> Optional[tuple[Fraction, ...]]:
    """Some exact rational ``x`` with ``A x = b``, or ``None`` if inconsistent.

    Free variables are set to zero.
    """
    A = as_matrix(A)
    if len(b) != A.rows:
        raise ValueError("right-hand side has the wrong length")
    aug = [[Fraction(x) for x in A.row(i)] + [Fraction(b[i])] for i in range(A.rows)]
    R, pivots = _rref(aug, A.cols + 1)
    if A.cols in pivots:
        return None
    x = [Fraction(0)] * A.cols
    for i, c in enumerate(pivots):
        x[c] = R[i][A.cols]
    return tuple(x)


# ---------------------------------------------------------------------------
# Smith normal form

def smith_normal_form(M: MatrixLike) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(U, D, V)`` with ``U @ M @ V == D`` and ``U``, ``V`` unimodular.

    ``D`` is diagonal, nonnegative, with each diagonal entry dividing the next.
    The pivot is always the entry of smallest absolute value in the remaining
    block, ties broken by the smallest (row, col), so the transforms are
    reproducible.
    """
    M = as_matrix(M)
    m, n = M.shape
    A = M.to_rows()
    U = IntMatrix.identity(m).to_rows()
    V = IntMatrix.identity(n).to_rows()

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        A[dst] = [x + k * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + k * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, k):  # col_dst += k * col_src
        for row in A:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    a = A[i][j]
                    if a and (best is None or abs(a) < best[0]):
                        best = (abs(a), i, j)
            if best is None:
                break
            _, i, j = best
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
            if any(A[i][t] for i in range(t + 1, m)) or any(A[t][j] for j in range(t + 1, n)):
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return (
        IntMatrix.from_rows(U, cols=m),
        IntMatrix.from_rows(A, cols=n),
        IntMatrix.from_rows(V, cols=n),
    )


def snf_diagonal(M: MatrixLike) -> list[int]:
    _, D, _ = smith_normal_form(M)
    return [D[i, i] for i in range(min(D.rows, D.cols))]


def cokernel_invariants(M: MatrixLike) -> AbelianGroupInvariants:
    """Structure of ``Z^rows / im(M)``."""
    M = as_matrix(M)
    diag = snf_diagonal(M)
    r = sum(1 for d in diag if d)
    return AbelianGroupInvariants(M.rows - r, tuple(d for d in diag if d > 1))


# ---------------------------------------------------------------------------
# Hermite normal form and kernels

def hermite_normal_form(vectors: Iterable[Sequence[int]]) -> list[Vector]:
    """Row-style HNF of the lattice spanned by ``vectors`` (zero rows dropped).

    Pivots are positive and strictly move right; entries above a pivot lie in
    ``[0, pivot)``.  Two generating sets give the same output iff they span
    the same lattice.
    """
    A = [list(v) for v in vectors if any(v)]
    if not A:
        return []
    ncols = len(A[0])
    r = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, len(A)) if A[i][c]]
            if not nz:
                break
            p = min(nz, key=lambda i: (abs(A[i][c]), i))
            A[r], A[p] = A[p], A[r]
            for i in range(r + 1, len(A)):
                if A[i][c]:
                    q = A[i][c] // A[r][c]
                    A[i] = [x - q * y for x, y in zip(A[i], A[r])]
            if not any(A[i][c] for i in range(r + 1, len(A))):
                break
        if r < len(A) and A[r][c]:
            if A[r][c] < 0:
                A[r] = [-x for x in A[r]]
            for i in range(r):
                q = A[i][c] // A[r][c]
                if q:
                    A[i] = [x - q * y for x, y in zip(A[i], A[r])]
            r += 1
            if r == len(A):
                break
    return [tuple(row) for row in A[:r]]


def integer_kernel_basis(M: MatrixLike) -> IntMatrix:
    """Basis (as columns) of the saturated lattice ``{x in Z^cols : M x = 0}``.

    The basis is canonical: HNF of the kernel lattice, rows sorted
    lexicographically, every column primitive with positive leading entry.
    """
    M = as_matrix(M)
    _, D, V = smith_normal_form(M)
    r = sum(1 for i in range(min(D.rows, D.cols)) if D[i, i])
    kernel = [V.column(j) for j in range(r, M.cols)]
    basis = sorted(hermite_normal_form(kernel))
    return IntMatrix.from_columns(basis, rows=M.cols)


def span_lattice_basis(vectors: Sequence[Sequence[int]], dim: int) -> list[Vector]:
    """Basis of the saturation ``span(vectors) ∩ Z^dim``."""
    if not vectors:
        return []
    # saturated span = kernel of the kernel of the transpose
    ortho = integer_kernel_basis(IntMatrix.from_rows(vectors, cols=dim)).columns()
    if not ortho:
        return [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    return integer_kernel_basis(IntMatrix.from_rows(ortho, cols=dim)).columns()


def left_inverse(K: Sequence[Sequence[int]], dim: int) -> list[Vector]:
    """Integer rows ``P`` with ``P K = I`` for a saturated basis ``K`` (as columns)."""
    k = len(K)
    if k == 0:
        return []
    Kmat = IntMatrix.from_columns(K, rows=dim)
    # U K V = D with D = [I; 0] for a saturated basis, so (V U)[:k] K = I
    U, D, V = smith_normal_form(Kmat)
    if any(D[i, i] != 1 for i in range(k)):
        raise ValueError("basis is not saturated")
    VU = V @ IntMatrix.from_rows([U.row(i) for i in range(k)], cols=dim)
    return [VU.row(i) for i in range(k)]
