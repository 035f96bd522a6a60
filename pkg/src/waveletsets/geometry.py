"""Small exact linear algebra: vectors, matrices, affine isometries, hyperplanes.

Everything is dimension-checked and works over exact number types
(Fraction, int, ExactScalar) as well as floats.  Matrix inverses and
determinants are implemented directly for the small dimensions used here.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

DEFAULT_TOL = 1e-10


# ---------------------------------------------------------------------------
# vectors
# ---------------------------------------------------------------------------


class Vec(tuple):
    """An immutable dense vector."""

    def __new__(cls, entries: Iterable):
        return super().__new__(cls, tuple(entries))

    @property
    def dim(self) -> int:
        return len(self)

    def _check(self, other):
        if len(self) != len(other):
            raise ValueError(f"dimension mismatch: {len(self)} vs {len(other)}")

    def __add__(self, other):
        self._check(other)
        return Vec(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        self._check(other)
        return Vec(a - b for a, b in zip(self, other))

    def __neg__(self):
        return Vec(-a for a in self)

    def scale(self, c):
        return Vec(c * a for a in self)

    def dot(self, other):
        self._check(other)
        return sum(a * b for a, b in zip(self, other))

    def to_floats(self):
        return tuple(float(a) for a in self)

    def __repr__(self):
        return f"Vec{tuple(self)!r}"


def vec(*entries) -> Vec:
    return Vec(entries)


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------


class Mat:
    """An immutable dense matrix stored as a tuple of row tuples."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence]):
        rows = tuple(tuple(r) for r in rows)
        if not rows:
            raise ValueError("empty matrix")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged matrix")
        self.rows = rows

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    @staticmethod
    def identity(n: int, one=Fraction(1), zero=Fraction(0)) -> "Mat":
        return Mat([[one if i == j else zero for j in range(n)] for i in range(n)])

    @staticmethod
    def diagonal(entries: Sequence) -> "Mat":
        n = len(entries)
        zero = entries[0] * 0
        return Mat(
            [[entries[i] if i == j else zero for j in range(n)] for i in range(n)]
        )

    def __eq__(self, other):
        return isinstance(other, Mat) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def row(self, i) -> Vec:
        return Vec(self.rows[i])

    def col(self, j) -> Vec:
        return Vec(r[j] for r in self.rows)

    def transpose(self) -> "Mat":
        return Mat(list(zip(*self.rows)))

    def __add__(self, other):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        return Mat(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ]
        )

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "Mat":
        return Mat([[c * a for a in r] for r in self.rows])

    def matvec(self, v: Sequence) -> Vec:
        if len(v) != self.ncols:
            raise ValueError("dimension mismatch")
        return Vec(sum(a * b for a, b in zip(row, v)) for row in self.rows)

    def matmul(self, other: "Mat") -> "Mat":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = other.transpose().rows
        return Mat(
            [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.rows]
        )

    def det(self):
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        n = self.nrows
        if n == 1:
            return self.rows[0][0]
        if n == 2:
            (a, b), (c, d) = self.rows
            return a * d - b * c
        total = None
        for j in range(n):
            minor = Mat([r[:j] + r[j + 1 :] for r in self.rows[1:]])
            term = self.rows[0][j] * minor.det()
            if j % 2:
                term = -term
            total = term if total is None else total + term
        return total

    def inverse(self) -> "Mat":
        """Gauss-Jordan inverse; exact when entries support exact division."""
        if self.nrows != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        n = self.nrows
        work = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(self.rows)]
        work = [[Fraction(x) if isinstance(x, int) else x for x in row] for row in work]
        for col in range(n):
            pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
            if pivot is None:
                raise ValueError("singular matrix")
            work[col], work[pivot] = work[pivot], work[col]
            pv = work[col][col]
            work[col] = [x / pv for x in work[col]]
            for r in range(n):
                if r != col and work[r][col] != 0:
                    factor = work[r][col]
                    work[r] = [x - factor * y for x, y in zip(work[r], work[col])]
        return Mat([row[n:] for row in work])

    def to_numpy(self) -> np.ndarray:
        return np.array([[float(a) for a in r] for r in self.rows], dtype=float)

    def __repr__(self):
        return f"Mat({list(map(list, self.rows))!r})"


# ---------------------------------------------------------------------------
# affine isometries
# ---------------------------------------------------------------------------


class AffineIsometry:
    """x -> Ax + b with A orthogonal; composes and inverts exactly."""

    __slots__ = ("linear", "shift")

    def __init__(self, linear: Mat, shift: Vec, check: bool = True, tol: float = DEFAULT_TOL):
        if linear.nrows != linear.ncols:
            raise ValueError("linear part must be square")
        if linear.nrows != len(shift):
            raise ValueError("shift dimension mismatch")
        if check:
            gram = linear.transpose().matmul(linear)
            n = linear.nrows
            for i in range(n):
                for j in range(n):
                    want = 1 if i == j else 0
                    entry = gram.rows[i][j]
                    if abs(float(entry) - want) > tol:
                        raise ValueError("linear part is not orthogonal")
        self.linear = linear
        self.shift = Vec(shift)

    @staticmethod
    def identity(n: int) -> "AffineIsometry":
        return AffineIsometry(Mat.identity(n), Vec([Fraction(0)] * n), check=False)

    @staticmethod
    def translation(shift: Sequence) -> "AffineIsometry":
        return AffineIsometry(Mat.identity(len(shift)), Vec(shift), check=False)

    @property
    def dim(self) -> int:
        return self.linear.nrows

    def apply(self, x: Sequence) -> Vec:
        return self.linear.matvec(x) + self.shift

    def compose(self, other: "AffineIsometry") -> "AffineIsometry":
        """Returns self after other, i.e. x -> self(other(x))."""
        return AffineIsometry(
            self.linear.matmul(other.linear),
            self.linear.matvec(other.shift) + self.shift,
            check=False,
        )

    def inverse(self) -> "AffineIsometry":
        inv = self.linear.inverse()
        return AffineIsometry(inv, -inv.matvec(self.shift), check=False)

    def is_identity(self) -> bool:
        n = self.dim
        return self.linear == Mat.identity(n) and all(s == 0 for s in self.shift)

    def key(self):
        return (self.linear.rows, tuple(self.shift))

    def __eq__(self, other):
        return isinstance(other, AffineIsometry) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"AffineIsometry(linear={self.linear!r}, shift={self.shift!r})"


class AffineMap:
    """x -> Ax + b without any orthogonality requirement (e.g. similitudes)."""

    __slots__ = ("linear", "shift")

    def __init__(self, linear: Mat, shift: Sequence):
        if linear.nrows != len(tuple(shift)):
            raise ValueError("shift dimension mismatch")
        self.linear = linear
        self.shift = Vec(shift)

    @property
    def dim(self) -> int:
        return self.linear.nrows

    def apply(self, x: Sequence) -> Vec:
        return self.linear.matvec(x) + self.shift

    def compose(self, other: "AffineMap") -> "AffineMap":
        """Returns self after other, i.e. x -> self(other(x))."""
        return AffineMap(
            self.linear.matmul(other.linear),
            self.linear.matvec(other.shift) + self.shift,
        )

    def inverse(self) -> "AffineMap":
        inv = self.linear.inverse()
        return AffineMap(inv, -inv.matvec(self.shift))

    def key(self):
        return (self.linear.rows, tuple(self.shift))

    def __eq__(self, other):
        return isinstance(other, AffineMap) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"AffineMap(linear={self.linear!r}, shift={self.shift!r})"


# ---------------------------------------------------------------------------
# hyperplanes
# ---------------------------------------------------------------------------


class Hyperplane:
    """The set {x : <x, normal> = offset}, stored in a canonical scaling."""

    __slots__ = ("normal", "offset")

    def __init__(self, normal: Sequence, offset):
        normal = Vec(normal)
        if all(a == 0 for a in normal):
            raise ValueError("zero normal vector")
        lead = next(a for a in normal if a != 0)
        normal = normal.scale(Fraction(1) / lead) if not isinstance(lead, float) else normal.scale(1.0 / lead)
        offset = offset / lead
        self.normal = normal
        self.offset = offset

    def side(self, x: Sequence):
        """Returns <x, normal> - offset; zero means x lies on the plane."""
        return self.normal.dot(x) - self.offset

    def contains(self, x: Sequence, tol: float = 0.0) -> bool:
        s = self.side(x)
        if tol == 0.0:
            return s == 0
        return abs(float(s)) <= tol

    def reflect(self, x: Sequence) -> Vec:
        """Orthogonal reflection of x across the hyperplane."""
        x = Vec(x)
        nn = self.normal.dot(self.normal)
        factor = 2 * self.side(x) / nn
        return x - self.normal.scale(factor)

    def reflection(self) -> AffineIsometry:
        n = len(self.normal)
        nn = self.normal.dot(self.normal)
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                entry = (Fraction(1) if i == j else Fraction(0)) - 2 * self.normal[i] * self.normal[j] / nn
                row.append(entry)
            rows.append(row)
        shift = Vec(2 * self.offset * a / nn for a in self.normal)
        return AffineIsometry(Mat(rows), shift, check=False)

    def key(self):
        return (tuple(self.normal), self.offset)

    def __eq__(self, other):
        return isinstance(other, Hyperplane) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Hyperplane(normal={tuple(self.normal)}, offset={self.offset})"


# ---------------------------------------------------------------------------
# expansive matrices
# ---------------------------------------------------------------------------


def spectral_moduli(matrix: Mat) -> list:
    """Moduli of the complex eigenvalues, descending."""
    eig = np.linalg.eigvals(matrix.to_numpy())
    return sorted((abs(z) for z in eig), reverse=True)


def is_expansive(matrix: Mat, mode: str = "eigenvalue", tol: float = DEFAULT_TOL,
                 max_power: int = 64) -> bool:
    """Whether every eigenvalue of the matrix has modulus strictly above one.

    mode='eigenvalue' inspects the spectral moduli directly; mode='norm-decay'
    checks that the operator norms of successive inverse powers tend to zero.
    The two characterizations agree on invertible matrices.
    """
    if matrix.nrows != matrix.ncols:
        raise ValueError("expansiveness is defined for square matrices")
    a = matrix.to_numpy()
    if abs(np.linalg.det(a)) < tol:
        raise ValueError("singular matrix")
    if mode == "eigenvalue":
        return all(m > 1 + tol for m in spectral_moduli(matrix))
    if mode == "norm-decay":
        inv = np.linalg.inv(a)
        power = np.eye(matrix.nrows)
        best = np.inf
        for _ in range(max_power):
            power = power @ inv
            norm = np.linalg.norm(power, 2)
            best = min(best, norm)
            if norm < 1e-6:
                return True
        return best < 1e-6
    raise ValueError(f"unknown mode {mode!r}")
