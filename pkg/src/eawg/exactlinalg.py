"""Exact integer vectors, matrices and lattices.

Everything here works over Python ``int``; there is no floating point and no
tolerance anywhere. Matrices act on column vectors, so column ``j`` of a
matrix is the image of the ``j``-th basis vector.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple  # tuple[int, ...]


class NonIntegralError(ArithmeticError):
    """An operation produced a non-integral entry where an integer was required."""


class DimensionError(ValueError):
    pass


def as_vector(values: Iterable[int]) -> Vector:
    out = []
    for x in values:
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise NonIntegralError(f"non-integral coordinate {x}")
            x = x.numerator
        elif not isinstance(x, int):
            raise TypeError(f"expected an integer coordinate, got {x!r}")
        out.append(int(x))
    return tuple(out)


def vec_add(u: Vector, v: Vector) -> Vector:
    if len(u) != len(v):
        raise DimensionError(f"vector lengths differ: {len(u)} != {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Vector, v: Vector) -> Vector:
    if len(u) != len(v):
        raise DimensionError(f"vector lengths differ: {len(u)} != {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(k: int, v: Vector) -> Vector:
    return tuple(k * a for a in v)


def unit_vector(n: int, i: int) -> Vector:
    return tuple(1 if j == i else 0 for j in range(n))


class Matrix:
    """Immutable square-or-rectangular integer matrix.

    Equality and hashing are entrywise.
    """

    __slots__ = ("rows", "_hash")

    def __init__(self, rows: Iterable[Iterable[int]]):
        rows = tuple(as_vector(r) for r in rows)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise DimensionError("ragged matrix rows")
        self.rows = rows
        self._hash = None

    @classmethod
    def _trusted(cls, rows: tuple) -> "Matrix":
        # rows already a tuple of int tuples
        m = object.__new__(cls)
        m.rows = rows
        m._hash = None
        return m

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._trusted(tuple(unit_vector(n, i) for i in range(n)))

    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> "Matrix":
        m = n if m is None else m
        return cls._trusted(tuple((0,) * m for _ in range(n)))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]]) -> "Matrix":
        cols = [as_vector(c) for c in columns]
        if not cols:
            return cls._trusted(())
        return cls._trusted(tuple(zip(*cols)))

    @classmethod
    def diag(cls, entries: Sequence[int]) -> "Matrix":
        n = len(entries)
        return cls(tuple(entries[i] if j == i else 0 for j in range(n)) for i in range(n))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    @property
    def columns(self) -> tuple:
        return tuple(zip(*self.rows))

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self):
        return f"Matrix({[list(r) for r in self.rows]})"

    def transpose(self) -> "Matrix":
        return Matrix._trusted(tuple(zip(*self.rows)))

    T = property(transpose)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            return mat_mul(self, other)
        return mat_vec(self, other)

    def __neg__(self):
        return Matrix._trusted(tuple(tuple(-x for x in r) for r in self.rows))

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return Matrix._trusted(tuple(tuple(a + b for a, b in zip(r, s))
                                     for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def is_identity(self) -> bool:
        return all(x == (1 if i == j else 0)
                   for i, r in enumerate(self.rows) for j, x in enumerate(r))

    def determinant(self) -> int:
        return determinant(self)

    def inverse(self) -> "Matrix":
        return inverse(self)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    """Exact product ``a @ b``."""
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    bcols = tuple(zip(*b.rows))
    return Matrix._trusted(tuple(
        tuple(sum(x * y for x, y in zip(row, col) if x) for col in bcols)
        for row in a.rows))


def mat_vec(a: Matrix, v: Sequence[int]) -> Vector:
    if a.shape[1] != len(v):
        raise DimensionError(f"cannot apply {a.shape} matrix to vector of length {len(v)}")
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a.rows)


def mat_pow(a: Matrix, k: int, inverse_of_a: Matrix | None = None) -> Matrix:
    """``a**k`` by repeated squaring; negative ``k`` needs an inverse."""
    n = a.shape[0]
    if a.shape[0] != a.shape[1]:
        raise DimensionError("matrix power of a non-square matrix")
    if k < 0:
        a = inverse_of_a if inverse_of_a is not None else inverse(a)
        k = -k
    result = Matrix.identity(n)
    base = a
    while k:
        if k & 1:
            result = mat_mul(result, base)
        k >>= 1
        if k:
            base = mat_mul(base, base)
    return result


def determinant(a: Matrix) -> int:
    """Bareiss fraction-free elimination."""
    n, m = a.shape
    if n != m:
        raise DimensionError("determinant of a non-square matrix")
    if n == 0:
        return 1
    M = [list(r) for r in a.rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def rational_inverse(a: Matrix) -> list[list[Fraction]]:
    n, m = a.shape
    if n != m:
        raise DimensionError("inverse of a non-square matrix")
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(a.rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def inverse(a: Matrix) -> Matrix:
    """Inverse of a unimodular integer matrix.

    Raises NonIntegralError when the inverse has a non-integral entry.
    """
    return Matrix(rational_inverse(a))


# ---------------------------------------------------------------------------
# Lattices
# ---------------------------------------------------------------------------

def _hnf_rows(vectors: Sequence[Sequence[int]], k: int) -> tuple:
    """Row-style Hermite normal form.

    Nonzero rows only, pivots strictly increasing to the right and positive,
    entries above each pivot reduced into ``[0, pivot)``.
    """
    rows = [list(v) for v in vectors if any(v)]
    basis: list[list[int]] = []
    col = 0
    while rows and col < k:
        nz = [r for r in rows if r[col] != 0]
        rest = [r for r in rows if r[col] == 0]
        if not nz:
            col += 1
            continue
        # Euclid on the column entries until one row carries the gcd.
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            pivot = nz[0]
            new = [pivot]
            for r in nz[1:]:
                q = r[col] // pivot[col]
                r = [x - q * y for x, y in zip(r, pivot)]
                if r[col] != 0:
                    new.append(r)
                elif any(r):
                    rest.append(r)
            nz = new
        pivot = nz[0]
        if pivot[col] < 0:
            pivot = [-x for x in pivot]
        for b in basis:
            q = b[col] // pivot[col]
            if q:
                for j in range(k):
                    b[j] -= q * pivot[j]
        basis.append(pivot)
        rows = rest
        col += 1
    return tuple(tuple(b) for b in basis)


class IntegerLattice:
    """Subgroup of ``Z^k`` given by generators.

    ``basis`` is the canonical HNF basis, so two lattices are equal exactly
    when their bases are identical.
    """

    __slots__ = ("dim", "generators", "basis")

    def __init__(self, generators: Iterable[Sequence[int]], dim: int | None = None):
        gens = tuple(as_vector(g) for g in generators)
        if dim is None:
            if not gens:
                raise DimensionError("dimension required for an empty generator list")
            dim = len(gens[0])
        for g in gens:
            if len(g) != dim:
                raise DimensionError(f"generator {g} is not in Z^{dim}")
        self.dim = dim
        self.generators = gens
        self.basis = _hnf_rows(gens, dim)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __eq__(self, other):
        if not isinstance(other, IntegerLattice):
            return NotImplemented
        return self.dim == other.dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.dim, self.basis))

    def __repr__(self):
        return f"IntegerLattice(basis={[list(b) for b in self.basis]}, dim={self.dim})"

    def __contains__(self, v) -> bool:
        return lattice_contains(self, v)

    def coordinates(self, v: Sequence[int]) -> tuple | None:
        """Coefficients of ``v`` over the HNF basis, or None if ``v`` is outside."""
        v = list(as_vector(v))
        if len(v) != self.dim:
            raise DimensionError(f"vector of length {len(v)} is not in Z^{self.dim}")
        coeffs = []
        for b in self.basis:
            p = next(j for j, x in enumerate(b) if x)
            if v[p] % b[p]:
                return None
            q = v[p] // b[p]
            coeffs.append(q)
            if q:
                v = [x - q * y for x, y in zip(v, b)]
        if any(v):
            return None
        return tuple(coeffs)


def hnf(lattice: IntegerLattice) -> IntegerLattice:
    """Return the lattice re-generated by its canonical HNF basis."""
    return IntegerLattice(lattice.basis, dim=lattice.dim)


def lattice_contains(lattice: IntegerLattice, v: Sequence[int]) -> bool:
    return lattice.coordinates(v) is not None


def rank(vectors: Sequence[Sequence[int]], k: int) -> int:
    """Rank over Q of a family of integer vectors."""
    return len(_hnf_rows(vectors, k))
