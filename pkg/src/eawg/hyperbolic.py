"""The hyperbolic extension space and its distinguished orthogonal operators.

Coordinates follow the ordered basis ``alpha_1..alpha_l, sigma_1..sigma_nu,
lambda_1..lambda_nu``. The form pairs the alphas through the Cartan matrix,
pairs ``sigma_r`` with ``lambda_s`` by the Kronecker delta, and is zero on
every other pair of basis blocks.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .exactlinalg import (DimensionError, Matrix, NonIntegralError, determinant,
                          mat_mul, mat_pow, mat_vec, unit_vector)
from .rootsystem import CartanData, cartan_matrix

__all__ = [
    "SpaceSignature", "GramForm", "GroupElement", "IsotropicRootError",
    "NotInRadicalError", "bilinear", "reflection", "t_map", "in_FO", "commutator",
]


class IsotropicRootError(ValueError):
    """Reflection requested along a vector of norm zero."""


class NotInRadicalError(ValueError):
    pass


@dataclass(frozen=True)
class SpaceSignature:
    cartan: CartanData
    nullity: int

    def __post_init__(self):
        if self.nullity < 0:
            raise ValueError("nullity must be non-negative")

    @classmethod
    def of(cls, type_: str, rank: int, nullity: int) -> "SpaceSignature":
        return cls(cartan_matrix(type_, rank), nullity)

    @property
    def rank(self) -> int:
        return self.cartan.rank

    @property
    def dim(self) -> int:
        return self.rank + 2 * self.nullity

    # basis positions (1-based indices in the math, 0-based offsets here)
    def alpha_index(self, i: int) -> int:
        if not 1 <= i <= self.rank:
            raise IndexError(f"alpha_{i} out of range 1..{self.rank}")
        return i - 1

    def sigma_index(self, r: int) -> int:
        if not 1 <= r <= self.nullity:
            raise IndexError(f"sigma_{r} out of range 1..{self.nullity}")
        return self.rank + r - 1

    def lambda_index(self, r: int) -> int:
        if not 1 <= r <= self.nullity:
            raise IndexError(f"lambda_{r} out of range 1..{self.nullity}")
        return self.rank + self.nullity + r - 1

    def alpha(self, i: int) -> tuple:
        return unit_vector(self.dim, self.alpha_index(i))

    def sigma(self, r: int) -> tuple:
        return unit_vector(self.dim, self.sigma_index(r))

    def lam(self, r: int) -> tuple:
        return unit_vector(self.dim, self.lambda_index(r))

    def vector(self, alpha=(), sigma=(), lam=()) -> tuple:
        """Assemble a vector from its three coordinate blocks (missing entries are zero)."""
        l, nu = self.rank, self.nullity
        if len(alpha) > l or len(sigma) > nu or len(lam) > nu:
            raise DimensionError("coordinate block too long")
        pad = lambda xs, n: tuple(xs) + (0,) * (n - len(xs))
        return pad(alpha, l) + pad(sigma, nu) + pad(lam, nu)

    def blocks(self, v: Sequence[int]) -> tuple[tuple, tuple, tuple]:
        l, nu = self.rank, self.nullity
        return tuple(v[:l]), tuple(v[l:l + nu]), tuple(v[l + nu:])

    def in_radical(self, v: Sequence[int]) -> bool:
        a, _, lam = self.blocks(v)
        return not any(a) and not any(lam)

    def in_V(self, v: Sequence[int]) -> bool:
        return not any(self.blocks(v)[2])

    @cached_property
    def gram(self) -> "GramForm":
        return GramForm.build(self)


@dataclass(frozen=True)
class GramForm:
    signature: SpaceSignature
    matrix: Matrix

    @classmethod
    def build(cls, sig: SpaceSignature) -> "GramForm":
        n, l, nu = sig.dim, sig.rank, sig.nullity
        rows = [[0] * n for _ in range(n)]
        A = sig.cartan.matrix.rows
        for i in range(l):
            for j in range(l):
                rows[i][j] = A[i][j]
        for r in range(nu):
            rows[l + r][l + nu + r] = 1
            rows[l + nu + r][l + r] = 1
        gram = cls(sig, Matrix(rows))
        if determinant(gram.matrix) == 0:
            raise ArithmeticError("degenerate hyperbolic form")
        return gram

    def __call__(self, u: Sequence[int], v: Sequence[int]) -> int:
        n = self.signature.dim
        if len(u) != n or len(v) != n:
            raise DimensionError(f"vectors must have {n} coordinates")
        G = self.matrix.rows
        return sum(u[i] * G[i][j] * v[j] for i in range(n) if u[i] for j in range(n) if v[j])

    def covector(self, v: Sequence[int]) -> tuple:
        """``j -> (v, e_j)``: the row ``v^T G``."""
        n = self.signature.dim
        if len(v) != n:
            raise DimensionError(f"vectors must have {n} coordinates")
        G = self.matrix.rows
        return tuple(sum(v[i] * G[i][j] for i in range(n) if v[i]) for j in range(n))

    @cached_property
    def _scaled_inverse(self) -> tuple[Matrix, int]:
        # det * G^{-1} is integral
        from .exactlinalg import rational_inverse
        det = determinant(self.matrix)
        inv = rational_inverse(self.matrix)
        return Matrix([[x * det for x in row] for row in inv]), det


def bilinear(sig: SpaceSignature, u: Sequence[int], v: Sequence[int]) -> int:
    return sig.gram(u, v)


class GroupElement:
    """A matrix acting on the hyperbolic extension.

    Equality is exact matrix equality; no word or factorization is cached.
    """

    __slots__ = ("matrix", "signature")

    def __init__(self, matrix: Matrix, signature: SpaceSignature):
        if matrix.shape != (signature.dim, signature.dim):
            raise DimensionError(f"matrix shape {matrix.shape} does not match dim {signature.dim}")
        self.matrix = matrix
        self.signature = signature

    @classmethod
    def identity(cls, sig: SpaceSignature) -> "GroupElement":
        return cls(Matrix.identity(sig.dim), sig)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if other.signature != self.signature:
            raise DimensionError("elements live on different spaces")
        return GroupElement(mat_mul(self.matrix, other.matrix), self.signature)

    def __call__(self, v: Sequence[int]) -> tuple:
        return mat_vec(self.matrix, v)

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"GroupElement({self.matrix!r})"

    def is_identity(self) -> bool:
        return self.matrix.is_identity()

    def inverse(self) -> "GroupElement":
        """Inverse of an orthogonal element, computed as ``G^-1 M^T G``."""
        scaled, det = self.signature.gram._scaled_inverse
        G = self.signature.gram.matrix
        prod = mat_mul(mat_mul(scaled, self.matrix.transpose()), G)
        rows = []
        for row in prod.rows:
            out = []
            for x in row:
                q, r = divmod(x, det)
                if r:
                    raise NonIntegralError("element is not orthogonal for the hyperbolic form")
                out.append(q)
            rows.append(tuple(out))
        inv = GroupElement(Matrix._trusted(tuple(rows)), self.signature)
        if not mat_mul(inv.matrix, self.matrix).is_identity():
            raise NonIntegralError("element is not orthogonal for the hyperbolic form")
        return inv

    def __pow__(self, k: int) -> "GroupElement":
        inv = self.inverse().matrix if k < 0 else None
        return GroupElement(mat_pow(self.matrix, k, inv), self.signature)


def commutator(a: GroupElement, b: GroupElement) -> GroupElement:
    """``[a, b] = a^-1 b^-1 a b``."""
    return a.inverse() * b.inverse() * a * b


def reflection(sig: SpaceSignature, alpha: Sequence[int]) -> GroupElement:
    """``u -> u - (u, alpha^vee) alpha`` with ``alpha^vee = 2 alpha / (alpha, alpha)``."""
    gram = sig.gram
    norm = gram(alpha, alpha)
    if norm == 0:
        raise IsotropicRootError(f"cannot reflect in isotropic vector {tuple(alpha)}")
    n = sig.dim
    g_alpha = gram.covector(alpha)
    cols = []
    for j in range(n):
        num = 2 * g_alpha[j]
        if num % norm:
            raise NonIntegralError(f"reflection in {tuple(alpha)} is not integral on the basis")
        c = num // norm
        col = [-c * a for a in alpha] if c else [0] * n
        col[j] += 1
        cols.append(col)
    return GroupElement(Matrix.from_columns(cols), sig)


def t_map(sig: SpaceSignature, alpha: Sequence[int], sigma: Sequence[int]) -> GroupElement:
    """``u -> u - (sigma,u) alpha + (alpha,u) sigma - (alpha,alpha)/2 (sigma,u) sigma``.

    ``alpha`` may be any vector of ``V`` (zero lambda part); ``sigma`` must lie in
    the radical.
    """
    if not sig.in_radical(sigma):
        raise NotInRadicalError(f"{tuple(sigma)} is not in the span of the sigma_r")
    if not sig.in_V(alpha):
        raise ValueError(f"{tuple(alpha)} has a nonzero lambda component")
    gram = sig.gram
    norm = gram(alpha, alpha)
    if norm % 2:
        raise NonIntegralError("(alpha, alpha)/2 is not an integer")
    half = norm // 2
    n = sig.dim
    g_sigma = gram.covector(sigma)
    g_alpha = gram.covector(alpha)
    cols = []
    for j in range(n):
        s_u, a_u = g_sigma[j], g_alpha[j]
        col = [-s_u * a + a_u * s - half * s_u * s for a, s in zip(alpha, sigma)]
        col[j] += 1
        cols.append(col)
    return GroupElement(Matrix.from_columns(cols), sig)


def in_FO(g: GroupElement) -> bool:
    """Orthogonal for the form and fixing every ``sigma_r``."""
    sig = g.signature
    G = sig.gram.matrix
    M = g.matrix
    if mat_mul(mat_mul(M.transpose(), G), M) != G:
        return False
    return all(g(sig.sigma(r)) == sig.sigma(r) for r in range(1, sig.nullity + 1))
