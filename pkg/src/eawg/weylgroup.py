"""The extended affine Weyl group, its Heisenberg-like subgroup and their centre.

Elements are plain matrices. Membership and normal forms are read off the
images of the ``lambda_j`` basis vectors, then confirmed by rebuilding the
matrix from the extracted exponents.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Sequence

from .exactlinalg import IntegerLattice
from .hyperbolic import GroupElement, SpaceSignature, reflection, t_map
from .rootsystem import CartanData, ExtendedRootSystem, cartan_matrix, finite_roots
from .semilattice import Semilattice, full_lattice, parse_class, standard_semilattice

__all__ = [
    "NotInGroupError", "ProbeInconsistencyError", "CentralData", "HNormalForm",
    "WNormalForm", "WeylContext", "central_data", "h_normal_form", "w_decompose",
    "w_normal_form", "is_central", "pairs", "reduced_word",
]


class NotInGroupError(ValueError):
    """The matrix is not in the group the normal form was requested for."""


class ProbeInconsistencyError(NotInGroupError):
    """``m_{r,s}`` read from the probe at ``lambda_r`` disagrees with the one at ``lambda_s``."""


def pairs(nullity: int) -> list[tuple[int, int]]:
    """Index pairs ``(r, s)``, ``r < s``, in the fixed lexicographic order."""
    return list(combinations(range(1, nullity + 1), 2))


@dataclass(frozen=True)
class CentralData:
    nullity: int
    FS: IntegerLattice
    nrs: dict
    condition000: bool

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return pairs(self.nullity)

    def nrs_table(self) -> list[list[int | None]]:
        """``nu x nu`` table with ``n(r,s)`` above the diagonal and None elsewhere."""
        nu = self.nullity
        return [[self.nrs.get((r, s)) for s in range(1, nu + 1)] for r in range(1, nu + 1)]

    @cached_property
    def fs_basis(self) -> tuple:
        """Generators used for F(S) coordinates: ``n(r,s) e_rs`` when (000) holds, else the HNF basis."""
        if self.condition000:
            k = len(self.pairs)
            return tuple(tuple(self.nrs[p] if q == idx else 0 for q in range(k))
                         for idx, p in enumerate(self.pairs))
        return self.FS.basis

    def fs_coordinates(self, central: Sequence[int]) -> tuple | None:
        if self.condition000:
            out = []
            for x, p in zip(central, self.pairs):
                if x % self.nrs[p]:
                    return None
                out.append(x // self.nrs[p])
            return tuple(out)
        return self.FS.coordinates(central)


def _z_exponents(J: frozenset, in_class: bool, nullity: int) -> tuple:
    prs = pairs(nullity)
    if in_class:
        return tuple(int(r in J and s in J) for r, s in prs)
    if len(J) == 2:
        return tuple(2 * int(set(p) == set(J)) for p in prs)
    return (0,) * len(prs)


def central_data(S: Semilattice, cartan: CartanData | None = None) -> CentralData:
    """F(S) as a sublattice of the free abelian group on the ``c_{r,s}``, with ``n(r,s)`` and (000)."""
    nu = S.nullity
    prs = pairs(nu)
    k = len(prs)
    gens = [_z_exponents(J, True, nu) for J in S.subsets]
    for r, s in prs:
        J = frozenset({r, s})
        if J not in S.subsets:
            gens.append(_z_exponents(J, False, nu))
    FS = IntegerLattice(gens, dim=k)
    nrs = {}
    for idx, p in enumerate(prs):
        e = [0] * k
        n = 0
        while True:
            n += 1
            e[idx] = n
            if FS.coordinates(e) is not None:
                break
            if n > 2:
                raise AssertionError(f"n{p} exceeds 2; c^2 always lies in F(S)")
        nrs[p] = n
    if cartan is not None:
        for p, n in nrs.items():
            for a in (x for row in cartan.matrix.rows for x in row):
                if a % n:
                    raise AssertionError(f"n{p} = {n} does not divide Cartan entry {a}")
    spanned = IntegerLattice([tuple(nrs[p] if q == idx else 0 for q in range(k))
                              for idx, p in enumerate(prs)], dim=k)
    return CentralData(nu, FS, nrs, FS == spanned)


@dataclass(frozen=True)
class HNormalForm:
    """Exponents of ``prod_r prod_i t_{i,r}^{n[i][r]} * prod_{r<s} c_{r,s}^{m_rs}``."""
    n: tuple           # l rows, nu columns
    central: tuple     # m_{r,s} over pairs() order

    def m(self, r: int, s: int) -> int:
        nu = len(self.n[0]) if self.n else 0
        return dict(zip(pairs(nu), self.central))[(r, s)] if r < s else 0

    def is_trivial(self) -> bool:
        return not any(any(row) for row in self.n) and not any(self.central)


@dataclass(frozen=True)
class WNormalForm:
    finite_part: tuple   # simple reflection indices, applied left to right
    n: tuple
    central: tuple       # exponents over the c_{r,s}
    central_fs: tuple | None = None   # the same element in F(S) generator coordinates
    verified: bool = field(default=False, compare=False)

    @property
    def h(self) -> HNormalForm:
        return HNormalForm(self.n, self.central)

    def to_dict(self) -> dict:
        nu = len(self.n[0]) if self.n else 0
        return {
            "finite_part": [f"s{i}" for i in self.finite_part],
            "n": [list(row) for row in self.n],
            "central": list(self.central),
            "central_fs": None if self.central_fs is None else list(self.central_fs),
            "pairs": [list(p) for p in pairs(nu)],
            "verified": self.verified,
        }


class WeylContext:
    """Everything needed to realise the groups for one type and semilattice."""

    def __init__(self, type_: str, rank: int, semilattice: Semilattice):
        self.cartan = cartan_matrix(type_, rank)
        self.semilattice = semilattice
        self.signature = SpaceSignature(self.cartan, semilattice.nullity)
        self.rootsystem = ExtendedRootSystem(self.cartan, semilattice)
        self.gram = self.signature.gram
        self.central = central_data(semilattice, self.cartan)
        self._cache: dict = {}

    @classmethod
    def build(cls, type_: str, rank: int, nullity: int, index: int | None = None,
              support: str | None = None) -> "WeylContext":
        """Pick the semilattice by table index, by explicit class text, or default to the lattice."""
        if index is not None and support is not None:
            raise ValueError("give either an index or an explicit class, not both")
        if support is not None:
            S = Semilattice(parse_class(support, nullity))
        elif index is not None:
            S = standard_semilattice(nullity, index)
        else:
            S = full_lattice(nullity)
        return cls(type_, rank, S)

    def __repr__(self):
        return (f"WeylContext({self.cartan.name}, nu={self.nullity}, "
                f"class={self.semilattice})")

    @property
    def rank(self) -> int:
        return self.cartan.rank

    @property
    def nullity(self) -> int:
        return self.semilattice.nullity

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return pairs(self.nullity)

    def identity(self) -> GroupElement:
        return GroupElement.identity(self.signature)

    # -- distinguished generators -------------------------------------------

    def gen_w(self, i: int) -> GroupElement:
        key = ("w", i)
        if key not in self._cache:
            self._cache[key] = reflection(self.signature, self.signature.alpha(i))
        return self._cache[key]

    def gen_t(self, i: int, r: int, power: int = 1) -> GroupElement:
        """``t_{i,r}^power``, which equals ``T_{power*alpha_i}^{sigma_r}``."""
        key = ("t", i, r, power)
        if key not in self._cache:
            sig = self.signature
            a = tuple(power * x for x in sig.alpha(i))
            self._cache[key] = t_map(sig, a, sig.sigma(r))
        return self._cache[key]

    def gen_c(self, r: int, s: int, power: int = 1) -> GroupElement:
        """``c_{r,s}^power = T_{sigma_r}^{power*sigma_s}``; requires ``r < s``."""
        if not r < s:
            raise IndexError(f"c_{{{r},{s}}} needs r < s")
        key = ("c", r, s, power)
        if key not in self._cache:
            sig = self.signature
            self._cache[key] = t_map(sig, sig.sigma(r), tuple(power * x for x in sig.sigma(s)))
        return self._cache[key]

    def fs_generator(self, r: int, s: int) -> GroupElement:
        """``c_{r,s}^{n(r,s)}``, the image of ``z_{r,s}``."""
        return self.gen_c(r, s, self.central.nrs[(r, s)])

    def finite_element(self, word: Sequence[int]) -> GroupElement:
        g = self.identity()
        for i in word:
            g = g * self.gen_w(i)
        return g

    # -- normal forms ----------------------------------------------------------

    def reconstruct_h(self, nf: HNormalForm) -> GroupElement:
        M = self.identity().matrix
        for r in range(1, self.nullity + 1):
            for i in range(1, self.rank + 1):
                k = nf.n[i - 1][r - 1]
                if k:
                    M = M @ self.gen_t(i, r, k).matrix
        for (r, s), k in zip(self.pairs, nf.central):
            if k:
                M = M @ self.gen_c(r, s, k).matrix
        return GroupElement(M, self.signature)

    def reconstruct(self, nf: WNormalForm) -> GroupElement:
        return self.finite_element(nf.finite_part) * self.reconstruct_h(nf.h)

    def h_normal_form(self, g: GroupElement) -> HNormalForm:
        return h_normal_form(self, g)

    def w_decompose(self, g: GroupElement):
        return w_decompose(self, g)

    def w_normal_form(self, g: GroupElement) -> WNormalForm:
        return w_normal_form(self, g)

    def is_central(self, g: GroupElement) -> bool:
        return is_central(g, self)


def h_normal_form(ctx: WeylContext, g: GroupElement) -> HNormalForm:
    """Read the Heisenberg exponents of ``g`` from its action on each ``lambda_j``.

    With ``beta_j = sum_i n_{i,j} alpha_i``,

        g(lambda_j) - lambda_j = -beta_j - (beta_j,beta_j)/2 sigma_j
                                 - sum_{r<j} (m_{r,j} + (beta_r,beta_j)) sigma_r
                                 + sum_{s>j} m_{j,s} sigma_s.

    The ``(beta_r, beta_j)`` term comes from ``t_{i,r}`` (``r < j``) acting on
    ``beta_j``; each ``m_{r,s}`` is read twice and the two readings must agree.
    """
    sig = ctx.signature
    l, nu = sig.rank, sig.nullity
    n = [[0] * nu for _ in range(l)]
    m_from: dict = {}
    betas = []
    for j in range(1, nu + 1):
        lam = sig.lam(j)
        probe = tuple(a - b for a, b in zip(g(lam), lam))
        a_part, s_part, l_part = sig.blocks(probe)
        if any(l_part):
            raise NotInGroupError(f"g moves lambda_{j} off lambda_{j} + V")
        beta = tuple(-x for x in a_part)
        betas.append(beta)
        for i in range(l):
            n[i][j - 1] = beta[i]
        if s_part[j - 1] * 2 != -ctx.cartan.pairing(beta, beta):
            raise NotInGroupError(f"sigma_{j} coefficient of the lambda_{j} probe is inconsistent")
        for r in range(1, nu + 1):
            if r < j:
                cross = ctx.cartan.pairing(betas[r - 1], beta)
                m_from.setdefault((r, j), {})["s"] = -s_part[r - 1] - cross
            elif r > j:
                m_from.setdefault((j, r), {})["r"] = s_part[r - 1]
    central = []
    for p in pairs(nu):
        reads = m_from[p]
        if reads["r"] != reads["s"]:
            raise ProbeInconsistencyError(
                f"m{p} reads {reads['r']} from lambda_{p[0]} but {reads['s']} from lambda_{p[1]}")
        central.append(reads["r"])
    nf = HNormalForm(tuple(tuple(row) for row in n), tuple(central))
    if ctx.reconstruct_h(nf) != g:
        raise NotInGroupError("reconstruction from the lambda probes does not reproduce g")
    return nf


def _finite_action(ctx: WeylContext, g: GroupElement) -> list[list[int]]:
    """Columns of the induced action on ``V-dot`` modulo the radical, in alpha coordinates."""
    sig = ctx.signature
    cols = []
    for i in range(1, sig.rank + 1):
        a, _, lam = sig.blocks(g(sig.alpha(i)))
        if any(lam):
            raise NotInGroupError(f"g(alpha_{i}) has a lambda component")
        cols.append(list(a))
    return cols


def reduced_word(cartan: CartanData, cols: list[list[int]]) -> tuple:
    """Reduced word (left to right) of the finite Weyl group element with these columns.

    ``cols[j]`` is the image of ``alpha_j`` in simple-root coordinates. The
    smallest right descent is stripped at each step, so the word is canonical.
    """
    l = cartan.rank
    A = cartan.matrix.rows
    ident = [[int(i == j) for i in range(l)] for j in range(l)]
    record = []
    limit = _positive_root_count(cartan) + 1
    while cols != ident:
        if len(record) > limit:
            raise NotInGroupError("descent did not terminate; action is not in the finite Weyl group")
        i = next((k for k, c in enumerate(cols) if any(c) and all(x <= 0 for x in c)), None)
        if i is None:
            raise NotInGroupError("induced action on V-dot is not realised by the finite Weyl group")
        # right-multiply by s_i: column j becomes col_j - a_{i,j} col_i
        ci = cols[i]
        cols = [[x - A[i][j] * y for x, y in zip(cols[j], ci)] for j in range(l)]
        record.append(i + 1)
    return tuple(reversed(record))


_POS_ROOTS: dict = {}


def _positive_root_count(cartan: CartanData) -> int:
    if cartan.name not in _POS_ROOTS:
        _POS_ROOTS[cartan.name] = len(finite_roots(cartan).roots) // 2
    return _POS_ROOTS[cartan.name]


def w_decompose(ctx: WeylContext, g: GroupElement) -> tuple[tuple, GroupElement]:
    """Split ``g = w_dot * h`` with ``w_dot`` a reduced word of simple reflections and ``h`` in H."""
    word = reduced_word(ctx.cartan, _finite_action(ctx, g))
    w_inv = ctx.finite_element(tuple(reversed(word)))
    h = w_inv * g
    if ctx.finite_element(word) * h != g:
        raise NotInGroupError("finite part and Heisenberg part do not recompose to g")
    return word, h


def w_normal_form(ctx: WeylContext, g: GroupElement) -> WNormalForm:
    word, h = w_decompose(ctx, g)
    hn = h_normal_form(ctx, h)
    fs = ctx.central.fs_coordinates(hn.central)
    if fs is None:
        raise NotInGroupError(f"central exponents {hn.central} are outside F(S)")
    nf = WNormalForm(word, hn.n, hn.central, fs)
    ok = ctx.reconstruct(nf) == g
    if not ok:
        raise NotInGroupError("normal form does not reconstruct g")
    return WNormalForm(word, hn.n, hn.central, fs, verified=True)


def is_central(g: GroupElement, ctx: WeylContext) -> bool:
    """True iff ``g`` lies in F(S): trivial finite part, ``n = 0``, central exponents in F(S)."""
    word, h = w_decompose(ctx, g)
    if word:
        return False
    hn = h_normal_form(ctx, h)
    if any(any(row) for row in hn.n):
        return False
    sig = ctx.signature
    acts_trivially = all(g(sig.alpha(i)) == sig.alpha(i) for i in range(1, sig.rank + 1))
    if not acts_trivially:
        raise AssertionError("element with trivial finite and n parts moves V")
    return ctx.central.FS.coordinates(hn.central) is not None
