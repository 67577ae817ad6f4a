"""Simply laced Cartan data, finite root systems and extended affine root systems.

Root vectors use the basis ``(alpha_1..alpha_l, sigma_1..sigma_nu,
lambda_1..lambda_nu)`` of the hyperbolic extension; roots always have zero
``lambda`` coordinates.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from .exactlinalg import Matrix, rank
from .semilattice import Semilattice

__all__ = [
    "CartanData", "FiniteRootSystem", "ExtendedRootSystem", "AugmentedRootSet",
    "AxiomOutcome", "AxiomReport", "cartan_matrix", "finite_roots", "root_contains",
    "enumerate_bounded", "check_axioms",
]


def _edges(type_: str, rank_: int) -> list[tuple[int, int]]:
    # Bourbaki numbering, 1-based nodes
    if type_ == "A":
        if rank_ < 1:
            raise ValueError("type A needs rank >= 1")
        return [(i, i + 1) for i in range(1, rank_)]
    if type_ == "D":
        if rank_ < 4:
            raise ValueError("type D needs rank >= 4")
        chain = [(i, i + 1) for i in range(1, rank_ - 1)]
        return chain + [(rank_ - 2, rank_)]
    if type_ == "E":
        if rank_ not in (6, 7, 8):
            raise ValueError("type E needs rank 6, 7 or 8")
        return [(1, 3), (3, 4), (2, 4)] + [(i, i + 1) for i in range(4, rank_)]
    raise ValueError(f"unknown or non-simply-laced type {type_!r}; expected A, D or E")


@dataclass(frozen=True)
class CartanData:
    type: str
    rank: int
    matrix: Matrix = field(compare=False, repr=False)

    def __post_init__(self):
        A = self.matrix
        n = self.rank
        if A.shape != (n, n):
            raise ValueError("Cartan matrix shape does not match the rank")
        for i in range(n):
            if A[i, i] != 2:
                raise ValueError("diagonal Cartan entries must be 2")
            for j in range(n):
                if A[i, j] != A[j, i] or (i != j and A[i, j] not in (0, -1)):
                    raise ValueError("not a simply laced Cartan matrix")

    @property
    def name(self) -> str:
        return f"{self.type}{self.rank}"

    def entry(self, i: int, j: int) -> int:
        """``a_{i,j}`` with 1-based indices."""
        return self.matrix[i - 1, j - 1]

    def pairing(self, u: Sequence[int], v: Sequence[int]) -> int:
        """``(u, v)`` for vectors given in simple-root coordinates."""
        A = self.matrix.rows
        return sum(u[i] * A[i][j] * v[j] for i in range(self.rank) if u[i]
                   for j in range(self.rank) if v[j])


def cartan_matrix(type_: str, rank_: int) -> CartanData:
    type_ = type_.upper()
    edges = _edges(type_, rank_)
    rows = [[2 if i == j else 0 for j in range(rank_)] for i in range(rank_)]
    for i, j in edges:
        rows[i - 1][j - 1] = rows[j - 1][i - 1] = -1
    return CartanData(type_, rank_, Matrix(rows))


@dataclass(frozen=True)
class FiniteRootSystem:
    cartan: CartanData
    roots: frozenset

    def positive(self) -> list[tuple]:
        return sorted(r for r in self.roots if max(r) > 0)


def finite_roots(cartan: CartanData) -> FiniteRootSystem:
    """Nonzero roots as the orbit of the simple roots under simple reflections."""
    n = cartan.rank
    A = cartan.matrix.rows
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(n):
                c = sum(beta[j] * A[j][i] for j in range(n))
                if c:
                    img = tuple(b - (c if k == i else 0) for k, b in enumerate(beta))
                    if img not in seen:
                        seen.add(img)
                        nxt.append(img)
        frontier = nxt
    return FiniteRootSystem(cartan, frozenset(seen))


class ExtendedRootSystem:
    """``R = (S + S) u (finite roots + S)`` for a simply laced type and semilattice ``S``."""

    def __init__(self, cartan: CartanData, semilattice: Semilattice):
        if cartan.rank >= 2 and not semilattice.is_lattice():
            raise ValueError(f"rank {cartan.rank} >= 2 requires S to be a lattice; "
                             f"class {semilattice} is not closed under addition")
        report_missing = [r for r in range(1, semilattice.nullity + 1)
                          if frozenset({r}) not in semilattice.subsets]
        if report_missing:
            raise ValueError(f"supporting class lacks singletons {report_missing}; "
                             "the basis sigma_r must lie in S")
        self.cartan = cartan
        self.semilattice = semilattice
        self.finite = finite_roots(cartan)

    @property
    def rank(self) -> int:
        return self.cartan.rank

    @property
    def nullity(self) -> int:
        return self.semilattice.nullity

    @property
    def dim(self) -> int:
        return self.rank + 2 * self.nullity

    def split(self, v: Sequence[int]) -> tuple[tuple, tuple]:
        l, nu = self.rank, self.nullity
        if len(v) == l + 2 * nu:
            if any(v[l + nu:]):
                raise ValueError("root candidates must have zero lambda coordinates")
        elif len(v) != l + nu:
            raise ValueError(f"expected {l + 2 * nu} coordinates, got {len(v)}")
        return tuple(v[:l]), tuple(v[l:l + nu])

    def contains(self, v: Sequence[int]) -> bool:
        dot, rad = self.split(v)
        if any(dot):
            return dot in self.finite.roots and self.semilattice.contains(rad)
        return self.semilattice.sum_set_contains(rad)

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def pairing(self, u: Sequence[int], v: Sequence[int]) -> int:
        return self.cartan.pairing(u[:self.rank], v[:self.rank])

    def window(self, bound: int) -> list[tuple]:
        return enumerate_bounded(self, bound)


def root_contains(R: ExtendedRootSystem, v: Sequence[int]) -> bool:
    return R.contains(v)


def enumerate_bounded(R, bound: int) -> list[tuple]:
    """All roots whose sigma coordinates lie in ``[-bound, bound]``, sorted."""
    if bound < 0:
        raise ValueError("bound must be non-negative")
    if isinstance(R, AugmentedRootSet):
        return R.window(bound)
    l, nu = R.rank, R.nullity
    zeros = (0,) * nu
    dots = [(0,) * l] + sorted(R.finite.roots)
    out = []
    for rad in product(range(-bound, bound + 1), repeat=nu):
        in_S = R.semilattice.contains(rad)
        in_SS = R.semilattice.sum_set_contains(rad)
        for d in dots:
            ok = in_SS if not any(d) else in_S
            if ok:
                out.append(d + rad + zeros)
    out.sort()
    return out


class AugmentedRootSet:
    """A root system with extra vectors thrown in, for fault-injection runs."""

    def __init__(self, base: ExtendedRootSystem, extra: Iterable[Sequence[int]]):
        self.base = base
        self.extra = frozenset(tuple(v) + (0,) * (base.dim - len(v)) for v in extra)
        self.cartan = base.cartan
        self.semilattice = base.semilattice

    rank = property(lambda self: self.base.rank)
    nullity = property(lambda self: self.base.nullity)
    dim = property(lambda self: self.base.dim)

    def contains(self, v) -> bool:
        v = tuple(v) + (0,) * (self.dim - len(v))
        return v in self.extra or self.base.contains(v)

    __contains__ = contains

    def pairing(self, u, v) -> int:
        return self.base.pairing(u, v)

    def window(self, bound: int) -> list[tuple]:
        l, nu = self.rank, self.nullity
        inside = [v for v in self.extra if all(abs(x) <= bound for x in v[l:l + nu])]
        return sorted(set(enumerate_bounded(self.base, bound)) | set(inside))


# ---------------------------------------------------------------------------
# Axiom checker
# ---------------------------------------------------------------------------

AXIOMS = ("R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8")


@dataclass
class AxiomOutcome:
    axiom: str
    checked: int = 0
    skipped: int = 0
    failures: list = field(default_factory=list)
    note: str = ""

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"axiom": self.axiom, "passed": self.passed, "checked": self.checked,
                "skipped": self.skipped, "failures": [list(map(list, f)) if isinstance(f, tuple)
                                                      and f and isinstance(f[0], tuple)
                                                      else list(f) for f in self.failures[:10]],
                "note": self.note}


@dataclass
class AxiomReport:
    bound: int
    outcomes: dict

    @property
    def passed(self) -> bool:
        return all(o.passed for o in self.outcomes.values())

    def __getitem__(self, axiom: str) -> AxiomOutcome:
        return self.outcomes[axiom]

    def to_dict(self) -> dict:
        return {"bound": self.bound, "passed": self.passed,
                "axioms": [self.outcomes[a].to_dict() for a in AXIOMS]}


# Root strings in a reduced simply laced system never exceed length 4.
_STRING_REACH = 4


def check_axioms(R, bound: int) -> AxiomReport:
    """Check R1-R8 on the roots whose sigma coordinates lie in ``[-bound, bound]``."""
    if bound < 2:
        raise ValueError("axiom checking needs bound >= 2")
    l, nu = R.rank, R.nullity
    window = enumerate_bounded(R, bound)
    member = R.contains
    nonisotropic = [v for v in window if R.pairing(v, v) != 0]
    isotropic = [v for v in window if R.pairing(v, v) == 0]
    outcomes = {a: AxiomOutcome(a) for a in AXIOMS}

    def inside(v):
        return all(-bound <= x <= bound for x in v[l:l + nu])

    o = outcomes["R1"]
    o.checked = 1
    if not member((0,) * R.dim):
        o.failures.append((0,) * R.dim)

    o = outcomes["R2"]
    for v in window:
        o.checked += 1
        if not member(tuple(-x for x in v)):
            o.failures.append(v)

    o = outcomes["R3"]
    o.checked = 1
    r = rank([v[:l + nu] for v in window], l + nu)
    if r != l + nu:
        o.failures.append((r,))
    o.note = f"rank of window roots = {r}, dim V = {l + nu}"

    o = outcomes["R4"]
    for a in nonisotropic:
        o.checked += 1
        if member(tuple(2 * x for x in a)):
            o.failures.append(a)

    o = outcomes["R5"]
    o.note = "roots have integer coordinates in a fixed basis, hence discrete"

    o = outcomes["R6"]
    reach = range(-_STRING_REACH, _STRING_REACH + 1)
    for a in nonisotropic:
        aa = R.pairing(a, a)
        for b in window:
            pts = {n: tuple(x + n * y for x, y in zip(b, a)) for n in reach}
            mem = {n: inside(p) and member(p) for n, p in pts.items()}
            d = 0
            while d + 1 <= _STRING_REACH and mem[-(d + 1)]:
                d += 1
            u = 0
            while u + 1 <= _STRING_REACH and mem[u + 1]:
                u += 1
            ends = [n for n in (-d - 1, u + 1) if abs(n) <= _STRING_REACH]
            if any(not inside(pts[n]) for n in range(-d, u + 1)) or \
                    any(not inside(pts[n]) for n in ends) or \
                    d == _STRING_REACH or u == _STRING_REACH:
                o.skipped += 1
                continue
            o.checked += 1
            broken = [n for n in reach if mem[n] and not -d <= n <= u]
            coroot = 2 * R.pairing(b, a)
            if broken or coroot % aa or coroot // aa != d - u:
                o.failures.append((a, b))

    o = outcomes["R7"]
    groups: dict = {}
    for v in nonisotropic:
        groups.setdefault(v[:l], []).append(v)
    keys = list(groups)
    o.checked = len(nonisotropic)
    if keys:
        seen = {keys[0]}
        stack = [keys[0]]
        while stack:
            k = stack.pop()
            for k2 in keys:
                if k2 not in seen and R.cartan.pairing(k, k2) != 0:
                    seen.add(k2)
                    stack.append(k2)
        if len(seen) != len(keys):
            o.failures.append(tuple(sorted(set(keys) - seen))[0])
    o.note = f"{len(keys)} distinct finite parts among nonisotropic window roots"

    o = outcomes["R8"]
    for s in isotropic:
        o.checked += 1
        if not any(member(tuple(x + y for x, y in zip(a, s))) for a in nonisotropic):
            o.failures.append(s)

    return AxiomReport(bound, outcomes)
