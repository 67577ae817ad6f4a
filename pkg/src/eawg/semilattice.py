"""Semilattices in ``Lambda = Z^nu`` encoded by their supporting classes.

A semilattice ``S`` with a fixed basis ``sigma_1..sigma_nu`` is a union of
cosets of ``2*Lambda``; the coset of ``tau_J = sum_{r in J} sigma_r`` is
recorded by the subset ``J``. The collection of these subsets (the
supporting class) determines ``S``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

__all__ = [
    "SupportClass", "Semilattice", "ValidationReport", "STANDARD_CLASSES",
    "standard_semilattice", "standard_indices", "supp_of", "contains",
    "sum_set_contains", "validate", "parse_class", "format_class",
]


def _canon(subsets: Iterable[Iterable[int]]) -> frozenset:
    return frozenset(frozenset(s) for s in subsets)


def _sort_key(subset: frozenset) -> tuple:
    return (len(subset), tuple(sorted(subset)))


@dataclass(frozen=True)
class SupportClass:
    nullity: int
    subsets: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.nullity < 0:
            raise ValueError("nullity must be non-negative")
        object.__setattr__(self, "subsets", _canon(self.subsets))
        for J in self.subsets:
            bad = [r for r in J if not (isinstance(r, int) and 1 <= r <= self.nullity)]
            if bad:
                raise ValueError(f"subset {sorted(J)} has entries outside 1..{self.nullity}")

    def sorted_subsets(self) -> list[tuple[int, ...]]:
        return [tuple(sorted(J)) for J in sorted(self.subsets, key=_sort_key)]

    def __str__(self) -> str:
        return format_class(self)


@dataclass(frozen=True)
class ValidationReport:
    has_empty: bool
    spans: bool
    singletons_present: bool

    @property
    def ok(self) -> bool:
        return self.has_empty and self.spans

    def failures(self) -> list[str]:
        out = []
        if not self.has_empty:
            out.append("empty set missing from the class (0 must lie in S)")
        if not self.spans:
            out.append("indicator vectors do not span (Z/2)^nu (S must span)")
        return out


def _rank_mod2(vectors: list[int]) -> int:
    # vectors encoded as bitmasks
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def _mask(J: Iterable[int]) -> int:
    m = 0
    for r in J:
        m |= 1 << (r - 1)
    return m


def validate(cls: SupportClass) -> ValidationReport:
    nu = cls.nullity
    has_empty = frozenset() in cls.subsets
    spans = _rank_mod2([_mask(J) for J in cls.subsets]) == nu
    singletons = all(frozenset({r}) in cls.subsets for r in range(1, nu + 1))
    return ValidationReport(has_empty, spans, singletons)


@dataclass(frozen=True)
class Semilattice:
    support: SupportClass

    def __post_init__(self):
        report = validate(self.support)
        if not report.ok:
            raise ValueError("invalid supporting class: " + "; ".join(report.failures()))

    @property
    def nullity(self) -> int:
        return self.support.nullity

    @property
    def index(self) -> int:
        return len(self.support.subsets) - 1

    @property
    def subsets(self) -> frozenset:
        return self.support.subsets

    def is_lattice(self) -> bool:
        """True when ``S + S`` lies in ``S`` (the class is closed under symmetric difference)."""
        subs = self.support.subsets
        return all((A ^ B) in subs for A in subs for B in subs)

    def contains(self, sigma: Sequence[int]) -> bool:
        return contains(self, sigma)

    def sum_set_contains(self, sigma: Sequence[int]) -> bool:
        return sum_set_contains(self, sigma)

    def __str__(self) -> str:
        return format_class(self.support)


def supp_of(sigma: Sequence[int]) -> frozenset:
    """Indices (1-based) of the odd coordinates of ``sigma``."""
    return frozenset(r + 1 for r, x in enumerate(sigma) if x % 2)


def _check_len(S: Semilattice, sigma: Sequence[int]) -> None:
    if len(sigma) != S.nullity:
        raise ValueError(f"expected {S.nullity} coordinates, got {len(sigma)}")


def contains(S: Semilattice, sigma: Sequence[int]) -> bool:
    _check_len(S, sigma)
    return supp_of(sigma) in S.subsets


def sum_set_contains(S: Semilattice, sigma: Sequence[int]) -> bool:
    """Membership in ``S + S``: the parity class must be a symmetric difference of two members."""
    _check_len(S, sigma)
    target = supp_of(sigma)
    subs = S.subsets
    return any((A ^ target) in subs for A in subs)


# One representative per similarity class of semilattices with nu <= 3.
STANDARD_CLASSES: dict[tuple[int, int], tuple[tuple[int, ...], ...]] = {
    (0, 0): ((),),
    (1, 1): ((), (1,)),
    (2, 2): ((), (1,), (2,)),
    (2, 3): ((), (1,), (2,), (1, 2)),
    (3, 3): ((), (1,), (2,), (3,)),
    (3, 4): ((), (1,), (2,), (3,), (2, 3)),
    (3, 5): ((), (1,), (2,), (3,), (1, 3), (2, 3)),
    (3, 6): ((), (1,), (2,), (3,), (1, 2), (1, 3), (2, 3)),
    (3, 7): ((), (1,), (2,), (3,), (1, 2), (1, 3), (2, 3), (1, 2, 3)),
}


def standard_indices(nullity: int) -> list[int]:
    return sorted(m for (nu, m) in STANDARD_CLASSES if nu == nullity)


def standard_semilattice(nullity: int, index: int) -> Semilattice:
    try:
        subsets = STANDARD_CLASSES[(nullity, index)]
    except KeyError:
        raise ValueError(f"no standard semilattice with nullity {nullity} and index {index}; "
                         f"known indices for nullity {nullity}: {standard_indices(nullity) or 'none'}"
                         ) from None
    return Semilattice(SupportClass(nullity, subsets))


def full_lattice(nullity: int) -> Semilattice:
    """``S = Lambda``: every subset of ``{1..nu}`` is in the class."""
    subsets = [c for k in range(nullity + 1) for c in combinations(range(1, nullity + 1), k)]
    return Semilattice(SupportClass(nullity, subsets))


_SUBSET_RE = re.compile(r"\{([^{}]*)\}")


def parse_class(text: str, nullity: int | None = None) -> SupportClass:
    """Parse the ``{},{1},{2},{1,2}`` encoding.

    ``nullity`` defaults to the largest index mentioned.
    """
    stripped = re.sub(r"\s+", "", text)
    if not stripped:
        raise ValueError("empty supporting class text")
    pos = 0
    subsets = []
    while pos < len(stripped):
        m = _SUBSET_RE.match(stripped, pos)
        if not m:
            raise ValueError(f"malformed supporting class at position {pos}: {text!r}")
        body = m.group(1)
        if body:
            try:
                elems = [int(x) for x in body.split(",")]
            except ValueError:
                raise ValueError(f"non-integer entry in subset {{{body}}}") from None
        else:
            elems = []
        subsets.append(elems)
        pos = m.end()
        if pos < len(stripped):
            if stripped[pos] != ",":
                raise ValueError(f"expected ',' at position {pos}: {text!r}")
            pos += 1
            if pos == len(stripped):
                raise ValueError("trailing comma in supporting class")
    if nullity is None:
        nullity = max((max(s) for s in subsets if s), default=0)
    return SupportClass(nullity, subsets)


def format_class(cls: SupportClass) -> str:
    return ",".join("{" + ",".join(str(r) for r in J) + "}" for J in cls.sorted_subsets())
