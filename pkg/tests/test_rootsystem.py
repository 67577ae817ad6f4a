import itertools
from fractions import Fraction

import pytest

from eawg.hyperbolic import SpaceSignature, reflection
from eawg.rootsystem import (AugmentedRootSet, ExtendedRootSystem, cartan_matrix, check_axioms,
                             enumerate_bounded, finite_roots, root_contains)
from eawg.semilattice import full_lattice, standard_semilattice


def e(n, i, c=1):
    return tuple(Fraction(c) if k == i else Fraction(0) for k in range(n))


def add(*vs):
    return tuple(sum(x) for x in zip(*vs))


def euclid_simple_roots(type_, l):
    """Simple roots in the usual Euclidean models (Bourbaki numbering)."""
    if type_ == "A":
        return [add(e(l + 1, i), e(l + 1, i + 1, -1)) for i in range(l)]
    if type_ == "D":
        roots = [add(e(l, i), e(l, i + 1, -1)) for i in range(l - 1)]
        return roots + [add(e(l, l - 2), e(l, l - 1))]
    half = Fraction(1, 2)
    a1 = tuple([half] + [-half] * 6 + [half])
    roots = [a1, add(e(8, 0), e(8, 1))] + [add(e(8, k), e(8, k - 1, -1)) for k in range(1, 7)]
    return roots[:l]


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


CASES = [("A", 1), ("A", 2), ("A", 3), ("A", 5), ("D", 4), ("D", 5), ("E", 6), ("E", 7), ("E", 8)]


@pytest.mark.parametrize("type_,l", CASES)
def test_cartan_from_euclidean_model(type_, l):
    simple = euclid_simple_roots(type_, l)
    A = cartan_matrix(type_, l)
    for i in range(l):
        for j in range(l):
            assert A.entry(i + 1, j + 1) == dot(simple[i], simple[j])


def test_small_cartan_examples():
    assert cartan_matrix("A", 1).matrix.rows == ((2,),)
    assert cartan_matrix("A", 2).matrix.rows == ((2, -1), (-1, 2))
    D4 = cartan_matrix("D", 4)
    assert [j for j in range(1, 4) if D4.entry(j, 4) == -1] == [2]


@pytest.mark.parametrize("bad", [("A", 0), ("D", 3), ("E", 5), ("B", 2), ("E", 9)])
def test_invalid_types(bad):
    with pytest.raises(ValueError):
        cartan_matrix(*bad)


COUNTS = {("A", 1): 2, ("A", 2): 6, ("A", 3): 12, ("A", 5): 30, ("D", 4): 24, ("D", 5): 40,
          ("E", 6): 72, ("E", 7): 126, ("E", 8): 240}


@pytest.mark.parametrize("type_,l", CASES)
def test_root_counts_and_norms(type_, l):
    A = cartan_matrix(type_, l)
    R = finite_roots(A)
    assert len(R.roots) == COUNTS[(type_, l)]
    assert all(A.pairing(b, b) == 2 for b in R.roots)
    assert all(tuple(-x for x in b) in R.roots for b in R.roots)
    # every root is an integer combination with all coefficients of one sign
    assert all(min(b) >= 0 or max(b) <= 0 for b in R.roots)
    assert len(R.positive()) == len(R.roots) // 2


@pytest.mark.parametrize("type_,l", [("A", 3), ("D", 4), ("E", 6)])
def test_roots_match_euclidean_norm_two_vectors(type_, l):
    # In the Euclidean model, roots are exactly the norm-2 vectors of the root lattice.
    simple = euclid_simple_roots(type_, l)
    A = cartan_matrix(type_, l)
    R = finite_roots(A).roots
    found = set()
    for coeffs in itertools.product(range(-2, 3), repeat=l):
        v = add(*[tuple(c * x for x in s) for c, s in zip(coeffs, simple)])
        if dot(v, v) == 2:
            found.add(coeffs)
    assert found == {r for r in R if max(abs(x) for x in r) <= 2}


def test_root_contains_examples():
    R = ExtendedRootSystem(cartan_matrix("A", 1), full_lattice(1))
    assert root_contains(R, (1, 5, 0))
    assert root_contains(R, (0, 0, 0))
    R2 = ExtendedRootSystem(cartan_matrix("A", 1), standard_semilattice(2, 2))
    assert not root_contains(R2, (1, 1, 1, 0, 0))
    with pytest.raises(ValueError):
        root_contains(R, (1, 0, 1))


def test_rank_two_needs_lattice():
    with pytest.raises(ValueError, match="lattice"):
        ExtendedRootSystem(cartan_matrix("A", 2), standard_semilattice(2, 2))


def test_window_examples():
    R0 = ExtendedRootSystem(cartan_matrix("A", 1), full_lattice(0))
    assert enumerate_bounded(R0, 3) == [(-1,), (0,), (1,)]
    R = ExtendedRootSystem(cartan_matrix("A", 1), standard_semilattice(1, 1))
    win = enumerate_bounded(R, 1)
    nonisotropic = [v for v in win if R.pairing(v, v)]
    assert len(nonisotropic) == 6
    assert (0, 1, 0) in win and (0, 0, 0) in win


@pytest.mark.parametrize("type_,l,nu,m", [("A", 1, 2, 2), ("A", 1, 3, 4), ("A", 2, 2, 3), ("D", 4, 1, 1)])
def test_window_matches_brute_force(type_, l, nu, m):
    R = ExtendedRootSystem(cartan_matrix(type_, l), standard_semilattice(nu, m))
    N = 2
    win = enumerate_bounded(R, N)
    assert win == sorted(win)
    dots = [(0,) * l] + sorted(finite_roots(R.cartan).roots)
    brute = sorted(d + s + (0,) * nu for d in dots
                   for s in itertools.product(range(-N, N + 1), repeat=nu) if R.contains(d + s))
    assert win == brute
    # nonisotropic part is exactly finite roots plus S
    S_pts = [s for s in itertools.product(range(-N, N + 1), repeat=nu) if R.semilattice.contains(s)]
    expected = sorted(b + s + (0,) * nu for b in finite_roots(R.cartan).roots for s in S_pts)
    assert [v for v in win if any(v[:l])] == expected
    assert len(enumerate_bounded(R, 1)) < len(win)


@pytest.mark.parametrize("type_,l,nu,m", [("A", 1, 2, 2), ("A", 1, 3, 5), ("A", 2, 2, 3)])
def test_window_stable_under_reflections(type_, l, nu, m):
    R = ExtendedRootSystem(cartan_matrix(type_, l), standard_semilattice(nu, m))
    sig = SpaceSignature(R.cartan, nu)
    win = enumerate_bounded(R, 2)
    for a in [v for v in win if R.pairing(v, v)][:12]:
        w = reflection(sig, a)
        for v in win:
            assert R.contains(w(v))


@pytest.mark.parametrize("type_,l,nu,m", [("A", 2, 1, 1), ("A", 1, 2, 3)])
def test_axioms_pass(type_, l, nu, m):
    R = ExtendedRootSystem(cartan_matrix(type_, l), standard_semilattice(nu, m))
    report = check_axioms(R, 3)
    assert report.passed, report.to_dict()
    assert report["R6"].checked > 0 and report["R6"].skipped > 0
    assert report["R3"].passed


def test_injected_double_root_fails_r4():
    R = ExtendedRootSystem(cartan_matrix("A", 1), standard_semilattice(2, 2))
    bad = AugmentedRootSet(R, [(2, 0, 0)])
    report = check_axioms(bad, 2)
    assert not report["R4"].passed
    assert bad.contains((2, 0, 0, 0, 0))


def test_axiom_bound_guard():
    R = ExtendedRootSystem(cartan_matrix("A", 1), full_lattice(1))
    with pytest.raises(ValueError):
        check_axioms(R, 1)
