"""Random instances of the T-map identities, shared by the unit and acceptance suites."""
import random

from eawg.hyperbolic import GroupElement, SpaceSignature, commutator, reflection, t_map
from eawg.rootsystem import finite_roots


class Sampler:
    def __init__(self, sig: SpaceSignature, rng: random.Random, coeff=2):
        self.sig, self.rng, self.coeff = sig, rng, coeff
        self.roots = sorted(finite_roots(sig.cartan).roots)

    def _ints(self, n, c=None):
        c = self.coeff if c is None else c
        return [self.rng.randint(-c, c) for _ in range(n)]

    def radical(self):
        return self.sig.vector(sigma=self._ints(self.sig.nullity))

    def in_V(self):
        return self.sig.vector(alpha=self._ints(self.sig.rank), sigma=self._ints(self.sig.nullity))

    def real_root(self):
        """A norm-2 vector of V: finite root plus radical part."""
        return self.sig.vector(alpha=self.rng.choice(self.roots), sigma=self._ints(self.sig.nullity))

    def weyl(self, k=3):
        g = GroupElement.identity(self.sig)
        for _ in range(self.rng.randint(1, k)):
            g = g * reflection(self.sig, self.real_root())
        return g


def scale(k, v):
    return tuple(k * x for x in v)


def add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def T(sig, a, s):
    return t_map(sig, a, s)


def id_i(sig, smp):
    a, s, r = smp.in_V(), smp.radical(), smp.rng.randint(-3, 3)
    return T(sig, scale(r, a), s) == T(sig, a, scale(r, s))


def id_ii(sig, smp):
    a, s, d = smp.in_V(), smp.radical(), smp.radical()
    half = sig.gram(a, a) // 2
    return T(sig, a, add(s, d)) == T(sig, a, s) * T(sig, a, d) * T(sig, d, scale(half, s))


def id_iii(sig, smp):
    a, b, s = smp.in_V(), smp.in_V(), smp.radical()
    return T(sig, add(a, b), s) == T(sig, a, s) * T(sig, b, s)


def id_iv(sig, smp):
    a, b, s, d = smp.in_V(), smp.in_V(), smp.radical(), smp.radical()
    return commutator(T(sig, a, s), T(sig, b, d)) == T(sig, s, scale(sig.gram(a, b), d))


def id_v(sig, smp):
    a, b, c = smp.in_V(), smp.in_V(), smp.in_V()
    s, d, t = smp.radical(), smp.radical(), smp.radical()
    x, y, z = T(sig, a, s), T(sig, b, d), T(sig, c, t)
    return commutator(x * y, z) == commutator(x, z) * commutator(y, z)


def id_vi(sig, smp):
    a, s, w = smp.in_V(), smp.radical(), smp.weyl()
    return w * T(sig, a, s) * w.inverse() == T(sig, w(a), s)


def id_vii(sig, smp):
    a, s = smp.real_root(), smp.radical()
    # (a, a) = 2, so the coroot is a itself
    return T(sig, a, s) == reflection(sig, add(a, s)) * reflection(sig, a)


def id_viii(sig, smp):
    s, d = smp.radical(), smp.radical()
    return T(sig, s, d).inverse() == T(sig, d, s)


def product_formula(sig, smp):
    a = smp.in_V()
    ns = smp._ints(sig.nullity, 3)
    half = sig.gram(a, a) // 2
    total = sig.vector(sigma=ns)
    rhs = GroupElement.identity(sig)
    for r in range(1, sig.nullity + 1):
        rhs = rhs * T(sig, a, scale(ns[r - 1], sig.sigma(r)))
    for r in range(1, sig.nullity + 1):
        for s in range(r + 1, sig.nullity + 1):
            rhs = rhs * T(sig, sig.sigma(s), scale(ns[r - 1] * ns[s - 1] * half, sig.sigma(r)))
    return T(sig, a, total) == rhs


IDENTITIES = {
    "(i) scalar transfer": id_i,
    "(ii) sum in sigma": id_ii,
    "(iii) sum in alpha": id_iii,
    "(iv) commutator": id_iv,
    "(v) commutator product": id_v,
    "(vi) conjugation": id_vi,
    "(vii) reflection pair": id_vii,
    "(viii) inverse": id_viii,
    "product formula": product_formula,
}
