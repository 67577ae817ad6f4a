"""Finite presentations of the Heisenberg-like group and the extended affine Weyl group.

Generators are ``x_i`` (simple reflections), ``y_{i,r}`` (mapped to
``t_{i,r}``) and ``z_{r,s}`` (mapped to ``c_{r,s}^{n(r,s)}``). Words use the
grammar::

    word   := term ('*' term)* | empty       (the empty word renders as "1")
    term   := symbol ('^' signed-int)?
    symbol := 'x' idx | 'y' idx '_' idx | 'z' idx '_' idx

Commutators are ``[a, b] = a^-1 b^-1 a b``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, NamedTuple

from .exactlinalg import Matrix, mat_mul
from .hyperbolic import GroupElement
from .rootsystem import CartanData, ExtendedRootSystem
from .semilattice import Semilattice, format_class
from .weylgroup import CentralData, WeylContext, central_data, pairs, reduced_word

__all__ = [
    "Symbol", "Word", "Relator", "Presentation", "HypothesisError", "WordSyntaxError",
    "UnknownGeneratorError", "present_H", "present_W", "parse_word", "render_word",
    "collect", "evaluate", "verify_presentation", "VerificationReport", "random_word",
    "perturb_relator",
]


class HypothesisError(ValueError):
    """F(S) is not generated by the ``c_{r,s}^{n(r,s)}``, so no presentation is emitted."""


class WordSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownGeneratorError(ValueError):
    pass


class Symbol(NamedTuple):
    kind: str   # 'x', 'y' or 'z'
    a: int
    b: int = 0

    def __str__(self) -> str:
        if self.kind == "x":
            return f"x{self.a}"
        return f"{self.kind}{self.a}_{self.b}"

    @property
    def order_key(self) -> tuple:
        # x first, then y_{i,r} by (r, i), then z_{r,s} by (r, s)
        if self.kind == "x":
            return (0, self.a, 0)
        if self.kind == "y":
            return (1, self.b, self.a)
        return (2, self.a, self.b)


def x(i: int) -> Symbol:
    return Symbol("x", i)


def y(i: int, r: int) -> Symbol:
    return Symbol("y", i, r)


def z(r: int, s: int) -> Symbol:
    return Symbol("z", r, s)


class Word:
    """Freely reduced word: a tuple of ``(Symbol, nonzero exponent)`` pairs."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[tuple[Symbol, int]] = ()):
        out: list[list] = []
        for sym, e in letters:
            if not e:
                continue
            if out and out[-1][0] == sym:
                out[-1][1] += e
                if not out[-1][1]:
                    out.pop()
            else:
                out.append([sym, e])
        self.letters = tuple((s, e) for s, e in out)

    @classmethod
    def of(cls, *letters) -> "Word":
        """``Word.of(y(1,1), (z(1,2), -2))``; a bare symbol means exponent 1."""
        return cls((l, 1) if isinstance(l, Symbol) else l for l in letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word((s, -e) for s, e in reversed(self.letters))

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        return Word(base.letters * abs(k))

    def __iter__(self):
        return iter(self.letters)

    def __len__(self):
        return len(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __repr__(self):
        return f"Word({render_word(self)!r})"

    def __str__(self):
        return render_word(self)

    def symbols(self) -> set:
        return {s for s, _ in self.letters}


def comm(a: Word, b: Word) -> Word:
    return a.inverse() * b.inverse() * a * b


def render_word(word: Word, sep: str = " * ") -> str:
    if not word:
        return "1"
    return sep.join(str(s) if e == 1 else f"{s}^{e}" for s, e in word)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

def parse_word(text: str, generators: Iterable[Symbol] | None = None) -> Word:
    """Parse ``text`` into a freely reduced word.

    With ``generators`` given, symbols outside that set raise UnknownGeneratorError.
    """
    chars = [(c, i) for i, c in enumerate(text) if not c.isspace()]
    end = len(text)
    if not chars or (len(chars) == 1 and chars[0][0] == "1"):
        return Word()
    pos = 0

    def peek():
        return chars[pos][0] if pos < len(chars) else ""

    def where():
        return chars[pos][1] if pos < len(chars) else end

    def integer(signed: bool) -> int:
        nonlocal pos
        start = pos
        sign = 1
        if signed and peek() in "+-":
            sign = -1 if peek() == "-" else 1
            pos += 1
        digits = ""
        while peek().isdigit():
            digits += peek()
            pos += 1
        if not digits:
            raise WordSyntaxError("expected an integer", chars[start][1] if start < len(chars) else end)
        return sign * int(digits)

    letters = []
    while True:
        kind = peek()
        if kind not in ("x", "y", "z"):
            raise WordSyntaxError(f"expected a generator symbol, found {kind or 'end of input'!r}",
                                  where())
        sym_pos = where()
        pos += 1
        a = integer(False)
        if kind == "x":
            sym = Symbol("x", a)
        else:
            if peek() != "_":
                raise WordSyntaxError("expected '_'", where())
            pos += 1
            sym = Symbol(kind, a, integer(False))
        if a == 0 or (kind != "x" and sym.b == 0):
            raise WordSyntaxError("generator indices start at 1", sym_pos)
        if kind == "z" and not sym.a < sym.b:
            raise WordSyntaxError(f"{sym} needs r < s", sym_pos)
        exp = 1
        if peek() == "^":
            pos += 1
            exp = integer(True)
        letters.append((sym, exp))
        if pos == len(chars):
            break
        if peek() != "*":
            raise WordSyntaxError(f"expected '*', found {peek()!r}", where())
        pos += 1
    word = Word(letters)
    if generators is not None:
        gens = set(generators)
        unknown = [str(s) for s, _ in letters if s not in gens]
        if unknown:
            raise UnknownGeneratorError(f"unknown generator(s): {', '.join(sorted(set(unknown)))}")
    return word


# ---------------------------------------------------------------------------
# Presentations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Relator:
    word: Word
    text: str       # equational rendering
    kind: str

    def __str__(self):
        return self.text


def _compact(word: Word) -> str:
    return render_word(word, sep="*")


@dataclass
class Presentation:
    group: str                  # 'H' or 'W'
    cartan: CartanData
    semilattice: Semilattice
    central: CentralData
    generators: list
    relators: list = field(default_factory=list)

    @property
    def rank(self) -> int:
        return self.cartan.rank

    @property
    def nullity(self) -> int:
        return self.semilattice.nullity

    def exponent(self, i: int, j: int, r: int, s: int) -> int:
        """``a_{i,j} / n(r,s)``, the z exponent in ``[y_{i,r}, y_{j,s}]``."""
        a = self.cartan.entry(i, j)
        n = self.central.nrs[(r, s)]
        if a % n:
            raise AssertionError(f"n({r},{s}) = {n} does not divide a_{i},{j} = {a}")
        return a // n

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "type": self.cartan.type,
            "rank": self.rank,
            "nullity": self.nullity,
            "index": self.semilattice.index,
            "class": format_class(self.semilattice.support),
            "nrs": self.central.nrs_table(),
            "condition000": self.central.condition000,
            "generators": [str(g) for g in self.generators],
            "relators": [render_word(r.word) for r in self.relators],
            "relations": [r.text for r in self.relators],
        }

    def render_text(self) -> str:
        head = (f"# {self.group}-hat for {self.cartan.name}, nullity {self.nullity}, "
                f"index {self.semilattice.index}, class {format_class(self.semilattice.support)}")
        gens = "generators: " + ", ".join(str(g) for g in self.generators)
        return "\n".join([head, gens] + [r.text for r in self.relators]) + "\n"


def _check_hypotheses(cartan: CartanData, S: Semilattice) -> CentralData:
    ExtendedRootSystem(cartan, S)  # rejects rank >= 2 with a proper semilattice
    cd = central_data(S, cartan)
    if not cd.condition000:
        raise HypothesisError(
            f"F(S) for class {format_class(S.support)} is not generated by the "
            f"c_(r,s)^n(r,s) (n = {cd.nrs}); no presentation is emitted")
    return cd


def _h_relators(P: Presentation) -> list[Relator]:
    l, nu = P.rank, P.nullity
    zs = [z(r, s) for r, s in pairs(nu)]
    rels = []
    for z1, z2 in combinations(zs, 2):
        rels.append(Relator(comm(Word.of(z1), Word.of(z2)), f"[{z1},{z2}] = 1", "zz"))
    for r in range(1, nu + 1):
        for i in range(1, l + 1):
            for zz in zs:
                rels.append(Relator(comm(Word.of(y(i, r)), Word.of(zz)),
                                    f"[{y(i, r)},{zz}] = 1", "yz"))
    for r in range(1, nu + 1):
        for i, j in combinations(range(1, l + 1), 2):
            rels.append(Relator(comm(Word.of(y(i, r)), Word.of(y(j, r))),
                                f"[{y(i, r)},{y(j, r)}] = 1", "yy"))
    for r, s in pairs(nu):
        for i in range(1, l + 1):
            for j in range(1, l + 1):
                k = P.exponent(i, j, r, s)
                rhs = Word([(z(r, s), k)])
                lhs = comm(Word.of(y(i, r)), Word.of(y(j, s)))
                rels.append(Relator(lhs * rhs.inverse(),
                                    f"[{y(i, r)},{y(j, s)}] = {_compact(rhs)}", "yyz"))
    return rels


def present_H(cartan: CartanData, S: Semilattice) -> Presentation:
    cd = _check_hypotheses(cartan, S)
    l, nu = cartan.rank, S.nullity
    gens = [y(i, r) for r in range(1, nu + 1) for i in range(1, l + 1)]
    gens += [z(r, s) for r, s in pairs(nu)]
    P = Presentation("H", cartan, S, cd, gens)
    P.relators = _h_relators(P)
    return P


def present_W(cartan: CartanData, S: Semilattice) -> Presentation:
    cd = _check_hypotheses(cartan, S)
    l, nu = cartan.rank, S.nullity
    gens = [x(i) for i in range(1, l + 1)]
    gens += [y(i, r) for r in range(1, nu + 1) for i in range(1, l + 1)]
    gens += [z(r, s) for r, s in pairs(nu)]
    P = Presentation("W", cartan, S, cd, gens)
    rels = [Relator(Word([(x(i), 2)]), f"{x(i)}^2 = 1", "xx") for i in range(1, l + 1)]
    for i, j in combinations(range(1, l + 1), 2):
        m = cartan.entry(i, j) ** 2 + 2
        rels.append(Relator(Word.of(x(i), x(j)) ** m, f"({x(i)}*{x(j)})^{m} = 1", "coxeter"))
    for r in range(1, nu + 1):
        for i in range(1, l + 1):
            for j in range(1, l + 1):
                a = cartan.entry(i, j)
                lhs = Word.of(x(i), y(j, r), x(i))
                rhs = Word([(y(j, r), 1), (y(i, r), -a)])
                rels.append(Relator(lhs * rhs.inverse(),
                                    f"{_compact(lhs)} = {_compact(rhs)}", "xyx"))
    P.relators = rels + _h_relators(P)
    return P


def perturb_relator(P: Presentation, index: int | None = None) -> tuple[Presentation, int]:
    """Copy of ``P`` with one relator's last exponent bumped by one.

    Defaults to the last relator (a ``[y, y] = z^k`` relation when one exists).
    """
    if not P.relators:
        raise ValueError("presentation has no relators to perturb")
    idx = len(P.relators) - 1 if index is None else index
    rel = P.relators[idx]
    letters = list(rel.word.letters)
    sym, e = letters[-1]
    letters[-1] = (sym, e + (1 if e > 0 else -1))
    bad = Word(letters)
    rels = list(P.relators)
    rels[idx] = Relator(bad, f"{rel.text}  (perturbed: {_compact(bad)} = 1)", rel.kind)
    return Presentation(P.group, P.cartan, P.semilattice, P.central, P.generators, rels), idx


# ---------------------------------------------------------------------------
# Collection
# ---------------------------------------------------------------------------

class _Collector:
    """Running normal form ``w_dot * prod y^n * prod z^k`` of a product of letters."""

    def __init__(self, P: Presentation):
        self.P = P
        l = P.rank
        self.cols = [[int(i == j) for i in range(l)] for j in range(l)]
        self.n: dict = {}   # (r, i) -> exponent of y_{i,r}
        self.k: dict = {}   # (r, s) -> exponent of z_{r,s}

    def _push_y(self, n: dict, k: dict, i: int, r: int, e: int) -> None:
        # y_{i,r}^e moves left past every y_{j,s} with (s, j) > (r, i); only s > r
        # contributes [y_{j,s}, y_{i,r}]^{n e} = z_{r,s}^{-a_{j,i} n e / n(r,s)}
        for (s, j), m in n.items():
            if s > r and m:
                k[(r, s)] = k.get((r, s), 0) - m * e * self.P.exponent(j, i, r, s)
        n[(r, i)] = n.get((r, i), 0) + e

    def push(self, sym: Symbol, e: int) -> None:
        if sym.kind == "z":
            self.k[(sym.a, sym.b)] = self.k.get((sym.a, sym.b), 0) + e
        elif sym.kind == "y":
            self._push_y(self.n, self.k, sym.a, sym.b, e)
        elif e % 2:
            self._push_x(sym.a)

    def _push_x(self, i: int) -> None:
        # w Y Z x_i = (w x_i) (x_i Y x_i) Z with x_i y_{j,r} x_i = y_{j,r} y_{i,r}^{-a_{i,j}}
        A = self.P.cartan
        n_new: dict = {}
        for (r, j) in sorted(self.n):
            m = self.n[(r, j)]
            if m:
                self._push_y(n_new, self.k, j, r, m)
                self._push_y(n_new, self.k, i, r, -A.entry(i, j) * m)
        self.n = n_new
        Am = A.matrix.rows
        ci = self.cols[i - 1]
        l = A.rank
        self.cols = [[xv - Am[i - 1][j] * yv for xv, yv in zip(self.cols[j], ci)]
                     for j in range(l)]

    def word(self) -> Word:
        letters = [(x(i), 1) for i in reduced_word(self.P.cartan, self.cols)]
        letters += [(y(i, r), self.n[(r, i)]) for (r, i) in sorted(self.n) if self.n[(r, i)]]
        letters += [(z(r, s), self.k[(r, s)]) for (r, s) in sorted(self.k) if self.k[(r, s)]]
        return Word(letters)


def collect(word: Word, P: Presentation) -> Word:
    """Canonical form of ``word`` in the presented group.

    Output order: a reduced word in the ``x_i``, then ``y_{i,r}`` sorted by
    ``(r, i)``, then ``z_{r,s}`` sorted by ``(r, s)``.
    """
    gens = set(P.generators)
    c = _Collector(P)
    for sym, e in word:
        if sym not in gens:
            raise UnknownGeneratorError(f"{sym} is not a generator of this presentation")
        c.push(sym, e)
    return c.word()


# ---------------------------------------------------------------------------
# Matrix realisation
# ---------------------------------------------------------------------------

class _Images:
    def __init__(self, P: Presentation, ctx: WeylContext):
        self.ctx = ctx
        self.cache: dict = {}

    def get(self, sym: Symbol, e: int) -> Matrix:
        if sym.kind == "x":
            e %= 2
            if not e:
                return None
            key = (sym, 1)
        else:
            key = (sym, e)
        if key not in self.cache:
            ctx = self.ctx
            if sym.kind == "x":
                g = ctx.gen_w(sym.a)
            elif sym.kind == "y":
                g = ctx.gen_t(sym.a, sym.b, e)
            else:
                g = ctx.gen_c(sym.a, sym.b, e * ctx.central.nrs[(sym.a, sym.b)])
            self.cache[key] = g.matrix
        return self.cache[key]


def evaluate(word: Word, ctx: WeylContext, P: Presentation | None = None,
             _images: _Images | None = None) -> GroupElement:
    """Image of ``word`` under ``x_i -> w_i``, ``y_{i,r} -> t_{i,r}``, ``z_{r,s} -> c_{r,s}^{n(r,s)}``."""
    images = _images or _Images(P, ctx)
    M = None
    for sym, e in word:
        g = images.get(sym, e)
        if g is None:
            continue
        M = g if M is None else mat_mul(M, g)
    if M is None:
        return ctx.identity()
    return GroupElement(M, ctx.signature)


def random_word(P: Presentation, length: int, rng: random.Random) -> Word:
    """Up to ``length`` letters drawn uniformly from the generators with exponent +-1."""
    if not P.generators:
        return Word()
    letters = [(rng.choice(P.generators), rng.choice((1, -1))) for _ in range(length)]
    return Word(letters)


@dataclass
class RelatorCheck:
    index: int
    text: str
    word: str
    passed: bool


@dataclass
class VerificationReport:
    group: str
    relators: list
    pairs_checked: int = 0
    equal_pairs: int = 0
    disagreements: list = field(default_factory=list)

    @property
    def relators_ok(self) -> bool:
        return all(r.passed for r in self.relators)

    @property
    def ok(self) -> bool:
        return self.relators_ok and not self.disagreements

    @property
    def failed_relators(self) -> list:
        return [r for r in self.relators if not r.passed]

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "ok": self.ok,
            "relators": [{"index": r.index, "relation": r.text, "word": r.word,
                          "passed": r.passed} for r in self.relators],
            "injectivity": {"pairs": self.pairs_checked, "equal_pairs": self.equal_pairs,
                            "disagreements": self.disagreements},
        }


def _pair(P: Presentation, rng: random.Random, max_len: int) -> tuple[Word, Word]:
    u = random_word(P, rng.randint(0, max_len), rng)
    mode = rng.randrange(3)
    if mode == 0 or not P.relators:
        v = random_word(P, rng.randint(0, max_len), rng)
    elif mode == 1:
        # splice in a conjugated relator: equal by construction
        rel = rng.choice(P.relators).word
        if rng.random() < 0.5:
            rel = rel.inverse()
        g = random_word(P, rng.randint(0, 2), rng)
        cut = rng.randint(0, len(u))
        v = Word(u.letters[:cut]) * g.inverse() * rel * g * Word(u.letters[cut:])
    else:
        # near miss: bump one exponent, usually a different element
        if not u:
            v = random_word(P, 1, rng)
        else:
            letters = list(u.letters)
            k = rng.randrange(len(letters))
            sym, e = letters[k]
            letters[k] = (sym, e + rng.choice((1, -1, 2)))
            v = Word(letters)
    return u, v


def verify_presentation(P: Presentation, ctx: WeylContext, pairs_count: int = 0,
                        seed: int = 0, max_len: int = 20) -> VerificationReport:
    """Evaluate every relator in the matrix realisation; optionally spot-check injectivity.

    For each random pair ``(u, v)``, ``collect(u) == collect(v)`` must agree with
    equality of the matrices.
    """
    images = _Images(P, ctx)
    checks = []
    for idx, rel in enumerate(P.relators):
        ok = evaluate(rel.word, ctx, _images=images).is_identity()
        checks.append(RelatorCheck(idx, rel.text, render_word(rel.word), ok))
    report = VerificationReport(P.group, checks)
    rng = random.Random(seed)
    for _ in range(pairs_count):
        u, v = _pair(P, rng, max_len)
        same_word = collect(u, P) == collect(v, P)
        same_matrix = evaluate(u, ctx, _images=images) == evaluate(v, ctx, _images=images)
        report.pairs_checked += 1
        report.equal_pairs += same_matrix
        if same_word != same_matrix:
            report.disagreements.append({"u": render_word(u), "v": render_word(v),
                                         "collect_equal": same_word, "matrix_equal": same_matrix})
    return report
