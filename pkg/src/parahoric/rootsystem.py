"""Reduced root systems of types A_n, B2/C2 and G2, and concave functions.

Roots are tuples of integer coordinates over the simple roots; in rank 2
the first simple root ``a`` is the short one.  Inner products come from a
symmetric Gram matrix on the simple roots, scaled so the short roots have
squared length 2.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (InvalidConcave, NotAdditivePair, ParseError, Reducible,
                     UnsupportedType)

Root = tuple


def _gram(label: str, rank: int):
    if label == "A":
        return tuple(tuple(2 if i == j else (-1 if abs(i - j) == 1 else 0)
                           for j in range(rank)) for i in range(rank))
    if label in ("B", "C"):
        return ((2, -2), (-2, 4))
    return ((2, -3), (-3, 6))


@dataclass(frozen=True)
class RootSystem:
    label: str
    rank: int
    gram: tuple = field(repr=False)
    roots: tuple = field(repr=False)

    @property
    def name(self) -> str:
        return f"{self.label}{self.rank}"

    def __str__(self):
        return self.name

    @property
    def simple_roots(self) -> list[Root]:
        return [tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)]

    @property
    def positive_roots(self) -> list[Root]:
        return [r for r in self.roots if sum(r) > 0]

    def is_root(self, v) -> bool:
        return tuple(v) in self._root_set

    @property
    def _root_set(self):
        return frozenset(self.roots)

    def inner(self, x, y) -> int:
        return sum(x[i] * self.gram[i][j] * y[j]
                   for i in range(self.rank) for j in range(self.rank))

    def norm2(self, x) -> int:
        return self.inner(x, x)

    def pairing(self, beta, alpha) -> int:
        """<beta, alpha^vee> = 2 (beta, alpha) / (alpha, alpha)."""
        num = 2 * self.inner(beta, alpha)
        den = self.norm2(alpha)
        assert num % den == 0
        return num // den

    def coroot(self, alpha) -> tuple:
        """alpha^vee in simple-root coordinates (rational)."""
        n = self.norm2(alpha)
        return tuple(Fraction(2 * a, n) for a in alpha)

    def cartan_matrix(self):
        s = self.simple_roots
        return [[self.pairing(s[j], s[i]) for j in range(self.rank)] for i in range(self.rank)]

    def height(self, alpha) -> int:
        return sum(alpha)

    def neg(self, alpha) -> Root:
        return tuple(-a for a in alpha)

    def add(self, alpha, beta) -> Root:
        return tuple(a + b for a, b in zip(alpha, beta))

    def sum_root(self, alpha, beta):
        s = self.add(alpha, beta)
        return s if s in self._root_set else None

    def weyl_reflect(self, alpha, beta) -> Root:
        k = self.pairing(beta, alpha)
        return tuple(b - k * a for a, b in zip(alpha, beta))

    def p_int(self, alpha, beta) -> int:
        """Smallest c >= 1 with beta - c*alpha not a root."""
        if self.sum_root(alpha, beta) is None or self.proportional(alpha, beta):
            raise NotAdditivePair(f"{self.fmt(alpha)}, {self.fmt(beta)}")
        c = 1
        while self.is_root(tuple(b - c * a for a, b in zip(alpha, beta))):
            c += 1
        return c

    def proportional(self, alpha, beta) -> bool:
        return all(alpha[i] * beta[j] == alpha[j] * beta[i]
                   for i in range(self.rank) for j in range(self.rank))

    def additive_pairs(self) -> list[tuple[Root, Root]]:
        return [(a, b) for a in self.roots for b in self.roots
                if not self.proportional(a, b) and self.sum_root(a, b) is not None]

    def highest_root(self) -> Root:
        return max(self.positive_roots, key=sum)

    def extended_simple_roots(self) -> list[Root]:
        if self.label == "A" and self.rank < 1:
            raise Reducible("empty system")
        return self.simple_roots + [self.neg(self.highest_root())]

    def fmt(self, alpha) -> str:
        return format_root(alpha)

    def parse_root(self, text: str) -> Root:
        return parse_root(text, self.rank)

    def index(self, alpha) -> int:
        return self.roots.index(tuple(alpha))


def format_root(alpha) -> str:
    letters = "abcdefghijklmnopqrstuvwxyz"
    terms = []
    for k, n in enumerate(alpha):
        if n == 0:
            continue
        coef = "" if abs(n) == 1 else str(abs(n))
        terms.append(("-" if n < 0 else "+") + coef + letters[k])
    out = "".join(terms)
    return (out[1:] if out.startswith("+") else out) or "0"


def parse_root(text: str, rank: int) -> Root:
    letters = "abcdefghijklmnopqrstuvwxyz"
    s = text.replace(" ", "")
    if not re.fullmatch(r"([+-]?\d*[a-z])+", s):
        raise ParseError(f"cannot parse root {text!r}")
    coords = [0] * rank
    for sign, num, letter in re.findall(r"([+-]?)(\d*)([a-z])", s):
        k = letters.index(letter)
        if k >= rank:
            raise ParseError(f"root letter {letter!r} outside rank {rank}")
        coords[k] += (-1 if sign == "-" else 1) * (int(num) if num else 1)
    return tuple(coords)


def _closure(gram, rank):
    simple = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]

    def refl(a, b):
        ip = sum(b[i] * gram[i][j] * a[j] for i in range(rank) for j in range(rank))
        na = sum(a[i] * gram[i][j] * a[j] for i in range(rank) for j in range(rank))
        k = 2 * ip // na
        return tuple(y - k * x for x, y in zip(a, b))

    found = set(simple)
    frontier = list(simple)
    while frontier:
        new = []
        for b in frontier:
            for a in simple:
                r = refl(a, b)
                if r not in found:
                    found.add(r)
                    new.append(r)
        frontier = new
    # positive roots by height then reverse-lexicographic, negatives mirrored
    pos = sorted((r for r in found if sum(r) > 0), key=lambda r: (sum(r), tuple(-x for x in r)))
    return tuple(pos) + tuple(tuple(-x for x in r) for r in pos)


def build_root_system(label: str, rank: int) -> RootSystem:
    label = label.upper()
    ok = (label == "A" and rank >= 1) or (label in ("B", "C", "G") and rank == 2)
    if not ok:
        raise UnsupportedType(f"unsupported root system {label}{rank}")
    gram = _gram(label, rank)
    return RootSystem(label, rank, gram, _closure(gram, rank))


def parse_system(text: str) -> RootSystem:
    m = re.fullmatch(r"\s*([A-Za-z])(\d+)\s*", text)
    if not m:
        raise ParseError(f"cannot parse root system {text!r}")
    return build_root_system(m.group(1), int(m.group(2)))


# -- concave functions ----------------------------------------------------------

@dataclass(frozen=True)
class ConcaveFunction:
    system: RootSystem
    values: dict = field(hash=False)
    point: tuple | None = None

    def __call__(self, alpha) -> int:
        return self.values[tuple(alpha)]

    def psi(self) -> list[Root]:
        return psi_of(self)

    def to_json(self) -> dict:
        return {format_root(a): v for a, v in self.values.items()}


def _ceil(x: Fraction) -> int:
    return math.ceil(x)


def parse_point(values) -> tuple:
    """Accept numbers, Fractions or strings like ``"1/2"``."""
    out = []
    for v in values:
        try:
            out.append(Fraction(v) if not isinstance(v, float) else Fraction(v).limit_denominator(1000))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational {v!r}") from exc
    return tuple(out)


def extend_concave(system: RootSystem, r) -> ConcaveFunction:
    """f(alpha) = ceil(sum n_i r_i) for alpha = sum n_i alpha_i."""
    r = parse_point(r)
    if len(r) != system.rank:
        raise InvalidConcave(f"expected {system.rank} values, got {len(r)}")
    values = {a: _ceil(sum(n * x for n, x in zip(a, r))) for a in system.roots}
    return ConcaveFunction(system, values, r)


def zero_function(system: RootSystem) -> ConcaveFunction:
    return extend_concave(system, [0] * system.rank)


def check_concave(system: RootSystem, values: dict) -> tuple[bool, list[str]]:
    """Check f(a)+f(-a) >= 0 and f(a+b) <= f(a)+f(b); list every violation."""
    bad = []
    for a in system.roots:
        if a not in values:
            bad.append(f"missing value at {format_root(a)}")
    if bad:
        return False, bad
    for a in system.positive_roots:
        s = values[a] + values[system.neg(a)]
        if s < 0:
            bad.append(f"f({format_root(a)}) + f(-{format_root(a)}) = {s} < 0")
    for a, b in system.additive_pairs():
        c = system.add(a, b)
        if values[c] > values[a] + values[b]:
            bad.append(f"f({format_root(c)}) > f({format_root(a)}) + f({format_root(b)})")
    return not bad, bad


def make_concave(system: RootSystem, values: dict) -> ConcaveFunction:
    ok, bad = check_concave(system, values)
    if not ok:
        raise InvalidConcave("; ".join(bad))
    return ConcaveFunction(system, dict(values))


def psi_of(f: ConcaveFunction) -> list[Root]:
    sys_ = f.system
    ok, bad = check_concave(sys_, f.values)
    if not ok:
        raise InvalidConcave("; ".join(bad))
    members = [a for a in sys_.roots if f(a) + f(sys_.neg(a)) == 0]
    mset = set(members)
    for a in members:
        assert sys_.neg(a) in mset
        for b in members:
            c = sys_.sum_root(a, b)
            if c is not None and c not in mset:
                raise InvalidConcave(f"Psi not closed at {format_root(a)}+{format_root(b)}")
    return members
