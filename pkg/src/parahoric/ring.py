"""Truncated valuation rings of depth h over finite residue fields.

Three realizations of O/p^h are provided:

``equichar``
    F_q[t]/(t^h) with q = p^m.
``unram``
    The Galois ring (Z/p^h)[x]/(f) where f is a monic lift of the first
    irreducible polynomial of degree m over F_p.
``ram``
    O/(pi^h) for O = Z_p[x]/(x^e - p*c), tame and totally ramified.

Coefficient layout of an element (``RingElement.coeffs``):

* equichar: h blocks of m integers mod p; block i holds the residue-field
  coefficient of t^i, written in the basis 1, theta, ..., theta^(m-1).
* unram: m integers mod p^h, the coefficients of 1, theta, ..., theta^(m-1).
* ram: e integers, the i-th taken mod p^ceil((h-i)/e), coefficient of pi^i.

Elements are numbered by mixed radix over the coefficient moduli, first
coefficient fastest; ``Ring.elements()`` lists them in that order.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
import re

from .errors import (BadDepth, DepthOne, InvalidSpec, MixedRings, NotAUnit,
                     ParseError, TooLarge)

INF = math.inf

KINDS = ("equichar", "unram", "ram")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def _vp(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


# -- polynomials over Z/N, lists of coefficients, lowest degree first --------

def _poly_divmod_monic(a: list[int], f: list[int], mod: int) -> list[int]:
    """Remainder of a modulo the monic polynomial f."""
    a = [x % mod for x in a]
    d = len(f) - 1
    for k in range(len(a) - 1, d - 1, -1):
        lead = a[k]
        if lead:
            for j in range(d + 1):
                a[k - d + j] = (a[k - d + j] - lead * f[j]) % mod
    return (a + [0] * d)[:d]


def _poly_mul(a, b, mod):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return [x % mod for x in out]


def first_irreducible(p: int, m: int) -> tuple[int, ...]:
    """First monic irreducible polynomial of degree m over F_p.

    Candidates x^m + a_(m-1) x^(m-1) + ... + a_0 are ordered by the integer
    a_0 + a_1 p + ...; irreducibility is tested by trial division by every
    monic polynomial of degree at most m/2.
    """
    if m == 1:
        return (0, 1)
    for n in range(p ** m):
        low = [(n // p ** i) % p for i in range(m)]
        f = low + [1]
        if low[0] == 0:
            continue
        reducible = False
        for d in range(1, m // 2 + 1):
            for k in range(p ** d):
                g = [(k // p ** i) % p for i in range(d)] + [1]
                if not any(_poly_divmod_monic(f, g, p)):
                    reducible = True
                    break
            if reducible:
                break
        if not reducible:
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")


# -- specs --------------------------------------------------------------------

@dataclass(frozen=True)
class RingSpec:
    kind: str
    p: int
    h: int
    m: int = 1
    e: int = 1
    c: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidSpec(f"unknown ring kind {self.kind!r}")
        if not _is_prime(self.p):
            raise InvalidSpec(f"p = {self.p} is not prime")
        if self.p == 2:
            raise InvalidSpec("residue characteristic 2 is excluded")
        if self.h < 1:
            raise InvalidSpec("depth must be at least 1")
        if self.m < 1:
            raise InvalidSpec("extension degree must be at least 1")
        if self.kind == "ram":
            if self.m != 1:
                raise InvalidSpec("ramified rings have prime residue field")
            if self.e < 2:
                raise InvalidSpec("ramification index must be at least 2")
            if math.gcd(self.e, self.p) != 1:
                raise InvalidSpec("only tame ramification is supported")
            if self.c % self.p == 0:
                raise InvalidSpec("Eisenstein constant must be a unit mod p")
            if self.h < 2:
                raise InvalidSpec("ramified rings need depth at least 2")
        elif self.e != 1 or self.c != 0:
            raise InvalidSpec("e and c only apply to ramified rings")

    @classmethod
    def equichar(cls, p, m, h):
        return cls("equichar", p, h, m=m)

    @classmethod
    def unram(cls, p, m, h):
        return cls("unram", p, h, m=m)

    @classmethod
    def ram(cls, p, e, c, h):
        return cls("ram", p, h, e=e, c=c)

    def text(self) -> str:
        if self.kind == "ram":
            return f"ram(p={self.p},e={self.e},c={self.c},h={self.h})"
        return f"{self.kind}(p={self.p},m={self.m},h={self.h})"

    def __str__(self):
        return self.text()


_SPEC_RE = re.compile(r"^\s*(equichar|unram|ram)\s*\(([^()]*)\)\s*$")


def parse_ring_spec(text: str) -> RingSpec:
    """Parse ``equichar(p=3,m=1,h=3)``, ``unram(...)`` or ``ram(p=,e=,c=,h=)``."""
    match = _SPEC_RE.match(text)
    if not match:
        raise ParseError(f"cannot parse ring spec {text!r}")
    kind, body = match.groups()
    fields = {}
    for part in filter(None, (s.strip() for s in body.split(","))):
        key, sep, value = part.partition("=")
        key = key.strip()
        if not sep or not re.fullmatch(r"-?\d+", value.strip()):
            raise ParseError(f"bad field {part!r} in {text!r}")
        if key in fields:
            raise ParseError(f"duplicate field {key!r}")
        fields[key] = int(value)
    wanted = {"ram": {"p", "e", "c", "h"}}.get(kind, {"p", "m", "h"})
    if set(fields) != wanted:
        raise ParseError(f"{kind} expects fields {sorted(wanted)}, got {sorted(fields)}")
    try:
        return RingSpec(kind, **fields)
    except InvalidSpec as exc:
        # p = 2 and similar are rejected as input errors at parse time
        raise ParseError(str(exc)) from exc


# -- elements -----------------------------------------------------------------

class RingElement:
    """Immutable element of a truncated ring, stored in canonical form."""

    __slots__ = ("ring", "coeffs", "_hash")

    def __init__(self, ring: "Ring", coeffs: tuple[int, ...]):
        self.ring = ring
        self.coeffs = coeffs
        self._hash = hash((ring.spec, coeffs))

    def _other(self, y):
        if isinstance(y, int):
            return self.ring.from_int(y)
        if not isinstance(y, RingElement):
            return NotImplemented
        if y.ring is not self.ring and y.ring.spec != self.ring.spec:
            raise MixedRings(f"{self.ring.spec} vs {y.ring.spec}")
        return y

    def __add__(self, y):
        y = self._other(y)
        if y is NotImplemented:
            return y
        return self.ring.add(self, y)

    __radd__ = __add__

    def __sub__(self, y):
        y = self._other(y)
        if y is NotImplemented:
            return y
        return self.ring.add(self, self.ring.neg(y))

    def __rsub__(self, y):
        y = self._other(y)
        if y is NotImplemented:
            return y
        return self.ring.add(y, self.ring.neg(self))

    def __mul__(self, y):
        y = self._other(y)
        if y is NotImplemented:
            return y
        return self.ring.mul(self, y)

    __rmul__ = __mul__

    def __neg__(self):
        return self.ring.neg(self)

    def __pow__(self, n: int):
        if n < 0:
            return self.ring.inverse(self) ** (-n)
        result, base = self.ring.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, y):
        y = self._other(y)
        if y is NotImplemented:
            return y
        return self * self.ring.inverse(y)

    def __eq__(self, y):
        if isinstance(y, int):
            y = self.ring.from_int(y)
        if not isinstance(y, RingElement):
            return NotImplemented
        return self.coeffs == y.coeffs and self.ring.spec == y.ring.spec

    def __hash__(self):
        return self._hash

    def __bool__(self):
        return any(self.coeffs)

    def valuation(self):
        return self.ring.valuation(self)

    def is_unit(self) -> bool:
        return self.ring.valuation(self) == 0

    def __repr__(self):
        return f"{self.ring.format(self)}"

    def __str__(self):
        return self.ring.format(self)


# -- rings --------------------------------------------------------------------

class Ring:
    """Handle on a truncated ring; build with :func:`make_ring`."""

    def __init__(self, spec: RingSpec):
        self.spec = spec
        self._inverses = {}
        self.kind = spec.kind
        self.p = spec.p
        self.h = spec.h
        self.m = spec.m
        self.e = spec.e
        self.c = spec.c
        self.q = spec.p ** spec.m
        p, h, m = self.p, self.h, self.m
        self.poly = first_irreducible(p, m)
        if self.kind == "equichar":
            self.moduli = (p,) * (h * m)
        elif self.kind == "unram":
            self.moduli = (p ** h,) * m
        else:
            self.moduli = tuple(p ** (-(-(h - i) // self.e)) for i in range(self.e))
        self.size = math.prod(self.moduli)
        assert self.size == self.q ** h
        self.zero = RingElement(self, (0,) * len(self.moduli))
        self.one = self.from_int(1)
        self.unit_count = (self.q - 1) * self.q ** (h - 1)
        self._elements = None
        self._teich = None
        if self.kind == "equichar":
            self._fq = _FieldTables(p, m, self.poly)

    # construction
    def element(self, coeffs) -> RingElement:
        coeffs = tuple(coeffs)
        if len(coeffs) != len(self.moduli):
            raise ValueError(f"expected {len(self.moduli)} coefficients")
        return RingElement(self, tuple(c % n for c, n in zip(coeffs, self.moduli)))

    def __call__(self, value) -> RingElement:
        if isinstance(value, RingElement):
            if value.ring.spec != self.spec:
                raise MixedRings(f"{value.ring.spec} vs {self.spec}")
            return value
        if isinstance(value, int):
            return self.from_int(value)
        return self.element(value)

    def from_int(self, n: int) -> RingElement:
        coeffs = [0] * len(self.moduli)
        coeffs[0] = n
        return self.element(coeffs)

    def __eq__(self, other):
        return isinstance(other, Ring) and other.spec == self.spec

    def __hash__(self):
        return hash(self.spec)

    def __repr__(self):
        return f"Ring({self.spec.text()})"

    @property
    def order(self) -> int:
        return self.size

    @property
    def characteristic(self) -> int:
        if self.kind == "equichar":
            return self.p
        return self.moduli[0]

    def code(self, x: RingElement) -> int:
        k, scale = 0, 1
        for c, n in zip(x.coeffs, self.moduli):
            k += c * scale
            scale *= n
        return k

    def from_code(self, k: int) -> RingElement:
        coeffs = []
        for n in self.moduli:
            coeffs.append(k % n)
            k //= n
        return RingElement(self, tuple(coeffs))

    def elements(self) -> list[RingElement]:
        if self._elements is None:
            self._elements = [self.from_code(k) for k in range(self.size)]
        return self._elements

    # arithmetic
    def add(self, x: RingElement, y: RingElement) -> RingElement:
        return RingElement(self, tuple((a + b) % n for a, b, n in zip(x.coeffs, y.coeffs, self.moduli)))

    def neg(self, x: RingElement) -> RingElement:
        return RingElement(self, tuple((-a) % n for a, n in zip(x.coeffs, self.moduli)))

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x: RingElement, y: RingElement) -> RingElement:
        if self.kind == "unram":
            if self.m == 1:
                return RingElement(self, ((x.coeffs[0] * y.coeffs[0]) % self.moduli[0],))
            prod = _poly_mul(list(x.coeffs), list(y.coeffs), self.moduli[0])
            return RingElement(self, tuple(_poly_divmod_monic(prod, list(self.poly), self.moduli[0])))
        if self.kind == "ram":
            e = self.e
            out = [0] * e
            for i, a in enumerate(x.coeffs):
                if not a:
                    continue
                for j, b in enumerate(y.coeffs):
                    if b:
                        k = i + j
                        if k < e:
                            out[k] += a * b
                        else:
                            out[k - e] += a * b * self.p * self.c
            return RingElement(self, tuple(v % n for v, n in zip(out, self.moduli)))
        fq, m, h = self._fq, self.m, self.h
        xa = [fq.code(x.coeffs[i * m:(i + 1) * m]) for i in range(h)]
        ya = [fq.code(y.coeffs[i * m:(i + 1) * m]) for i in range(h)]
        out = [0] * h
        for i, a in enumerate(xa):
            if a:
                for j in range(h - i):
                    b = ya[j]
                    if b:
                        out[i + j] = fq.add[out[i + j]][fq.mul[a][b]]
        coeffs = []
        for v in out:
            coeffs.extend(fq.coeffs[v])
        return RingElement(self, tuple(coeffs))

    # valuation and units
    def valuation(self, x: RingElement):
        if self.kind == "equichar":
            m = self.m
            for i in range(self.h):
                if any(x.coeffs[i * m:(i + 1) * m]):
                    return i
            return INF
        if self.kind == "unram":
            vals = [_vp(a, self.p) for a in x.coeffs if a]
            return min(vals) if vals else INF
        vals = [self.e * _vp(a, self.p) + i for i, a in enumerate(x.coeffs) if a]
        return min(vals) if vals else INF

    def is_unit(self, x: RingElement) -> bool:
        return self.valuation(x) == 0

    def inverse(self, x: RingElement) -> RingElement:
        if self.valuation(x) != 0:
            raise NotAUnit(f"{x} has positive valuation in {self.spec}")
        inv = self._inverses.get(x)
        if inv is None:
            inv = self._inverses[x] = x ** (self.unit_count - 1)
        return inv

    def uniformizer(self) -> RingElement:
        if self.h == 1:
            raise DepthOne(f"{self.spec} is a field")
        coeffs = [0] * len(self.moduli)
        if self.kind == "equichar":
            coeffs[self.m] = 1
        elif self.kind == "unram":
            coeffs[0] = self.p
        else:
            coeffs[1] = 1
        return self.element(coeffs)

    def theta(self) -> RingElement:
        """Canonical generator of the residue extension (the class of x)."""
        coeffs = [0] * len(self.moduli)
        if self.m == 1:
            coeffs[0] = 1
        else:
            coeffs[1] = 1
        return self.element(coeffs)

    # residue field
    def residue_field(self) -> "Ring":
        return make_ring(RingSpec.equichar(self.p, self.m, 1))

    def residue(self, x: RingElement) -> RingElement:
        k = self.residue_field()
        if self.kind == "equichar":
            return k.element(x.coeffs[:self.m])
        if self.kind == "unram":
            return k.element(x.coeffs)
        return k.element(x.coeffs[:1])

    def residue_lift(self, s: RingElement) -> RingElement:
        coeffs = [0] * len(self.moduli)
        coeffs[:len(s.coeffs)] = s.coeffs
        return self.element(coeffs)

    def teichmuller(self, s: RingElement) -> RingElement:
        """Multiplicative representative of the residue class s."""
        x = self.residue_lift(s)
        if self.kind == "equichar":
            return x
        for _ in range(self.h):
            x = x ** self.q
        return x

    def teichmuller_reps(self) -> list[RingElement]:
        if self._teich is None:
            self._teich = [self.teichmuller(s) for s in self.residue_field().elements()]
        return self._teich

    def sqrt(self, x: RingElement):
        """Return (r, -r) with r*r = x, or None when the residue is a non-square."""
        if self.valuation(x) != 0:
            raise NotAUnit(f"{x} is not a unit")
        k = self.residue_field()
        target = self.residue(x)
        root = next((s for s in k.elements() if s * s == target), None)
        if root is None:
            return None
        r = self.residue_lift(root)
        half = self.inverse(self.from_int(2))
        for _ in range(self.h + 1):
            r = (r + x * self.inverse(r)) * half
        assert r * r == x
        return r, -r

    # uniformizer arithmetic
    def div_uniformizer(self, x: RingElement, k: int = 1) -> RingElement:
        """Some y with pi^k * y = x; the top k digits of y are set to zero."""
        for _ in range(k):
            if self.valuation(x) < 1:
                raise NotAUnit(f"{x} is not divisible by the uniformizer")
            cs = x.coeffs
            if self.kind == "equichar":
                x = self.element(cs[self.m:] + (0,) * self.m)
            elif self.kind == "unram":
                x = self.element([a // self.p for a in cs])
            else:
                cinv = pow(self.c, -1, self.moduli[0])
                top = (cs[0] // self.p) * cinv
                x = self.element(cs[1:] + (0,)) + self.element((0,) * (self.e - 1) + (top,))
        return x

    def decompose(self, x: RingElement) -> tuple[RingElement, ...]:
        """Digits (s_0..s_(h-1)) among the Teichmueller reps with x = sum s_i pi^i."""
        reps = self.teichmuller_reps()
        k = self.residue_field()
        digits = []
        for i in range(self.h):
            s = reps[k.code(self.residue(x))]
            digits.append(s)
            if i < self.h - 1:
                x = self.div_uniformizer(x - s)
        return tuple(digits)

    def recompose(self, digits) -> RingElement:
        total, power = self.zero, self.one
        for i, s in enumerate(digits):
            total = total + s * power
            if i < self.h - 1:
                power = power * self.uniformizer()
        return total

    # quotients
    def quotient(self, i: int):
        """The ring R/R_i and the projection R -> R/R_i."""
        if not 1 <= i <= self.h:
            raise BadDepth(f"quotient depth {i} outside 1..{self.h}")
        if i == self.h:
            return self, (lambda x: x)
        if i == 1:
            target = self.residue_field()
            return target, self.residue
        if self.kind == "equichar":
            target = make_ring(RingSpec.equichar(self.p, self.m, i))
            n = i * self.m
            return target, (lambda x: target.element(x.coeffs[:n]))
        if self.kind == "unram":
            target = make_ring(RingSpec.unram(self.p, self.m, i))
        else:
            target = make_ring(RingSpec.ram(self.p, self.e, self.c, i))
        return target, (lambda x: target.element(x.coeffs))

    def lift_from(self, y: RingElement) -> RingElement:
        """Canonical lift of an element of a quotient of this ring."""
        if y.ring.spec == self.spec:
            return y
        if y.ring.h == 1:
            return self.residue_lift(y)
        coeffs = list(y.coeffs) + [0] * (len(self.moduli) - len(y.coeffs))
        return self.element(coeffs)

    # presentation, used by the isomorphism search
    def generators(self) -> list[tuple[str, RingElement]]:
        gens = []
        if self.m > 1:
            gens.append(("theta", self.theta()))
        if self.kind != "unram" and self.h >= 2:
            gens.append(("pi", self.uniformizer()))
        return gens

    def relations(self) -> list[dict]:
        """Polynomials in (theta, pi) that vanish; keys are exponent pairs."""
        rels = [{(0, 0): self.characteristic}]
        if self.m > 1:
            rels.append({(j, 0): a for j, a in enumerate(self.poly) if a})
        if self.kind == "equichar" and self.h >= 2:
            rels.append({(0, self.h): 1})
        if self.kind == "ram":
            rels.append({(0, self.e): 1, (0, 0): -self.p * self.c})
            rels.append({(0, self.h): 1})
        return rels

    def expansion(self, x: RingElement) -> dict:
        """x written as an integer combination of theta^a pi^b."""
        out = {}
        if self.kind == "equichar":
            m = self.m
            for idx, a in enumerate(x.coeffs):
                if a:
                    out[(idx % m, idx // m)] = a
        elif self.kind == "unram":
            for j, a in enumerate(x.coeffs):
                if a:
                    out[(j, 0)] = a
        else:
            for i, a in enumerate(x.coeffs):
                if a:
                    out[(0, i)] = a
        return out

    def format(self, x: RingElement) -> str:
        if self.kind == "unram" and self.m == 1:
            return str(x.coeffs[0])
        if self.kind == "equichar" and self.m == 1:
            terms = []
            for i, a in enumerate(x.coeffs):
                if a:
                    mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
                    terms.append(f"{a}{mono}" if mono and a != 1 else (mono or str(a)))
            return "+".join(terms) or "0"
        return str(x.coeffs)


class _FieldTables:
    """Addition and multiplication tables of F_q = F_p[x]/(f)."""

    def __init__(self, p, m, poly):
        q = p ** m
        self.p, self.m = p, m
        self.coeffs = [tuple((k // p ** i) % p for i in range(m)) for k in range(q)]
        index = {c: k for k, c in enumerate(self.coeffs)}
        self.add = [[index[tuple((a + b) % p for a, b in zip(ca, cb))] for cb in self.coeffs]
                    for ca in self.coeffs]
        self.mul = [[index[tuple(_poly_divmod_monic(_poly_mul(list(ca), list(cb), p), list(poly), p))]
                     if m > 1 else index[((ca[0] * cb[0]) % p,)]
                     for cb in self.coeffs] for ca in self.coeffs]

    def code(self, cs):
        k = 0
        for i, c in enumerate(cs):
            k += c * self.p ** i
        return k


@lru_cache(maxsize=None)
def make_ring(spec: RingSpec) -> Ring:
    return Ring(spec)


def ring_from_text(text: str) -> Ring:
    return make_ring(parse_ring_spec(text))


def quotient_ring(R: Ring, i: int):
    return R.quotient(i)


# -- field descriptions ---------------------------------------------------------

@dataclass(frozen=True)
class FieldDescription:
    name: str
    residue_field: str
    ramification_index: int
    defining_polynomial: str
    note: str


def _poly_text(coeffs) -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        a = coeffs[k]
        if not a:
            continue
        mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        coef = "" if (a == 1 and k) else str(a)
        terms.append(f"{coef}{mono}")
    return "+".join(terms).replace("+-", "-")


def lift_field_description(R: Ring) -> FieldDescription:
    """A henselian local field F with O_F/p^h isomorphic to R (not unique)."""
    p, m = R.p, R.m
    k = f"F_{R.q}"
    if R.kind == "equichar":
        return FieldDescription(f"{k}((X))", k, 1, "",
                                "formal Laurent series over the residue field")
    if R.kind == "unram":
        if m == 1:
            return FieldDescription(f"Q_{p}", k, 1, "", "p-adic numbers")
        return FieldDescription(f"Q_{p} adjoined root of {_poly_text(R.poly)}", k, 1,
                                _poly_text(R.poly),
                                f"unramified extension of Q_{p} of degree {m}")
    poly = _poly_text([-p * R.c] + [0] * (R.e - 1) + [1])
    return FieldDescription(f"Q_{p} adjoined root of {poly}", k, R.e, poly,
                            "totally and tamely ramified Eisenstein extension")


# -- finite rings given by tables ------------------------------------------------

class TableRing:
    """A finite commutative ring on {0..n-1} given by explicit tables.

    ``valuation`` is optional metadata (a list) used to prune the
    isomorphism search; when absent every element gets valuation 0.
    """

    def __init__(self, add, mul, zero: int, one: int, valuation=None, labels=None):
        self.add_table = add
        self.mul_table = mul
        self.size = len(add)
        self.zero = zero
        self.one = one
        self.vals = list(valuation) if valuation is not None else [0] * self.size
        self.labels = labels
        self._neg = None

    @property
    def order(self):
        return self.size

    def elements(self):
        return list(range(self.size))

    def add(self, x, y):
        return self.add_table[x][y]

    def mul(self, x, y):
        return self.mul_table[x][y]

    def neg(self, x):
        if self._neg is None:
            self._neg = [0] * self.size
            for a in range(self.size):
                for b in range(self.size):
                    if self.add_table[a][b] == self.zero:
                        self._neg[a] = b
                        break
        return self._neg[x]

    def valuation(self, x):
        return self.vals[x]

    def from_int(self, n: int):
        total = self.zero
        step = self.one if n >= 0 else self.neg(self.one)
        for _ in range(abs(n) % max(1, self.characteristic)):
            total = self.add(total, step)
        return total

    @property
    def characteristic(self):
        k, x = 1, self.one
        while x != self.zero:
            x = self.add(x, self.one)
            k += 1
        return k

    def check_axioms(self) -> list[str]:
        """Exhaustively check the commutative unital ring axioms."""
        bad = []
        n, A, M = self.size, self.add_table, self.mul_table
        for x in range(n):
            if A[x][self.zero] != x:
                bad.append(f"zero is not additive identity at {x}")
            if M[x][self.one] != x:
                bad.append(f"one is not multiplicative identity at {x}")
            if A[x][self.neg(x)] != self.zero:
                bad.append(f"no additive inverse for {x}")
            for y in range(n):
                if A[x][y] != A[y][x]:
                    bad.append(f"addition not commutative at {x},{y}")
                if M[x][y] != M[y][x]:
                    bad.append(f"multiplication not commutative at {x},{y}")
                for z in range(n):
                    if A[A[x][y]][z] != A[x][A[y][z]]:
                        bad.append(f"addition not associative at {x},{y},{z}")
                    if M[M[x][y]][z] != M[x][M[y][z]]:
                        bad.append(f"multiplication not associative at {x},{y},{z}")
                    if M[x][A[y][z]] != A[M[x][y]][M[x][z]]:
                        bad.append(f"not distributive at {x},{y},{z}")
                if len(bad) > 10:
                    return bad
        return bad

    def generators(self) -> list[tuple[str, int]]:
        """Greedy generating set over the prime subring, in (valuation, index) order."""
        order = sorted(range(self.size), key=lambda x: (self.vals[x], x))
        gens: list[int] = []
        span = self._closure([])
        for x in order:
            if len(span) == self.size:
                break
            if x not in span:
                gens.append(x)
                span = self._closure(gens)
        return [(f"g{i}", g) for i, g in enumerate(gens)]

    def _closure(self, gens):
        known = {self.zero, self.one, *gens}
        frontier = list(known)
        while frontier:
            new = []
            for x in frontier:
                for y in list(known):
                    for z in (self.add(x, y), self.mul(x, y), self.neg(x)):
                        if z not in known:
                            known.add(z)
                            new.append(z)
            frontier = new
        return known


# -- isomorphism search ----------------------------------------------------------

@dataclass
class RingIsomorphism:
    source: object
    target: object
    mapping: dict
    generator_images: dict

    def __call__(self, x):
        return self.mapping[x]

    def inverse(self) -> "RingIsomorphism":
        return RingIsomorphism(self.target, self.source,
                               {v: k for k, v in self.mapping.items()},
                               {})


def _additive_order(R, x):
    k, y = 1, x
    while y != R.zero:
        y = R.add(y, x)
        k += 1
    return k


def _valuation_profile(R):
    counts = {}
    for x in R.elements():
        v = R.valuation(x)
        counts[v] = counts.get(v, 0) + 1
    return sorted(counts.items(), key=lambda kv: (kv[0] == INF, kv[0]))


def _eval_poly(R, poly: dict, images: list):
    theta = images[0] if images[0] is not None else R.one
    pi = images[1] if images[1] is not None else R.zero
    total = R.zero
    for (a, b), n in poly.items():
        term = R.from_int(n)
        for _ in range(a):
            term = R.mul(term, theta)
        for _ in range(b):
            term = R.mul(term, pi)
        total = R.add(total, term)
    return total


def _verify_pairs(R1, R2, phi, elements):
    for x in elements:
        for y in elements:
            if phi[R1.add(x, y)] != R2.add(phi[x], phi[y]):
                return False
            if phi[R1.mul(x, y)] != R2.mul(phi[x], phi[y]):
                return False
    return True


def iso_search(R1, R2, bound: int = 3 ** 8, full_check_limit: int = 729):
    """Find a unital ring isomorphism R1 -> R2, or return None.

    The map is fixed by the images of the canonical generators.  For a
    presented source (a :class:`Ring`) candidates must satisfy the defining
    relations, which makes the extension a homomorphism; table rings are
    extended by closure under + and *.  Bijectivity is then checked, and
    additivity/multiplicativity is verified on every pair of elements
    whenever the ring has at most ``full_check_limit`` elements.
    """
    for R in (R1, R2):
        if R.order > bound:
            raise TooLarge(f"ring of order {R.order} exceeds bound {bound}")
    if not isinstance(R1, Ring) and isinstance(R2, Ring):
        found = iso_search(R2, R1, bound, full_check_limit)
        return found.inverse() if found else None
    if R1.order != R2.order or R1.characteristic != R2.characteristic:
        return None
    if _valuation_profile(R1) != _valuation_profile(R2):
        return None
    gens = R1.generators()
    cands = []
    for _, g in gens:
        v, n = R1.valuation(g), _additive_order(R1, g)
        cands.append([y for y in R2.elements()
                      if R2.valuation(y) == v and _additive_order(R2, y) == n])
    elements = R1.elements()
    for combo in itertools.product(*cands):
        if isinstance(R1, Ring):
            phi = _extend_presented(R1, R2, gens, combo)
        else:
            phi = _extend_closure(R1, R2, gens, combo)
        if phi is None or len(set(phi.values())) != R2.order:
            continue
        if phi[R1.one] != R2.one:
            continue
        if R1.order <= full_check_limit and not _verify_pairs(R1, R2, phi, elements):
            continue
        return RingIsomorphism(R1, R2, phi, {name: y for (name, _), y in zip(gens, combo)})
    return None


def _extend_presented(R1: Ring, R2, gens, combo):
    images = [None, None]
    for (name, _), y in zip(gens, combo):
        images[0 if name == "theta" else 1] = y
    if any(_eval_poly(R2, rel, images) != R2.zero for rel in R1.relations()):
        return None
    return {x: _eval_poly(R2, R1.expansion(x), images) for x in R1.elements()}


def _extend_closure(R1, R2, gens, combo):
    phi = {R1.zero: R2.zero, R1.one: R2.one}
    for (_, g), y in zip(gens, combo):
        if phi.get(g, y) != y:
            return None
        phi[g] = y
    frontier = list(phi)
    while frontier:
        new = []
        for x in frontier:
            for y in list(phi):
                for z, w in ((R1.add(x, y), R2.add(phi[x], phi[y])),
                             (R1.mul(x, y), R2.mul(phi[x], phi[y]))):
                    if z in phi:
                        if phi[z] != w:
                            return None
                    else:
                        phi[z] = w
                        new.append(z)
        frontier = new
    return phi if len(phi) == R1.order else None
