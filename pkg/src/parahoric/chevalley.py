"""Structure-constant families for commutator relations.

A family assigns to every ordered pair of roots (a, b) with a + b a root a
constant c_{a,b}, so that in the group

    [u_a(x), u_b(y)] = prod u_{ia+jb}(c_{a,b,i,j} x^i y^j)

with the product taken in increasing order of i + j, then of i.  Constants
are either exact rationals or elements of a truncated ring known up to a
precision (a valuation bound); see :class:`Quantity`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NotComparable, UnsupportedType
from .report import VerificationReport
from .ring import INF, Ring
from .rootsystem import RootSystem, format_root


# -- values with precision ------------------------------------------------------

@dataclass(frozen=True)
class Quantity:
    """An exact rational, or a ring element known modulo valuation >= prec."""

    value: object
    prec: float = INF
    ring: Ring | None = None

    @classmethod
    def exact(cls, x) -> "Quantity":
        return cls(Fraction(x))

    def _lift(self, x) -> "Quantity":
        if isinstance(x, Quantity):
            return x
        x = Fraction(x)
        if self.ring is None:
            return Quantity(x)
        R = self.ring
        return Quantity(R.from_int(x.numerator) * R.inverse(R.from_int(x.denominator)),
                        INF, R)

    def _ring_of(self, other):
        return self.ring if self.ring is not None else other.ring

    def __mul__(self, other):
        other = self._lift(other)
        R = self._ring_of(other)
        a, b = self.to(R), other.to(R)
        return Quantity(a.value * b.value, min(a.prec, b.prec), R)

    __rmul__ = __mul__

    def __neg__(self):
        return Quantity(-self.value, self.prec, self.ring)

    def __truediv__(self, other):
        other = self._lift(other)
        R = self._ring_of(other)
        a, b = self.to(R), other.to(R)
        if R is None:
            return Quantity(a.value / b.value)
        return Quantity(a.value * R.inverse(b.value), min(a.prec, b.prec), R)

    def to(self, R):
        """Reduce an exact value into R (no-op when already there)."""
        if R is None or self.ring is not None:
            return self
        x = Fraction(self.value)
        return Quantity(R.from_int(x.numerator) * R.inverse(R.from_int(x.denominator)),
                        self.prec, R)

    def compare(self, other) -> bool | None:
        """True/False, or None when the common precision is vacuous."""
        other = self._lift(other)
        R = self._ring_of(other)
        a, b = self.to(R), other.to(R)
        d = min(a.prec, b.prec)
        if R is None:
            return a.value == b.value
        d = min(d, R.h)
        if d <= 0:
            return None
        return R.valuation(a.value - b.value) >= d

    def is_zero(self) -> bool:
        if self.ring is None:
            return self.value == 0
        return self.ring.valuation(self.value) >= min(self.prec, self.ring.h)

    def text(self) -> str:
        if self.ring is None:
            return str(self.value)
        return str(self.value)


# -- families -------------------------------------------------------------------

def product_order(i: int, j: int):
    return (i + j, i)


def shape(system: RootSystem, a, b) -> list[tuple[int, int]]:
    """Pairs (i, j), i, j >= 1, with i*a + j*b a root, in product order."""
    out = []
    for i in range(1, 4):
        for j in range(1, 4):
            if system.is_root(tuple(i * x + j * y for x, y in zip(a, b))):
                out.append((i, j))
    return sorted(out, key=lambda ij: product_order(*ij))


@dataclass
class ConstantFamily:
    system: RootSystem
    c: dict
    higher: dict = field(default_factory=dict)
    ring: Ring | None = None

    def __call__(self, a, b) -> Quantity:
        return self.c[(tuple(a), tuple(b))]

    def get(self, a, b, i=1, j=1) -> Quantity:
        if (i, j) == (1, 1):
            return self.c[(tuple(a), tuple(b))]
        return self.higher[(tuple(a), tuple(b), i, j)]

    def pairs(self):
        return sorted(self.c, key=lambda ab: (self.system.index(ab[0]), self.system.index(ab[1])))

    def to_json(self) -> dict:
        out = {}
        for a, b in self.pairs():
            out[f"({format_root(a)},{format_root(b)})"] = self.c[(a, b)].text()
        return out

    def with_higher(self) -> "ConstantFamily":
        return ConstantFamily(self.system, dict(self.c), higher_constants(self), self.ring)

    def reduce(self, R: Ring) -> "ConstantFamily":
        return ConstantFamily(self.system, {k: v.to(R) for k, v in self.c.items()},
                              {k: v.to(R) for k, v in self.higher.items()}, R)


def extraspecial_pairs(system: RootSystem) -> dict:
    """For each positive non-simple root, its extraspecial pair (a, b)."""
    pos = system.positive_roots
    out = {}
    for xi in pos:
        if sum(xi) == 1:
            continue
        for a in pos:
            b = tuple(x - y for x, y in zip(xi, a))
            if system.is_root(b) and sum(b) > 0:
                out[xi] = (a, b)
                break
    return out


def generate_family(system: RootSystem, signs: dict | None = None) -> ConstantFamily:
    """Chevalley constants N_{a,b} from signs on extraspecial pairs (default +).

    Positive pairs are filled by induction on the height of a + b; pairs of
    mixed sign reduce to positive or negative pairs through the relation
    N_{x,y}/(z,z) = N_{y,z}/(x,x) = N_{z,x}/(y,y) for x + y + z = 0, and
    negative pairs use N_{-x,-y} = -N_{x,y}.
    """
    if system.label not in ("A", "B", "C", "G"):
        raise UnsupportedType(system.name)
    signs = dict(signs or {})
    order = {r: k for k, r in enumerate(system.positive_roots)}
    extra = extraspecial_pairs(system)
    pos_table: dict = {}
    n2 = system.norm2

    def sub(x, y):
        return tuple(a - b for a, b in zip(x, y))

    def is_pos(x):
        return sum(x) > 0

    def N(x, y) -> Fraction:
        s = system.sum_root(x, y)
        if s is None or system.proportional(x, y):
            return Fraction(0)
        if is_pos(x) and is_pos(y):
            return pos_table[(x, y)]
        if not is_pos(x) and not is_pos(y):
            return -N(system.neg(x), system.neg(y))
        z = system.neg(s)
        if is_pos(y) == is_pos(z):
            return Fraction(n2(z), n2(x)) * N(y, z)
        return Fraction(n2(z), n2(y)) * N(z, x)

    for xi in sorted(extra, key=lambda r: (sum(r), order[r])):
        a1, b1 = extra[xi]
        sign = signs.get(xi, 1)
        if sign not in (1, -1):
            raise ValueError("extraspecial signs must be +1 or -1")
        pos_table[(a1, b1)] = Fraction(sign * system.p_int(a1, b1))
        pos_table[(b1, a1)] = -pos_table[(a1, b1)]
        for a in system.positive_roots:
            b = sub(xi, a)
            if a == a1 or not (system.is_root(b) and is_pos(b)) or order[a] > order[b]:
                continue
            t1 = Fraction(0)
            if system.is_root(sub(b, a1)):
                t1 = N(b, system.neg(a1)) * N(a, system.neg(b1)) / n2(sub(b, a1))
            t2 = Fraction(0)
            if system.is_root(sub(a, a1)):
                t2 = N(system.neg(a1), a) * N(b, system.neg(b1)) / n2(sub(a, a1))
            val = Fraction(n2(xi)) / pos_table[(a1, b1)] * (t1 + t2)
            pos_table[(a, b)] = val
            pos_table[(b, a)] = -val

    c = {(x, y): Quantity(N(x, y)) for x, y in system.additive_pairs()}
    return ConstantFamily(system, c)



# -- higher constants -------------------------------------------------------------

def _lin(a, b, i, j):
    return tuple(i * x + j * y for x, y in zip(a, b))


def higher_constants(family: ConstantFamily) -> dict:
    """c_{a,b,i,j} for i + j >= 3 from the c_{a,b}, by the shape of the pair.

    The G2 values were cross-checked against commutators computed in the
    adjoint representation; see the tests.
    """
    s = family.system
    c = family
    half, third, sixth = Fraction(1, 2), Fraction(1, 3), Fraction(1, 6)
    out = {}
    for g, d in family.pairs():
        sh = shape(s, g, d)
        gd = _lin(g, d, 1, 1)
        if sh == [(1, 1), (2, 1)]:
            out[(g, d, 2, 1)] = c(g, d) * c(g, gd) * half
        elif sh == [(1, 1), (1, 2)]:
            out[(g, d, 1, 2)] = -(c(d, g) * c(d, gd) * half)
        elif sh == [(1, 1), (1, 2), (2, 1)]:
            out[(g, d, 2, 1)] = c(g, d) * c(g, gd) * half
            out[(g, d, 1, 2)] = c(g, d) * c(d, gd) * half
        elif sh == [(1, 1), (2, 1), (3, 1), (3, 2)]:
            g2d = _lin(g, d, 2, 1)
            out[(g, d, 2, 1)] = c(g, d) * c(g, gd) * half
            out[(g, d, 3, 1)] = c(g, d) * c(g, gd) * c(g, g2d) * sixth
            out[(g, d, 3, 2)] = c(g, d) * c(g, d) * c(g, gd) * c(g2d, gd) * third
        elif sh == [(1, 1), (1, 2), (1, 3), (2, 3)]:
            d2g = _lin(d, g, 2, 1)
            out[(g, d, 1, 2)] = -(c(d, g) * c(d, gd) * half)
            out[(g, d, 1, 3)] = -(c(d, g) * c(d, gd) * c(d, d2g) * sixth)
            out[(g, d, 2, 3)] = c(d, g) * c(d, g) * c(d, gd) * c(d2g, gd) * sixth
        elif sh != [(1, 1)]:
            raise UnsupportedType(f"unexpected commutator shape {sh}")
    return out


# -- identity verification ----------------------------------------------------------

def base_pairs(system: RootSystem):
    """Ordered pairs (g, d) with g + d a root and g - d not a root."""
    return [(a, b) for a, b in system.additive_pairs()
            if not system.is_root(tuple(x - y for x, y in zip(a, b)))]


def span_type(system: RootSystem, a, b) -> str:
    """Type of the roots lying in the integer span of a and b."""
    members = [r for r in system.roots
               if any(r == _lin(a, b, i, j) for i in range(-3, 4) for j in range(-3, 4))]
    lengths = {system.norm2(r) for r in members}
    if len(members) == 6 and len(lengths) == 1:
        return "A2"
    if len(members) == 8:
        return "B2"
    if len(members) == 12:
        return "G2"
    return "other"


class _Checker:
    def __init__(self, report, family):
        self.report = report
        self.family = family

    def run(self, id, ref, cases):
        checked, failures, vacuous = 0, [], 0
        for label, lhs, rhs in cases:
            verdict = lhs.compare(rhs)
            if verdict is None:
                vacuous += 1
                continue
            checked += 1
            if not verdict:
                failures.append({"at": label, "lhs": lhs.text(),
                                 "rhs": rhs.text() if isinstance(rhs, Quantity) else str(rhs)})
        self.report.add(id, ref, checked, failures, skipped=vacuous)


def _fmt(*roots) -> str:
    return ",".join(format_root(r) for r in roots)


def verify_identities(family: ConstantFamily) -> VerificationReport:
    """Evaluate every commutator-constant identity on every applicable tuple."""
    s = family.system
    c = family
    fam_h = family if family.higher else family.with_higher()
    neg = s.neg
    report = VerificationReport()
    chk = _Checker(report, family)
    pairs = family.pairs()

    chk.run("antisymmetry", "c_{b,a} = -c_{a,b}",
            [(_fmt(a, b), c(b, a), -c(a, b)) for a, b in pairs])

    cases = []
    for a, b in pairs:
        for g in s.roots:
            ag, abg = s.sum_root(a, g), s.sum_root(s.add(a, b), g)
            bg = s.add(b, g)
            if ag is None or abg is None or s.is_root(bg) or not any(bg):
                continue
            cases.append((_fmt(a, b, g), c(a, b) * c(g, s.add(a, b)), c(g, a) * c(ag, b)))
    chk.run("com3", "c_{a,b} c_{g,a+b} = c_{g,a} c_{a+g,b} when b+g is neither a root nor 0",
            cases)

    by_type = {"A2": [], "B2": [], "G2": []}
    for a, b in base_pairs(s):
        t = span_type(s, a, b)
        if t == "A2":
            by_type[t].append((a, b))
        elif t in ("B2", "G2") and s.norm2(a) < s.norm2(b):
            by_type[t].append((a, b))

    A2 = by_type["A2"]
    if A2:
        _a2_checks(chk, c, A2)

    B2 = by_type["B2"]
    if B2:
        ab = lambda a, b: s.add(a, b)
        chk.run("B2.short_long", "c_{a,b} c_{a+b,-b} = 1",
                [(_fmt(a, b), c(a, b) * c(ab(a, b), neg(b)), 1) for a, b in B2])
        chk.run("B2.long_short", "c_{b,a} c_{a+b,-a} = 2",
                [(_fmt(a, b), c(b, a) * c(ab(a, b), neg(a)), 2) for a, b in B2])
        cyc = []
        for a, b in B2:
            z = neg(ab(a, b))
            cyc.append((_fmt(a, b) + ":1", c(a, b), c(b, z)))
            cyc.append((_fmt(a, b) + ":2", c(a, b), c(z, a) * Fraction(1, 2)))
        chk.run("B2.cyclic", "c_{a,b} = c_{b,-a-b} = 1/2 c_{-a-b,a}", cyc)
        chk.run("B2.opposite", "c_{a,b} c_{-a,-b} = -1 and c_{a,a+b} c_{-a,-a-b} = -4",
                [(_fmt(a, b), c(a, b) * c(neg(a), neg(b)), -1) for a, b in B2]
                + [(_fmt(a, ab(a, b)), c(a, ab(a, b)) * c(neg(a), neg(ab(a, b))), -4)
                   for a, b in B2])

    G2 = by_type["G2"]
    if G2:
        ab = lambda a, b, i=1, j=1: _lin(a, b, i, j)
        chk.run("G2.short_long", "c_{a,b} c_{a+b,-b} = 1",
                [(_fmt(a, b), c(a, b) * c(ab(a, b), neg(b)), 1) for a, b in G2])
        chk.run("G2.long_short", "c_{b,a} c_{a+b,-a} = 3",
                [(_fmt(a, b), c(b, a) * c(ab(a, b), neg(a)), 3) for a, b in G2])
        chk.run("G2.short_short", "c_{a+b,a} c_{2a+b,-a} = 4",
                [(_fmt(a, b), c(ab(a, b), a) * c(ab(a, b, 2, 1), neg(a)), 4) for a, b in G2])
        cyc = []
        for a, b in G2:
            z = neg(ab(a, b))
            cyc.append((_fmt(a, b) + ":1", c(a, b), c(b, z)))
            cyc.append((_fmt(a, b) + ":2", c(a, b), c(z, a) * Fraction(1, 3)))
            x, y = a, ab(a, b)
            w = neg(ab(a, b, 2, 1))
            cyc.append((_fmt(x, y) + ":1", c(x, y), c(y, w)))
            cyc.append((_fmt(x, y) + ":2", c(x, y), c(w, x)))
        chk.run("G2.cyclic",
                "c_{a,b} = c_{b,-a-b} = 1/3 c_{-a-b,a} and c_{a,a+b} = c_{a+b,-2a-b} = c_{-2a-b,a}",
                cyc)
        opp = []
        for a, b in G2:
            for r, val in ((b, -1), (ab(a, b), -4), (ab(a, b, 2, 1), -9)):
                opp.append((_fmt(a, r), c(a, r) * c(neg(a), neg(r)), val))
        chk.run("G2.opposite",
                "c_{a,b} c_{-a,-b} = -1, c_{a,a+b} c_{-a,-a-b} = -4, c_{a,2a+b} c_{-a,-2a-b} = -9",
                opp)

    chk.run("unified.opposite", "c_{a,b} c_{-a,-b} = -p_{a,b}^2",
            [(_fmt(a, b), c(a, b) * c(neg(a), neg(b)), -s.p_int(a, b) ** 2) for a, b in pairs])
    cyc = []
    for a, b in pairs:
        z = neg(s.add(a, b))
        base = c(a, b) / s.p_int(a, b)
        cyc.append((_fmt(a, b) + ":1", base, c(b, z) / s.p_int(b, z)))
        cyc.append((_fmt(a, b) + ":2", base, c(z, a) / s.p_int(z, a)))
    chk.run("unified.cyclic", "c_{a,b}/p_{a,b} = c_{b,-a-b}/p_{b,-a-b} = c_{-a-b,a}/p_{-a-b,a}",
            cyc)

    if s.label in ("B", "C", "G"):
        _higher_checks(chk, fam_h)
    return report


def _a2_checks(chk, c, A2):
    s = c.system
    neg = s.neg
    chk.run("A2.inverse_pair", "c_{a,b} c_{a+b,-b} = 1",
            [(_fmt(a, b), c(a, b) * c(s.add(a, b), neg(b)), 1) for a, b in A2])
    cyc = []
    for a, b in A2:
        z = neg(s.add(a, b))
        cyc.append((_fmt(a, b) + ":1", c(a, b), c(b, z)))
        cyc.append((_fmt(a, b) + ":2", c(a, b), c(z, a)))
    chk.run("A2.cyclic", "c_{a,b} = c_{b,-a-b} = c_{-a-b,a}", cyc)
    chk.run("A2.opposite", "c_{a,b} c_{-a,-b} = -1",
            [(_fmt(a, b), c(a, b) * c(neg(a), neg(b)), -1) for a, b in A2])


def _higher_checks(chk: _Checker, fam: ConstantFamily):
    s = fam.system
    expected = higher_constants(fam)
    groups = {}
    refs = {
        (2, 1): ("higher.c21", "c_{a,b,2,1} = 1/2 c_{a,b} c_{a,a+b}"),
        (1, 2): ("higher.c12", "c_{b,a,1,2} = -c_{a,b,2,1} (and the short-short variant)"),
        (3, 1): ("higher.c31", "c_{a,b,3,1} = 1/6 c_{a,b} c_{a,a+b} c_{a,2a+b}"),
        (1, 3): ("higher.c13", "c_{b,a,1,3} = -c_{a,b,3,1}"),
        (3, 2): ("higher.c32", "c_{a,b,3,2} = 1/3 c_{a,b}^2 c_{a,a+b} c_{2a+b,a+b}"),
        (2, 3): ("higher.c23", "c_{b,a,2,3} = -c_{a,b,3,2} - 1/2 c_{a,b}^2 c_{a,a+b} c_{a+b,2a+b}"),
    }
    for key, val in sorted(expected.items(), key=lambda kv: (s.index(kv[0][0]), s.index(kv[0][1]), kv[0][2:])):
        g, d, i, j = key
        if key not in fam.higher:
            continue
        groups.setdefault((i, j), []).append((f"{_fmt(g, d)}:{i},{j}", fam.higher[key], val))
    for ij in sorted(refs, key=lambda ij: product_order(*ij)):
        if s.label in ("B", "C") and ij not in ((2, 1), (1, 2)):
            continue
        id, ref = refs[ij]
        chk.run(id, ref, groups.get(ij, []))


# -- rescaling ------------------------------------------------------------------------

@dataclass
class Rescaling:
    system: RootSystem
    N: dict

    def __call__(self, a) -> Quantity:
        return self.N[tuple(a)]

    def inverse(self) -> "Rescaling":
        return Rescaling(self.system, {a: Quantity(Fraction(1)) / v if v.ring is None
                                       else Quantity(v.ring.inverse(v.value), v.prec, v.ring)
                                       for a, v in self.N.items()})

    def check(self) -> list[str]:
        bad = []
        for a in self.system.positive_roots:
            prod = self.N[a] * self.N[self.system.neg(a)]
            if not prod.compare(1):
                bad.append(format_root(a))
        return bad

    def to_json(self) -> dict:
        return {format_root(a): self.N[a].text() for a in self.system.roots}


def rescaling_from_positive(system: RootSystem, values: dict) -> Rescaling:
    """Extend values on positive roots by N_{-a} = 1/N_a."""
    N = {}
    for a in system.positive_roots:
        v = values.get(a, 1)
        q = v if isinstance(v, Quantity) else Quantity(Fraction(v))
        N[a] = q
        N[system.neg(a)] = Quantity(Fraction(1)) / q if q.ring is None else \
            Quantity(q.ring.inverse(q.value), q.prec, q.ring)
    return Rescaling(system, N)


def apply_rescaling(family: ConstantFamily, N: Rescaling) -> ConstantFamily:
    """c'_{a,b,i,j} = N_a^i N_b^j / N_{ia+jb} c_{a,b,i,j}."""
    if N.system != family.system:
        raise NotComparable("rescaling and family live on different systems")
    s = family.system
    c = {}
    for (a, b), v in family.c.items():
        c[(a, b)] = N(a) * N(b) / N(s.add(a, b)) * v
    higher = {}
    for (a, b, i, j), v in family.higher.items():
        factor = Quantity(Fraction(1))
        for _ in range(i):
            factor = factor * N(a)
        for _ in range(j):
            factor = factor * N(b)
        higher[(a, b, i, j)] = factor / N(_lin(a, b, i, j)) * v
    return ConstantFamily(s, c, higher, family.ring)


def families_equal(f1: ConstantFamily, f2: ConstantFamily) -> bool:
    return all(f1.c[k].compare(f2.c[k]) is not False for k in f1.c)


def find_rescaling(c1: ConstantFamily, c2: ConstantFamily):
    """N with apply_rescaling(c1, N) = c2, by induction on height, or None."""
    if c1.system != c2.system:
        raise NotComparable(f"{c1.system} vs {c2.system}")
    s = c1.system
    if not verify_identities(c1).passed or not verify_identities(c2).passed:
        return None
    simple = s.simple_roots
    vals: dict = {a: Quantity(Fraction(1)) for a in simple}
    for a in sorted(s.positive_roots, key=sum):
        if a in vals:
            continue
        g = next(x for x in simple if s.is_root(tuple(p - q for p, q in zip(a, x)))
                 and sum(a) - 1 > 0)
        b = tuple(p - q for p, q in zip(a, g))
        target = c2(b, g)
        if target.is_zero():
            return None
        vals[a] = c1(b, g) * vals[b] * vals[g] / target
    N = rescaling_from_positive(s, vals)
    if not families_equal(apply_rescaling(c1, N), c2):
        return None
    return N


def unicity_report(system: RootSystem, seed: int = 0, trials: int = 20) -> VerificationReport:
    """Any two consistent families differ by a rescaling.

    Every sign pattern on the extraspecial pairs is reconciled with the
    default family, and random rational rescalings are recovered.
    """
    import itertools
    import random
    rng = random.Random(seed)
    base = generate_family(system)
    extra = sorted(extraspecial_pairs(system), key=lambda r: (sum(r), r))
    rep = VerificationReport()
    failures, checked = [], 0
    for signs in itertools.product((1, -1), repeat=len(extra)):
        other = generate_family(system, dict(zip(extra, signs)))
        checked += 1
        N = find_rescaling(base, other)
        if N is None or N.check() or not families_equal(apply_rescaling(base, N), other):
            failures.append("signs " + ",".join("+" if s > 0 else "-" for s in signs))
    rep.add("unicity.sign_choices", "c' = N_a N_b / N_(a+b) c", checked, failures)
    failures, checked = [], 0
    for _ in range(trials):
        vals = {a: Fraction(rng.choice((-1, 1)) * rng.randint(1, 7), rng.randint(1, 7))
                for a in system.positive_roots}
        target = apply_rescaling(base, rescaling_from_positive(system, vals))
        checked += 1
        N = find_rescaling(base, target)
        if N is None or not families_equal(apply_rescaling(base, N), target):
            failures.append(str({format_root(a): str(v) for a, v in vals.items()}))
    rep.add("unicity.random_rescalings", "N recovered up to the simple roots", checked, failures)
    return rep
