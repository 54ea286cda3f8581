"""Concrete families: GL_n, SL_n, Sp_4 over one ring, and the two-ring block group."""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..errors import (IllFormedWindows, IncompatibleRings, InvalidConcave, InvalidSpec,
                      NotAUnit, NotAvailable, ParseError, UnsupportedFamily)
from ..ring import INF, Ring, RingSpec, iso_search, make_ring, parse_ring_spec
from ..rootsystem import (build_root_system, check_concave, extend_concave, format_root,
                          parse_point)
from .core import (ZERO, GroupElement, WindowedGroup, ZeroSpace, lift, pi_power,
                   window_ring, _det)

FAMILIES = ("GL", "SL", "Sp4", "HeteroBlock")


# -- specs ----------------------------------------------------------------------

@dataclass(frozen=True)
class GroupSpec:
    family: str
    n: int
    ring: RingSpec
    point: tuple | None = None
    ring2: RingSpec | None = None

    def to_json(self) -> dict:
        out = {"family": self.family, "n": self.n, "ring": self.ring.text()}
        if self.point is not None:
            out["f"] = [str(x) for x in self.point]
        if self.ring2 is not None:
            out["ring2"] = self.ring2.text()
        return out


_ALIASES = {"GL": "GL", "SL": "SL", "SP4": "Sp4", "SP": "Sp4", "HETEROBLOCK": "HeteroBlock"}


def _quote_fractions(text: str) -> str:
    """JSON has no rationals; turn a bare 1/2 into the string "1/2"."""
    return re.sub(r'(?<=[\[,:\s])(-?\d+\s*/\s*\d+)(?=\s*[\],}])', r'"\1"', text)


def parse_group_spec(text) -> GroupSpec:
    if isinstance(text, dict):
        data = text
    else:
        try:
            data = json.loads(_quote_fractions(text))
        except json.JSONDecodeError as exc:
            raise ParseError(f"group spec is not JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError("group spec must be a JSON object")
    unknown = set(data) - {"family", "n", "ring", "f", "ring2"}
    if unknown:
        raise ParseError(f"unknown group spec fields {sorted(unknown)}")
    fam = _ALIASES.get(str(data.get("family", "")).upper())
    if fam is None:
        raise UnsupportedFamily(f"unsupported family {data.get('family')!r}")
    if "ring" not in data:
        raise ParseError("group spec needs a ring")
    ring = parse_ring_spec(data["ring"])
    n = data.get("n", 4 if fam == "Sp4" else None)
    if not isinstance(n, int) or n < 1:
        raise ParseError("group spec needs a positive integer n")
    point = _parse_window(fam, n, data["f"]) if "f" in data else None
    ring2 = parse_ring_spec(data["ring2"]) if "ring2" in data else None
    return GroupSpec(fam, n, ring, point, ring2)


def _parse_window(family, n, value):
    """A point as a list of rationals, or "iwahori": every positive root at 0, every negative at 1."""
    if isinstance(value, str) and value.lower() == "iwahori":
        if family == "HeteroBlock":
            raise InvalidSpec("HeteroBlock windows are fixed by the block shape")
        rank, height = (2, 3) if family == "Sp4" else (n - 1, n - 1)
        return tuple([Fraction(-1, height + 1)] * rank)
    if not isinstance(value, list):
        raise ParseError("f must be a list of rationals or \"iwahori\"")
    return parse_point(value)


def make_group(spec) -> WindowedGroup:
    if isinstance(spec, (str, dict)):
        spec = parse_group_spec(spec)
    return _make_group(spec)


@lru_cache(maxsize=64)
def _make_group(spec: GroupSpec) -> WindowedGroup:
    if spec.family in ("GL", "SL"):
        if spec.n < 2:
            raise UnsupportedFamily(f"{spec.family}_{spec.n} has no roots")
        if spec.ring2 is not None:
            raise InvalidSpec("ring2 only applies to HeteroBlock")
        return LinearGroup(spec)
    if spec.family == "Sp4":
        if spec.n != 4:
            raise UnsupportedFamily("only Sp_4 is supported")
        return SymplecticGroup(spec)
    if spec.family == "HeteroBlock":
        return HeteroBlockGroup(spec)
    raise UnsupportedFamily(spec.family)


# -- helpers shared by the type A realizations -------------------------------------

def type_a_positions(system):
    """Root e_i - e_j (i < j is positive) sits at entry (i, j)."""
    pos = {}
    for r in system.roots:
        nz = [k for k, c in enumerate(r) if c]
        i, j = nz[0], nz[-1] + 1
        pos[r] = [(i, j, 1)] if r[nz[0]] > 0 else [(j, i, 1)]
    return pos


def _fmat_from(system, f, positions, n):
    fmat = [[0] * n for _ in range(n)]
    for r, places in positions.items():
        for i, j, _ in places:
            fmat[i][j] = f(r)
    for i, j, k in itertools.product(range(n), repeat=3):
        if fmat[i][j] + fmat[j][k] < fmat[i][k]:
            raise IllFormedWindows(f"f_{i}{j} + f_{j}{k} < f_{i}{k}")
    return fmat


def _concave(system, point):
    f = extend_concave(system, point if point is not None else [0] * system.rank)
    ok, bad = check_concave(system, f.values)
    if not ok:
        raise IllFormedWindows("; ".join(bad))
    return f


class SingleRingGroup(WindowedGroup):
    """Windows of one truncated ring R: the (i, j) window ring is R / R_{w_ij}."""

    def __init__(self, spec, system, f, fmat, positions):
        R = make_ring(spec.ring)
        self.ring = R
        self.h = R.h
        n = len(fmat)
        spaces, self._proj = [], []
        for i in range(n):
            row, prow = [], []
            for j in range(n):
                S, proj = window_ring(R, R.h - fmat[i][j] - fmat[j][i])
                row.append(S)
                prow.append(proj)
            spaces.append(row)
            self._proj.append(prow)
        self._pi = [pi_power(R, s) for s in range(R.h + 1)]
        super().__init__(spec, system, f, fmat, spaces, positions, R.residue_field())

    def _contrib(self, i, k, j, a, b):
        if isinstance(self.spaces[i][j], ZeroSpace):
            return ZERO
        R, F = self.ring, self.fmat
        s = F[i][k] + F[k][j] - F[i][j]
        x = lift(R, a) * lift(R, b) * self._pi[min(s, R.h)]
        return self._proj[i][j](x)

    def entry_ring(self, alpha) -> Ring:
        return self.ring

    def lifted_matrix(self, g: GroupElement):
        """Normalized matrix over R: entries pi^{f'_ij} * y_ij with f' >= 0."""
        R, n = self.ring, self.n
        return [[lift(R, g.param(i, j)) * self._pi[min(self.fnorm[i][j], R.h)]
                 for j in range(n)] for i in range(n)]

    def det(self, g: GroupElement):
        return _det(self.lifted_matrix(g), self.ring)

    def _inverse(self, g: GroupElement) -> GroupElement:
        """Adjugate over R in normalized form, then back to window parameters."""
        R, n = self.ring, self.n
        M = self.lifted_matrix(g)
        d = _det(M, R)
        if R.valuation(d) != 0:
            raise NotAUnit("determinant is not a unit")
        dinv = R.inverse(d)
        params = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if isinstance(self.spaces[i][j], ZeroSpace):
                    params[i][j] = ZERO
                    continue
                minor = [[M[r][c] for c in range(n) if c != i] for r in range(n) if r != j]
                cof = _det(minor, R) if minor else R.one
                if (i + j) % 2:
                    cof = -cof
                x = cof * dinv
                s = self.fnorm[i][j]
                if s > 0:
                    x = R.div_uniformizer(x, s) if R.valuation(x) < R.h else R.zero
                params[i][j] = self._proj[i][j](x)
        return self.element(params, check=False)


# -- GL_n and SL_n --------------------------------------------------------------

class LinearGroup(SingleRingGroup):
    def __init__(self, spec: GroupSpec):
        self.family = spec.family
        system = build_root_system("A", spec.n - 1)
        f = _concave(system, spec.point)
        positions = type_a_positions(system)
        fmat = _fmat_from(system, f, positions, spec.n)
        super().__init__(spec, system, f, fmat, positions)
        self.rank = spec.n if spec.family == "GL" else spec.n - 1

    def _extra_member(self, g):
        if self.family == "SL":
            return self.det(g) == self.ring.one
        return True

    def coweights(self, alpha):
        (i, j, _), = self.positions[tuple(alpha)]
        w = [0] * self.n
        w[i], w[j] = 1, -1
        return w


# -- Sp_4 ----------------------------------------------------------------------

# J is antidiagonal with J_{i, 3-i} = SIGNS[i]; characters of the diagonal
# torus are (e1, e2, -e2, -e1).  Roots in simple coordinates (a, b) with
# a = e1 - e2 short and b = 2 e2 long; the short root vectors are E_ij -/+ E_kl.
SIGNS = (1, 1, -1, -1)
CHARACTERS = ((1, 0), (0, 1), (0, -1), (-1, 0))
SP4_POSITIVE = {
    (1, 0): [(0, 1, 1), (2, 3, -1)],
    (0, 1): [(1, 2, 1)],
    (1, 1): [(0, 2, 1), (1, 3, 1)],
    (2, 1): [(0, 3, 1)],
}


def sp4_positions():
    pos = dict(SP4_POSITIVE)
    neg = {(-1, 0): [(1, 0, 1), (3, 2, -1)], (0, -1): [(2, 1, 1)],
           (-1, -1): [(2, 0, 1), (3, 1, 1)], (-2, -1): [(3, 0, 1)]}
    pos.update(neg)
    return pos


def _eps(root):
    a, b = root
    return (a, 2 * b - a)


class SymplecticGroup(SingleRingGroup):
    family = "Sp4"
    kernel_membership = False

    def __init__(self, spec: GroupSpec):
        system = build_root_system("B", 2)
        f = _concave(system, spec.point)
        positions = sp4_positions()
        fmat = _fmat_from(system, f, positions, 4)
        super().__init__(spec, system, f, fmat, positions)
        self.rank = 2

    def sigma(self, g: GroupElement) -> GroupElement:
        """J^-1 g^T J, which is g^-1 exactly when g is symplectic."""
        n = self.n
        codes = []
        for i in range(n):
            for j in range(n):
                c = g.codes[(3 - j) * n + (3 - i)]
                if SIGNS[3 - i] * SIGNS[3 - j] < 0:
                    c = self.tables.neg[i][j][c]
                codes.append(c)
        return GroupElement(self, tuple(codes))

    def _extra_member(self, g):
        return self._mul_codes(g.codes, self.sigma(g).codes) == self.identity.codes

    def _inverse(self, g):
        return self.sigma(g)

    def coweights(self, alpha):
        e = _eps(tuple(alpha))
        n2 = e[0] ** 2 + e[1] ** 2
        return [2 * (c[0] * e[0] + c[1] * e[1]) // n2 for c in CHARACTERS]


# -- the two-ring block group -------------------------------------------------------

class HeteroBlockGroup(WindowedGroup):
    """Matrices [[A, B], [C, D]] with A over R1, D over R2, B over R' and C in pi*R'.

    R1 and R2 are depth-h rings whose depth-(h-1) quotients are identified by
    an isomorphism phi: R'_1 -> R'_2; B and C parameters are kept in R'_1.
    """

    family = "HeteroBlock"

    def __init__(self, spec: GroupSpec):
        if spec.ring2 is None:
            raise InvalidSpec("HeteroBlock needs ring2")
        if spec.point is not None:
            raise InvalidSpec("HeteroBlock windows are fixed by the block shape")
        R1, R2 = make_ring(spec.ring), make_ring(spec.ring2)
        if (R1.p, R1.h, R1.m, R1.e) != (R2.p, R2.h, R2.m, R2.e) or R1.h < 2:
            raise IncompatibleRings("rings must share p, e and a depth h >= 2")
        Q1, self._p1 = R1.quotient(R1.h - 1)
        Q2, self._p2 = R2.quotient(R2.h - 1)
        phi = iso_search(Q1, Q2)
        if phi is None:
            raise IncompatibleRings(f"{Q1.spec} and {Q2.spec} are not isomorphic")
        self.R1, self.R2, self.Q = R1, R2, Q1
        self.phi, self.phi_inv = phi, phi.inverse()
        self.h = R1.h
        self.block = b = spec.n
        n = 2 * b
        system = build_root_system("A", n - 1)
        point = [Fraction(0)] * (n - 1)
        point[b - 1] = Fraction(-1, 2)
        f = extend_concave(system, point)
        positions = type_a_positions(system)
        fmat = _fmat_from(system, f, positions, n)
        spaces = [[R1 if (i < b and j < b) else R2 if (i >= b and j >= b) else Q1
                   for j in range(n)] for i in range(n)]
        self.rank = n
        super().__init__(spec, system, f, fmat, spaces, positions, R1.residue_field())

    def _part(self, i):
        return 0 if i < self.block else 1

    def _to_q(self, i, x):
        """Reduce a diagonal-block entry into R'_1."""
        if self._part(i) == 0:
            return self._p1(x)
        return self.phi_inv(self._p2(x))

    def _contrib(self, i, k, j, a, b):
        pi, pk, pj = self._part(i), self._part(k), self._part(j)
        if pi == pk == pj:
            return a * b
        if pi == pj:
            # B*C or C*B lands in pi * R' inside R_1 or R_2
            z = a * b
            if pi == 0:
                return self.R1.lift_from(z) * self.R1.uniformizer()
            return self.R2.lift_from(self.phi(z)) * self.R2.uniformizer()
        # target in an off-diagonal block: one factor comes from a diagonal block
        if pi == pk:
            return self._to_q(i, a) * b
        return a * self._to_q(j, b)

    def coweights(self, alpha):
        (i, j, _), = self.positions[tuple(alpha)]
        w = [0] * self.n
        w[i], w[j] = 1, -1
        return w

    def h_cochar(self, alpha, lam):
        i, j, _ = self.positions[tuple(alpha)][0]
        if self._part(i) != self._part(j) and not isinstance(lam, int):
            raise NotAvailable("a cross-block coroot needs an integer parameter")
        return super().h_cochar(alpha, lam)

    def block_roots(self):
        """One root inside each diagonal block (needs block size >= 2)."""
        if self.block < 2:
            raise NotAvailable("block size 1 has no roots inside the diagonal blocks")
        b = self.block
        r1 = tuple(int(k == 0) for k in range(2 * b - 1))
        r2 = tuple(int(k == b) for k in range(2 * b - 1))
        return r1, r2

    def describe(self):
        out = super().describe()
        out["rings"] = [self.R1.spec.text(), self.R2.spec.text(), self.Q.spec.text()]
        out["identification"] = {name: str(y) for name, y in self.phi.generator_images.items()}
        return out
