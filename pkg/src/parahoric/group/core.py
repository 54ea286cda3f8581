"""Windowed matrix groups over truncated rings.

An element of a depth-h parahoric quotient is stored entry by entry in
*parameter form*: the (i, j) entry is pi^{f_ij} * y_ij where y_ij lives in the
window ring R / R_{w_ij}, w_ij = h - f_ij - f_ji.  Products only need the
shifted terms pi^{f_ik + f_kj - f_ij} y_ik y_kj, which concavity keeps at a
nonnegative power.  Each window ring is numbered by integer codes, so a
product is a sequence of table lookups (precomputed per (i, k, j)).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from ..errors import (MixedGroups, NotAUnit, NotAvailable, OutOfWindow, TooLarge)
from ..ring import INF, Ring, RingElement

DEFAULT_CAP = 10 ** 7


# -- the zero window ------------------------------------------------------------

class _Zero:
    """The only element of a zero-width window."""

    __slots__ = ()

    def __add__(self, other):
        return other

    __radd__ = __add__

    def __sub__(self, other):
        return -other

    def __rsub__(self, other):
        return other

    def __mul__(self, other):
        return self

    __rmul__ = __mul__

    def __neg__(self):
        return self

    def __eq__(self, other):
        return isinstance(other, _Zero) or (isinstance(other, int) and other == 0)

    def __hash__(self):
        return 0

    def __bool__(self):
        return False

    def valuation(self):
        return INF

    def __str__(self):
        return "0"

    __repr__ = __str__


ZERO = _Zero()


class ZeroSpace:
    """Stand-in ring for a window of width zero."""

    h = 0
    size = 1
    order = 1
    zero = one = ZERO

    def code(self, x) -> int:
        return 0

    def from_code(self, k: int):
        return ZERO

    def from_int(self, n: int):
        return ZERO

    def elements(self):
        return [ZERO]

    def valuation(self, x):
        return INF

    def __repr__(self):
        return "ZeroSpace()"


ZERO_SPACE = ZeroSpace()


def pi_power(R: Ring, s: int) -> RingElement:
    if s <= 0:
        return R.one
    if s >= R.h:
        return R.zero
    return R.uniformizer() ** s


def window_ring(R: Ring, w: int):
    """(ring, projection) for R / R_w, with the zero space when w <= 0."""
    if w <= 0:
        return ZERO_SPACE, (lambda x: ZERO)
    return R.quotient(min(w, R.h))


def lift(R: Ring, y) -> RingElement:
    if isinstance(y, _Zero):
        return R.zero
    return R.lift_from(y)


def shifts(fmat) -> list[int]:
    """Integers k with f_ij + k_i - k_j >= 0 (shortest paths; concavity excludes negative cycles)."""
    n = len(fmat)
    d = [0] * n
    for _ in range(n):
        for i in range(n):
            for j in range(n):
                if d[i] + fmat[i][j] < d[j]:
                    d[j] = d[i] + fmat[i][j]
    return d


# -- elements ---------------------------------------------------------------------

class GroupElement:
    """Immutable element; ``codes`` lists the window codes row by row."""

    __slots__ = ("group", "codes", "_hash")

    def __init__(self, group: "WindowedGroup", codes: tuple):
        self.group = group
        self.codes = codes
        self._hash = hash(codes)

    def _same(self, other):
        if not isinstance(other, GroupElement) or other.group is not self.group:
            raise MixedGroups("elements belong to different groups")
        return other

    def __mul__(self, other):
        return self.group.mul(self, self._same(other))

    def inverse(self) -> "GroupElement":
        return self.group.inv(self)

    def __pow__(self, k: int):
        return self.group.power(self, k)

    def __eq__(self, other):
        return isinstance(other, GroupElement) and other.group is self.group \
            and other.codes == self.codes

    def __hash__(self):
        return self._hash

    def param(self, i: int, j: int):
        G = self.group
        return G.spaces[i][j].from_code(self.codes[i * G.n + j])

    def params(self) -> list[list]:
        return [[self.param(i, j) for j in range(self.group.n)] for i in range(self.group.n)]

    def is_identity(self) -> bool:
        return self.codes == self.group.identity.codes

    def to_json(self) -> dict:
        G = self.group
        return {"params": [[G.format_param(i, j, self.param(i, j)) for j in range(G.n)]
                           for i in range(G.n)],
                "shifts": [list(r) for r in G.fmat]}

    def __repr__(self):
        rows = ["[" + ", ".join(str(x) for x in row) + "]" for row in self.params()]
        return f"GroupElement({', '.join(rows)})"


# -- groups -----------------------------------------------------------------------

@dataclass
class _Tables:
    mul: list = field(default_factory=list)   # mul[i][k][j][a][b] -> code in (i, j)
    add: list = field(default_factory=list)   # add[i][j][a][b]
    neg: list = field(default_factory=list)   # neg[i][j][a]
    res: list = field(default_factory=list)   # res[i][j][a]: residue code, 0 off the normalized diagonal


class WindowedGroup:
    """Base class; subclasses provide the window rings and the entry products."""

    family = "?"
    kernel_membership = True   # membership is "residue determinant nonzero"

    def __init__(self, spec, system, f, fmat, spaces, positions, field_ring):
        self.spec = spec
        self.system = system
        self.f = f
        self.fmat = fmat
        self.n = len(fmat)
        self.spaces = spaces
        self.positions = positions
        self.field = field_ring
        self.q = field_ring.size
        self.k = shifts(fmat)
        self.fnorm = [[fmat[i][j] + self.k[i] - self.k[j] for j in range(self.n)]
                      for i in range(self.n)]
        self._tables = None
        self._kernel = None
        self._torus = None
        self._inv_cache = {}
        n = self.n
        self.identity = GroupElement(self, tuple(
            spaces[i][j].code(spaces[i][j].one if i == j else spaces[i][j].zero)
            for i in range(n) for j in range(n)))

    # -- subclass hooks
    def _contrib(self, i, k, j, a, b):
        raise NotImplementedError

    def _extra_member(self, g: GroupElement) -> bool:
        return True

    def width(self, i: int, j: int) -> int:
        return self.spaces[i][j].h

    # -- tables
    @property
    def tables(self) -> _Tables:
        if self._tables is None:
            self._tables = self._build_tables()
        return self._tables

    def _build_tables(self) -> _Tables:
        n, sp = self.n, self.spaces
        T = _Tables()
        T.mul = [[[None] * n for _ in range(n)] for _ in range(n)]
        for i, k, j in itertools.product(range(n), repeat=3):
            A, B, C = sp[i][k], sp[k][j], sp[i][j]
            T.mul[i][k][j] = [[C.code(self._contrib(i, k, j, a, b)) for b in B.elements()]
                              for a in A.elements()]
        T.add = [[None] * n for _ in range(n)]
        T.neg = [[None] * n for _ in range(n)]
        T.res = [[None] * n for _ in range(n)]
        for i, j in itertools.product(range(n), repeat=2):
            S = sp[i][j]
            els = S.elements()
            if isinstance(S, ZeroSpace):
                T.add[i][j] = [[0]]
                T.neg[i][j] = [0]
                T.res[i][j] = [0]
                continue
            T.add[i][j] = [[S.code(x + y) for y in els] for x in els]
            T.neg[i][j] = [S.code(-x) for x in els]
            if self.fnorm[i][j] == 0:
                T.res[i][j] = [self.field.code(S.residue(x)) for x in els]
            else:
                T.res[i][j] = [0] * len(els)
        return T

    # -- arithmetic
    def mul(self, g: GroupElement, h: GroupElement) -> GroupElement:
        if g.group is not self or h.group is not self:
            raise MixedGroups("elements belong to different groups")
        return GroupElement(self, self._mul_codes(g.codes, h.codes))

    def _mul_codes(self, a, b):
        n, T = self.n, self.tables
        out = []
        for i in range(n):
            Mi, Ai = T.mul[i], T.add[i]
            row = i * n
            for j in range(n):
                add = Ai[j]
                acc = 0
                for k in range(n):
                    acc = add[acc][Mi[k][j][a[row + k]][b[k * n + j]]]
                out.append(acc)
        return tuple(out)

    def product(self, elements) -> GroupElement:
        out = self.identity
        for x in elements:
            out = self.mul(out, x)
        return out

    def power(self, g: GroupElement, k: int) -> GroupElement:
        if k < 0:
            return self.power(self.inv(g), -k)
        out, base = self.identity, g
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def inv(self, g: GroupElement) -> GroupElement:
        if g.group is not self:
            raise MixedGroups("element belongs to another group")
        out = self._inv_cache.get(g)
        if out is None:
            out = self._inverse(g)
            if len(self._inv_cache) < 200000:
                self._inv_cache[g] = out
                self._inv_cache[out] = g
        return out

    def _inverse(self, g: GroupElement) -> GroupElement:
        """Inverse as the last power before the identity (generic fallback)."""
        prev, cur = self.identity, g
        for _ in range(10 ** 6):
            if cur == self.identity:
                return prev
            prev, cur = cur, self.mul(cur, g)
        raise TooLarge("element order exceeds the search bound")

    def commutator(self, g: GroupElement, h: GroupElement) -> GroupElement:
        """[g, h] = g h g^-1 h^-1."""
        return self.mul(self.mul(g, h), self.mul(self.inv(g), self.inv(h)))

    def conj(self, g: GroupElement, x: GroupElement) -> GroupElement:
        """Ad(g) x = g x g^-1."""
        return self.mul(self.mul(g, x), self.inv(g))

    # -- membership
    def residue_det(self, g: GroupElement):
        """Determinant of the normalized residue matrix, in the residue field."""
        n, T, F = self.n, self.tables, self.field
        M = [[F.from_code(T.res[i][j][g.codes[i * n + j]]) for j in range(n)] for i in range(n)]
        return _det(M, F)

    def is_member(self, g: GroupElement) -> bool:
        return self.residue_det(g) != self.field.zero and self._extra_member(g)

    def element(self, params, check: bool = True) -> GroupElement:
        """Build an element from a matrix of window parameters (ints allowed)."""
        n = self.n
        codes = []
        for i in range(n):
            for j in range(n):
                S = self.spaces[i][j]
                codes.append(S.code(self.coerce(S, params[i][j])))
        g = GroupElement(self, tuple(codes))
        if check and not self.is_member(g):
            raise NotAUnit("matrix is not an element of the group")
        return g

    def coerce(self, S, y):
        if isinstance(S, ZeroSpace):
            return ZERO
        if isinstance(y, _Zero):
            return S.zero
        if isinstance(y, int):
            return S.from_int(y)
        if isinstance(y, RingElement):
            if y.ring == S:
                return y
            if y.ring.h > S.h and y.ring.p == S.p:
                return y.ring.quotient(S.h)[1](y)
            if y.ring.h < S.h:
                return S.lift_from(y)
        raise MixedGroups(f"cannot read {y!r} in {S!r}")

    # -- enumeration
    def candidate_count(self) -> int:
        out = 1
        for row in self.spaces:
            for S in row:
                out *= S.size
        return out

    def elements(self, cap: int = DEFAULT_CAP):
        total = self.candidate_count()
        if total > cap:
            raise TooLarge(f"{total} candidate matrices exceed the cap {cap}")
        sizes = [S.size for row in self.spaces for S in row]
        for codes in itertools.product(*(range(s) for s in sizes)):
            g = GroupElement(self, codes)
            if self.is_member(g):
                yield g

    def order(self, cap: int = DEFAULT_CAP) -> int:
        return sum(1 for _ in self.elements(cap))

    def random_element(self, rng: random.Random) -> GroupElement:
        """Uniform by rejection for determinant-type groups, else a random word."""
        sizes = [S.size for row in self.spaces for S in row]
        if self.kernel_membership and type(self)._extra_member is WindowedGroup._extra_member:
            while True:
                g = GroupElement(self, tuple(rng.randrange(s) for s in sizes))
                if self.is_member(g):
                    return g
        word = [self.u_param(a, self.random_param(a, rng)) for a in self.system.roots]
        rng.shuffle(word)
        word.append(rng.choice(self.torus()))
        return self.product(word)

    # -- roots and torus
    def root_space(self, alpha):
        i, j, _ = self.positions[tuple(alpha)][0]
        return self.spaces[i][j]

    def diag_ring(self, alpha):
        """Ring of the diagonal entry in the row of alpha's (first) position."""
        i, _, _ = self.positions[tuple(alpha)][0]
        return self.spaces[i][i]

    def root_params(self, alpha) -> list:
        return self.root_space(alpha).elements()

    def random_param(self, alpha, rng):
        S = self.root_space(alpha)
        return S.from_code(rng.randrange(S.size))

    def u_param(self, alpha, y) -> GroupElement:
        """The root element whose (first) entry is pi^{f(alpha)} * y."""
        alpha = tuple(alpha)
        if alpha not in self.positions:
            raise NotAvailable(f"{alpha} is not a root of {self.system}")
        codes = list(self.identity.codes)
        base = self.coerce(self.root_space(alpha), y)
        for i, j, s in self.positions[alpha]:
            S = self.spaces[i][j]
            val = self.coerce(S, base if s > 0 else -base) if not isinstance(S, ZeroSpace) else ZERO
            codes[i * self.n + j] = S.code(val)
        return GroupElement(self, tuple(codes))

    def u(self, alpha, x) -> GroupElement:
        """Root element with entry value x (requires v(x) >= f(alpha))."""
        alpha = tuple(alpha)
        fa = self.f(alpha)
        R = self.entry_ring(alpha)
        x = R(x) if isinstance(x, int) else x
        v = R.valuation(x)
        if v < fa:
            raise OutOfWindow(f"v({x}) = {v} below the window start {fa}")
        if v == INF:
            return self.identity
        y = R.div_uniformizer(x, fa) if fa > 0 else x * pi_power(R, -fa)
        return self.u_param(alpha, y)

    def entry_ring(self, alpha) -> Ring:
        raise NotAvailable("entry-valued root elements need a single ambient ring")

    def param_valuation(self, alpha, g: GroupElement):
        i, j, _ = self.positions[tuple(alpha)][0]
        y = g.param(i, j)
        return INF if isinstance(y, _Zero) else y.ring.valuation(y)

    def valuation(self, alpha, g: GroupElement):
        """Valuation of a root element: f(alpha) + v(parameter)."""
        return self.f(alpha) + self.param_valuation(alpha, g)

    def coweights(self, alpha) -> list[int]:
        """<chi_i, alpha^vee> for the diagonal characters chi_i."""
        raise NotImplementedError

    def diag(self, values) -> GroupElement:
        n = self.n
        params = [[values[i] if i == j else 0 for j in range(n)] for i in range(n)]
        return self.element(params)

    def h_cochar(self, alpha, lam) -> GroupElement:
        """h_{alpha^vee, lam}: diagonal entries lam^{<chi_i, alpha^vee>}."""
        vals = []
        for i, e in enumerate(self.coweights(alpha)):
            S = self.spaces[i][i]
            x = self.coerce(S, lam)
            if S.valuation(x) != 0:
                raise NotAUnit(f"{lam} is not a unit")
            vals.append(x ** e if e >= 0 else S.inverse(x) ** (-e))
        return self.diag(vals)

    def torus(self) -> list[GroupElement]:
        """All diagonal elements of the group (the Cartan subgroup H)."""
        if self._torus is None:
            n = self.n
            units = [[x for x in self.spaces[i][i].elements() if self.spaces[i][i].valuation(x) == 0]
                     for i in range(n)]
            out = []
            for vals in itertools.product(*units):
                params = [[vals[i] if i == j else 0 for j in range(n)] for i in range(n)]
                g = self.element(params, check=False)
                if self.is_member(g):
                    out.append(g)
            self._torus = out
        return self._torus

    def torus_generators(self) -> list[GroupElement]:
        """Generators of H: one-coordinate diagonals when they all lie in the
        group (full diagonal tori), else the whole of H."""
        n, gens = self.n, []
        for i in range(n):
            S = self.spaces[i][i]
            for x in S.elements():
                if S.valuation(x) != 0 or x == S.one:
                    continue
                params = [[(x if k == i else 1) if k == j else 0 for j in range(n)]
                          for k in range(n)]
                g = self.element(params, check=False)
                if not self.is_member(g):
                    return self.torus()
                gens.append(g)
        return gens

    def torus_order(self) -> int:
        """|H| by a closure from the generators (no enumeration for full tori)."""
        if self._torus is not None:
            return len(self._torus)
        gens = self.torus_generators()
        if gens is self._torus:
            return len(gens)
        total = 1
        for i in range(self.n):
            S = self.spaces[i][i]
            total *= sum(1 for x in S.elements() if S.valuation(x) == 0)
        return total

    def root_subgroup(self, alpha) -> list[GroupElement]:
        return [self.u_param(alpha, y) for y in self.root_params(alpha)]

    def filtration_level(self, alpha, i: int) -> list[GroupElement]:
        """U_{alpha,i}: root elements of valuation >= i."""
        return [u for u in self.root_subgroup(alpha) if self.valuation(alpha, u) >= i]

    def top(self, alpha) -> int:
        """First level at which U_alpha is trivial: h - f(-alpha)."""
        return self.f(alpha) + self.width_of(alpha)

    def width_of(self, alpha) -> int:
        i, j, _ = self.positions[tuple(alpha)][0]
        return self.spaces[i][j].h

    def psi(self):
        return self.f.psi()

    def format_param(self, i, j, y) -> str:
        S = self.spaces[i][j]
        return "0" if isinstance(S, ZeroSpace) else S.format(y)

    def describe(self) -> dict:
        return {"family": self.family, "n": self.n, "system": self.system.name,
                "f": self.f.to_json(), "shifts": [list(r) for r in self.fmat],
                "widths": [[self.spaces[i][j].h for j in range(self.n)] for i in range(self.n)]}


def _det(M, F):
    n = len(M)
    total = F.zero
    for perm in itertools.permutations(range(n)):
        term = F.one
        for i, j in enumerate(perm):
            term = term * M[i][j]
            if term == F.zero:
                break
        else:
            if _parity(perm):
                term = -term
            total = total + term
    return total


def _parity(perm) -> int:
    perm = list(perm)
    swaps = 0
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            swaps += 1
    return swaps % 2


def det(M, R):
    return _det(M, R)
