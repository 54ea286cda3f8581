"""Structure read off a windowed group: the ring carried by a root subgroup,
torus orbits on root subgroups, and the axiom counts of a parahoric-type group."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from ..chevalley import product_order, shape
from ..errors import (NoFactorization, NotAUnit, NotAvailable, NotInProduct, NoSuchH,
                      NotTransitive, TooLarge)
from ..ring import INF, RingSpec, TableRing, iso_search, make_ring
from ..report import VerificationReport
from .constants import decompose_unipotent
from .core import DEFAULT_CAP, GroupElement, WindowedGroup, ZeroSpace, lift


# -- torus actions ---------------------------------------------------------------

def _orbit(G: WindowedGroup, x: GroupElement, gens) -> dict:
    """{y: t} over the H-orbit of x, with Ad(t) x = y."""
    seen = {x: G.identity}
    frontier = [x]
    while frontier:
        new = []
        for y in frontier:
            t = seen[y]
            for s in gens:
                z = G.conj(s, y)
                if z not in seen:
                    seen[z] = G.mul(s, t)
                    new.append(z)
        frontier = new
    return seen


def _closed_form_conjugator(G, alpha, y1, y):
    """diag(1, .., lambda, .., 1) with lambda = y / y1 in the row of alpha, when
    every diagonal of that shape lies in the group."""
    if G.family not in ("GL", "HeteroBlock"):
        return None
    i, _, s = G.positions[tuple(alpha)][0]
    D = G.spaces[i][i]
    S = G.root_space(alpha)
    ratio = y * S.inverse(y1)
    lam = lift(D, ratio) if S is not D else ratio
    n = G.n
    params = [[(lam if k == i else 1) if k == j else 0 for j in range(n)] for k in range(n)]
    return G.element(params, check=False)


def conjugators(G: WindowedGroup, alpha, u1: GroupElement) -> dict:
    """{u: h_u} for every valuation-0 element u of U_alpha, with Ad(h_u) u1 = u."""
    alpha = tuple(alpha)
    S = G.root_space(alpha)
    units = [y for y in S.elements() if S.valuation(y) == 0]
    i, j, _ = G.positions[alpha][0]
    y1 = u1.param(i, j)
    out = {}
    if G.family in ("GL", "HeteroBlock"):
        for y in units:
            t = _closed_form_conjugator(G, alpha, y1, y)
            u = G.u_param(alpha, y)
            if not G.is_member(t) or G.conj(t, u1) != u:
                raise NoSuchH(f"no diagonal element moves u1 to {y}")
            out[u] = t
        return out
    orbit = _orbit(G, u1, G.torus_generators())
    for y in units:
        u = G.u_param(alpha, y)
        if u not in orbit:
            raise NotTransitive(f"H does not move u1 to the parameter {y}")
        out[u] = orbit[u]
    return out


# -- the ring of a root subgroup -------------------------------------------------------

@dataclass
class InducedRing:
    alpha: tuple
    u1: GroupElement
    elements: list            # index -> root element of U_alpha
    table: TableRing
    failures: list
    expected: object
    iso: object | None
    conj: dict = field(repr=False, default_factory=dict)

    @property
    def index(self) -> dict:
        return {u: k for k, u in enumerate(self.elements)}

    @property
    def ok(self) -> bool:
        return not self.failures and self.iso is not None

    def to_json(self) -> dict:
        G = self.u1.group
        i, j, _ = G.positions[self.alpha][0]
        return {"root": list(self.alpha), "u1": G.format_param(i, j, self.u1.param(i, j)),
                "order": self.table.size, "axiom_failures": self.failures[:10],
                "expected": _ring_name(self.expected), "isomorphic": self.iso is not None}


def _ring_name(S) -> str:
    spec = getattr(S, "spec", None)
    return spec.text() if spec is not None else repr(S)


def induced_ring(G: WindowedGroup, alpha, u1=None) -> InducedRing:
    """Ring structure on U_alpha with zero = identity and one = u1.

    For a unit u the product is u * u' = Ad(h_u) u' where Ad(h_u) u1 = u; for
    a non-unit it is (u + u1) * u' - u', the sum being the group product.
    "Unit" means parameter valuation 0, the lowest level of the window.
    """
    alpha = tuple(alpha)
    S = G.root_space(alpha)
    if isinstance(S, ZeroSpace):
        raise NotAvailable(f"U_{alpha} is trivial")
    i, j, _ = G.positions[alpha][0]
    if u1 is None:
        u1 = G.u_param(alpha, 1)
    elif not isinstance(u1, GroupElement):
        u1 = G.u_param(alpha, u1)
    if S.valuation(u1.param(i, j)) != 0:
        raise NotAUnit("u1 must have the lowest valuation of U_alpha")
    els = [G.u_param(alpha, S.from_code(k)) for k in range(S.order)]
    idx = {u: k for k, u in enumerate(els)}
    conj = conjugators(G, alpha, u1)
    size = len(els)
    add = [[idx[G.mul(x, y)] for y in els] for x in els]
    vals = [S.valuation(S.from_code(k)) for k in range(size)]
    mul = []
    for x in range(size):
        u = els[x]
        if vals[x] == 0:
            t = conj[u]
            mul.append([idx[G.conj(t, y)] for y in els])
        else:
            t = conj[G.mul(u, u1)]
            mul.append([idx[G.mul(G.conj(t, y), G.inv(y))] for y in els])
    table = TableRing(add, mul, idx[G.identity], idx[u1], valuation=vals)
    failures = table.check_axioms()
    iso = iso_search(S, table) if not failures else None
    return InducedRing(alpha, u1, els, table, failures, S, iso, conj)


def is_ring_map(A: InducedRing, B: InducedRing, mapping) -> bool:
    """mapping: element of U (A) -> element of U (B); check it is a unital ring isomorphism."""
    ib = B.index
    phi = [ib[mapping(u)] for u in A.elements]
    if len(set(phi)) != B.table.size or phi[A.table.one] != B.table.one:
        return False
    n = A.table.size
    for x in range(n):
        for y in range(n):
            if phi[A.table.add(x, y)] != B.table.add(phi[x], phi[y]):
                return False
            if phi[A.table.mul(x, y)] != B.table.mul(phi[x], phi[y]):
                return False
    return True


def unit_choices(G: WindowedGroup, alpha) -> list[GroupElement]:
    S = G.root_space(alpha)
    return [G.u_param(alpha, y) for y in S.elements() if S.valuation(y) == 0]


def independence_report(G: WindowedGroup, alpha=None) -> VerificationReport:
    """Every valuation-0 choice of u1 gives a ring isomorphic to the one from u1 = u(1),
    and Ad(h_{u1'}) is such an isomorphism."""
    alpha = tuple(alpha) if alpha is not None else G.system.simple_roots[0]
    base = induced_ring(G, alpha)
    checked, failures = 0, []
    for u1 in unit_choices(G, alpha):
        other = induced_ring(G, alpha, u1)
        checked += 1
        t = base.conj[u1]
        if not other.ok or iso_search(base.table, other.table) is None:
            failures.append(str(u1.params()))
        elif not is_ring_map(base, other, lambda u: G.conj(t, u)):
            failures.append(f"Ad(h) not a ring map for {u1.params()}")
    rep = VerificationReport()
    rep.add("induced_ring.independent_of_u1", "R' = Ad(h_{u1'}) R", checked, failures,
            note=f"expected ring {_ring_name(base.expected)}")
    return rep


def weyl_transport_report(G: WindowedGroup, alpha=None) -> VerificationReport:
    """Conjugation by the Weyl representative maps the ring of U_alpha onto that of U_-alpha."""
    from .rank1 import weyl_rep
    alpha = tuple(alpha) if alpha is not None else G.system.simple_roots[0]
    neg = G.system.neg(alpha)
    n = weyl_rep(G, alpha).n
    A = induced_ring(G, alpha)
    B = induced_ring(G, neg, G.conj(n, A.u1))
    ok = A.ok and B.ok and is_ring_map(A, B, lambda u: G.conj(n, u))
    rep = VerificationReport()
    rep.add("induced_ring.weyl_transport", "R_alpha ~ R_-alpha via n", 1,
            [] if ok else [f"{alpha}"])
    return rep


# -- orbits ------------------------------------------------------------------

@dataclass
class OrbitReport:
    alpha: tuple
    level: int
    orbits: list           # lists of root elements

    @property
    def count(self) -> int:
        return len(self.orbits)

    def to_json(self) -> dict:
        G = self.orbits[0][0].group if self.orbits else None
        out = []
        if G is not None:
            i, j, _ = G.positions[self.alpha][0]
            out = [sorted(G.format_param(i, j, u.param(i, j)) for u in orb) for orb in self.orbits]
        return {"root": list(self.alpha), "level": self.level, "count": self.count,
                "sizes": [len(o) for o in self.orbits], "orbits": out}


def orbit_report(G: WindowedGroup, alpha, i: int) -> OrbitReport:
    """Orbits of H acting by conjugation on {u in U_alpha : v(u) = i}."""
    alpha = tuple(alpha)
    if i >= G.top(alpha):
        return OrbitReport(alpha, i, [[G.identity]])
    level = [u for u in G.root_subgroup(alpha) if G.valuation(alpha, u) == i]
    gens = G.torus_generators()
    orbits, seen = [], set()
    for u in level:
        if u in seen:
            continue
        orb = sorted(_orbit(G, u, gens), key=lambda g: g.codes)
        seen.update(orb)
        orbits.append(orb)
    return OrbitReport(alpha, i, orbits)


# -- rank-one projection onto H ----------------------------------------------------------

def _solve_left(G, alpha, g):
    """a with the alpha entry of u_alpha(-a) g equal to zero (that entry is affine in a)."""
    i, j, _ = G.positions[alpha][0]
    S = G.spaces[i][j]
    e0 = g.param(i, j)
    e1 = G.mul(G.u_param(alpha, -S.one), g).param(i, j)
    slope = e0 - e1
    if S.valuation(slope) != 0:
        return None
    return e0 * S.inverse(slope)


def _solve_right(G, alpha, g):
    """c with the alpha entry of g u_alpha(-c) equal to zero."""
    i, j, _ = G.positions[alpha][0]
    S = G.spaces[i][j]
    e0 = g.param(i, j)
    e1 = G.mul(g, G.u_param(alpha, -S.one)).param(i, j)
    slope = e0 - e1
    if S.valuation(slope) != 0:
        return None
    return e0 * S.inverse(slope)


def _is_diagonal(G, g) -> bool:
    n = G.n
    return all(g.codes[i * n + j] == G.identity.codes[i * n + j]
               for i in range(n) for j in range(n) if i != j)


def project_to_h(G: WindowedGroup, alpha, g: GroupElement) -> GroupElement:
    """The H factor of g in U_alpha H U_-alpha, or else in U_-alpha H U_alpha."""
    neg = G.system.neg(alpha)
    for first, last in ((alpha, neg), (neg, alpha)):
        a = G.root_space(first).zero if isinstance(G.root_space(first), ZeroSpace) \
            else _solve_left(G, first, g)
        if a is None:
            continue
        g1 = G.mul(G.u_param(first, -a), g)
        c = G.root_space(last).zero if isinstance(G.root_space(last), ZeroSpace) \
            else _solve_right(G, last, g1)
        if c is None:
            continue
        t = G.mul(g1, G.u_param(last, -c))
        if _is_diagonal(G, t):
            return t
    raise NoFactorization("element is not in either big cell of the rank-one subgroup")


def _generated(G, gens) -> set:
    out = {G.identity}
    frontier = [G.identity]
    while frontier:
        new = []
        for x in frontier:
            for s in gens:
                y = G.mul(x, s)
                if y not in out:
                    out.add(y)
                    new.append(y)
        frontier = new
    return out


def h_filtration(G: WindowedGroup, alpha, i: int) -> set:
    """H_{alpha,i}: the subgroup generated by the H factors of [U_alpha, U_{-alpha, i - f(alpha)}].

    Commutators outside both big cells have no H factor and are passed over.
    """
    alpha = tuple(alpha)
    neg = G.system.neg(alpha)
    ua = G.root_subgroup(alpha)
    ub = G.filtration_level(neg, i - G.f(alpha))
    gens = set()
    for c in {G.commutator(u, v) for u in ua for v in ub}:
        try:
            gens.add(project_to_h(G, alpha, c))
        except NoFactorization:
            # outside both big cells: no H factor to project to
            continue
    return _generated(G, gens)


# -- the axioms --------------------------------------------------------------------

def _levels(G, alpha):
    return range(G.f(alpha), G.top(alpha))


def _extension_group(G: WindowedGroup):
    """The same window over the quadratic unramified extension of the ring."""
    from .families import GroupSpec, make_group
    spec = G.spec.ring
    if spec.kind not in ("equichar", "unram") or G.family not in ("GL", "SL", "Sp4"):
        return None
    big = RingSpec(spec.kind, spec.p, spec.h, m=2 * spec.m)
    if make_ring(big).order > 81:
        return None
    return make_group(GroupSpec(G.spec.family, G.spec.n, big, G.spec.point))


def _torus_check(G, rep, rng, cap):
    q, h = G.q, _depth(G)
    expected = ((q - 1) * q ** (h - 1)) ** G.rank
    count = G.torus_order()
    if count > cap:
        raise TooLarge(f"|H| = {count} exceeds cap {cap}")
    if count <= 20000:
        H = G.torus()
        count = len(H)
    else:
        H = None
    failures = []
    if count != expected:
        failures.append(f"|H| = {count}, expected {expected}")
    pool = H if H is not None else None

    def draw():
        if pool is not None:
            return rng.choice(pool)
        return G.product(rng.choice(gens) for _ in range(4))
    gens = G.torus_generators()
    if H is not None and len(H) <= 2000:
        pairs = itertools.combinations(H, 2)
        mode = "all pairs"
    else:
        pairs = ((draw(), draw()) for _ in range(2000))
        mode = "2000 random pairs"
    checked = 0
    for x, y in pairs:
        checked += 1
        if G.mul(x, y) != G.mul(y, x):
            failures.append("H is not abelian")
            break
    rep.add("axiom.a.cartan", "|H| and dim H = hr", checked, failures,
            note=f"|H| = {count} = ((q-1)q^(h-1))^{G.rank}; commutativity on {mode}")


def _depth(G):
    return G.h


def _root_size_check(G, rep):
    failures, checked = [], 0
    q, h = G.q, _depth(G)
    psi = set(G.psi().roots) if hasattr(G.psi(), "roots") else set(G.psi())
    for alpha in G.system.roots:
        checked += 1
        U = G.root_subgroup(alpha)
        n = len(set(U))
        in_psi = G.f(alpha) + G.f(G.system.neg(alpha)) == 0
        if in_psi != (alpha in psi):
            failures.append(f"{alpha}: window and psi disagree")
        want = q ** h if in_psi else q ** (h - 1)
        if n != want:
            failures.append(f"|U_{alpha}| = {n}, expected {want}")
        S = G.root_space(alpha)
        for y, z in itertools.islice(itertools.product(S.elements(), repeat=2), 400):
            if G.mul(G.u_param(alpha, y), G.u_param(alpha, z)) != G.u_param(alpha, y + z):
                failures.append(f"u_{alpha} is not additive")
                break
    rep.add("axiom.b.root_subgroups", "|U_a| = q^h on Psi, q^(h-1) off Psi", checked, failures)


def _filtration_check(G, rep):
    failures, checked = [], 0
    for alpha in G.system.roots:
        sizes = {i: len(G.filtration_level(alpha, i)) for i in range(G.f(alpha), G.top(alpha) + 1)}
        for i in _levels(G, alpha):
            checked += 1
            if sizes[i] != G.q * sizes[i + 1]:
                failures.append(f"{alpha}, level {i}: {sizes[i]} / {sizes[i + 1]}")
        if sizes[G.top(alpha)] != 1:
            failures.append(f"{alpha}: U_(a,top) is not trivial")
    rep.add("axiom.c.filtration", "|U_(a,i)| / |U_(a,i+1)| = q", checked, failures)


def _commutator_check(G, rep):
    s = G.system
    failures, checked, vacuous = [], 0, 0
    for a, b in s.additive_pairs():
        terms = shape(s, a, b)
        targets = [tuple(i * x + j * y for x, y in zip(a, b)) for i, j in terms]
        ab = tuple(x + y for x, y in zip(a, b))
        records = []
        for u in G.root_subgroup(a):
            for v in G.root_subgroup(b):
                try:
                    parts = dict(decompose_unipotent(G.commutator(u, v), targets))
                except NotInProduct:
                    failures.append(f"[U_{a}, U_{b}] leaves the product of root subgroups")
                    break
                records.append((G.valuation(a, u), G.valuation(b, v), G.u_param(ab, parts[ab])))
        for i in _levels(G, a):
            for j in _levels(G, b):
                target = set(G.filtration_level(ab, i + j))
                if len(target) == 1:
                    vacuous += 1
                got = {w for vu, vv, w in records if vu >= i and vv >= j}
                checked += 1
                if got != target:
                    failures.append(f"({a},{i}) x ({b},{j}): image {len(got)} vs {len(target)}")
    rep.add("axiom.d.commutator_projection", "[U_(a,i), U_(b,j)] -> U_(a+b,i+j) onto",
            checked, failures, skipped=vacuous)


def _h_filtration_check(G, rep):
    q, h = G.q, _depth(G)
    failures, checked = [], 0
    small_field, unresolved = [], []
    for alpha in G.system.roots:
        start = G.f(alpha) + G.f(G.system.neg(alpha))
        for i in range(start, h + 1):
            checked += 1
            Hi = h_filtration(G, alpha, i)
            # a dimension h - i group: all additive for i >= 1, one multiplicative factor at i = 0
            want = (q - 1) * q ** (h - 1) if i == 0 else q ** max(h - i, 0)
            if len(Hi) != want:
                failures.append(f"|H_({alpha},{i})| = {len(Hi)}, expected {want}")
            for j in _levels(G, alpha):
                got = {G.commutator(t, u) for t in Hi for u in G.filtration_level(alpha, j)}
                want_set = set(G.filtration_level(alpha, i + j))
                if got == want_set:
                    continue
                if i == 0:
                    small_field.append((alpha, j))
                else:
                    failures.append(f"[H_({alpha},{i}), U_({alpha},{j})] != U_({alpha},{i + j})")
    note = None
    status = None
    if small_field:
        ext = _extension_group(G)
        if ext is None:
            note = (f"[H_(a,0), U_(a,j)] is smaller than U_(a,j) on F_{q}-points for "
                    f"{len(small_field)} cases and no quadratic extension is available here")
            status = "skip" if not failures else None
        else:
            for alpha, j in small_field:
                Hi = h_filtration(ext, alpha, 0)
                got = {ext.commutator(t, u) for t in Hi for u in ext.filtration_level(alpha, j)}
                if got != set(ext.filtration_level(alpha, j)):
                    failures.append(f"[H_({alpha},0), U_({alpha},{j})] fails over F_{ext.q} too")
            note = (f"{len(small_field)} level-0 cases are smaller on F_{q}-points "
                    f"(squares of units are 1 mod pi); rechecked over F_{ext.q}")
    rep.add("axiom.e.cartan_filtration", "|H_(a,i)| ~ dim h - i, [H_(a,i), U_(a,j)] = U_(a,i+j)",
            checked, failures, note=note, status=status)


def axiom_report(G: WindowedGroup, cap: int = DEFAULT_CAP, seed: int = 0) -> VerificationReport:
    """Counting checks of the parahoric-type axioms on root subgroups and H."""
    rng = random.Random(seed)
    rep = VerificationReport()
    _torus_check(G, rep, rng, cap)
    _root_size_check(G, rep)
    _filtration_check(G, rep)
    _commutator_check(G, rep)
    _h_filtration_check(G, rep)
    return rep
