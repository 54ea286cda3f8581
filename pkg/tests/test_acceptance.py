"""The acceptance criteria, one test each; a PASS/FAIL line per criterion is
printed in the terminal summary."""

import itertools
import random
import time
from fractions import Fraction

import pytest

from parahoric.chevalley import (find_rescaling, generate_family, product_order,
                                 verify_identities)
from parahoric.group import (axiom_report, counterexample_group, expansion_word,
                             extract_constants, h_filtration, independence_report, make_group,
                             nested_commutator_check, iwahori_sweep, rank1_sweep)
from parahoric.ring import iso_search, ring_from_text
from parahoric.rootsystem import parse_system

from conftest import RANK1_RINGS, TEST_RINGS, record
from oracles import AdjointOracle, brute_sqrt_roots, universal_expansion_holds

INF = float("inf")


def group(family, ring, n=None, f=None):
    spec = {"family": family, "ring": ring}
    if n is not None:
        spec["n"] = n
    if f is not None:
        spec["f"] = f
    return make_group(spec)


# 1 -------------------------------------------------------------------------------

def test_criterion_1_valuation_axioms_and_ideals():
    pairs, bad = 0, []
    for name, text in TEST_RINGS.items():
        R = ring_from_text(text)
        els = R.elements()
        v = R.valuation
        for x, y in itertools.product(els, els):
            pairs += 1
            s = v(x) + v(y)
            if v(x * y) != (s if s < R.h else INF) or v(x + y) < min(v(x), v(y)):
                bad.append((name, str(x), str(y)))
        for x in els:
            if (v(x) == INF) != (x == R.zero):
                bad.append((name, str(x)))
        for i in range(R.h + 1):
            ideal = [x for x in els if v(x) >= i]
            ok = all(v(x + y) >= i for x in ideal for y in ideal) and \
                all(v(x * z) >= i for x in ideal for z in els)
            if not ok:
                bad.append((name, f"R_{i}"))
    record(1, not bad, f"{pairs} pairs over {len(TEST_RINGS)} rings, {len(bad)} violations")
    assert not bad


# 2 -------------------------------------------------------------------------------

def test_criterion_2_digit_decomposition():
    bad, total = [], 0
    for name, text in TEST_RINGS.items():
        R = ring_from_text(text)
        reps = set(R.teichmuller_reps())
        images = set()
        for x in R.elements():
            total += 1
            d = R.decompose(x)
            images.add(d)
            if R.recompose(d) != x or not set(d) <= reps:
                bad.append((name, str(x)))
        if len(images) != R.order or len(reps) != R.q:
            bad.append((name, "not a bijection"))
    record(2, not bad, f"recompose(decompose(x)) = x for all {total} elements; bijective")
    assert not bad


# 3 -------------------------------------------------------------------------------

def test_criterion_3_square_roots():
    bad, units = [], 0
    for name, text in TEST_RINGS.items():
        R = ring_from_text(text)
        for u in R.elements():
            if not R.is_unit(u):
                continue
            units += 1
            roots = R.sqrt(u * u)
            if roots is None or roots[0] + roots[1] != R.zero or \
                    sorted(roots, key=R.code) != brute_sqrt_roots(R, u * u):
                bad.append((name, "sqrt(u^2)", str(u)))
            square_residue = any(s * s == R.residue(u) for s in R.residue_field().elements())
            if (R.sqrt(u) is None) == square_residue:
                bad.append((name, "absence", str(u)))
    record(3, not bad, f"{units} units: two opposite roots of u^2, absent iff non-square residue")
    assert not bad


# 4 -------------------------------------------------------------------------------

def test_criterion_4_counterexample():
    r1, r2 = "ram(p=3,e=2,c=1,h=3)", "ram(p=3,e=2,c=2,h=3)"
    R1, R2 = ring_from_text(r1), ring_from_text(r2)
    full_absent = iso_search(R1, R2) is None
    quot_found = iso_search(R1.quotient(2)[0], R2.quotient(2)[0]) is not None
    one = counterexample_group(1, r1, r2, axioms=False)
    two = counterexample_group(2, r1, r2, samples=10_000)
    c1 = one.report.by_id("counterexample.closure")
    c2 = two.report.by_id("counterexample.closure")
    ok = (full_absent and quot_found and c1.status == "pass" and c2.status == "pass"
          and c2.witness["checked"] >= 10 ** 4 and two.isomorphic is False and two.report.passed)
    record(4, ok, f"rings non-isomorphic={full_absent}, depth-2 quotients isomorphic={quot_found}, "
                  f"n=1 closed on {c1.witness['checked']} pairs, n=2 closed on "
                  f"{c2.witness['checked']} products, induced rings isomorphic={two.isomorphic}")
    assert ok


# 5 -------------------------------------------------------------------------------

def test_criterion_5_generated_identities():
    lines, ok = [], True
    for name in ("A2", "B2", "G2"):
        s = parse_system(name)
        fam = generate_family(s).with_higher()
        rep = verify_identities(fam)
        ok &= rep.passed
        ok &= all(Fraction(fam(a, b).value) * Fraction(fam(s.neg(a), s.neg(b)).value)
                  == -s.p_int(a, b) ** 2 for a, b in fam.pairs())
        # second route: higher constants read from exp(ad) in the adjoint representation
        oracle = AdjointOracle(s, {k: Fraction(v.value) for k, v in fam.c.items()})
        ok &= oracle.jacobi_failures() == 0
        for a, b in fam.pairs():
            for (i, j), v in oracle.higher_constants(a, b, product_order).items():
                ok &= Fraction(fam.get(a, b, i, j).value) == v
        lines.append(f"{name}:{sum(e.witness['checked'] for e in rep.entries)}")
    record(5, ok, "identity checks " + " ".join(lines) + "; adjoint-representation oracle agrees")
    assert ok


# 6 -------------------------------------------------------------------------------

def test_criterion_6_extracted_constants():
    results = []
    for family, n in (("SL", 3), ("Sp4", None)):
        for ring in ("unram(p=3,m=1,h=2)", "equichar(p=3,m=1,h=2)"):
            G = group(family, ring, n)
            fam = extract_constants(G, product_order)
            ref = generate_family(G.system).with_higher().reduce(G.ring)
            results.append((f"{family}/{ring}", verify_identities(fam).passed,
                            find_rescaling(fam, ref) is not None))
    ok = all(r[1] and r[2] for r in results)
    record(6, ok, "; ".join(f"{g}: identities={i} rescaling={r}" for g, i, r in results))
    assert ok


# 7 -------------------------------------------------------------------------------

def test_criterion_7_rank1_identity():
    checked, bad = 0, []
    for family in ("SL", "GL"):
        for name, text in RANK1_RINGS.items():
            rep = rank1_sweep(group(family, text, 2))
            checked += rep.entries[0].witness["checked"]
            if not rep.passed:
                bad.append(f"{family}2/{name}")
    record(7, not bad, f"{checked} values of lambda over SL2 and GL2 on {len(RANK1_RINGS)} rings")
    assert not bad


# 8 -------------------------------------------------------------------------------

def test_criterion_8_iwahori_closed_forms():
    checked, bad = 0, []
    for family in ("SL", "GL"):
        for q, h in itertools.product((3, 5), (2, 3)):
            rep = iwahori_sweep(group(family, f"equichar(p={q},m=1,h={h})", 2, "iwahori"))
            checked += rep.entries[0].witness["checked"]
            if not rep.passed:
                bad.append(f"{family}2/F{q}[t]/t^{h}")
    record(8, not bad, f"a = b = 1/(1+pi l), c = l/(1+pi l) for {checked} values of lambda")
    assert not bad


# 9 -------------------------------------------------------------------------------

DRAWS = 1000


@pytest.fixture(scope="module")
def nested_results():
    out = {"general": {}, "recursive": {}, "root": {}}
    rng = random.Random(9)
    for family, n in (("SL", 3), ("Sp4", None)):
        G = group(family, "unram(p=3,m=1,h=2)", n)
        a, b = G.system.simple_roots
        for k in (1, 2, 3):
            fails = rec_fails = 0
            for _ in range(DRAWS):
                g = G.random_element(rng)
                tup = [G.power(g, rng.randrange(1, 25)) for _ in range(k)]
                c = G.random_element(rng)
                fails += not nested_commutator_check(tup, c)
                if k == 3:
                    rec_fails += not nested_commutator_check(tup, c, order="recursive")
            out["general"][(G.family, k)] = fails
            out["recursive"][(G.family, k)] = rec_fails
        root_fails = 0
        for _ in range(200):
            tup = [G.u_param(a, rng.randrange(9)) for _ in range(3)]
            root_fails += not nested_commutator_check(tup, G.u_param(b, rng.randrange(9)))
        out["root"][G.family] = root_fails
    out["exact2"] = universal_expansion_holds(2, expansion_word(2))
    out["exact3"] = universal_expansion_holds(3, expansion_word(3))
    return out


def test_criterion_9_supporting_cases(nested_results):
    r = nested_results
    assert r["exact2"]
    assert all(v == 0 for (fam, k), v in r["general"].items() if k <= 2)
    assert all(v == 0 for v in r["recursive"].values())
    assert all(v == 0 for v in r["root"].values())


@pytest.mark.xfail(strict=True, reason="the symmetric-difference subset order is not an "
                   "identity for three commuting elements; see the decisions ledger")
def test_criterion_9_nested_commutators(nested_results):
    r = nested_results
    n3 = sum(v for (fam, k), v in r["general"].items() if k == 3)
    low = sum(v for (fam, k), v in r["general"].items() if k <= 2)
    ok = r["exact2"] and low == 0 and n3 == 0
    record(9, ok, f"n=1,2: {low} failures in {4 * DRAWS} draws, exact n=2 identity "
                  f"{'holds' if r['exact2'] else 'fails'}; n=3 symmetric-difference order fails "
                  f"on {n3}/{2 * DRAWS} general commuting triples and in the universal group "
                  f"(recursive order and root-subgroup triples: 0 failures)")
    assert ok


# 10 ------------------------------------------------------------------------------

AXIOM_GROUPS = [(fam, n, ring, f) for fam, n in (("GL", 2), ("GL", 3))
                for ring in ("equichar(p=3,m=1,h=2)", "unram(p=3,m=1,h=2)")
                for f in (None, "iwahori")]


@pytest.fixture(scope="module")
def axiom_results():
    out = []
    for fam, n, ring, f in AXIOM_GROUPS:
        G = group(fam, ring, n, f)
        rep = axiom_report(G)
        q, h = G.q, G.ring.h
        literal_bad = []
        for alpha in G.system.roots:
            start = G.f(alpha) + G.f(G.system.neg(alpha))
            for i in range(start, h + 1):
                size = len(h_filtration(G, alpha, i))
                if size != q ** max(h - i, 0):
                    literal_bad.append((alpha, i, size))
        out.append((f"{fam}{n}/{ring}/{f or 'maximal'}", rep, literal_bad))
    return out


def test_criterion_10_counts_with_torus_factor(axiom_results):
    for name, rep, _ in axiom_results:
        assert rep.passed, (name, [e.to_json() for e in rep.failed()])
        assert rep.by_id("axiom.b.root_subgroups").status == "pass"
        assert rep.by_id("axiom.c.filtration").status == "pass"


@pytest.mark.xfail(strict=True, reason="|H_(a,0)| is (q-1)q^(h-1), not q^h: the axiom fixes a "
                   "dimension, and a one-dimensional torus has q-1 points; see the ledger")
def test_criterion_10_axiom_counts(axiom_results):
    passed = all(rep.passed for _, rep, _ in axiom_results)
    literal = [(name, bad) for name, _, bad in axiom_results if bad]
    levels = {i for _, bad in literal for _, i, _ in bad}
    ok = passed and not literal
    record(10, ok, f"{len(axiom_results)} groups: |U_a|, filtration quotients and commutator "
                   f"projections all pass; literal |H_(a,i)| = q^(h-i) fails only at i in "
                   f"{sorted(levels)} in {len(literal)} groups, where |H_(a,0)| = (q-1)q^(h-1)")
    assert ok


# 11 ------------------------------------------------------------------------------

SMALL_RINGS = ["unram(p=3,m=1,h=2)", "unram(p=3,m=1,h=3)", "equichar(p=3,m=1,h=2)",
               "equichar(p=3,m=1,h=3)", "equichar(p=5,m=1,h=2)", "unram(p=5,m=1,h=2)",
               "ram(p=3,e=2,c=1,h=3)", "ram(p=3,e=2,c=2,h=3)"]


def test_criterion_11_independence_of_unit():
    checked, bad = 0, []
    for ring in SMALL_RINGS:
        for f in (None, "iwahori"):
            G = group("GL", ring, 2, f)
            rep = independence_report(G)
            checked += rep.entries[0].witness["checked"]
            if not rep.passed:
                bad.append(f"{ring}/{f}")
    record(11, not bad, f"{checked} choices of u1 on {2 * len(SMALL_RINGS)} rank-1 groups, "
                        f"all rings isomorphic via Ad(h)")
    assert not bad


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
