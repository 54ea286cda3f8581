from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from parahoric.chevalley import (ConstantFamily, Quantity, apply_rescaling, families_equal,
                                 find_rescaling, generate_family, product_order,
                                 rescaling_from_positive, unicity_report, verify_identities)
from parahoric.rootsystem import parse_system

from oracles import AdjointOracle

A1, A2, B2, G2 = (parse_system(n) for n in ("A1", "A2", "B2", "G2"))
a, b = (1, 0), (0, 1)
FAMILIES = {n: generate_family(parse_system(n)).with_higher() for n in ("A2", "B2", "G2")}


def val(q):
    return Fraction(q.value)


class TestGenerated:
    def test_rank_one_is_empty(self):
        assert generate_family(A1).c == {}

    def test_a2_cyclic(self):
        c = FAMILIES["A2"]
        ab = (-1, -1)
        assert val(c(a, b)) == 1
        assert val(c(a, b)) == val(c(b, ab)) == val(c(ab, a))

    def test_b2_product(self):
        c = FAMILIES["B2"]
        assert val(c(b, a)) * val(c((1, 1), (-1, 0))) == 2

    def test_b2_higher(self):
        c = FAMILIES["B2"]
        assert val(c.get(a, b, 2, 1)) == Fraction(1, 2) * val(c(a, b)) * val(c(a, (1, 1)))
        assert val(c.get(b, a, 1, 2)) == -val(c.get(a, b, 2, 1))

    def test_g2_third_order(self):
        c = FAMILIES["G2"]
        expected = Fraction(1, 6) * val(c(a, b)) * val(c(a, (1, 1))) * val(c(a, (2, 1)))
        assert val(c.get(a, b, 3, 1)) == expected

    @pytest.mark.parametrize("name", ["A2", "B2", "G2"])
    def test_opposite_product(self, name):
        c = FAMILIES[name]
        s = c.system
        for x, y in c.pairs():
            p = s.p_int(x, y)
            assert p in (1, 2, 3)
            assert val(c(x, y)) * val(c(s.neg(x), s.neg(y))) == -p * p

    @pytest.mark.parametrize("name", ["A2", "B2", "G2"])
    def test_all_identities_pass(self, name):
        rep = verify_identities(FAMILIES[name])
        assert rep.passed, [e.to_json() for e in rep.failed()]
        assert all(e.witness["checked"] > 0 for e in rep.entries if e.id != "com3")


class TestAdjointOracle:
    """The generated constants define a Lie algebra and match exp(ad) commutators."""

    @pytest.mark.parametrize("name", ["A2", "B2", "G2"])
    def test_jacobi(self, name):
        fam = FAMILIES[name]
        oracle = AdjointOracle(fam.system, {k: val(v) for k, v in fam.c.items()})
        assert oracle.jacobi_failures() == 0

    @pytest.mark.parametrize("name", ["B2", "G2"])
    def test_higher_constants(self, name):
        fam = FAMILIES[name]
        oracle = AdjointOracle(fam.system, {k: val(v) for k, v in fam.c.items()})
        checked = 0
        for x, y in fam.pairs():
            for (i, j), v in oracle.higher_constants(x, y, product_order).items():
                assert val(fam.get(x, y, i, j)) == v, (x, y, i, j)
                checked += 1
        assert checked == {"B2": 40, "G2": 156}[name]


class TestMutations:
    def test_single_sign_flip_breaks_cyclic(self):
        fam = FAMILIES["A2"]
        c = dict(fam.c)
        c[(a, b)] = -c[(a, b)]
        rep = verify_identities(ConstantFamily(A2, c))
        assert rep.by_id("A2.cyclic").status == "fail"

    def test_inconsistent_family_has_no_rescaling(self):
        fam = FAMILIES["A2"]
        c = dict(fam.c)
        c[(a, b)] = Quantity.exact(2)
        assert find_rescaling(fam, ConstantFamily(A2, c)) is None


class TestRescaling:
    def test_identity(self):
        fam = FAMILIES["A2"]
        N = rescaling_from_positive(A2, {})
        assert families_equal(apply_rescaling(fam, N), fam)
        found = find_rescaling(fam, fam)
        assert all(val(found(r)) == 1 for r in A2.roots)

    def test_example(self):
        fam = FAMILIES["A2"]
        N = rescaling_from_positive(A2, {a: 2})
        new = apply_rescaling(fam, N)
        assert val(new(a, b)) == 2 * val(fam(a, b))
        assert verify_identities(new).passed

    @pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3"])
    def test_unicity(self, name):
        rep = unicity_report(parse_system(name), trials=5)
        assert rep.passed

    def test_reduction_into_ring(self):
        from parahoric.ring import ring_from_text
        R = ring_from_text("unram(p=5,m=1,h=2)")
        fam = FAMILIES["G2"].reduce(R)
        assert verify_identities(fam).passed


nonzero = st.fractions(min_value=-9, max_value=9, max_denominator=9).filter(bool)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["A2", "B2", "G2"]), st.data())
def test_rescaling_round_trip(name, data):
    fam = FAMILIES[name]
    s = fam.system
    vals = {r: data.draw(nonzero) for r in s.positive_roots}
    target = apply_rescaling(fam, rescaling_from_positive(s, vals))
    assert verify_identities(target).passed
    N = find_rescaling(fam, target)
    assert N is not None and not N.check()
    assert families_equal(apply_rescaling(fam, N), target)
