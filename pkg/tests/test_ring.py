import itertools

import pytest

from parahoric.errors import DepthOne, InvalidSpec, NotAUnit, ParseError, BadDepth
from parahoric.ring import (RingSpec, iso_search, lift_field_description, parse_ring_spec,
                            ring_from_text)

from oracles import brute_sqrt_roots, brute_units

Z9 = ring_from_text("unram(p=3,m=1,h=2)")
Z27 = ring_from_text("unram(p=3,m=1,h=3)")
F3t2 = ring_from_text("equichar(p=3,m=1,h=2)")
F3t3 = ring_from_text("equichar(p=3,m=1,h=3)")
GR92 = ring_from_text("unram(p=3,m=2,h=2)")
RAM1 = ring_from_text("ram(p=3,e=2,c=1,h=3)")
RAM2 = ring_from_text("ram(p=3,e=2,c=2,h=3)")


def t(R):
    return R.uniformizer()


class TestSpecs:
    def test_orders(self):
        assert ring_from_text("equichar(p=3,m=1,h=3)").order == 27
        assert RAM1.order == 27
        assert RAM1.moduli[:2] == (9, 3)

    @pytest.mark.parametrize("text", ["equichar(p=2,m=1,h=2)", "unram(p=4,m=1,h=2)",
                                      "ram(p=3,e=3,c=1,h=3)", "ram(p=3,e=2,c=3,h=3)",
                                      "foo(p=3)", "unram(p=3,h=2)", "unram(p=3,m=1,h=x)"])
    def test_bad_text(self, text):
        with pytest.raises(ParseError):
            parse_ring_spec(text)

    def test_invalid_spec_object(self):
        with pytest.raises(InvalidSpec):
            RingSpec.equichar(2, 1, 2)

    def test_round_trip_text(self):
        for text in ("equichar(p=5,m=2,h=3)", "ram(p=3,e=2,c=2,h=3)"):
            assert parse_ring_spec(text).text() == text


class TestArithmetic:
    def test_examples(self):
        assert Z9.from_int(5) + Z9.from_int(7) == Z9.from_int(3)
        assert t(F3t2) * t(F3t2) == F3t2.zero
        assert t(RAM1) * t(RAM1) == RAM1.from_int(3)
        assert t(RAM2) * t(RAM2) == RAM2.from_int(6)

    def test_valuations(self):
        assert Z27.valuation(Z27.zero) == float("inf")
        assert Z27.valuation(Z27.from_int(6)) == 1
        assert Z27.valuation(Z27.from_int(3) * Z27.from_int(3)) == 2

    def test_inverse(self):
        assert Z9.inverse(Z9.from_int(2)) == Z9.from_int(5)
        with pytest.raises(NotAUnit):
            Z9.inverse(Z9.from_int(3))
        one_t = F3t3.one + t(F3t3)
        assert F3t3.inverse(one_t) == F3t3.one + F3t3.from_int(2) * t(F3t3) + t(F3t3) ** 2

    def test_units_match_brute_force(self, test_ring):
        units = {x for x in test_ring.elements() if test_ring.is_unit(x)}
        assert units == set(brute_units(test_ring))

    def test_axioms_exhaustive(self, test_ring):
        R = test_ring
        els = R.elements()
        v = R.valuation
        for x, y in itertools.product(els, els):
            assert v(x * y) == min(v(x) + v(y), float("inf")) or v(x) + v(y) >= R.h
            assert v(x + y) >= min(v(x), v(y))
            if v(x) + v(y) >= R.h:
                assert x * y == R.zero


class TestSqrt:
    def test_examples(self):
        assert set(Z9.sqrt(Z9.from_int(7))) == {Z9.from_int(4), Z9.from_int(5)}
        assert set(Z9.sqrt(Z9.one)) == {Z9.one, -Z9.one}
        assert Z9.sqrt(Z9.from_int(2)) is None

    def test_against_brute_force(self, test_ring):
        R = test_ring
        for x in R.elements():
            if not R.is_unit(x):
                continue
            got = R.sqrt(x)
            roots = brute_sqrt_roots(R, x)
            if got is None:
                assert roots == []
            else:
                assert sorted(got, key=R.code) == roots and len(roots) == 2


class TestStructure:
    def test_uniformizer(self):
        assert F3t3.format(t(F3t3)) == "t"
        assert t(Z9) == Z9.from_int(3)
        with pytest.raises(DepthOne):
            ring_from_text("equichar(p=3,m=1,h=1)").uniformizer()

    def test_teichmuller(self):
        assert {Z9.code(x) for x in Z9.teichmuller_reps()} == {0, 1, 8}
        assert F3t2.teichmuller_reps() == [F3t2.from_int(k) for k in range(3)]
        reps = GR92.teichmuller_reps()
        assert len(reps) == 9
        # brute force: all solutions of x^9 = x among 81 elements
        assert set(reps) == {x for x in GR92.elements() if x ** 9 == x}

    def test_decompose_examples(self):
        assert Z9.decompose(Z9.from_int(5)) == (Z9.from_int(8), Z9.from_int(8))
        assert Z9.decompose(Z9.zero) == (Z9.zero, Z9.zero)
        x = t(F3t3) + t(F3t3) ** 2
        assert F3t3.decompose(x) == (F3t3.zero, F3t3.one, F3t3.one)

    def test_decompose_bijection(self, test_ring):
        R = test_ring
        reps = set(R.teichmuller_reps())
        seen = set()
        for x in R.elements():
            d = R.decompose(x)
            assert all(s in reps for s in d)
            assert R.recompose(d) == x
            seen.add(d)
        assert len(seen) == R.order

    def test_quotients(self):
        Q, proj = Z27.quotient(2)
        assert Q.spec == parse_ring_spec("unram(p=3,m=1,h=2)")
        assert proj(Z27.from_int(10)) == Q.from_int(1)
        assert RAM1.quotient(2)[0].spec == parse_ring_spec("ram(p=3,e=2,c=1,h=2)")
        assert Z9.quotient(1)[0].order == 3
        with pytest.raises(BadDepth):
            Z9.quotient(3)

    def test_ideals_are_valuation_levels(self, test_ring):
        R = test_ring
        for i in range(R.h + 1):
            level = [x for x in R.elements() if R.valuation(x) >= i]
            assert len(level) == R.q ** (R.h - i)
            pi_i = R.one
            for _ in range(i):
                pi_i = pi_i * R.uniformizer() if R.h > 1 else R.zero
            assert set(level) == {pi_i * y for y in R.elements()}


class TestIsomorphism:
    def test_counterexample_rings(self):
        assert iso_search(RAM1, RAM2) is None
        Q1, Q2 = RAM1.quotient(2)[0], RAM2.quotient(2)[0]
        phi = iso_search(Q1, Q2)
        assert phi is not None
        for x in Q1.elements():
            for y in Q1.elements():
                assert phi.mapping[x * y] == phi.mapping[x] * phi.mapping[y]
                assert phi.mapping[x + y] == phi.mapping[x] + phi.mapping[y]

    def test_char_differs(self):
        assert iso_search(F3t2, Z9) is None

    def test_self(self, test_ring):
        assert iso_search(test_ring, test_ring) is not None


def test_field_descriptions():
    assert lift_field_description(F3t3).name == "F_3((X))"
    assert lift_field_description(Z27).name == "Q_3"
    assert lift_field_description(RAM1).name == "Q_3 adjoined root of x^2-3"
