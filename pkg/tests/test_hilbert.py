import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import ALL_FORMATS, HALF_CANONICAL
from halfcanon.formats import FormatId, format_signs
from halfcanon.groebner import Ideal
from halfcanon.hilbert import (RationalSeries, curve_invariants, eigenspace_dims, expand, format_series,
                               hilbert_series, is_sign_invariant, monomial_numerator, parse_series,
                               series_equal)
from halfcanon.polycore import WeightedRing

CANONICAL = parse_series("(1 + t^6) / (1 - t^2)^2")
H0_0 = parse_series("(1 - t^6)^2 / ((1 - t^2)^2 * (1 - t^3)^2)")
H0_1 = parse_series("(1 - t^10) / ((1 - t) * (1 - t^2) * (1 - t^5))")
H0_2 = parse_series("(1 - t^2)(1 - t^12) / ((1 - t)^2 * (1 - t^4) * (1 - t^6))")


def test_canonical_forms_agree():
    assert series_equal(CANONICAL, parse_series("(1 - t^12) / ((1 - t^2)^2 * (1 - t^6))"))
    assert not series_equal(parse_series("1/(1 - t)"), parse_series("1/(1 - t^2)"))


def test_expansions():
    assert expand(H0_0, 8) == [1, 0, 2, 2, 3, 4, 5, 6, 7]
    assert expand(H0_1, 6) == [1, 1, 2, 2, 3, 4, 5]
    assert expand(parse_series("1/(1 - t)"), 3) == [1, 1, 1, 1]
    assert expand(H0_2, 2)[2] == 2


def test_low_degree_basis_dimensions(instances):
    a0 = hilbert_series(instances[FormatId.A0].ideal.groebner()).expand(6)
    a1 = hilbert_series(instances[FormatId.A1].ideal.groebner()).expand(5)
    b2 = hilbert_series(instances[FormatId.B2].ideal.groebner()).expand(2)
    assert (a0[5], a0[6], a1[5], b2[2]) == (4, 5, 4, 2)


def test_free_ring_series():
    ring = WeightedRing.from_spec("x:1,y:2,z:5")
    hs = hilbert_series(Ideal(ring, []).groebner())
    assert series_equal(hs, parse_series("1 / ((1 - t)(1 - t^2)(1 - t^5))"))
    assert hs.pole_order() == 3


def test_unit_ideal_series_is_zero():
    ring = WeightedRing.from_spec("x:1")
    hs = hilbert_series(Ideal(ring, [ring.one()]).groebner())
    assert hs.expand(4) == [0] * 5


def test_format_and_parse_roundtrip():
    for s in (CANONICAL, H0_0, H0_1, H0_2):
        text = format_series(s)
        assert parse_series(text) == s
    assert format_series(parse_series("1/(1-t)")) == "(1) / (1 - t)"
    assert format_series(H0_0) == "(1 - 2*t^6 + t^12) / ((1 - t^2)^2 * (1 - t^3)^2)"


@pytest.mark.parametrize("bad", ["(1 - t^2", "1 / (1 + t)", "x / (1 - t)", "1 / (1 - t)^", ""])
def test_parse_series_errors(bad):
    with pytest.raises(ValueError):
        parse_series(bad)


def test_over_rewrites_denominator():
    s = CANONICAL.over([2, 2, 6])
    assert s.denominator == (2, 2, 6) and series_equal(s, CANONICAL)
    with pytest.raises(ValueError):
        parse_series("1/(1-t^2)").over([3])


@pytest.mark.parametrize("fmt", ALL_FORMATS, ids=lambda f: f.value)
def test_series_of_builtins(instances, fmt):
    pres = instances[fmt]
    hs = hilbert_series(pres.ideal.groebner())
    assert series_equal(hs, pres.expected_series)
    assert hs.pole_order() == 2


def test_curve_invariants():
    assert curve_invariants(H0_0, 2) == (2, 2)
    assert curve_invariants(parse_series("1 / (1 - t)^2"), 1) == (1, 0)
    with pytest.raises(ValueError):
        curve_invariants(parse_series("1 / (1 - t)^3"), 1)


@pytest.mark.parametrize("fmt", ALL_FORMATS, ids=lambda f: f.value)
def test_even_part_is_the_canonical_curve(instances, fmt):
    assert curve_invariants(hilbert_series(instances[fmt].ideal.groebner()), 2) == (2, 2)


def test_eigenspace_examples(instances):
    b1 = instances[FormatId.B1].ideal.groebner()
    assert eigenspace_dims(b1, "+ + + + - -".split(), 5) == (3, 1)
    assert eigenspace_dims(b1, format_signs(FormatId.B1), 9) == (5, 3)
    assert eigenspace_dims(b1, format_signs(FormatId.B1), 6)[1] == 1
    b0 = instances[FormatId.B0].ideal.groebner()
    assert eigenspace_dims(b0, format_signs(FormatId.B0), 5) == (2, 2)


def test_eigenspace_rejects_non_invariant_ideal():
    ring = WeightedRing.from_spec("x:1,y:1")
    gb = Ideal(ring, [ring.parse("x^2 + x*y")]).groebner()
    assert not is_sign_invariant(gb, (1, -1))
    with pytest.raises(ValueError):
        eigenspace_dims(gb, (1, -1), 3)
    with pytest.raises(ValueError):
        eigenspace_dims(gb, (1,), 3)


@pytest.mark.parametrize("fmt", HALF_CANONICAL, ids=lambda f: f.value)
def test_eigenspaces_sum_to_dimension(instances, fmt):
    pres = instances[fmt]
    gb = pres.ideal.groebner()
    coeffs = hilbert_series(gb).expand(14)
    for d in range(15):
        assert sum(eigenspace_dims(gb, pres.signs, d)) == coeffs[d]


# -- properties ------------------------------------------------------------------

WEIGHTS = (1, 2, 3)
mono = st.tuples(*[st.integers(0, 4)] * 3)


def _brute_count(leads, d):
    count = 0
    for e in itertools.product(range(d + 1), repeat=3):
        if sum(w * a for w, a in zip(WEIGHTS, e)) != d:
            continue
        if not any(all(a >= b for a, b in zip(e, m)) for m in leads):
            count += 1
    return count


@settings(max_examples=150)
@given(st.lists(mono, max_size=5))
def test_monomial_numerator_counts_standard_monomials(leads):
    series = RationalSeries.make(monomial_numerator(leads, WEIGHTS), WEIGHTS)
    coeffs = series.expand(14)
    assert coeffs == [_brute_count(leads, d) for d in range(15)]


@settings(max_examples=150)
@given(st.lists(st.tuples(st.integers(0, 12), st.integers(-3, 3)), max_size=5),
       st.lists(st.integers(1, 6), min_size=1, max_size=4))
def test_series_equal_after_multiplying_through(terms, den):
    num = {}
    for d, c in terms:
        num[d] = num.get(d, 0) + c
    a = RationalSeries.make(num, den)
    b = a.over(list(den) + [3])
    assert series_equal(a, b)
    assert a.expand(20) == b.expand(20)
    if any(num.values()) and a.num:
        assert parse_series(format_series(a)) == a
