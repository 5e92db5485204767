import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import ALL_FORMATS, HALF_CANONICAL, homogeneous_strategy
from halfcanon.formats import (CoefficientData, FormatId, Presentation, build_format, builtin,
                               expected_series, format_ring)
from halfcanon.groebner import Ideal
from halfcanon.hilbert import eigenspace_dims, expand, hilbert_series, parse_series
from halfcanon.polycore import Field, WeightedRing
from halfcanon.resolution import betti_table, free_resolution
from halfcanon.verify import (B_TWISTS, VerifyConfig, b_decomposition, brute_force_dims,
                              check_involution_invariance, check_point_membership, component_ideals,
                              h0_line, koszul_betti, node_point, run_certificate)

CHECK_ORDER = ["side_conditions", "homogeneity", "involution_invariance", "groebner_basis",
               "krull_dimension", "hilbert_series", "oracle_agreement", "eigenspaces_odd",
               "invariants_even", "curve_invariants", "resolution", "gorenstein", "node_point",
               "component_invariants", "even_subring", "reducedness"]


@pytest.fixture(scope="module")
def reports(instances):
    return {f: run_certificate(p, VerifyConfig(deterministic=True)) for f, p in instances.items()}


# -- oracles -------------------------------------------------------------------

@pytest.mark.parametrize("fmt", ALL_FORMATS, ids=lambda f: f.value)
def test_brute_force_matches_series(instances, fmt):
    pres = instances[fmt]
    want = expand(expected_series(fmt), 10)
    assert [brute_force_dims(pres.ideal, d) for d in range(11)] == want


def test_brute_force_over_rationals():
    pres = builtin(FormatId.B1, 1, Field.rationals())
    assert [brute_force_dims(pres.ideal, d) for d in range(9)] == expand(expected_series(FormatId.B1), 8)


W = WeightedRing.from_spec("a:1,b:1,c:2,d:3")


@settings(max_examples=60)
@given(st.lists(st.sampled_from([1, 2, 3, 4]).flatmap(lambda d: homogeneous_strategy(W, d, max_terms=3)),
                min_size=1, max_size=4))
def test_brute_force_matches_groebner_count(gens):
    ideal = Ideal(W, gens)
    series = hilbert_series(ideal.groebner())
    assert [brute_force_dims(ideal, d) for d in range(9)] == expand(series, 8)


def test_koszul_betti_of_complete_intersection():
    ring = WeightedRing.from_spec("x:1,y:1,z:1")
    ideal = Ideal(ring, [ring.parse("x^2"), ring.parse("y^3")])
    table = koszul_betti(ideal.groebner(), 10)
    assert [list(step) for step in table.entries] == [[(0, 1)], [(2, 1), (3, 1)], [(5, 1)]]


@pytest.mark.parametrize("fmt", [FormatId.A0, FormatId.B2, FormatId.CANONICAL_B], ids=lambda f: f.value)
def test_koszul_betti_matches_resolution(instances, fmt):
    ideal = instances[fmt].ideal
    assert koszul_betti(ideal.groebner(), 30) == betti_table(free_resolution(ideal))


# -- individual checks ------------------------------------------------------------

@pytest.mark.parametrize("fmt", ALL_FORMATS, ids=lambda f: f.value)
def test_builtins_are_involution_invariant(instances, fmt):
    pres = instances[fmt]
    assert check_involution_invariance(pres.ideal, pres.signs)


def test_involution_invariance_detects_mixed_parity():
    ring = WeightedRing.from_spec("x:1,y:1")
    ideal = Ideal(ring, [ring.parse("x^2 + x*y")])
    assert check_involution_invariance(ideal, (1, 1))
    assert not check_involution_invariance(ideal, (1, -1))


def test_point_membership_errors(instances):
    ideal = instances[FormatId.A1].ideal
    with pytest.raises(ValueError):
        check_point_membership(ideal, (0, 0))
    with pytest.raises(ValueError):
        check_point_membership(ideal, (0, 0, 0))


def test_node_point_on_b0():
    for seed in range(5):
        pres = builtin(FormatId.B0, seed)
        point, xi = node_point(pres)
        alpha = pres.coeffs["g8"].coefficient([0, 0, 0, 0, 2, 0, 0, 0])
        assert alpha * pow(xi, 3, 32003) % 32003 == 1
        assert check_point_membership(pres.ideal, point)
        shifted, _ = node_point(pres, shift=1)
        assert not check_point_membership(pres.ideal, shifted)


def test_node_point_literal_coordinates_are_off_the_curve():
    # v = 1, u = xi would force xi^2 = alpha, incompatible with alpha * xi^3 = 1 unless xi^5 = 1
    pres = builtin(FormatId.B0, 0)
    _, xi = node_point(pres)
    assert pow(xi, 5, 32003) != 1
    literal = (0, 0, 0, 0, 1, 0, 0, xi)
    assert not check_point_membership(pres.ideal, literal)


def test_node_point_needs_b0(instances):
    with pytest.raises(ValueError):
        node_point(instances[FormatId.B1])


def test_component_ideals(instances):
    assert len(component_ideals(instances[FormatId.B2])) == 2
    with pytest.raises(ValueError):
        component_ideals(instances[FormatId.A0])


def test_h0_line():
    assert [h0_line(k) for k in (-2, -1, 0, 3)] == [0, 0, 1, 4]


def test_b_decomposition_spot_values():
    assert b_decomposition(FormatId.B1, 5) == (3, 1)
    assert b_decomposition(FormatId.B1, 9) == (5, 3)
    assert b_decomposition(FormatId.B0, 5) == (2, 2)
    with pytest.raises(ValueError):
        b_decomposition(FormatId.B0, 4)


@pytest.mark.parametrize("fmt", list(B_TWISTS), ids=lambda f: f.value)
def test_b_decomposition_matches_eigenspaces(instances, fmt):
    pres = instances[fmt]
    gb = pres.ideal.groebner()
    for d in range(1, 14, 2):
        assert eigenspace_dims(gb, pres.signs, d) == b_decomposition(fmt, d)


# -- full certificate ------------------------------------------------------------

@pytest.mark.parametrize("fmt", ALL_FORMATS, ids=lambda f: f.value)
def test_certificate_passes(reports, fmt):
    report = reports[fmt]
    assert report.verdict == "pass"
    assert [c.name for c in report.checks] == CHECK_ORDER
    assert all(c.ms == 0 for c in report.checks)
    assert report.check("reducedness").status == "skipped"


def test_certificate_format_specific_checks(reports):
    assert reports[FormatId.B0].check("node_point").status == "pass"
    assert reports[FormatId.A0].check("node_point").status == "skipped"
    assert reports[FormatId.B1].check("component_invariants").status == "pass"
    assert reports[FormatId.A1].check("even_subring").status == "pass"
    assert reports[FormatId.B2].check("even_subring").status == "pass"
    for fmt in HALF_CANONICAL:
        assert reports[fmt].check("gorenstein").status == "pass"


def test_certificate_json_shape(reports):
    data = json.loads(json.dumps(reports[FormatId.A0].as_dict()))
    assert set(data) == {"format", "seed", "field", "checks", "verdict"}
    assert data["format"] == "A0" and data["seed"] == 0 and data["field"] == "gf 32003"
    assert set(data["checks"][0]) == {"name", "status", "expected", "actual", "ms"}


def test_certificate_records_failures_without_raising():
    ring = format_ring(FormatId.A0)
    coeffs = CoefficientData(FormatId.A0, {"f6": ring.zero(), "g6": ring.parse("y1^3 + y2^3")})
    report = run_certificate(build_format(FormatId.A0, coeffs))
    assert report.verdict == "fail"
    assert report.check("side_conditions").status == "fail"
    assert "f6 must be nonzero" in report.check("side_conditions").actual


def test_certificate_wrong_expected_series():
    pres = builtin(FormatId.A1, 0)
    wrong = Presentation(pres.ring, pres.ideal, pres.signs, parse_series("1/(1-t)^2"), pres.format,
                         pres.h0_L, pres.coeffs, pres.seed)
    report = run_certificate(wrong, VerifyConfig(resolve=False))
    assert report.check("hilbert_series").status == "fail"
    assert report.check("resolution").status == "skipped"


def test_certificate_on_bare_ideal():
    ring = WeightedRing.from_spec("x:1,y:1,z:1")
    pres = Presentation(ring, Ideal(ring, [ring.parse("x*y - z^2")]), None, None)
    report = run_certificate(pres)
    assert report.check("involution_invariance").status == "skipped"
    assert report.check("krull_dimension").status == "pass"


def test_certificate_on_zero_dimensional_ideal():
    ring = WeightedRing.from_spec("x:1,y:1")
    pres = Presentation(ring, Ideal(ring, [ring.parse("x^2"), ring.parse("y^2")]), None, None)
    report = run_certificate(pres)
    assert report.verdict == "fail"
    assert report.check("krull_dimension").status == "fail"


def test_b1_even_anti_invariants_and_determinantal_identities(instances):
    pres = instances[FormatId.B1]
    gb = pres.ideal.groebner()
    assert eigenspace_dims(gb, pres.signs, 6)[1] == 1
    r = pres.ring
    assert gb.contains(r.parse("w*z - y*u"))
    assert gb.contains(r.parse("v*z - w*u"))
