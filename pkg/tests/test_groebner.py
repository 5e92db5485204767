import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import ALL_FORMATS, homogeneous_strategy
from halfcanon.formats import FormatId, builtin, format_ring
from halfcanon.groebner import (Ideal, MonomialOrder, buchberger, eliminate, ideal_contains, ideal_equal,
                                krull_dimension, minimal_generators, normal_form, subring_presentation)
from halfcanon.hilbert import hilbert_series
from halfcanon.polycore import Field, Polynomial, RingMismatchError, WeightedRing

P = 32003
FLAT = WeightedRing.from_spec("x:1,y:1,z:1")


def test_principal_ideal_is_its_own_basis(instances):
    pres = instances[FormatId.A1]
    gb = pres.ideal.groebner()
    assert gb.elements == (pres.ideal.generators[0].monic(),)


def test_b2_with_v_cubed_has_coprime_leads():
    ring = format_ring(FormatId.B2)
    ideal = Ideal(ring, [ring.parse("x1*x2"), ring.parse("u^2 - v^3")])
    gb = ideal.groebner()
    assert sorted(gb.lead_exps) == [(0, 0, 0, 2), (1, 1, 0, 0)]
    assert gb.criterion_holds()


def test_zero_ideal():
    gb = Ideal(FLAT, []).groebner()
    assert len(gb) == 0
    assert krull_dimension(gb) == 3
    assert normal_form(FLAT.parse("x*y"), gb) == FLAT.parse("x*y")


def test_maximal_ideal_and_unit_ideal():
    gb = Ideal(FLAT, FLAT.gens()).groebner()
    assert krull_dimension(gb) == 0
    unit = Ideal(FLAT, [FLAT.one()]).groebner()
    assert unit.is_unit() and krull_dimension(unit) == -1


def test_normal_form_examples(instances):
    a0 = instances[FormatId.A0]
    f6 = a0.coeffs["f6"]
    assert normal_form(a0.ring.parse("z1^2"), a0.ideal.groebner()) == f6
    b0 = instances[FormatId.B0]
    assert normal_form(b0.ring.parse("y1*y2"), b0.ideal.groebner()).is_zero


def test_ideal_equal_examples():
    ring = format_ring(FormatId.B2)
    a = Ideal(ring, [ring.parse("x1*x2"), ring.parse("u^2 - v^3")])
    b = Ideal(ring, [ring.parse("u^2 - v^3 + x1*x2*v*u"), ring.parse("x1*x2")])
    assert ideal_equal(a, b)
    a0 = format_ring(FormatId.A0)
    assert not ideal_equal(Ideal(a0, [a0.var("y1")]), Ideal(a0, [a0.var("y2")]))
    with pytest.raises(RingMismatchError):
        ideal_equal(a, Ideal(a0, []))


def test_inhomogeneous_generators_rejected():
    with pytest.raises(ValueError):
        Ideal(FLAT, [FLAT.parse("x^2 + y")])


def test_eliminate():
    can = format_ring(FormatId.CANONICAL_A)
    ideal = Ideal(can, [can.parse("u^2 - y1^6 - y2^6")])
    assert eliminate(ideal, ["u"]).generators == ()
    same = eliminate(ideal, [])
    assert ideal_equal(same, ideal)
    # twisted cubic: eliminate s, r from (x - s^3, y - s^2 r, z - s r^2, w - r^3)
    r = WeightedRing.from_spec("s:1,r:1,x:3,y:3,z:3,w:3")
    param = Ideal(r, [r.parse("x - s^3"), r.parse("y - s^2*r"), r.parse("z - s*r^2"), r.parse("w - r^3")])
    cubic = eliminate(param, ["s", "r"])
    k = cubic.ring
    expected = Ideal(k, [k.parse("x*z - y^2"), k.parse("y*w - z^2"), k.parse("x*w - y*z")])
    assert ideal_equal(cubic, expected)
    with pytest.raises(KeyError):
        eliminate(ideal, ["nope"])


def test_subring_recovers_canonical_a(instances):
    pres = instances[FormatId.A1]
    sub = subring_presentation(pres.ideal, [("Y1", pres.ring.parse("x^2")), ("Y2", pres.ring.parse("y")),
                                            ("U", pres.ring.parse("x*z"))])
    assert sub.ring.names == ("Y1", "Y2", "U") and sub.ring.weights == (2, 2, 6)
    assert len(sub.generators) == 1 and sub.generators[0].degree == 12


def test_subring_of_all_variables_is_a_renaming(instances):
    pres = instances[FormatId.A0]
    gens = [(n.upper(), pres.ring.var(n)) for n in pres.ring.names]
    sub = subring_presentation(pres.ideal, gens)
    # same variable order and weights, so exponent vectors carry over unchanged
    renamed = Ideal(sub.ring, [Polynomial(sub.ring, dict(g.items())) for g in pres.ideal.generators])
    assert ideal_equal(sub, renamed)


def test_subring_tag_order_independence(instances):
    pres = instances[FormatId.B2]
    r = pres.ring
    gens = [("Y1", r.parse("x1^2")), ("Y2", r.parse("x2^2")), ("V", r.parse("v")), ("U", r.parse("u"))]
    a = subring_presentation(pres.ideal, gens)
    b = subring_presentation(pres.ideal, list(reversed(gens)))
    b_in_a = Ideal(a.ring, [g.change_ring(a.ring) for g in b.generators])
    assert ideal_equal(a, b_in_a)


def test_subring_errors(instances):
    pres = instances[FormatId.A1]
    with pytest.raises(ValueError):
        subring_presentation(pres.ideal, [("x", pres.ring.parse("y"))])
    with pytest.raises(ValueError):
        subring_presentation(pres.ideal, [("Y", pres.ring.parse("x + y"))])


def test_minimal_generators_drop_redundant():
    ideal = Ideal(FLAT, [FLAT.parse("x^2"), FLAT.parse("x*y"), FLAT.parse("x^2*y + x*y^2"), FLAT.parse("y^3")])
    mins = minimal_generators(ideal)
    assert [str(g) for g in mins] == ["x^2", "x*y", "y^3"]


def test_truncated_basis():
    ideal = Ideal(FLAT, [FLAT.parse("x^2 - y*z"), FLAT.parse("x*y - z^2")])
    gb = buchberger(ideal, max_degree=2)
    assert gb.truncated_at == 2
    assert all(g.degree <= 2 for g in gb)
    assert buchberger(ideal).truncated_at is None


@pytest.mark.parametrize("fmt", ALL_FORMATS, ids=lambda f: f.value)
def test_builtin_bases_are_consistent(instances, fmt):
    gb = instances[fmt].ideal.groebner()
    assert gb.criterion_holds()
    assert krull_dimension(gb) == 2 == hilbert_series(gb).pole_order()
    for g in instances[fmt].ideal.generators:
        assert gb.contains(g)


@pytest.mark.parametrize("fmt", ALL_FORMATS, ids=lambda f: f.value)
def test_rational_and_modular_leading_ideals_agree(fmt):
    q = builtin(fmt, 2, Field.rationals())
    modp = Ideal(q.ring.with_field(Field.gf(P)), [g.change_ring(q.ring.with_field(Field.gf(P))) for g in q.ideal.generators])
    assert sorted(q.ideal.groebner().lead_exps) == sorted(modp.groebner().lead_exps)


def test_block_order_basis_is_reduced():
    ring = WeightedRing.from_spec("a:1,x:1,y:1")
    ideal = Ideal(ring, [ring.parse("a*x - y^2"), ring.parse("a*y - x^2")])
    gb = buchberger(ideal, MonomialOrder("block", 1))
    assert gb.criterion_holds()
    assert any(0 not in g.support() for g in gb)


# -- properties ---------------------------------------------------------------

def _gens(ring, degrees=(1, 2, 3)):
    return st.lists(st.sampled_from(degrees).flatmap(lambda d: homogeneous_strategy(ring, d)), min_size=1, max_size=3)


W = WeightedRing.from_spec("x:1,y:2,z:3")


@settings(max_examples=60)
@given(_gens(W, (2, 3, 4, 5)), st.data())
def test_reduced_basis_properties(gens, data):
    ideal = Ideal(W, gens)
    gb = ideal.groebner()
    assert gb.criterion_holds()
    assert ideal_contains(Ideal(W, gb.elements), ideal) and ideal_contains(ideal, Ideal(W, gb.elements))
    for g in gb:
        assert g.leading_coefficient() == 1
        # reduced: no term of g is divisible by another lead
        others = [e for e, h in zip(gb.lead_exps, gb) if h is not g]
        for e, _ in g.items():
            assert not any(all(a <= b for a, b in zip(o, e)) for o in others)
    f = data.draw(homogeneous_strategy(W, 6))
    nf = gb.normal_form(f)
    assert gb.normal_form(nf) == nf
    assert gb.contains(f - nf)
    assert all(gb.is_standard(e) for e, _ in nf.items())
    assert krull_dimension(gb) == hilbert_series(gb).pole_order()


@settings(max_examples=40)
@given(_gens(FLAT, (1, 2, 3)))
def test_reduced_basis_matches_sympy(gens):
    sympy = pytest.importorskip("sympy")
    xs = sympy.symbols("x y z")
    exprs = [sympy.Poly.from_dict({e: c for e, c in g.items()}, *xs, modulus=P).as_expr() for g in gens]
    # our grevlex has the first variable smallest, so hand the variables to sympy reversed
    ref = sympy.groebner(exprs, *reversed(xs), order="grevlex", modulus=P)
    ours = Ideal(FLAT, gens).groebner()
    theirs = set()
    for poly in ref.polys:
        d = sympy.Poly(poly.as_expr(), *xs, modulus=P)
        mine = Polynomial(FLAT, {e: int(c) % P for e, c in d.as_dict().items()})
        theirs.add(mine.monic())
    assert theirs == set(ours)
