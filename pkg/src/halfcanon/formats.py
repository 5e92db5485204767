"""Explicit presentations of the half-canonical and canonical rings.

Each format fixes a weighted ring, a sign vector for the involution, and a
recipe that turns free coefficient forms into generators of the ideal.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Sequence

from .groebner import Ideal
from .hilbert import RationalSeries, parse_series
from .polycore import DEFAULT_PRIME, Field, Polynomial, WeightedRing


class FormatId(str, Enum):
    A0 = "A0"
    A1 = "A1"
    B0 = "B0"
    B1 = "B1"
    B2 = "B2"
    CANONICAL_A = "CanA"
    CANONICAL_B = "CanB"

    @classmethod
    def parse(cls, text: str) -> "FormatId":
        aliases = {"CANONICALA": cls.CANONICAL_A, "CANONICALB": cls.CANONICAL_B,
                   "CANA": cls.CANONICAL_A, "CANB": cls.CANONICAL_B}
        key = text.strip().replace("(", "").replace(")", "").replace("_", "")
        for f in cls:
            if f.value.upper() == key.upper():
                return f
        if key.upper() in aliases:
            return aliases[key.upper()]
        raise ValueError(f"unknown format {text!r}")

    @property
    def is_canonical(self) -> bool:
        return self in (FormatId.CANONICAL_A, FormatId.CANONICAL_B)

    @property
    def curve_type(self) -> str:
        return "A" if self in (FormatId.A0, FormatId.A1, FormatId.CANONICAL_A) else "B"


SERIES_BY_H0 = {
    0: "(1 - t^6)^2 / ((1 - t^2)^2 * (1 - t^3)^2)",
    1: "(1 - t^10) / ((1 - t) * (1 - t^2) * (1 - t^5))",
    2: "(1 - t^2) * (1 - t^12) / ((1 - t)^2 * (1 - t^4) * (1 - t^6))",
}
CANONICAL_SERIES = "(1 + t^6) / (1 - t^2)^2"


@dataclass(frozen=True)
class _FormSpec:
    name: str
    variables: tuple[str, ...]
    degree: int
    # (exponent map, message) for a coefficient that must not vanish; None means "form nonzero"
    required: tuple[tuple[tuple[tuple[str, int], ...], str], ...] = ()
    nonzero: bool = False


@dataclass(frozen=True)
class _Layout:
    vars: str
    signs: str
    h0: int | None
    forms: tuple[_FormSpec, ...]


_LAYOUTS: dict[FormatId, _Layout] = {
    FormatId.A0: _Layout("y1:2 y2:2 z1:3 z2:3", "+ + + -", 0, (
        _FormSpec("f6", ("y1", "y2"), 6, nonzero=True),
        _FormSpec("g6", ("y1", "y2"), 6, nonzero=True),
    )),
    FormatId.A1: _Layout("x:1 y:2 z:5", "+ + -", 1, (
        _FormSpec("f10", ("x", "y"), 10, nonzero=True),
    )),
    FormatId.B0: _Layout("y1:2 y2:2 z1:3 z2:3 v:4 t1:5 t2:5 u:6", "+ + + + + - - -", 0, (
        _FormSpec("g8", ("y1", "y2", "v"), 8, required=(((("v", 2),), "v^2 coefficient of g8 must be nonzero"),)),
    )),
    FormatId.B1: _Layout("x:1 y:2 w:3 v:4 z:5 u:6", "+ + + + - -", 1, (
        _FormSpec("g8", ("y", "v"), 8, required=(((("v", 2),), "v^2 coefficient of g8 must be nonzero"),)),
        _FormSpec("h8", ("x", "v"), 8),
    )),
    FormatId.B2: _Layout("x1:1 x2:1 v:4 u:6", "+ + + -", 2, (
        _FormSpec("f12", ("x1", "x2", "v"), 12, required=(((("v", 3),), "v^3 coefficient must be nonzero"),)),
    )),
    FormatId.CANONICAL_A: _Layout("y1:2 y2:2 u:6", "+ + -", None, (
        _FormSpec("f12", ("y1", "y2"), 12, nonzero=True),
    )),
    FormatId.CANONICAL_B: _Layout("y1:2 y2:2 v:4 u:6", "+ + + -", None, (
        _FormSpec("f12", ("y1", "y2", "v"), 12, required=(((("v", 3),), "v^3 coefficient must be nonzero"),)),
    )),
}

# variables cut out by the two components of a type B curve
COMPONENT_VARIABLES = {
    FormatId.B0: ("y1", "y2"),
    FormatId.B1: ("x", "y"),
    FormatId.B2: ("x1", "x2"),
}


def format_ring(fmt: FormatId, field_: Field | None = None) -> WeightedRing:
    return WeightedRing.from_spec(_LAYOUTS[fmt].vars.replace(" ", ","), field_ or Field())


def format_signs(fmt: FormatId) -> tuple[int, ...]:
    return tuple(1 if s == "+" else -1 for s in _LAYOUTS[fmt].signs.split())


def format_h0(fmt: FormatId) -> int | None:
    return _LAYOUTS[fmt].h0


def expected_series(fmt: FormatId) -> RationalSeries:
    h0 = _LAYOUTS[fmt].h0
    return parse_series(CANONICAL_SERIES if h0 is None else SERIES_BY_H0[h0])


def form_names(fmt: FormatId) -> tuple[str, ...]:
    return tuple(f.name for f in _LAYOUTS[fmt].forms)


@dataclass(frozen=True)
class CoefficientData:
    """The free forms of one format, as polynomials in the format's ring."""

    format: FormatId
    forms: Mapping[str, Polynomial]

    def __getitem__(self, name: str) -> Polynomial:
        return self.forms[name]

    def __eq__(self, other):
        if not isinstance(other, CoefficientData):
            return NotImplemented
        return self.format == other.format and dict(self.forms) == dict(other.forms)

    def __hash__(self):
        return hash((self.format, frozenset(self.forms.items())))


@dataclass(frozen=True, eq=False)
class Presentation:
    ring: WeightedRing
    ideal: Ideal
    signs: tuple[int, ...] | None
    expected_series: RationalSeries | None
    format: FormatId | None = None
    h0_L: int | None = None
    coeffs: CoefficientData | None = None
    seed: int | None = None

    def __eq__(self, other):
        if not isinstance(other, Presentation):
            return NotImplemented
        return (self.ring == other.ring and self.ideal.generators == other.ideal.generators
                and self.signs == other.signs and self.expected_series == other.expected_series
                and self.format == other.format and self.h0_L == other.h0_L
                and self.coeffs == other.coeffs and self.seed == other.seed)

    def __hash__(self):
        return hash((self.ring, self.ideal.generators, self.signs, self.format, self.seed))


# ---------------------------------------------------------------------------

def minors_ideal(matrix: Sequence[Sequence[Polynomial]], size: int = 2) -> Ideal:
    """Ideal of the ``size x size`` minors; zero minors dropped, minors equal up to sign kept once."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    if any(len(r) != cols for r in matrix):
        raise ValueError("ragged matrix")
    if rows == 0:
        raise ValueError("empty matrix")
    ring = matrix[0][0].ring
    minors: list[Polynomial] = []
    for rs in itertools.combinations(range(rows), size):
        for cs in itertools.combinations(range(cols), size):
            m = _det([[matrix[r][c] for c in cs] for r in rs], ring)
            if m.is_zero:
                continue
            if not m.is_homogeneous():
                raise ValueError(f"inhomogeneous minor {m}")
            if m.leading_coefficient() == ring.field(-1):
                m = -m
            if any(m == q or m == -q for q in minors):
                continue
            minors.append(m)
    return Ideal(ring, minors)


def _det(block: list[list[Polynomial]], ring: WeightedRing) -> Polynomial:
    n = len(block)
    if n == 1:
        return block[0][0]
    total = ring.zero()
    for j in range(n):
        sub = [row[:j] + row[j + 1:] for row in block[1:]]
        term = block[0][j] * _det(sub, ring)
        total = total + term if j % 2 == 0 else total - term
    return total


def validate_side_conditions(fmt: FormatId, coeffs: CoefficientData) -> list[str]:
    """Human-readable violations; empty when the coefficients are admissible."""
    problems = []
    layout = _LAYOUTS[fmt]
    if coeffs.format != fmt:
        problems.append(f"coefficients are for {coeffs.format.value}, not {fmt.value}")
        return problems
    for spec in layout.forms:
        form = coeffs.forms.get(spec.name)
        if form is None:
            problems.append(f"{spec.name} is missing")
            continue
        ring = form.ring
        allowed = {ring.index(v) for v in spec.variables}
        if not form.is_zero:
            if not form.is_homogeneous() or form.degree != spec.degree:
                problems.append(f"{spec.name} must be homogeneous of degree {spec.degree}")
            if not form.support() <= allowed:
                problems.append(f"{spec.name} may only involve {', '.join(spec.variables)}")
        if spec.nonzero and form.is_zero:
            problems.append(f"{spec.name} must be nonzero")
        for exps, message in spec.required:
            e = [0] * ring.nvars
            for name, a in exps:
                e[ring.index(name)] = a
            if not form.coefficient(e):
                problems.append(message)
    return problems


def _forms_basis(ring: WeightedRing, variables: Sequence[str], degree: int) -> list[tuple[int, ...]]:
    idx = [ring.index(v) for v in variables]
    sub = tuple(ring.weights[i] for i in idx)
    out = []
    for local in WeightedRing(tuple(variables), sub, ring.field).monomials_of_degree(degree):
        e = [0] * ring.nvars
        for i, a in zip(idx, local):
            e[i] = a
        out.append(tuple(e))
    return out


def random_coeffs(fmt: FormatId, seed: int, field_: Field | None = None) -> CoefficientData:
    """Deterministic admissible coefficients: uniform on every monomial, required ones nonzero."""
    field_ = field_ or Field(DEFAULT_PRIME)
    ring = format_ring(fmt, field_)
    rng = random.Random(f"{fmt.value}:{seed}:{field_.modulus}")

    def draw(nonzero: bool):
        while True:
            if field_.modulus:
                c = rng.randrange(field_.modulus)
            else:
                c = rng.randint(-9, 9)
            if c or not nonzero:
                return c

    forms = {}
    for spec in _LAYOUTS[fmt].forms:
        required = set()
        for exps, _ in spec.required:
            e = [0] * ring.nvars
            for name, a in exps:
                e[ring.index(name)] = a
            required.add(tuple(e))
        while True:
            terms = {e: draw(e in required) for e in _forms_basis(ring, spec.variables, spec.degree)}
            poly = Polynomial(ring, {e: field_(c) for e, c in terms.items()})
            if not (spec.nonzero and poly.is_zero):
                break
        forms[spec.name] = poly
    data = CoefficientData(fmt, forms)
    assert not validate_side_conditions(fmt, data)
    return data


def coefficient_data(fmt: FormatId, texts: Mapping[str, str], field_: Field | None = None) -> CoefficientData:
    """Build coefficient data by parsing each form in the format's ring."""
    ring = format_ring(fmt, field_)
    return CoefficientData(fmt, {name: ring.parse(text) for name, text in texts.items()})


def b0_matrix(ring: WeightedRing, g8: Polynomial) -> list[list[Polynomial]]:
    v = ring.var
    zero = ring.zero()
    return [
        [v("y1"), zero, v("z1"), v("t1")],
        [zero, v("y2"), v("z2"), v("t2")],
        [v("z1"), v("z2"), v("v"), v("u")],
        [v("t1"), v("t2"), v("u"), g8],
    ]


def b1_matrix(ring: WeightedRing) -> list[list[Polynomial]]:
    v = ring.var
    return [
        [ring.zero(), v("y"), v("w"), v("z")],
        [v("x"), v("w"), v("v"), v("u")],
    ]


def format_generators(fmt: FormatId, coeffs: CoefficientData) -> list[Polynomial]:
    ring = next(iter(coeffs.forms.values())).ring
    v = ring.var
    if fmt is FormatId.A0:
        return [v("z1") ** 2 - coeffs["f6"], v("z2") ** 2 - coeffs["g6"]]
    if fmt is FormatId.A1:
        return [v("z") ** 2 - coeffs["f10"]]
    if fmt is FormatId.B0:
        return list(minors_ideal(b0_matrix(ring, coeffs["g8"])).generators)
    if fmt is FormatId.B1:
        g8, h8 = coeffs["g8"], coeffs["h8"]
        gens = list(minors_ideal(b1_matrix(ring)).generators)
        gens.sort(key=lambda g: g.degree)
        gens += [
            v("z") ** 2 - v("y") * g8,
            v("z") * v("u") - v("w") * g8,
            v("u") ** 2 - v("v") * g8 - v("x") ** 4 * h8,
        ]
        return gens
    if fmt is FormatId.B2:
        return [v("x1") * v("x2"), v("u") ** 2 - coeffs["f12"]]
    if fmt is FormatId.CANONICAL_A:
        return [v("u") ** 2 - coeffs["f12"]]
    if fmt is FormatId.CANONICAL_B:
        return [v("y1") * v("y2"), v("u") ** 2 - coeffs["f12"]]
    raise ValueError(fmt)


def build_format(fmt: FormatId, coeffs: CoefficientData, seed: int | None = None) -> Presentation:
    ring = next(iter(coeffs.forms.values())).ring
    if ring.names != format_ring(fmt).names or ring.weights != format_ring(fmt).weights:
        raise ValueError("coefficient forms live in the wrong ring")
    ideal = Ideal(ring, format_generators(fmt, coeffs))
    return Presentation(ring, ideal, format_signs(fmt), expected_series(fmt), fmt,
                        format_h0(fmt), coeffs, seed)


def builtin(fmt: FormatId, seed: int, field_: Field | None = None) -> Presentation:
    return build_format(fmt, random_coeffs(fmt, seed, field_), seed)


# -- even subrings --------------------------------------------------------------

def _halve(poly: Polynomial, target: WeightedRing, rename: Mapping[str, str], halve: Sequence[str]) -> Polynomial:
    """Map x^(2k) -> y^k for variables in ``halve`` and rename the rest.

    Terms involving two distinct halved variables are dropped (they vanish on
    the curve because the product of the component variables lies in the ideal).
    """
    out = {}
    src = poly.ring
    for e, c in poly.items():
        hits = [src.names[i] for i, a in enumerate(e) if a and src.names[i] in halve]
        if len(hits) > 1:
            continue
        ne = [0] * target.nvars
        for i, a in enumerate(e):
            if not a:
                continue
            name = src.names[i]
            if name in halve:
                if a % 2:
                    raise ValueError(f"odd power of {name} in {poly}")
                a //= 2
            ne[target.index(rename[name])] += a
        out[tuple(ne)] = c
    return Polynomial(target, out)


def even_subring_data(pres: Presentation):
    """(subring generators, expected canonical presentation) for A1 and B2."""
    ring = pres.ring
    v = ring.var
    fmt = pres.format
    if fmt is FormatId.A1:
        gens = [("Y1", v("x") ** 2), ("Y2", v("y")), ("U", v("x") * v("z"))]
        can_ring = format_ring(FormatId.CANONICAL_A, ring.field)
        f10 = _halve(pres.coeffs["f10"], can_ring, {"x": "y1", "y": "y2"}, ("x",))
        f12 = can_ring.var("y1") * f10
        target = build_format(FormatId.CANONICAL_A, CoefficientData(FormatId.CANONICAL_A, {"f12": f12}))
        return gens, target, {"Y1": "y1", "Y2": "y2", "U": "u"}
    if fmt is FormatId.B2:
        gens = [("Y1", v("x1") ** 2), ("Y2", v("x2") ** 2), ("V", v("v")), ("U", v("u"))]
        can_ring = format_ring(FormatId.CANONICAL_B, ring.field)
        f12 = _halve(pres.coeffs["f12"], can_ring, {"x1": "y1", "x2": "y2", "v": "v"}, ("x1", "x2"))
        target = build_format(FormatId.CANONICAL_B, CoefficientData(FormatId.CANONICAL_B, {"f12": f12}))
        return gens, target, {"Y1": "y1", "Y2": "y2", "V": "v", "U": "u"}
    raise ValueError("even-subring recovery is defined for A1 and B2")


def rename_ideal(ideal: Ideal, target: WeightedRing, rename: Mapping[str, str]) -> Ideal:
    out = []
    for g in ideal.generators:
        terms = {}
        for e, c in g.items():
            ne = [0] * target.nvars
            for i, a in enumerate(e):
                ne[target.index(rename[ideal.ring.names[i]])] += a
            terms[tuple(ne)] = c
        out.append(Polynomial(target, terms))
    return Ideal(target, out)


# formats whose relations read "x^2 = form": form name -> squared variable
_SQUARE_FORMS = {
    FormatId.A0: {"f6": "z1", "g6": "z2"},
    FormatId.A1: {"f10": "z"},
    FormatId.B2: {"f12": "u"},
    FormatId.CANONICAL_A: {"f12": "u"},
    FormatId.CANONICAL_B: {"f12": "u"},
}


def infer_coefficients(fmt: FormatId, ideal: Ideal) -> CoefficientData | None:
    """Read the free forms back off generators of the shape ``x^2 - form``.

    Returns None when the format is not of that shape or no generator fits.
    """
    if fmt not in _SQUARE_FORMS:
        return None
    ring = ideal.ring
    forms = {}
    for name, var in _SQUARE_FORMS[fmt].items():
        i = ring.index(var)
        sq = [0] * ring.nvars
        sq[i] = 2
        square = ring.term(1, sq)
        found = None
        for g in ideal.generators:
            c = g.coefficient(sq)
            if not c:
                continue
            form = square - g * ring.constant(ring.field.inv(c))
            if i not in form.support():
                found = form
                break
        if found is None:
            return None
        forms[name] = found
    return CoefficientData(fmt, forms)
