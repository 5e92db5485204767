"""Reading and writing presentation files.

A file is a sequence of ``;``-terminated statements, ``#`` starts a comment::

    format A0;                 # optional: ties the file to a built-in format
    seed 3;                    # optional
    field gf 32003;            # or: field q;
    vars y1:2 y2:2 z1:3 z2:3;
    signs + + + -;             # optional
    coeff f6 = y1^3 + y2^3;    # optional, one per free form of the format
    ideal:
      z1^2 - (y1^3 + y2^3);
      z2^2 - (y1^3 - y2^3);
    end
    expect hilbert: (1 - t^6)^2 / ((1 - t^2)^2 * (1 - t^3)^2);
    expect h0: 0;

Keywords are lowercase. Polynomials follow the grammar of ``WeightedRing.parse``.
When ``format`` is given, missing ``signs``/``expect`` lines default to the
format's values, and missing ``coeff`` lines are read off the generators where
the format allows it.
"""
from __future__ import annotations

import re
from pathlib import Path

from .formats import (CoefficientData, FormatId, Presentation, expected_series, form_names,
                      format_h0, format_ring, format_signs, infer_coefficients)
from .groebner import Ideal
from .hilbert import format_series, parse_series
from .polycore import Field, ParseError, WeightedRing, format_polynomial


class PresentationError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


_WS = re.compile(r"\s*")
_END = re.compile(r"end\b")
_IDEAL = re.compile(r"ideal\s*:")
_END_LINE = re.compile(r"^\s*end\b", re.M)


def _statements(text: str) -> list[tuple[int, bool, str]]:
    """Split into (line, inside ideal block, body) triples."""
    text = "\n".join(line.split("#", 1)[0] for line in text.splitlines())
    out = []
    i = 0
    in_ideal = False
    ideal_seen = False

    def line_at(pos):
        return text.count("\n", 0, pos) + 1

    while True:
        i = _WS.match(text, i).end()
        if i >= len(text):
            break
        if in_ideal:
            m = _END.match(text, i)
            if m:
                in_ideal = False
                i = m.end()
                continue
        else:
            m = _IDEAL.match(text, i)
            if m:
                if ideal_seen:
                    raise PresentationError(line_at(i), "second ideal block")
                in_ideal = ideal_seen = True
                out.append((line_at(i), False, "ideal:"))
                i = m.end()
                continue
        j = text.find(";", i)
        if in_ideal:
            m = _END_LINE.search(text, i)
            if m and (j < 0 or m.start() < j):
                raise PresentationError(line_at(i), "missing ';' after generator")
        if j < 0:
            what = "missing 'end' after ideal block" if in_ideal else "missing ';'"
            raise PresentationError(line_at(i), what)
        body = text[i:j]
        out.append((line_at(i), in_ideal, body.strip()))
        i = j + 1
    if in_ideal:
        raise PresentationError(line_at(len(text)), "missing 'end' after ideal block")
    return out


def _parse_field(line: int, rest: str) -> Field:
    words = rest.split()
    if words in (["q"], ["qq"]):
        return Field.rationals()
    if len(words) == 2 and words[0] == "gf" and words[1].isdigit():
        try:
            return Field.gf(int(words[1]))
        except ValueError as exc:
            raise PresentationError(line, str(exc)) from None
    raise PresentationError(line, f"expected 'gf P' or 'q' after field, got {rest!r}")


def _parse_signs(line: int, rest: str) -> tuple[int, ...]:
    out = []
    for w in rest.split():
        if w not in ("+", "-"):
            raise PresentationError(line, f"sign must be + or -, got {w!r}")
        out.append(1 if w == "+" else -1)
    return tuple(out)


def parse_presentation(text: str) -> Presentation:
    header: dict[str, tuple[int, str]] = {}
    coeff_lines: list[tuple[int, str]] = []
    ideal_lines: list[tuple[int, str]] = []
    has_ideal = False
    for line, inside, body in _statements(text):
        if inside:
            if body:
                ideal_lines.append((line, body))
            continue
        if body == "ideal:":
            has_ideal = True
            continue
        key, _, rest = body.partition(" ")
        rest = rest.strip()
        if key == "expect":
            sub, colon, rest = rest.partition(":")
            if not colon or sub.strip() not in ("hilbert", "h0"):
                raise PresentationError(line, "expected 'expect hilbert:' or 'expect h0:'")
            key = "expect " + sub.strip()
            rest = rest.strip()
        if key == "coeff":
            coeff_lines.append((line, rest))
            continue
        if key not in ("field", "vars", "signs", "format", "seed", "expect hilbert", "expect h0"):
            raise PresentationError(line, f"unknown statement {key!r}")
        if key in header:
            raise PresentationError(line, f"duplicate '{key}' statement")
        header[key] = (line, rest)

    field_ = _parse_field(*header["field"]) if "field" in header else Field()
    if "vars" not in header:
        raise PresentationError(1, "missing 'vars' statement")
    line, rest = header["vars"]
    try:
        ring = WeightedRing.from_spec(",".join(rest.replace(",", " ").split()), field_)
    except ValueError as exc:
        raise PresentationError(line, str(exc)) from None
    if not has_ideal:
        raise PresentationError(1, "missing 'ideal:' block")

    def poly(line, body):
        try:
            return ring.parse(body)
        except ParseError as exc:
            raise PresentationError(line + body.count("\n", 0, exc.pos), str(exc)) from None

    gens = [poly(line, body) for line, body in ideal_lines]
    for (line, body), g in zip(ideal_lines, gens):
        if not g.is_homogeneous():
            raise PresentationError(line, f"generator is not homogeneous: {body}")
    ideal = Ideal(ring, gens)

    fmt = None
    if "format" in header:
        line, rest = header["format"]
        try:
            fmt = FormatId.parse(rest)
        except ValueError as exc:
            raise PresentationError(line, str(exc)) from None
        want = format_ring(fmt, field_)
        if (want.names, want.weights) != (ring.names, ring.weights):
            raise PresentationError(header["vars"][0], f"variables do not match format {fmt.value}")

    signs = None
    if "signs" in header:
        signs = _parse_signs(*header["signs"])
        if len(signs) != ring.nvars:
            raise PresentationError(header["signs"][0], "one sign per variable is required")
    elif fmt is not None:
        signs = format_signs(fmt)

    series = None
    if "expect hilbert" in header:
        line, rest = header["expect hilbert"]
        try:
            series = parse_series(rest)
        except ValueError as exc:
            raise PresentationError(line, str(exc)) from None
    elif fmt is not None:
        series = expected_series(fmt)

    h0 = None
    if "expect h0" in header:
        line, rest = header["expect h0"]
        if not rest.isdigit():
            raise PresentationError(line, "h0 must be a non-negative integer")
        h0 = int(rest)
    elif fmt is not None:
        h0 = format_h0(fmt)

    seed = None
    if "seed" in header:
        line, rest = header["seed"]
        try:
            seed = int(rest)
        except ValueError:
            raise PresentationError(line, "seed must be an integer") from None

    coeffs = None
    if coeff_lines:
        if fmt is None:
            raise PresentationError(coeff_lines[0][0], "'coeff' needs a 'format' statement")
        forms = {}
        for line, rest in coeff_lines:
            name, eq, body = rest.partition("=")
            name = name.strip()
            if not eq or name not in form_names(fmt):
                raise PresentationError(line, f"expected 'coeff NAME = POLY' with NAME in {form_names(fmt)}")
            if name in forms:
                raise PresentationError(line, f"duplicate coefficient {name}")
            forms[name] = poly(line, body)
        coeffs = CoefficientData(fmt, forms)
    elif fmt is not None:
        coeffs = infer_coefficients(fmt, ideal)

    return Presentation(ring, ideal, signs, series, fmt, h0, coeffs, seed)


def read_presentation(path: str | Path) -> Presentation:
    return parse_presentation(Path(path).read_text())


def write_presentation(pres: Presentation) -> str:
    ring = pres.ring
    lines = []
    if pres.format is not None:
        lines.append(f"format {pres.format.value};")
    if pres.seed is not None:
        lines.append(f"seed {pres.seed};")
    f = ring.field
    lines.append(f"field gf {f.modulus};" if f.modulus else "field q;")
    lines.append("vars " + " ".join(f"{n}:{w}" for n, w in zip(ring.names, ring.weights)) + ";")
    if pres.signs is not None:
        lines.append("signs " + " ".join("+" if s > 0 else "-" for s in pres.signs) + ";")
    if pres.coeffs is not None:
        for name in form_names(pres.format):
            lines.append(f"coeff {name} = {format_polynomial(pres.coeffs[name])};")
    lines.append("ideal:")
    for g in pres.ideal.generators:
        lines.append(f"  {format_polynomial(g)};")
    lines.append("end")
    if pres.expected_series is not None:
        lines.append(f"expect hilbert: {format_series(pres.expected_series)};")
    if pres.h0_L is not None:
        lines.append(f"expect h0: {pres.h0_L};")
    return "\n".join(lines) + "\n"


def save_presentation(pres: Presentation, path: str | Path) -> None:
    Path(path).write_text(write_presentation(pres))
