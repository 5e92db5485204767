"""Hilbert series of graded quotients, their expansions and eigenspace counts.

A series is stored as an integer numerator over ``prod (1 - t^w)`` for a
multiset of weights.  The numerator of ``S/I`` is read off the leading-term
ideal of a Groebner basis by pivot splitting.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .groebner import GroebnerBasis


# -- integer polynomials in t as {degree: coefficient} ------------------------

def _clean(p: dict) -> dict:
    return {d: c for d, c in p.items() if c}


def tpoly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for da, ca in a.items():
        for db, cb in b.items():
            out[da + db] = out.get(da + db, 0) + ca * cb
    return _clean(out)


def tpoly_add(a: dict, b: dict, sign: int = 1) -> dict:
    out = dict(a)
    for d, c in b.items():
        out[d] = out.get(d, 0) + sign * c
    return _clean(out)


def one_minus(w: int) -> dict:
    return {0: 1, w: -1} if w else {}


def tpoly_prod(weights: Iterable[int]) -> dict:
    out = {0: 1}
    for w in weights:
        out = tpoly_mul(out, one_minus(w))
    return out


def tpoly_str(p: dict) -> str:
    if not p:
        return "0"
    parts = []
    for d in sorted(p):
        c = p[d]
        mag = abs(c)
        if d == 0:
            body = str(mag)
        else:
            mono = "t" if d == 1 else f"t^{d}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        if not parts:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(parts)


def _divide_one_minus_t(p: dict) -> dict | None:
    """Exact quotient of ``p`` by ``1 - t``, or None if ``p(1) != 0``."""
    if sum(p.values()) != 0:
        return None
    if not p:
        return {}
    top = max(p)
    out = {}
    acc = 0
    for d in range(top):
        acc += p.get(d, 0)
        if acc:
            out[d] = acc
    return out


# -- the series type ----------------------------------------------------------

@dataclass(frozen=True)
class RationalSeries:
    """``numerator(t) / prod_{w in denominator} (1 - t^w)``."""

    numerator: tuple[tuple[int, int], ...]
    denominator: tuple[int, ...]

    @classmethod
    def make(cls, numerator: dict, denominator: Iterable[int]) -> "RationalSeries":
        return cls(tuple(sorted(_clean(numerator).items())), tuple(sorted(denominator)))

    @property
    def num(self) -> dict:
        return dict(self.numerator)

    def expand(self, max_degree: int) -> list[int]:
        coeffs = [0] * (max_degree + 1)
        for d, c in self.numerator:
            if d <= max_degree:
                coeffs[d] += c
        for w in self.denominator:
            for d in range(w, max_degree + 1):
                coeffs[d] += coeffs[d - w]
        return coeffs

    def pole_order(self) -> int:
        """Order of the pole at t = 1."""
        p = self.num
        k = 0
        if not p:
            raise ValueError("zero series has no pole order")
        while True:
            q = _divide_one_minus_t(p)
            if q is None:
                break
            p = q
            k += 1
        return len(self.denominator) - k

    def over(self, denominator: Iterable[int]) -> "RationalSeries":
        """Same series written over another denominator (must divide exactly)."""
        target = Counter(denominator)
        have = Counter(self.denominator)
        extra = target - have
        missing = have - target
        num = tpoly_mul(self.num, tpoly_prod(extra.elements()))
        # divide by the factors we drop
        for w in missing.elements():
            num = _exact_div_one_minus(num, w)
            if num is None:
                raise ValueError("series cannot be written over that denominator")
        return RationalSeries.make(num, target.elements())

    def to_text(self) -> str:
        return format_series(self)

    def __str__(self) -> str:
        return format_series(self)


def _exact_div_one_minus(p: dict, w: int) -> dict | None:
    """Exact quotient of ``p`` by ``1 - t^w``, or None."""
    if not p:
        return {}
    top = max(p)
    q: dict = {}
    for d in range(top - w + 1):
        v = p.get(d, 0) + q.get(d - w, 0)
        if v:
            q[d] = v
    return q if tpoly_mul(q, one_minus(w)) == _clean(p) else None


def series_equal(a: RationalSeries, b: RationalSeries) -> bool:
    lhs = tpoly_mul(a.num, tpoly_prod(b.denominator))
    rhs = tpoly_mul(b.num, tpoly_prod(a.denominator))
    return lhs == rhs


def format_series(s: RationalSeries) -> str:
    num = tpoly_str(s.num)
    if not s.denominator:
        return num
    counts = Counter(s.denominator)
    factors = []
    for w in sorted(counts):
        base = "(1 - t)" if w == 1 else f"(1 - t^{w})"
        factors.append(base if counts[w] == 1 else f"{base}^{counts[w]}")
    den = factors[0] if len(factors) == 1 else f"({' * '.join(factors)})"
    return f"({num}) / {den}"


_FACTOR_RE = re.compile(r"\(\s*1\s*-\s*t\s*(?:\^\s*(\d+))?\s*\)\s*(?:\^\s*(\d+))?")


def _parse_tpoly(text: str) -> dict:
    """Integer polynomial in t: sums of products of integers, t^k and parenthesised groups, with ^."""
    tokens = re.findall(r"\d+|t|[-+*^()]|\S", text)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        tok = peek()
        pos += 1
        return tok

    def expr():
        result = term()
        while peek() in ("+", "-"):
            op = take()
            result = tpoly_add(result, term(), 1 if op == "+" else -1)
        return result

    def term():
        result = factor()
        while peek() == "*" or peek() == "(":
            if peek() == "*":
                take()
            result = tpoly_mul(result, factor())
        return result

    def factor():
        if peek() in ("+", "-"):
            op = take()
            f = factor()
            return f if op == "+" else {d: -c for d, c in f.items()}
        tok = take()
        if tok is None:
            raise ValueError("unexpected end of series")
        if tok == "(":
            base = expr()
            if take() != ")":
                raise ValueError("expected ')' in series")
        elif tok == "t":
            base = {1: 1}
        elif tok.isdigit():
            base = {0: int(tok)} if int(tok) else {}
        else:
            raise ValueError(f"unexpected {tok!r} in series")
        if peek() == "^":
            take()
            e = take()
            if e is None or not e.isdigit():
                raise ValueError("bad exponent in series")
            out = {0: 1}
            for _ in range(int(e)):
                out = tpoly_mul(out, base)
            base = out
        return base

    result = expr()
    if pos != len(tokens):
        raise ValueError(f"trailing text in series: {' '.join(tokens[pos:])}")
    return result


def parse_series(text: str) -> RationalSeries:
    """Parse ``N(t) / ((1 - t^a)^k * (1 - t^b) ...)``; juxtaposed factors are accepted."""
    depth = 0
    split = None
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0:
            split = i
            break
    if split is None:
        return RationalSeries.make(_parse_tpoly(text), ())
    num = _parse_tpoly(text[:split])
    den_text = text[split + 1:].strip()
    while den_text.startswith("(") and _matching(den_text) == len(den_text) - 1 and not _FACTOR_RE.fullmatch(den_text):
        den_text = den_text[1:-1].strip()
    weights: list[int] = []
    pos = 0
    while pos < len(den_text):
        m = _FACTOR_RE.match(den_text, pos)
        if not m:
            raise ValueError(f"denominator must be a product of (1 - t^w) factors: {den_text!r}")
        w = int(m.group(1) or 1)
        k = int(m.group(2) or 1)
        weights.extend([w] * k)
        pos = m.end()
        rest = den_text[pos:].lstrip()
        if rest.startswith("*"):
            rest = rest[1:].lstrip()
        pos = len(den_text) - len(rest)
    return RationalSeries.make(num, weights)


def _matching(text: str) -> int:
    depth = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0:
                return i
    return -1


# -- numerators of monomial quotients -----------------------------------------

def _minimalize(gens: Iterable[tuple[int, ...]]) -> list[tuple[int, ...]]:
    gens = sorted(set(gens), key=sum)
    out: list[tuple[int, ...]] = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return out


def monomial_numerator(leads: Sequence[tuple[int, ...]], weights: Sequence[int]) -> dict:
    """Numerator of the Hilbert series of ``S / (leads)`` over ``prod (1 - t^w)``."""
    weights = tuple(weights)
    memo: dict = {}

    def deg(m):
        return sum(w * e for w, e in zip(weights, m))

    def rec(gens: tuple) -> dict:
        if gens in memo:
            return memo[gens]
        if not gens:
            result = {0: 1}
        else:
            supports = [frozenset(i for i, a in enumerate(g) if a) for g in gens]
            counts = Counter(i for s in supports for i in s)
            if all(c == 1 for c in counts.values()):
                result = tpoly_prod(deg(g) for g in gens)
            else:
                var = max(counts, key=lambda i: (counts[i], -i))
                exps = sorted(g[var] for g in gens if g[var])
                e = exps[(len(exps) - 1) // 2]
                pivot = tuple(e if i == var else 0 for i in range(len(weights)))
                # S/M has numerator N(M + p) + t^deg(p) N(M : p)
                with_p = tuple(_minimalize(list(gens) + [pivot]))
                colon = tuple(_minimalize(
                    tuple(max(a - (e if i == var else 0), 0) for i, a in enumerate(g)) for g in gens))
                shifted = {d + deg(pivot): c for d, c in rec(colon).items()}
                result = tpoly_add(rec(with_p), shifted)
        memo[gens] = result
        return result

    return rec(tuple(_minimalize(leads)))


def hilbert_series(gb: GroebnerBasis) -> RationalSeries:
    num = monomial_numerator(gb.lead_exps, gb.ring.weights)
    return RationalSeries.make(num, gb.ring.weights)


def expand(series: RationalSeries, max_degree: int) -> list[int]:
    return series.expand(max_degree)


# -- eigenspaces of a diagonal involution -------------------------------------

def _parity(exps: Sequence[int], signs: Sequence[int]) -> int:
    odd = sum(e for e, s in zip(exps, signs) if s < 0) % 2
    return -1 if odd else 1


def _normalize_signs(signs: Sequence) -> tuple[int, ...]:
    out = []
    for s in signs:
        if s in ("+", 1, "+1"):
            out.append(1)
        elif s in ("-", -1, "-1"):
            out.append(-1)
        else:
            raise ValueError(f"bad sign {s!r}")
    return tuple(out)


def is_sign_invariant(gb: GroebnerBasis, signs: Sequence) -> bool:
    signs = _normalize_signs(signs)
    for g in gb.elements:
        if len({_parity(e, signs) for e, _ in g.items()}) > 1:
            return False
    return True


def eigenspace_dims(gb: GroebnerBasis, signs: Sequence, d: int) -> tuple[int, int]:
    """Dimensions of the +1 and -1 parts of ``(S/I)_d``."""
    signs = _normalize_signs(signs)
    if len(signs) != gb.ring.nvars:
        raise ValueError("one sign per variable is required")
    if not is_sign_invariant(gb, signs):
        raise ValueError("ideal is not invariant under the involution")
    plus = minus = 0
    for e in gb.standard_monomials(d):
        if _parity(e, signs) > 0:
            plus += 1
        else:
            minus += 1
    return plus, minus


# -- curve invariants from the even part ----------------------------------------

def curve_invariants(series: RationalSeries, parity_step: int = 2, max_start: int = 8) -> tuple[int, int]:
    """(degree of the polarisation, arithmetic genus) from ``c_{s m} = a m + b``.

    The series restricted to multiples of ``parity_step`` must have a pole of
    order exactly 2 and its coefficients must agree with a linear function
    on four consecutive indices starting no later than ``max_start``; the
    fit is then confirmed over a full period of the denominator.
    """
    if series.pole_order() != 2:
        raise ValueError(f"pole order at t=1 is {series.pole_order()}, expected 2")
    period = 1
    for w in series.denominator:
        period = period * w // _gcd(period, w)
    top = max((d for d, _ in series.numerator), default=0)
    horizon = max_start + 4 + 2 * period + top
    coeffs = series.expand(parity_step * horizon)
    c = [coeffs[parity_step * m] for m in range(horizon + 1)]
    for m0 in range(0, max_start + 1):
        a = c[m0 + 1] - c[m0]
        b = c[m0] - a * m0
        if all(c[m] == a * m + b for m in range(m0, m0 + 4)):
            if all(c[m] == a * m + b for m in range(m0, horizon + 1)):
                return a, 1 - b
    raise ValueError("coefficients are not eventually linear in the allowed window")


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a
