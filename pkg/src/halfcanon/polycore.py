"""Exact coefficient fields, weighted polynomial rings and sparse polynomials.

Coefficients are plain Python values: ``int`` in ``[0, p)`` for GF(p) and
``fractions.Fraction`` for QQ.  A polynomial is an immutable mapping from
exponent tuples to nonzero coefficients.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence, Union

DEFAULT_PRIME = 32003
MAX_EXPONENT = (1 << 15) - 1

Coeff = Union[int, Fraction]


class ParseError(ValueError):
    """Raised for malformed polynomial or file text.  ``pos`` is a 0-based offset."""

    def __init__(self, message: str, pos: int | None = None):
        self.pos = pos
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)


class RingMismatchError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Field:
    """GF(p) when ``modulus`` is a prime, QQ when it is 0."""

    modulus: int = DEFAULT_PRIME

    def __post_init__(self):
        if self.modulus != 0:
            if self.modulus <= 2 or not _is_prime(self.modulus):
                raise ValueError(f"field modulus must be an odd prime, got {self.modulus}")

    @classmethod
    def gf(cls, p: int = DEFAULT_PRIME) -> "Field":
        return cls(p)

    @classmethod
    def rationals(cls) -> "Field":
        return cls(0)

    @property
    def is_prime_field(self) -> bool:
        return self.modulus != 0

    def __call__(self, value) -> Coeff:
        p = self.modulus
        if isinstance(value, Fraction):
            if p:
                return value.numerator % p * pow(value.denominator % p, -1, p) % p
            return value
        if isinstance(value, int):
            return value % p if p else Fraction(value)
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def inv(self, a: Coeff) -> Coeff:
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.modulus:
            return pow(a, -1, self.modulus)
        return 1 / Fraction(a)

    def normalize(self, a: Coeff) -> Coeff:
        return a % self.modulus if self.modulus else a

    def signed(self, a: Coeff) -> Coeff:
        """Symmetric representative, used for printing."""
        p = self.modulus
        if p and a > p // 2:
            return a - p
        return a

    def cube_root(self, a: int) -> int:
        """The unique cube root in GF(p) for p = 2 mod 3."""
        p = self.modulus
        if not p or p % 3 != 2:
            raise ValueError("unique cube roots need a prime p = 2 mod 3")
        return pow(a % p, (2 * p - 1) // 3, p)

    def __str__(self) -> str:
        return f"GF({self.modulus})" if self.modulus else "QQ"


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Monomial:
    exponents: tuple[int, ...]
    degree: int

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)),
                        self.degree + other.degree)

    def divides(self, other: "Monomial") -> bool:
        return all(a <= b for a, b in zip(self.exponents, other.exponents))


@dataclass(frozen=True)
class WeightedRing:
    """Polynomial ring over ``field`` with positive integer variable weights."""

    names: tuple[str, ...]
    weights: tuple[int, ...]
    field: Field = Field()

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if len(self.names) != len(self.weights):
            raise ValueError("names and weights differ in length")
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        for name in self.names:
            if not _NAME_RE.match(name) or name == "t":
                raise ValueError(f"bad variable name {name!r}")
        if any(w <= 0 for w in self.weights):
            raise ValueError("weights must be positive")

    @classmethod
    def from_spec(cls, text: str, field: Field | None = None) -> "WeightedRing":
        """Build from ``"y1:2, y2:2, z1:3"`` or ``"w[y1:2,y2:2]"``."""
        text = text.strip()
        if text.startswith("w[") and text.endswith("]"):
            text = text[2:-1]
        names, weights = [], []
        for item in re.split(r"[,\s]+", text.strip()):
            if not item:
                continue
            name, _, w = item.partition(":")
            names.append(name)
            weights.append(int(w) if w else 1)
        return cls(tuple(names), tuple(weights), field or Field())

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def with_field(self, field: Field) -> "WeightedRing":
        return WeightedRing(self.names, self.weights, field)

    def degree_of(self, exps: Sequence[int]) -> int:
        return sum(w * e for w, e in zip(self.weights, exps))

    def monomial(self, exps: Sequence[int]) -> Monomial:
        exps = tuple(exps)
        return Monomial(exps, self.degree_of(exps))

    def order_key(self, exps: Sequence[int]):
        """Default order: weighted degree, then reverse-lex with the first variable smallest."""
        return (self.degree_of(exps), tuple(-e for e in exps))

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name: str) -> "Polynomial":
        i = self.index(name)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field(1)})

    def gens(self) -> tuple["Polynomial", ...]:
        return tuple(self.var(n) for n in self.names)

    def term(self, coeff, exps: Sequence[int]) -> "Polynomial":
        c = self.field(coeff)
        return Polynomial(self, {tuple(exps): c} if c else {})

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def monomials_of_degree(self, d: int) -> list[tuple[int, ...]]:
        return list(_monomials_of_degree(self.weights, d))

    def __str__(self) -> str:
        inner = ",".join(f"{n}:{w}" for n, w in zip(self.names, self.weights))
        return f"w[{inner}] over {self.field}"


@lru_cache(maxsize=4096)
def _monomials_of_degree(weights: tuple[int, ...], d: int) -> tuple[tuple[int, ...], ...]:
    if d < 0:
        return ()
    if not weights:
        return ((),) if d == 0 else ()
    w, rest = weights[0], weights[1:]
    out = []
    for e in range(d // w + 1):
        for tail in _monomials_of_degree(rest, d - e * w):
            out.append((e,) + tail)
    return tuple(out)


class Polynomial:
    """Immutable sparse polynomial in a :class:`WeightedRing`."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: WeightedRing, terms: Mapping[tuple[int, ...], Coeff]):
        self.ring = ring
        self._terms = {e: c for e, c in terms.items() if c}
        self._hash = None

    # -- basic access -------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, exps: Sequence[int]) -> Coeff:
        return self._terms.get(tuple(exps), 0)

    def terms(self) -> list[tuple[tuple[int, ...], Coeff]]:
        """Terms sorted by the default order, largest first."""
        key = self.ring.order_key
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def monomials(self) -> list[Monomial]:
        return [self.ring.monomial(e) for e, _ in self.terms()]

    @property
    def degree(self) -> int:
        if not self._terms:
            raise ValueError("the zero polynomial has no degree")
        return max(self.ring.degree_of(e) for e in self._terms)

    def is_homogeneous(self) -> bool:
        return len({self.ring.degree_of(e) for e in self._terms}) <= 1

    def leading_term(self) -> tuple[tuple[int, ...], Coeff]:
        if not self._terms:
            raise ValueError("the zero polynomial has no leading term")
        key = self.ring.order_key
        e = max(self._terms, key=key)
        return e, self._terms[e]

    def leading_monomial(self) -> Monomial:
        return self.ring.monomial(self.leading_term()[0])

    def leading_coefficient(self) -> Coeff:
        return self.leading_term()[1]

    def support(self) -> set[int]:
        """Indices of variables that occur."""
        return {i for e in self._terms for i, a in enumerate(e) if a}

    def homogeneous_components(self) -> dict[int, "Polynomial"]:
        parts: dict[int, dict] = {}
        for e, c in self._terms.items():
            parts.setdefault(self.ring.degree_of(e), {})[e] = c
        return {d: Polynomial(self.ring, t) for d, t in sorted(parts.items())}

    def monic(self) -> "Polynomial":
        if not self._terms:
            return self
        return self * self.ring.field.inv(self.leading_coefficient())

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        norm = self.ring.field.normalize
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = norm(out.get(e, 0) + c)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        norm = self.ring.field.normalize
        return Polynomial(self.ring, {e: norm(-c) for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = self.ring.field(other)
            norm = self.ring.field.normalize
            return Polynomial(self.ring, {e: norm(a * c) for e, a in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        norm = self.ring.field.normalize
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        for e in out:
            if max(e, default=0) > MAX_EXPONENT:
                raise OverflowError("exponent exceeds 15-bit bound")
        return Polynomial(self.ring, {e: norm(c) for e, c in out.items()})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result, base = self.ring.one(), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    # -- evaluation and substitution ----------------------------------
    def evaluate(self, point: Sequence) -> Coeff:
        if len(point) != self.ring.nvars:
            raise ValueError(f"point has {len(point)} coordinates, ring has {self.ring.nvars} variables")
        f = self.ring.field
        vals = [f(v) for v in point]
        total = 0
        for e, c in self._terms.items():
            term = c
            for v, a in zip(vals, e):
                if a:
                    term = term * v ** a
            total += term
        return f.normalize(total)

    def substitute(self, images: Mapping[str, "Polynomial"], target: WeightedRing | None = None) -> "Polynomial":
        """Replace variables by polynomials of ``target`` (default: same ring).

        Variables missing from ``images`` must exist by name in ``target``.
        """
        target = target or self.ring
        imgs = []
        for name in self.ring.names:
            if name in images:
                img = images[name]
                if img.ring != target:
                    raise RingMismatchError("substitution image lives in another ring")
                imgs.append(img)
            else:
                imgs.append(target.var(name))
        result = target.zero()
        cache: dict = {}
        for e, c in self._terms.items():
            term = target.constant(c)
            for i, a in enumerate(e):
                if a:
                    key = (i, a)
                    if key not in cache:
                        cache[key] = imgs[i] ** a
                    term = term * cache[key]
            result = result + term
        return result

    def change_ring(self, target: WeightedRing) -> "Polynomial":
        """Reinterpret in a ring whose variable names include ours (coefficients reduced)."""
        idx = [target.index(n) for n in self.ring.names]
        out = {}
        for e, c in self._terms.items():
            ne = [0] * target.nvars
            for i, a in zip(idx, e):
                ne[i] = a
            if isinstance(c, Fraction) and target.field.modulus and c.denominator % target.field.modulus == 0:
                raise ZeroDivisionError("denominator vanishes modulo p")
            out[tuple(ne)] = target.field(c)
        return Polynomial(target, out)

    # -- printing -----------------------------------------------------
    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r})"


def multiply(a: Polynomial, b: Polynomial) -> Polynomial:
    if a.ring != b.ring:
        raise RingMismatchError(f"ring mismatch: {a.ring} vs {b.ring}")
    return a * b


def homogeneous_components(p: Polynomial) -> dict[int, Polynomial]:
    return p.homogeneous_components()


def evaluate(p: Polynomial, point: Sequence) -> Coeff:
    return p.evaluate(point)


# ---------------------------------------------------------------------------
# printing

def _format_coeff(c: Coeff) -> str:
    if isinstance(c, Fraction):
        if c.denominator == 1:
            return str(c.numerator)
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def format_polynomial(p: Polynomial) -> str:
    if p.is_zero:
        return "0"
    names = p.ring.names
    field = p.ring.field
    pieces = []
    for e, c in p.terms():
        c = field.signed(c)
        neg = c < 0
        c = -c if neg else c
        mono = "*".join(n if a == 1 else f"{n}^{a}" for n, a in zip(names, e) if a)
        if not mono:
            body = _format_coeff(c)
        elif c == 1:
            body = mono
        else:
            body = f"{_format_coeff(c)}*{mono}"
        if not pieces:
            pieces.append(f"-{body}" if neg else body)
        else:
            pieces.append(f" - {body}" if neg else f" + {body}")
    return "".join(pieces)


# ---------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            break
        if m.group(1) is not None:
            tokens.append(("num", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*^()/":
                raise ParseError(f"unexpected character {ch!r}", m.start(3))
            tokens.append(("op", ch, m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: WeightedRing):
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        tok = self.take()
        if tok[0] != "op" or tok[1] != op:
            raise ParseError(f"expected {op!r}", tok[2])

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0)
        p = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected token {tok[1]!r}", tok[2])
        return p

    def expr(self) -> Polynomial:
        result = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self) -> Polynomial:
        result = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            result = result * self.factor()
        return result

    def factor(self) -> Polynomial:
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            inner = self.factor()
            return -inner if tok[1] == "-" else inner
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            exp_tok = self.take()
            if exp_tok[0] != "num":
                raise ParseError("exponent must be a nonnegative integer", exp_tok[2])
            base = base ** int(exp_tok[1])
        return base

    def atom(self) -> Polynomial:
        tok = self.take()
        kind, text, pos = tok
        if kind == "num":
            value = Fraction(int(text))
            if self.peek()[0] == "op" and self.peek()[1] == "/":
                self.take()
                den = self.take()
                if den[0] != "num":
                    raise ParseError("expected integer denominator", den[2])
                if int(den[1]) == 0:
                    raise ParseError("zero denominator", den[2])
                value = Fraction(int(text), int(den[1]))
            if self.ring.field.modulus and value.denominator % self.ring.field.modulus == 0:
                raise ParseError("denominator vanishes modulo p", pos)
            return self.ring.constant(value)
        if kind == "name":
            if text not in self.ring.names:
                raise ParseError(f"unknown variable {text!r}", pos)
            return self.ring.var(text)
        if kind == "op" and text == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        if kind == "end":
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected token {text!r}", pos)


def parse_polynomial(text: str, ring: WeightedRing) -> Polynomial:
    """Parse ``text`` in ``ring``.  ``^`` binds tighter than ``*``, which binds tighter than ``+``/``-``."""
    return _Parser(text, ring).parse()


def iter_monomials_up_to(ring: WeightedRing, max_degree: int) -> Iterator[tuple[int, ...]]:
    for d in range(max_degree + 1):
        yield from _monomials_of_degree(ring.weights, d)


def linear_combination(ring: WeightedRing, pairs: Iterable[tuple[Coeff, tuple[int, ...]]]) -> Polynomial:
    out: dict = {}
    norm = ring.field.normalize
    for c, e in pairs:
        out[e] = norm(out.get(e, 0) + ring.field(c))
    return Polynomial(ring, out)
