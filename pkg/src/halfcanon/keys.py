"""Packed integer keys for monomials and free-module terms.

Every order used by the engine maps exponent vectors to integers by an
injective *affine* map that is monotone for the order.  Multiplying a term by
a monomial then adds a constant to its key, and comparing terms is integer
comparison.  Elements are plain ``dict[key, coeff]``.

Divisibility uses a second packing (one 16-bit digit per variable with a guard
bit), so ``a | b`` is a subtraction and a mask.
"""
from __future__ import annotations

from collections import defaultdict
from typing import Sequence

WIDTH = 16
DIGIT_MAX = (1 << (WIDTH - 1)) - 1


class Packing:
    """Exponent vector <-> guarded digit integer, variable 0 most significant."""

    def __init__(self, n: int):
        self.n = n
        self.guard = sum(1 << (WIDTH * i + WIDTH - 1) for i in range(n))
        self.allmax = sum(DIGIT_MAX << (WIDTH * i) for i in range(n))
        self.low = (1 << (WIDTH * n)) - 1

    def pack(self, exps: Sequence[int]) -> int:
        v = 0
        for e in exps:
            if e > DIGIT_MAX or e < 0:
                raise OverflowError("exponent out of range")
            v = (v << WIDTH) | e
        return v

    def unpack(self, v: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.n):
            out.append(v & DIGIT_MAX)
            v >>= WIDTH
        return tuple(reversed(out))


def divides(a: int, b: int, guard: int) -> bool:
    return ((b | guard) - a) & guard == guard


class GrevlexKey:
    """Weighted degree, then reverse-lex with the first variable smallest."""

    def __init__(self, weights: Sequence[int]):
        self.weights = tuple(weights)
        self.n = len(self.weights)
        self.packing = Packing(self.n)
        self.guard = self.packing.guard
        self.shift = WIDTH * self.n
        self.base = self.packing.allmax  # key of the unit monomial

    def key(self, exps: Sequence[int]) -> int:
        deg = sum(w * e for w, e in zip(self.weights, exps))
        return (deg << self.shift) + self.base - self.packing.pack(exps)

    def pmask(self, key: int) -> int:
        return self.base - (key & self.packing.low)

    def exps(self, key: int) -> tuple[int, ...]:
        return self.packing.unpack(self.pmask(key))

    def degree(self, key: int) -> int:
        return key >> self.shift


class BlockKey:
    """Elimination order: the first ``split`` variables form a block that dominates."""

    def __init__(self, weights: Sequence[int], split: int):
        self.weights = tuple(weights)
        self.n = len(self.weights)
        self.split = split
        self.hi = GrevlexKey(self.weights[:split])
        self.lo = GrevlexKey(self.weights[split:])
        self.packing = Packing(self.n)
        self.guard = self.packing.guard
        self.sh = WIDTH * (self.lo.n + 2)
        self.mask = (1 << self.sh) - 1
        self.lo_bits = WIDTH * self.lo.n
        self.base = (self.hi.base << self.sh) + self.lo.base

    def key(self, exps: Sequence[int]) -> int:
        exps = tuple(exps)
        return (self.hi.key(exps[: self.split]) << self.sh) + self.lo.key(exps[self.split:])

    def pmask(self, key: int) -> int:
        return (self.hi.pmask(key >> self.sh) << self.lo_bits) | self.lo.pmask(key & self.mask)

    def exps(self, key: int) -> tuple[int, ...]:
        return self.packing.unpack(self.pmask(key))

    def degree(self, key: int) -> int:
        return self.hi.degree(key >> self.sh) + self.lo.degree(key & self.mask)


class SchreyerKey:
    """Module order ``x^a e_i -> mono(a + shift_i) * R + rank_i``.

    With all shifts zero this is term-over-position; with a single component it
    is the monomial order itself.  Shifts are exponent tuples.
    """

    def __init__(self, mono, shifts: Sequence[Sequence[int]], ranks: Sequence[int] | None = None):
        self.mono = mono
        self.shifts = [tuple(s) for s in shifts]
        m = len(self.shifts)
        self.R = max(m, 1)
        self.ranks = list(ranks) if ranks is not None else list(range(m))
        self.comp_of_rank = [0] * m
        for i, r in enumerate(self.ranks):
            self.comp_of_rank[r] = i
        self.guard = mono.guard
        self.shift_keys = [mono.key(s) for s in self.shifts]
        self.shift_p = [mono.packing.pack(s) for s in self.shifts]
        self.base_keys = [k * self.R + r for k, r in zip(self.shift_keys, self.ranks)]

    def encode(self, comp: int, exps: Sequence[int]) -> int:
        s = self.shifts[comp]
        total = tuple(a + b for a, b in zip(exps, s))
        return self.mono.key(total) * self.R + self.ranks[comp]

    def locate(self, key: int) -> tuple[int, int]:
        q, r = divmod(key, self.R)
        return self.comp_of_rank[r], self.mono.pmask(q)

    def decode(self, key: int) -> tuple[int, tuple[int, ...]]:
        q, r = divmod(key, self.R)
        comp = self.comp_of_rank[r]
        total = self.mono.exps(q)
        return comp, tuple(a - b for a, b in zip(total, self.shifts[comp]))

    def delta(self, exps: Sequence[int]) -> int:
        return (self.mono.key(exps) - self.mono.base) * self.R

    def degree(self, key: int) -> int:
        return self.mono.degree(key // self.R)

    def total_exps(self, key: int) -> tuple[int, ...]:
        return self.mono.exps(key // self.R)


class PotKey:
    """Position-over-term module order; ``ranks[i]`` larger means component i dominates."""

    def __init__(self, mono, twists: Sequence[int], ranks: Sequence[int] | None = None):
        self.mono = mono
        self.twists = list(twists)
        m = len(self.twists)
        self.ranks = list(ranks) if ranks is not None else list(range(m))
        self.comp_of_rank = [0] * m
        for i, r in enumerate(self.ranks):
            self.comp_of_rank[r] = i
        self.guard = mono.guard
        self.sh = WIDTH * (mono.n + 8)
        self.mask = (1 << self.sh) - 1

    def encode(self, comp: int, exps: Sequence[int]) -> int:
        return (self.ranks[comp] << self.sh) + self.mono.key(exps)

    def locate(self, key: int) -> tuple[int, int]:
        return self.comp_of_rank[key >> self.sh], self.mono.pmask(key & self.mask)

    def decode(self, key: int) -> tuple[int, tuple[int, ...]]:
        return self.comp_of_rank[key >> self.sh], self.mono.exps(key & self.mask)

    def delta(self, exps: Sequence[int]) -> int:
        return self.mono.key(exps) - self.mono.base

    def degree(self, key: int) -> int:
        return self.mono.degree(key & self.mask) + self.twists[self.comp_of_rank[key >> self.sh]]


class Reducer:
    """Division by a growing list of monic elements sharing one module order."""

    def __init__(self, order, modulus: int):
        self.order = order
        self.p = modulus
        self.elements: list[dict] = []
        self.leads: list[int] = []
        self.by_comp: dict[int, list] = defaultdict(list)
        self.guard = order.guard

    def add(self, elem: dict) -> int:
        lead = max(elem)
        comp, pm = self.order.locate(lead)
        idx = len(self.elements)
        self.elements.append(elem)
        self.leads.append(lead)
        self.by_comp[comp].append((pm, lead, idx))
        return idx

    def replace(self, idx: int, elem: dict) -> None:
        # same leading term, new tail
        self.elements[idx] = elem

    def find(self, key: int, skip: int = -1):
        comp, pm = self.order.locate(key)
        guard = self.guard
        for lpm, lead, idx in self.by_comp.get(comp, ()):
            if idx != skip and ((pm | guard) - lpm) & guard == guard:
                return idx, lead
        return None

    def reduce(self, f: dict, full: bool = True, skip: int = -1, quotients: list | None = None) -> dict:
        """Return the remainder of ``f``; ``f`` is consumed.

        If ``quotients`` is a list, append ``(idx, delta, q)`` for each step so
        that the input equals ``remainder + sum q * shift(elements[idx], delta)``.
        """
        p = self.p
        rem: dict = {}
        elements = self.elements
        while f:
            t = max(f)
            hit = self.find(t, skip)
            if hit is None:
                if not full:
                    rem.update(f)
                    return rem
                rem[t] = f.pop(t)
                continue
            idx, lead = hit
            q = f[t]
            delta = t - lead
            if quotients is not None:
                quotients.append((idx, delta, q))
            get = f.get
            if p:
                for k, a in elements[idx].items():
                    kk = k + delta
                    v = (get(kk, 0) - q * a) % p
                    if v:
                        f[kk] = v
                    else:
                        f.pop(kk, None)
            else:
                for k, a in elements[idx].items():
                    kk = k + delta
                    v = get(kk, 0) - q * a
                    if v:
                        f[kk] = v
                    else:
                        f.pop(kk, None)
        return rem


def make_monic(f: dict, modulus: int) -> dict:
    lc = f[max(f)]
    if lc == 1:
        return f
    if modulus:
        inv = pow(lc, -1, modulus)
        return {k: c * inv % modulus for k, c in f.items()}
    return {k: c / lc for k, c in f.items()}


def add_scaled(f: dict, g: dict, q, delta: int, modulus: int) -> None:
    """In place: f -= q * shift(g, delta)."""
    get = f.get
    for k, a in g.items():
        kk = k + delta
        v = get(kk, 0) - q * a
        if modulus:
            v %= modulus
        if v:
            f[kk] = v
        else:
            f.pop(kk, None)


def lcm_exps(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    return tuple(x if x > y else y for x, y in zip(a, b))
