"""Homogeneous ideals, Buchberger's algorithm, normal forms and elimination.

The engine works on any module order from :mod:`halfcanon.keys`; ideals are
the rank-one case.  Pairs are processed lowest degree first, with the product
criterion (ideals only) and the Gebauer-Moeller chain criterion.
"""
from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .keys import BlockKey, GrevlexKey, Reducer, SchreyerKey, add_scaled, lcm_exps, make_monic
from .polycore import Monomial, Polynomial, RingMismatchError, WeightedRing


# ---------------------------------------------------------------------------
# engine

class EngineResult:
    __slots__ = ("basis", "minimal_generators", "truncated")

    def __init__(self, basis, minimal_generators, truncated):
        self.basis = basis
        self.minimal_generators = minimal_generators
        self.truncated = truncated


def _coprime(a: Sequence[int], b: Sequence[int]) -> bool:
    return not any(x and y for x, y in zip(a, b))


def _divides_exps(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def groebner_engine(gens: Sequence[dict], order, modulus: int, *, ideal: bool,
                    max_degree: int | None = None, interreduce: bool = True) -> EngineResult:
    """Groebner basis of the submodule spanned by ``gens`` (dicts keyed by ``order``).

    Homogeneous input is assumed for the minimal-generator bookkeeping:
    ``minimal_generators`` lists the indices of inputs that were not
    reducible to zero when their degree was reached.
    """
    red = Reducer(order, modulus)
    lead_info: list[tuple[int, tuple[int, ...]]] = []
    pairs: dict[tuple[int, int], tuple] = {}
    heap: list = []
    minimal: list[int] = []

    queue = sorted((order.degree(max(g)), max(g), i) for i, g in enumerate(gens) if g)
    qpos = 0

    def update(h: int) -> None:
        ch, eh = lead_info[h]
        cands = []
        for g in range(h):
            cg, eg = lead_info[g]
            if cg != ch:
                continue
            cands.append((g, lcm_exps(eh, eg), ideal and _coprime(eh, eg)))
        # chain criterion on the new pairs
        kept = []
        for k, (g, l, cop) in enumerate(cands):
            if cop:
                kept.append((g, l, cop))
                continue
            dominated = False
            for g2, l2, _ in itertools.chain(cands[k + 1:], kept):
                if _divides_exps(l2, l):
                    dominated = True
                    break
            if not dominated:
                kept.append((g, l, cop))
        # chain criterion on the old pairs
        for key, (deg, lk, l, comp) in list(pairs.items()):
            if comp != ch or not _divides_exps(eh, l):
                continue
            a, b = key
            if lcm_exps(lead_info[a][1], eh) != l and lcm_exps(lead_info[b][1], eh) != l:
                del pairs[key]
        for g, l, cop in kept:
            if cop:
                continue
            lk = order.encode(ch, l)
            deg = order.degree(lk)
            pairs[(g, h)] = (deg, lk, l, ch)
            heapq.heappush(heap, (deg, lk, g, h))

    def insert(elem: dict) -> None:
        idx = red.add(make_monic(elem, modulus))
        lead_info.append(order.decode(red.leads[idx]))
        update(idx)

    truncated = False
    while True:
        while heap and (heap[0][2], heap[0][3]) not in pairs:
            heapq.heappop(heap)
        dp = heap[0][0] if heap else None
        dg = queue[qpos][0] if qpos < len(queue) else None
        if dp is None and dg is None:
            break
        d = dg if dp is None else dp if dg is None else min(dp, dg)
        if max_degree is not None and d > max_degree:
            truncated = True
            break
        batch = []
        while heap and heap[0][0] == d:
            _, lk, i, j = heapq.heappop(heap)
            if (i, j) in pairs:
                batch.append((lk, i, j))
        for lk, i, j in batch:
            if pairs.pop((i, j), None) is None:
                continue
            gi, gj = red.elements[i], red.elements[j]
            di = lk - red.leads[i]
            dj = lk - red.leads[j]
            s = {k + di: c for k, c in gi.items()}
            add_scaled(s, gj, 1, dj, modulus)
            r = red.reduce(s)
            if r:
                insert(r)
        while qpos < len(queue) and queue[qpos][0] == d:
            _, _, gi = queue[qpos]
            qpos += 1
            r = red.reduce(dict(gens[gi]))
            if r:
                minimal.append(gi)
                insert(r)

    # drop elements whose lead is divisible by another lead
    n = len(red.elements)
    alive = []
    for i in range(n):
        ci, ei = lead_info[i]
        if not any(j != i and lead_info[j][0] == ci and _divides_exps(lead_info[j][1], ei)
                   and (lead_info[j][1] != ei or j < i) for j in range(n)):
            alive.append(i)
    final = Reducer(order, modulus)
    for i in alive:
        final.add(red.elements[i])
    if interreduce:
        for idx in range(len(final.elements)):
            elem = final.elements[idx]
            lead = final.leads[idx]
            tail = {k: c for k, c in elem.items() if k != lead}
            rem = final.reduce(tail, skip=idx)
            rem[lead] = 1
            final.replace(idx, rem)
    basis = sorted(final.elements, key=max)
    return EngineResult(basis, minimal, truncated)


def spair_remainders(basis: Sequence[dict], order, modulus: int) -> list[dict]:
    """Remainders of all S-pairs, for checking the Buchberger criterion."""
    red = Reducer(order, modulus)
    for g in basis:
        red.add(make_monic(dict(g), modulus))
    out = []
    info = [order.decode(l) for l in red.leads]
    for i in range(len(basis)):
        for j in range(i):
            if info[i][0] != info[j][0]:
                continue
            l = lcm_exps(info[i][1], info[j][1])
            lk = order.encode(info[i][0], l)
            s = {k + lk - red.leads[i]: c for k, c in red.elements[i].items()}
            add_scaled(s, red.elements[j], 1, lk - red.leads[j], modulus)
            r = red.reduce(s)
            if r:
                out.append(r)
    return out


# ---------------------------------------------------------------------------
# public objects

@dataclass(frozen=True)
class MonomialOrder:
    """``grevlex`` (weighted, first variable smallest) or ``block``.

    For ``block`` the first ``split`` variables form an elimination block.
    """

    kind: str = "grevlex"
    split: int = 0

    def key_for(self, ring: WeightedRing):
        if self.kind == "grevlex":
            return GrevlexKey(ring.weights)
        if self.kind == "block":
            return BlockKey(ring.weights, self.split)
        raise ValueError(f"unknown order {self.kind!r}")


GREVLEX = MonomialOrder()


def to_keyed(p: Polynomial, mono) -> dict:
    return {mono.key(e): c for e, c in p.items()}


def from_keyed(d: dict, mono, ring: WeightedRing) -> Polynomial:
    return Polynomial(ring, {mono.exps(k): c for k, c in d.items()})


class Ideal:
    """A homogeneous ideal given by generators; Groebner bases are cached."""

    def __init__(self, ring: WeightedRing, generators: Iterable[Polynomial], *, require_homogeneous: bool = True):
        gens = []
        for g in generators:
            if g.ring != ring:
                raise RingMismatchError("generator lives in another ring")
            if require_homogeneous and not g.is_homogeneous():
                raise ValueError(f"generator is not homogeneous: {g}")
            if not g.is_zero:
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)
        self._gb: dict = {}

    def groebner(self, order: MonomialOrder = GREVLEX) -> "GroebnerBasis":
        if order not in self._gb:
            self._gb[order] = buchberger(self, order)
        return self._gb[order]

    def contains(self, p: Polynomial) -> bool:
        return self.groebner().contains(p)

    def __add__(self, other) -> "Ideal":
        if isinstance(other, Ideal):
            if other.ring != self.ring:
                raise RingMismatchError("ring mismatch")
            return Ideal(self.ring, self.generators + other.generators)
        return Ideal(self.ring, self.generators + tuple(other))

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __repr__(self) -> str:
        return f"Ideal({self.ring}, [{', '.join(map(str, self.generators))}])"


class GroebnerBasis:
    """Reduced, monic Groebner basis."""

    def __init__(self, ring: WeightedRing, order: MonomialOrder, keyed: list[dict],
                 minimal_generators: Sequence[int] = (), truncated_at: int | None = None):
        self.ring = ring
        self.order = order
        self.mono = order.key_for(ring)
        self.keyed = keyed
        self.minimal_generators = tuple(minimal_generators)
        self.truncated_at = truncated_at
        self.elements = tuple(from_keyed(g, self.mono, ring) for g in keyed)
        self.lead_exps = tuple(self.mono.exps(max(g)) for g in keyed)
        self.leading_monomials = tuple(ring.monomial(e) for e in self.lead_exps)
        self._reducer = Reducer(SchreyerKey(self.mono, [(0,) * ring.nvars]), ring.field.modulus)
        for g in keyed:
            self._reducer.add(g)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def normal_form_keyed(self, f: dict) -> dict:
        return self._reducer.reduce(dict(f))

    def normal_form(self, p: Polynomial) -> Polynomial:
        if p.ring != self.ring:
            raise RingMismatchError("polynomial lives in another ring")
        return from_keyed(self.normal_form_keyed(to_keyed(p, self.mono)), self.mono, self.ring)

    def contains(self, p: Polynomial) -> bool:
        return self.normal_form(p).is_zero

    def is_unit(self) -> bool:
        return any(not any(e) for e in self.lead_exps)

    def is_standard(self, exps: Sequence[int]) -> bool:
        return not any(_divides_exps(l, exps) for l in self.lead_exps)

    def standard_monomials(self, d: int) -> list[tuple[int, ...]]:
        return [e for e in self.ring.monomials_of_degree(d) if self.is_standard(e)]

    def criterion_holds(self) -> bool:
        """Every S-pair reduces to zero."""
        order = SchreyerKey(self.mono, [(0,) * self.ring.nvars])
        return not spair_remainders(self.keyed, order, self.ring.field.modulus)


def buchberger(ideal: Ideal, order: MonomialOrder = GREVLEX, max_degree: int | None = None) -> GroebnerBasis:
    ring = ideal.ring
    mono = order.key_for(ring)
    module_order = SchreyerKey(mono, [(0,) * ring.nvars])
    gens = [to_keyed(g, mono) for g in ideal.generators]
    res = groebner_engine(gens, module_order, ring.field.modulus, ideal=True, max_degree=max_degree)
    return GroebnerBasis(ring, order, res.basis, res.minimal_generators,
                         max_degree if res.truncated else None)


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    return gb.normal_form(p)


def minimal_generators(ideal: Ideal) -> list[Polynomial]:
    """A minimal homogeneous generating subset of the given generators."""
    gb = ideal.groebner()
    return [ideal.generators[i] for i in sorted(gb.minimal_generators)]


def ideal_contains(big: Ideal, small: Ideal) -> bool:
    if big.ring != small.ring:
        raise RingMismatchError("ideals live in different rings")
    gb = big.groebner()
    return all(gb.contains(g) for g in small.generators)


def ideal_equal(a: Ideal, b: Ideal) -> bool:
    if a.ring != b.ring:
        raise RingMismatchError("ideals live in different rings")
    return ideal_contains(a, b) and ideal_contains(b, a)


def _reordered(ring: WeightedRing, first: Sequence[str]) -> WeightedRing:
    rest = [n for n in ring.names if n not in first]
    names = list(first) + rest
    return WeightedRing(tuple(names), tuple(ring.weights[ring.index(n)] for n in names), ring.field)


def eliminate(ideal: Ideal, drop_vars: Sequence[str]) -> Ideal:
    """``ideal`` intersected with the subring on the remaining variables."""
    ring = ideal.ring
    drop = [n for n in ring.names if n in set(drop_vars)]
    if len(drop) != len(set(drop_vars)):
        unknown = set(drop_vars) - set(ring.names)
        raise KeyError(f"unknown variables {sorted(unknown)}")
    work = _reordered(ring, drop)
    keep_names = tuple(n for n in ring.names if n not in drop)
    keep = WeightedRing(keep_names, tuple(ring.weights[ring.index(n)] for n in keep_names), ring.field)
    gens = [g.change_ring(work) for g in ideal.generators]
    gb = buchberger(Ideal(work, gens), MonomialOrder("block", len(drop)))
    out = []
    for g in gb.elements:
        if all(i >= len(drop) for i in g.support()):
            out.append(Polynomial(keep, {tuple(e[work.index(n)] for n in keep_names): c for e, c in g.items()}))
    return Ideal(keep, out)


def subring_presentation(ideal: Ideal, subring_gens: Sequence[tuple[str, Polynomial]]) -> Ideal:
    """Relations among the given homogeneous elements of ``S/ideal``.

    Each generator becomes a new variable of weight equal to its degree; the
    result lives in the ring of those new variables.
    """
    ring = ideal.ring
    names, weights = [], []
    for name, g in subring_gens:
        if g.ring != ring:
            raise RingMismatchError("subring generator lives in another ring")
        if g.is_zero or not g.is_homogeneous():
            raise ValueError(f"subring generator {name} must be nonzero and homogeneous")
        if name in ring.names or name in names:
            raise ValueError(f"name clash for {name!r}")
        names.append(name)
        weights.append(g.degree)
    big = WeightedRing(ring.names + tuple(names), ring.weights + tuple(weights), ring.field)
    gens = [g.change_ring(big) for g in ideal.generators]
    for name, g in subring_gens:
        gens.append(big.var(name) - g.change_ring(big))
    return eliminate(Ideal(big, gens), ring.names)


def krull_dimension(gb: GroebnerBasis) -> int:
    """Largest set of variables containing the support of no leading monomial."""
    n = gb.ring.nvars
    if gb.is_unit():
        return -1
    supports = [frozenset(i for i, a in enumerate(e) if a) for e in gb.lead_exps]
    for size in range(n, -1, -1):
        for subset in itertools.combinations(range(n), size):
            s = set(subset)
            if not any(sup <= s for sup in supports):
                return size
    return 0
