"""Graded free resolutions of ``S/I``, Betti tables and Gorenstein data.

The resolution is built with Schreyer's construction: the syzygies of a
Groebner basis, taken from its S-pairs, are again a Groebner basis for the
induced order, so every step is division only.  The frame is then reduced to
a minimal resolution by cancelling unit entries.
"""
from __future__ import annotations

import re
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

from .groebner import GREVLEX, GroebnerBasis, Ideal, groebner_engine
from .hilbert import RationalSeries, monomial_numerator, tpoly_add, tpoly_prod
from .keys import GrevlexKey, PotKey, Reducer, SchreyerKey, lcm_exps
from .polycore import Polynomial, RingMismatchError, WeightedRing


class ResolutionTooLong(RuntimeError):
    pass


# -- raw polynomial helpers on {exps: coeff} ------------------------------------

def _pmul(a: dict, b: dict, p: int) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    if p:
        return {e: c % p for e, c in out.items() if c % p}
    return {e: c for e, c in out.items() if c}


def _psub_inplace(a: dict, b: dict, p: int) -> None:
    for e, c in b.items():
        v = a.get(e, 0) - c
        if p:
            v %= p
        if v:
            a[e] = v
        else:
            a.pop(e, None)


def _pscale(a: dict, c, p: int) -> dict:
    if p:
        return {e: x * c % p for e, x in a.items() if x * c % p}
    return {e: x * c for e, x in a.items() if x * c}


# -- public containers ------------------------------------------------------------

@dataclass(frozen=True)
class FreeModule:
    """``sum S(-twist)`` in the order given."""

    twists: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.twists)


class PolyMatrix:
    """Sparse matrix of polynomials; ``entries[(row, col)]`` are nonzero."""

    def __init__(self, ring: WeightedRing, nrows: int, ncols: int, entries: dict | None = None):
        self.ring = ring
        self.nrows = nrows
        self.ncols = ncols
        self.entries = {k: v for k, v in (entries or {}).items() if not v.is_zero}

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Polynomial]]) -> "PolyMatrix":
        ring = rows[0][0].ring
        entries = {(i, j): p for i, r in enumerate(rows) for j, p in enumerate(r)}
        return cls(ring, len(rows), len(rows[0]), entries)

    def __getitem__(self, rc: tuple[int, int]) -> Polynomial:
        return self.entries.get(rc, self.ring.zero())

    def column(self, j: int) -> dict[int, Polynomial]:
        return {r: p for (r, c), p in self.entries.items() if c == j}

    def columns(self) -> list[dict[int, Polynomial]]:
        cols: list[dict] = [dict() for _ in range(self.ncols)]
        for (r, c), p in self.entries.items():
            cols[c][r] = p
        return cols

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        rows = defaultdict(dict)
        for (r, c), p in self.entries.items():
            rows[c][r] = p
        out: dict = {}
        for (k, j), q in other.entries.items():
            for r, p in rows.get(k, {}).items():
                out[(r, j)] = out.get((r, j), self.ring.zero()) + p * q
        return PolyMatrix(self.ring, self.nrows, other.ncols, out)

    def is_zero(self) -> bool:
        return not self.entries

    def rows_list(self) -> list[list[Polynomial]]:
        return [[self[(i, j)] for j in range(self.ncols)] for i in range(self.nrows)]

    def __repr__(self) -> str:
        return f"PolyMatrix({self.nrows}x{self.ncols}, {len(self.entries)} nonzero)"


@dataclass
class Resolution:
    ring: WeightedRing
    modules: list[FreeModule]
    differentials: list[PolyMatrix]  # differentials[i] maps modules[i+1] -> modules[i]
    minimal: bool

    @property
    def length(self) -> int:
        return len(self.modules) - 1

    def betti_table(self) -> "BettiTable":
        return betti_table(self)


@dataclass(frozen=True)
class BettiTable:
    """``entries[i]`` maps twist -> multiplicity of ``S(-twist)`` in step i."""

    entries: tuple[tuple[tuple[int, int], ...], ...]

    @classmethod
    def from_steps(cls, steps: Iterable[dict[int, int]]) -> "BettiTable":
        return cls(tuple(tuple(sorted((j, b) for j, b in s.items() if b)) for s in steps))

    def step(self, i: int) -> dict[int, int]:
        return dict(self.entries[i]) if i < len(self.entries) else {}

    def ranks(self) -> list[int]:
        return [sum(b for _, b in s) for s in self.entries]

    @property
    def length(self) -> int:
        return len(self.entries) - 1

    def to_text(self) -> str:
        return format_betti(self)


@dataclass(frozen=True)
class GorensteinCertificate:
    pd: int
    last_rank: int
    dualizing_twist: int  # top twist of the last module minus the sum of the weights
    betti_symmetric: bool
    cohen_macaulay: bool | None = None  # pd == nvars - expected_dim, when a dimension was given

    @property
    def projective_dimension(self) -> int:
        return self.pd

    @property
    def is_gorenstein(self) -> bool:
        return self.last_rank == 1 and self.betti_symmetric and self.cohen_macaulay is not False


# -- Schreyer frame -----------------------------------------------------------------

class _Level:
    """Generators of one module in the frame, with the order on their source."""

    def __init__(self, elems: list[dict], target_order, source_order):
        self.elems = elems
        self.target_order = target_order
        self.source_order = source_order


def _lex_key(exps):
    return tuple(exps)


def schreyer_frame(gb: GroebnerBasis, max_length: int | None = None) -> list[_Level]:
    """Non-minimal free resolution from iterated Schreyer syzygies."""
    ring = gb.ring
    p = ring.field.modulus
    mono = GrevlexKey(ring.weights)
    if gb.order != GREVLEX:
        raise ValueError("resolution needs a basis for the default order")
    zero = (0,) * ring.nvars
    base_order = SchreyerKey(mono, [zero])
    # sort so that lex order of leads increases with the index
    elems = sorted((dict(g) for g in gb.keyed), key=lambda g: _lex_key(mono.exps(max(g))))
    levels: list[_Level] = []
    target = base_order
    limit = max_length if max_length is not None else ring.nvars + 1
    while elems:
        if len(levels) >= limit:
            raise ResolutionTooLong(f"resolution longer than {limit}")
        leads = [max(g) for g in elems]
        info = [target.decode(l) for l in leads]
        shifts = [target.total_exps(l) for l in leads]
        order_idx = sorted(range(len(elems)), key=lambda i: (target.ranks[info[i][0]], i))
        ranks = [0] * len(elems)
        for r, i in enumerate(order_idx):
            ranks[i] = r
        source = SchreyerKey(mono, shifts, ranks)
        levels.append(_Level(elems, target, source))

        red = Reducer(target, p)
        for g in elems:
            red.add(g)
        groups: dict[int, list[int]] = defaultdict(list)
        for i, (c, _) in enumerate(info):
            groups[c].append(i)
        new: list[tuple[tuple, dict]] = []
        for members in groups.values():
            for pos, i in enumerate(members):
                ai = info[i][1]
                cands = []
                for j in members[:pos]:
                    l = lcm_exps(ai, info[j][1])
                    cands.append((tuple(x - y for x, y in zip(l, ai)), j, l))
                cands.sort(key=lambda c: sum(c[0]))
                chosen: list[tuple] = []
                for m, j, l in cands:
                    if any(all(x <= y for x, y in zip(m2, m)) for m2, _, _ in chosen):
                        continue
                    chosen.append((m, j, l))
                for m, j, l in chosen:
                    mj = tuple(x - y for x, y in zip(l, info[j][1]))
                    di = target.delta(m)
                    dj = target.delta(mj)
                    image = {k + di: c for k, c in elems[i].items()}
                    for k, c in elems[j].items():
                        kk = k + dj
                        v = image.get(kk, 0) - c
                        if p:
                            v %= p
                        if v:
                            image[kk] = v
                        else:
                            image.pop(kk, None)
                    quotients: list = []
                    rem = red.reduce(image, quotients=quotients)
                    if rem:
                        raise ArithmeticError("S-vector did not reduce to zero; basis is not Groebner")
                    syz: dict = {source.encode(i, m): 1}
                    kj = source.encode(j, mj)
                    syz[kj] = (syz.get(kj, 0) - 1) % p if p else syz.get(kj, 0) - 1
                    for idx, delta, q in quotients:
                        kk = source.base_keys[idx] + (delta // target.R) * source.R
                        v = syz.get(kk, 0) - q
                        if p:
                            v %= p
                        if v:
                            syz[kk] = v
                        else:
                            syz.pop(kk, None)
                    new.append(((i, _lex_key(m)), syz))
        new.sort(key=lambda t: t[0])
        elems = [s for _, s in new]
        target = source
    return levels


# -- minimalisation -------------------------------------------------------------------

class _Complex:
    """Mutable complex: cols[k][c] = {row: poly-dict} for d_{k+1}: F_{k+1} -> F_k."""

    def __init__(self, ring: WeightedRing, twists: list[list[int]], cols: list[list[dict]]):
        self.ring = ring
        self.p = ring.field.modulus
        self.twists = [dict(enumerate(t)) for t in twists]
        self.cols = [dict(enumerate(c)) for c in cols]

    def _unit_entry(self, k: int):
        d = self.cols[k]
        src_tw, tgt_tw = self.twists[k + 1], self.twists[k]
        for c in sorted(d):
            tc = src_tw[c]
            for r, poly in d[c].items():
                if tgt_tw[r] == tc and len(poly) == 1:
                    (e, a), = poly.items()
                    if not any(e):
                        return c, r, a
        return None

    def cancel(self, k: int, c: int, r: int, a) -> None:
        p = self.p
        d = self.cols[k]
        col_c = d.pop(c)
        inv = pow(a, -1, p) if p else 1 / a
        for j, col in d.items():
            entry = col.get(r)
            if entry is None:
                continue
            factor = _pscale(entry, inv, p)
            for row, poly in col_c.items():
                if row == r:
                    continue
                cur = col.get(row)
                cur = dict(cur) if cur else {}
                _psub_inplace(cur, _pmul(factor, poly, p), p)
                if cur:
                    col[row] = cur
                else:
                    col.pop(row, None)
            col.pop(r, None)
        del self.twists[k + 1][c]
        del self.twists[k][r]
        if k + 1 < len(self.cols):
            for col in self.cols[k + 1].values():
                col.pop(c, None)
        if k >= 1:
            self.cols[k - 1].pop(r, None)

    def minimize(self) -> None:
        for k in range(len(self.cols)):
            while True:
                hit = self._unit_entry(k)
                if hit is None:
                    break
                self.cancel(k, *hit)

    def export(self) -> tuple[list[FreeModule], list[PolyMatrix]]:
        ring = self.ring
        orders = []
        for tw in self.twists:
            keys = sorted(tw, key=lambda i: (tw[i], i))
            orders.append({old: new for new, old in enumerate(keys)})
        modules = [FreeModule(tuple(tw[i] for i in sorted(tw, key=lambda i: (tw[i], i)))) for tw in self.twists]
        mats = []
        for k, d in enumerate(self.cols):
            entries = {}
            for c, col in d.items():
                for r, poly in col.items():
                    entries[(orders[k][r], orders[k + 1][c])] = Polynomial(ring, poly)
            mats.append(PolyMatrix(ring, len(orders[k]), len(orders[k + 1]), entries))
        # drop trailing zero modules
        while len(modules) > 1 and modules[-1].rank == 0:
            modules.pop()
            mats.pop()
        return modules, mats


def _frame_complex(gb: GroebnerBasis, levels: list[_Level]) -> _Complex:
    ring = gb.ring
    twists = [[0]]
    cols = []
    for lvl in levels:
        tw = [lvl.source_order.mono.degree(lvl.source_order.shift_keys[i]) for i in range(len(lvl.elems))]
        twists.append(tw)
        level_cols = []
        for g in lvl.elems:
            col: dict = defaultdict(dict)
            for k, c in g.items():
                comp, exps = lvl.target_order.decode(k)
                col[comp][exps] = c
            level_cols.append(dict(col))
        cols.append(level_cols)
    return _Complex(ring, twists, cols)


def free_resolution(ideal: Ideal, max_length: int | None = None, minimal: bool = True) -> Resolution:
    """Graded free resolution of ``S/ideal``; minimal unless asked otherwise."""
    gb = ideal.groebner()
    if gb.is_unit():
        return Resolution(ideal.ring, [FreeModule(())], [], True)
    levels = schreyer_frame(gb, max_length=None)
    cx = _frame_complex(gb, levels)
    if minimal:
        cx.minimize()
    modules, mats = cx.export()
    if max_length is not None and len(modules) - 1 > max_length:
        raise ResolutionTooLong(f"projective dimension {len(modules) - 1} exceeds {max_length}")
    res = Resolution(ideal.ring, modules, mats, minimal)
    assert differentials_homogeneous(res)
    return res


def minimalize(res: Resolution) -> Resolution:
    twists = [list(m.twists) for m in res.modules]
    cols = []
    for mat in res.differentials:
        level = []
        for col in mat.columns():
            level.append({r: dict(p.items()) for r, p in col.items()})
        cols.append(level)
    cx = _Complex(res.ring, twists, cols)
    cx.minimize()
    modules, mats = cx.export()
    return Resolution(res.ring, modules, mats, True)


# -- syzygies of a matrix ----------------------------------------------------------------

def _column_twists(matrix: PolyMatrix, target_twists: Sequence[int]) -> list[int]:
    out = []
    for j, col in enumerate(matrix.columns()):
        degs = {p.degree + target_twists[r] for r, p in col.items()} if col else set()
        for r, p in col.items():
            if not p.is_homogeneous():
                raise ValueError("matrix entries must be homogeneous")
        if len(degs) > 1:
            raise ValueError(f"column {j} is not homogeneous")
        out.append(degs.pop() if degs else 0)
    return out


def syzygies(matrix: PolyMatrix, target_twists: Sequence[int] | None = None,
             source_twists: Sequence[int] | None = None) -> tuple[PolyMatrix, list[int]]:
    """Minimal generators of the kernel of ``matrix`` as columns, with their twists."""
    ring = matrix.ring
    p = ring.field.modulus
    n, m = matrix.nrows, matrix.ncols
    tt = list(target_twists) if target_twists is not None else [0] * n
    st = list(source_twists) if source_twists is not None else _column_twists(matrix, tt)
    mono = GrevlexKey(ring.weights)
    # target components dominate, so elements free of them are syzygies
    order = PotKey(mono, tt + st, [m + r for r in range(n)] + list(range(m)))
    gens = []
    for j, col in enumerate(matrix.columns()):
        g = {order.encode(r, e): c for r, poly in col.items() for e, c in poly.items()}
        g[order.encode(n + j, (0,) * ring.nvars)] = 1
        gens.append(g)
    res = groebner_engine(gens, order, p, ideal=False)
    syz = []
    for g in res.basis:
        comp, _ = order.decode(max(g))
        if comp >= n:
            syz.append(g)
    # re-key on the source module alone and keep a minimal generating set
    sorder = PotKey(mono, st)
    keyed = []
    for g in syz:
        h = {}
        for k, c in g.items():
            comp, e = order.decode(k)
            h[sorder.encode(comp - n, e)] = c
        keyed.append(h)
    mres = groebner_engine(keyed, sorder, p, ideal=False)
    chosen = [keyed[i] for i in sorted(mres.minimal_generators, key=lambda i: (sorder.degree(max(keyed[i])), i))]
    entries = {}
    twists = []
    for j, h in enumerate(chosen):
        col: dict = defaultdict(dict)
        for k, c in h.items():
            comp, e = sorder.decode(k)
            col[comp][e] = c
        for r, terms in col.items():
            entries[(r, j)] = Polynomial(ring, terms)
        twists.append(sorder.degree(max(h)))
    return PolyMatrix(ring, m, len(chosen), entries), twists


def submodule_quotient_series(matrix: PolyMatrix, target_twists: Sequence[int]) -> RationalSeries:
    """Hilbert series of ``F / (columns of matrix)`` where ``F = sum S(-twist)``."""
    ring = matrix.ring
    mono = GrevlexKey(ring.weights)
    order = PotKey(mono, list(target_twists))
    gens = []
    for col in matrix.columns():
        g = {order.encode(r, e): c for r, poly in col.items() for e, c in poly.items()}
        if g:
            gens.append(g)
    res = groebner_engine(gens, order, ring.field.modulus, ideal=False)
    leads: dict[int, list] = defaultdict(list)
    for g in res.basis:
        comp, e = order.decode(max(g))
        leads[comp].append(e)
    num: dict = {}
    for r, tw in enumerate(target_twists):
        part = monomial_numerator(leads.get(r, []), ring.weights)
        num = tpoly_add(num, {d + tw: c for d, c in part.items()})
    return RationalSeries.make(num, ring.weights)


def free_module_series(twists: Sequence[int], weights: Sequence[int]) -> RationalSeries:
    num: dict = {}
    for tw in twists:
        num[tw] = num.get(tw, 0) + 1
    return RationalSeries.make(num, weights)


# -- checks ---------------------------------------------------------------------------------

def composition_vanishes(res: Resolution) -> bool:
    for a, b in zip(res.differentials, res.differentials[1:]):
        if not (a @ b).is_zero():
            return False
    return True


def differentials_homogeneous(res: Resolution) -> bool:
    """Every entry from ``S(-a)`` to ``S(-b)`` is homogeneous of degree ``a - b``."""
    for k, mat in enumerate(res.differentials):
        tgt, src = res.modules[k].twists, res.modules[k + 1].twists
        for (r, c), poly in mat.entries.items():
            if not poly.is_homogeneous() or poly.degree != src[c] - tgt[r]:
                return False
    return True


def exactness_defects(res: Resolution) -> list[int]:
    """Steps ``i >= 1`` where homology is nonzero, found by comparing Hilbert series.

    Given ``d_i d_{i+1} = 0``, the complex is exact at ``F_i`` exactly when
    ``F_i / im d_{i+1}`` and ``im d_i`` have the same Hilbert series.
    """
    from .hilbert import series_equal
    weights = res.ring.weights
    cok = []
    for i, d in enumerate(res.differentials):
        cok.append(submodule_quotient_series(d, res.modules[i].twists))
    bad = []
    for i in range(1, len(res.modules)):
        target = res.modules[i - 1].twists
        image_series = _series_sub(free_module_series(target, weights), cok[i - 1])
        if i < len(res.differentials):
            lhs = cok[i]
        else:
            lhs = free_module_series(res.modules[i].twists, weights)
        if not series_equal(lhs, image_series):
            bad.append(i)
    return bad


def _series_sub(a: RationalSeries, b: RationalSeries) -> RationalSeries:
    if a.denominator != b.denominator:
        raise ValueError("denominators differ")
    return RationalSeries.make(tpoly_add(a.num, b.num, -1), a.denominator)


def euler_numerator(res: Resolution) -> dict:
    num: dict = {}
    for i, m in enumerate(res.modules):
        for tw in m.twists:
            num[tw] = num.get(tw, 0) + (-1) ** i
    return {d: c for d, c in num.items() if c}


def euler_characteristic_matches(res: Resolution, series: RationalSeries) -> bool:
    from .hilbert import series_equal
    return series_equal(RationalSeries.make(euler_numerator(res), res.ring.weights), series)


def betti_table(res: Resolution) -> BettiTable:
    return BettiTable.from_steps(Counter(m.twists) for m in res.modules)


def gorenstein_certificate(res: Resolution, ring: WeightedRing | None = None,
                           expected_dim: int | None = None) -> GorensteinCertificate:
    """Read pd, last rank, dualizing twist and Betti symmetry off a minimal resolution.

    A last module with several twists is reported (rank > 1, symmetry false)
    rather than rejected.
    """
    ring = ring or res.ring
    table = betti_table(res)
    c = table.length
    last = table.step(c)
    top = max(last) if last else 0
    symmetric = True
    for i in range(c + 1):
        mirror = table.step(c - i)
        for j, b in table.step(i).items():
            if mirror.get(top - j, 0) != b:
                symmetric = False
    cm = None if expected_dim is None else c == ring.nvars - expected_dim
    return GorensteinCertificate(c, sum(last.values()), top - sum(ring.weights), symmetric, cm)


# -- text form of Betti tables -------------------------------------------------------------------

def format_betti(table: BettiTable) -> str:
    lines = []
    for i, step in enumerate(table.entries):
        body = ", ".join(f"{j}^{b}" for j, b in step)
        lines.append(f"step {i}: {body}")
    return "\n".join(lines) + "\n"


_STEP_RE = re.compile(r"\s*step\s+(\d+)\s*:\s*(.*)")


_ENTRY_RE = re.compile(r"(-?\d+)(?:\^(\d+))?")


def parse_betti(text: str) -> BettiTable:
    steps: dict[int, dict[int, int]] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0]
        if not line.strip():
            continue
        m = _STEP_RE.fullmatch(line)
        if not m:
            raise ValueError(f"line {lineno}: expected 'step i: twist^mult, ...'")
        i = int(m.group(1))
        if i in steps:
            raise ValueError(f"line {lineno}: step {i} given twice")
        entry: dict[int, int] = {}
        for item in filter(None, (s.strip() for s in m.group(2).split(","))):
            em = _ENTRY_RE.fullmatch(item)
            if not em:
                raise ValueError(f"line {lineno}: bad entry {item!r}")
            tw, mult = int(em.group(1)), int(em.group(2) or 1)
            entry[tw] = entry.get(tw, 0) + mult
        steps[i] = entry
    if 0 not in steps:
        steps[0] = {0: 1}
    top = max(steps)
    return BettiTable.from_steps(steps.get(i, {}) for i in range(top + 1))
