"""Counting regular spin structures on nodal curves, A_m chains and the curve catalog."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class CurveGraph:
    """Dual graph of a nodal curve: component genera and nodes as edges (0-indexed)."""

    genera: tuple[int, ...]
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if not self.genera:
            raise GraphError("a curve needs at least one component")
        if any(g < 0 for g in self.genera):
            raise GraphError("genera must be non-negative")
        norm = []
        for i, j in self.edges:
            if not (0 <= i < len(self.genera) and 0 <= j < len(self.genera)):
                raise GraphError(f"edge ({i}, {j}) refers to a missing component")
            norm.append((min(i, j), max(i, j)))
        object.__setattr__(self, "genera", tuple(self.genera))
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @property
    def n_components(self) -> int:
        return len(self.genera)

    def is_connected(self) -> bool:
        seen = {0}
        stack = [0]
        adj: dict[int, set] = {i: set() for i in range(self.n_components)}
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        while stack:
            for j in adj[stack.pop()]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        return len(seen) == self.n_components

    def edge_ends(self) -> list[int]:
        ends = [0] * self.n_components
        for i, j in self.edges:
            ends[i] += 1
            ends[j] += 1  # a self-loop contributes two ends
        return ends

    def omega_degrees(self) -> list[int]:
        return [2 * g - 2 + e for g, e in zip(self.genera, self.edge_ends())]

    def arithmetic_genus(self) -> int:
        return sum(self.genera) + len(self.edges) - self.n_components + 1

    def first_betti(self) -> int:
        return 2 * sum(self.genera) + len(self.edges) - self.n_components + 1


def count_regular_ggs_b1(omega_degrees: Sequence[int], b1: int) -> int:
    """Count for a curve whose first Betti number is supplied by the caller."""
    if b1 < 0:
        raise ValueError("b1 must be non-negative")
    if any(d % 2 for d in omega_degrees):
        return 0
    return 2 ** b1


def count_regular_ggs(graph: CurveGraph, b1: int | None = None) -> int:
    """Number of regular ggs structures: 0 if some omega-degree is odd, else 2^b1."""
    if not graph.is_connected():
        raise GraphError("the curve must be connected")
    return count_regular_ggs_b1(graph.omega_degrees(), graph.first_betti() if b1 is None else b1)


# -- A_m singularities ---------------------------------------------------------

@dataclass(frozen=True)
class SingularityChain:
    start: str
    steps: tuple[str, ...]

    @property
    def labels(self) -> list[str]:
        return [self.start, *self.steps]


def partial_normalisations(m: int) -> SingularityChain:
    """A_m -> A_{m-2} -> ... ending in "smooth" (m even) or "split" (m odd)."""
    if m < 1:
        raise ValueError("A_m needs m >= 1")
    steps = [f"A{k}" for k in range(m - 2, 0, -2)]
    steps.append("split" if m % 2 else "smooth")
    return SingularityChain(f"A{m}", tuple(steps))


def delta_invariant(n: int) -> int:
    return (n + 1) // 2


def branches(n: int) -> int:
    return 2 if n % 2 else 1


# -- catalog of genus-2 curves of types A and B ----------------------------------

@dataclass(frozen=True)
class CurveRecord:
    type: str                      # "A" or "B"
    singularities: tuple[int, ...]  # A_n indices, sorted descending
    reducible: bool
    geometric_genera: tuple[int, ...]
    arithmetic_genera: tuple[int, ...] = ()
    note: str = ""


def _multisets(budget: int, largest: int) -> Iterable[tuple[int, ...]]:
    yield ()
    for n in range(min(largest, budget - 1), 0, -1):
        for rest in _multisets(budget - n - 1, n):
            yield (n, *rest)


def type_a_records() -> list[CurveRecord]:
    out = []
    for sing in _multisets(6, 6):
        total = sum(n + 1 for n in sing)
        reducible = total == 6 and all(n % 2 for n in sing)
        if reducible:
            # two smooth rational curves exchanged by the involution
            genera = (0, 0)
        else:
            genera = (2 - sum(delta_invariant(n) for n in sing),)
        out.append(CurveRecord("A", sing, reducible, genera, (0, 0) if reducible else (2,)))
    return out


# the three genus-one component types: smooth elliptic, nodal rational, cuspidal rational
_B_COMPONENTS = (("smooth", 1, ()), ("nodal", 0, (1,)), ("cuspidal", 0, (2,)))


def type_b_records() -> list[CurveRecord]:
    out = []
    k = len(_B_COMPONENTS)
    for a in range(k):
        for b in range(a, k):
            ca, cb = _B_COMPONENTS[a], _B_COMPONENTS[b]
            sing = tuple(sorted(ca[2] + cb[2] + (1,), reverse=True))
            out.append(CurveRecord("B", sing, True, (ca[1], cb[1]), (1, 1),
                                   f"{ca[0]} + {cb[0]}, meeting in one node"))
    return out


def catalog_type_AB() -> list[CurveRecord]:
    return type_a_records() + type_b_records()


# -- graph files ---------------------------------------------------------------------

_EDGE = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)")


def parse_graph(text: str) -> CurveGraph:
    """Parse ``components: g1,g2,...`` and ``edges: (i,j) ...`` (1-indexed)."""
    genera = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep:
            raise GraphError(f"line {lineno}: expected 'components:' or 'edges:'")
        if key == "components":
            try:
                genera = [int(x) for x in rest.split(",") if x.strip()]
            except ValueError:
                raise GraphError(f"line {lineno}: genera must be integers") from None
        elif key == "edges":
            body = rest.strip()
            found = _EDGE.findall(body)
            if _EDGE.sub("", body).strip():
                raise GraphError(f"line {lineno}: malformed edge list")
            edges.extend((int(i), int(j)) for i, j in found)
        else:
            raise GraphError(f"line {lineno}: unknown key {key!r}")
    if genera is None:
        raise GraphError("missing 'components:' line")
    for i, j in edges:
        if i < 1 or j < 1:
            raise GraphError("edges are 1-indexed")
    return CurveGraph(tuple(genera), tuple((i - 1, j - 1) for i, j in edges))


def format_graph(graph: CurveGraph) -> str:
    comps = ",".join(str(g) for g in graph.genera)
    edges = " ".join(f"({i + 1},{j + 1})" for i, j in graph.edges)
    return f"components: {comps}\nedges: {edges}\n"

