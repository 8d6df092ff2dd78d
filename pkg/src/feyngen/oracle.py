"""Independent ground-truth generators for the graph engine.

Two unrelated oracles: exhaustive connected-multigraph enumeration weighted by
a direct automorphism count over joint vertex/edge-end renumberings, and a
formal power-series oracle that reads connected n-point coefficients off
log Z of the zero-dimensional model.  Neither shares code paths with the
recursion engine or the closed-form symmetry formulas it uses.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping, Sequence

from .algebra import ONE, Monomial
from .graphs import OrderedGraph, canonicalize, is_connected
from .recursion import GraphSum

DEFAULT_EDGE_LIMIT = 5


class ResourceLimitError(RuntimeError):
    """Requested enumeration exceeds the configured size limit."""


# ---------------------------------------------------------------------------
# brute-force symmetry counting


def _end_bijection_count(source: list[tuple[int, int]], target: list[tuple[int, int]]) -> int:
    """Count bijections of edges with an end orientation each, mapping the
    source edge list onto the target edge multiset end-by-end."""
    e = len(source)
    used = [False] * e
    count = 0

    def backtrack(k: int) -> None:
        nonlocal count
        if k == e:
            count += 1
            return
        a, b = source[k]
        for idx in range(e):
            if used[idx]:
                continue
            ta, tb = target[idx]
            for x, y in ((ta, tb), (tb, ta)):
                if (a, b) == (x, y):
                    used[idx] = True
                    backtrack(k + 1)
                    used[idx] = False

    backtrack(0)
    return count


def brute_force_symmetry_factor(g: OrderedGraph) -> int:
    """Count joint renumberings of vertices and edge ends fixing the graph.

    Pure search: every vertex permutation that fixes the external assignment
    is combined with an explicit count of edge/end bijections.
    """
    edges = list(g.edges)
    total = 0
    for perm in itertools.permutations(range(1, g.vertex_count + 1)):
        if any(perm[vtx - 1] != vtx for _, vtx in g.externals):
            continue
        mapped = [(perm[a - 1], perm[b - 1]) for a, b in edges]
        total += _end_bijection_count(mapped, edges)
    return total


def brute_force_edge_symmetry_factor(g: OrderedGraph) -> int:
    """Edge-end renumberings fixing the graph with the vertex order held fixed."""
    edges = list(g.edges)
    return _end_bijection_count(edges, edges)


# ---------------------------------------------------------------------------
# exhaustive connected enumeration


def enumerate_connected(
    l: int,
    v: int,
    externals: Monomial = ONE,
    max_edges: int = DEFAULT_EDGE_LIMIT,
) -> GraphSum:
    """All connected graphs with l loops, v vertices and the given external
    labels, one canonical representative each, weighted by the inverse of the
    brute-force automorphism count."""
    if v < 1:
        raise ValueError("vertex count must be at least 1")
    if l < 0:
        raise ValueError("loop number must be non-negative")
    if not externals.has_distinct_factors():
        raise ValueError("external labels must be pairwise distinct")
    e = l + v - 1
    if e < 0:
        raise ValueError("no graphs with negative edge count")
    if e > max_edges:
        raise ResourceLimitError(f"edge count {e} exceeds limit {max_edges}")
    slots = [(i, j) for i in range(1, v + 1) for j in range(i, v + 1)]
    labels = externals.factors
    acc: dict[OrderedGraph, Fraction] = {}
    for edge_multiset in itertools.combinations_with_replacement(slots, e):
        skeleton = OrderedGraph(v, edge_multiset)
        if not is_connected(skeleton):
            continue
        for assignment in itertools.product(range(1, v + 1), repeat=len(labels)):
            g = OrderedGraph(v, edge_multiset, tuple(zip(labels, assignment)))
            canon = canonicalize(g)
            if canon not in acc:
                acc[canon] = Fraction(1, brute_force_symmetry_factor(canon))
    return GraphSum(v, acc)


# ---------------------------------------------------------------------------
# zero-dimensional series oracle


def perfect_matching_count(points: int) -> int:
    """Number of perfect matchings of a set of points, by explicit pairing."""
    if points % 2:
        return 0

    def count(rest: tuple[int, ...]) -> int:
        if not rest:
            return 1
        first, *others = rest
        total = 0
        for i in range(len(others)):
            total += count(tuple(others[:i] + others[i + 1:]))
        return total

    return count(tuple(range(points)))


def double_factorial(n: int) -> int:
    result = 1
    while n > 1:
        result *= n
        n -= 2
    return result


@dataclass(frozen=True)
class SeriesEntry:
    coefficient: Fraction
    covariance_power: int


class SeriesTable:
    """Connected coefficients of the zero-dimensional model, from log Z.

    Keys are (source count n, per-arity vertex counts); the value carries the
    exact rational coefficient of the corresponding coupling monomial and the
    implied power of the covariance symbol.
    """

    def __init__(
        self,
        arities: tuple[int, ...],
        max_sources: int,
        max_vertices: int,
        entries: Mapping[tuple[int, tuple[int, ...]], SeriesEntry],
    ) -> None:
        self.arities = arities
        self.max_sources = max_sources
        self.max_vertices = max_vertices
        self._entries = dict(entries)

    def coefficient(self, n: int, vertex_counts: Mapping[int, int]) -> SeriesEntry:
        """Connected n-point coefficient for the given number of vertices of
        each arity (n-factorial normalization already applied)."""
        if n > self.max_sources:
            raise ResourceLimitError(f"source count {n} beyond truncation {self.max_sources}")
        vec = tuple(vertex_counts.get(k, 0) for k in self.arities)
        extra = set(vertex_counts) - set(self.arities)
        if extra:
            raise ValueError(f"unknown arities {sorted(extra)}")
        if sum(vec) > self.max_vertices:
            raise ResourceLimitError("vertex count beyond truncation")
        return self._entries.get((n, vec), SeriesEntry(Fraction(0), 0))

    def connected_value(
        self,
        n: int,
        l: int,
        v: int,
        couplings: Mapping[int, Fraction],
        covariance: Fraction,
    ) -> Fraction:
        """Numeric l-loop, v-vertex connected n-point value: sum the stored
        coefficients over arity splits compatible with (l, v, n)."""
        if n > self.max_sources or v > self.max_vertices:
            raise ResourceLimitError("grade beyond truncation")
        total = Fraction(0)
        for (nn, vec), entry in self._entries.items():
            if nn != n or sum(vec) != v:
                continue
            half_edges = sum(k * c for k, c in zip(self.arities, vec))
            if (half_edges - n) % 2:
                continue
            internal_edges = (half_edges - n) // 2
            if internal_edges - v + 1 != l:
                continue
            value = entry.coefficient * covariance**entry.covariance_power
            for k, c in zip(self.arities, vec):
                value *= couplings.get(k, Fraction(0)) ** c
            total += value
        return total


def zero_dim_log_z(
    arities: Iterable[int], max_sources: int, max_vertices: int
) -> SeriesTable:
    """Formal log of the zero-dimensional partition function.

    Z is the Gaussian expectation of exp(sum_k coupling_k phi^k / k!) times
    exp(source * phi); moments are (2k-1)!! covariance^k.  The logarithm is
    taken as a truncated multivariate series with exact coefficients.
    """
    arities = tuple(sorted(set(arities)))
    if any(k < 1 for k in arities):
        raise ValueError("coupling arities must be at least 1")
    # Series terms are keyed by (source power n, per-arity vertex counts,
    # covariance power); coefficients are exact rationals and include the
    # 1/n! of the source exponential.
    Zero = Fraction(0)
    z: dict[tuple[int, tuple[int, ...], int], Fraction] = {}
    vertex_ranges = [range(max_vertices + 1) for _ in arities]
    for vec in itertools.product(*vertex_ranges):
        if sum(vec) > max_vertices:
            continue
        for n in range(max_sources + 1):
            half_edges = n + sum(k * c for k, c in zip(arities, vec))
            if half_edges % 2:
                continue
            coeff = Fraction(double_factorial(half_edges - 1), factorial(n))
            for k, c in zip(arities, vec):
                coeff /= factorial(c) * factorial(k) ** c
            z[(n, vec, half_edges // 2)] = coeff

    def truncated_product(a, b):
        out: dict[tuple[int, tuple[int, ...], int], Fraction] = {}
        for (n1, v1, g1), c1 in a.items():
            for (n2, v2, g2), c2 in b.items():
                n = n1 + n2
                vec = tuple(x + y for x, y in zip(v1, v2))
                if n > max_sources or sum(vec) > max_vertices:
                    continue
                key = (n, vec, g1 + g2)
                c = out.get(key, Zero) + c1 * c2
                if c:
                    out[key] = c
                else:
                    out.pop(key, None)
        return out

    zero_vec = tuple(0 for _ in arities)
    w = dict(z)
    w[(0, zero_vec, 0)] = w.get((0, zero_vec, 0), Zero) - 1
    w = {k: c for k, c in w.items() if c}
    log_z: dict[tuple[int, tuple[int, ...], int], Fraction] = {}
    power = dict(w)
    max_order = max_sources + max_vertices
    for m in range(1, max_order + 1):
        sign = Fraction((-1) ** (m + 1), m)
        for key, c in power.items():
            val = log_z.get(key, Zero) + sign * c
            if val:
                log_z[key] = val
            else:
                log_z.pop(key, None)
        if m < max_order:
            power = truncated_product(power, w)
            if not power:
                break

    entries: dict[tuple[int, tuple[int, ...]], SeriesEntry] = {}
    for (n, vec, gpow), coeff in log_z.items():
        value = coeff * factorial(n)
        if value:
            entries[(n, vec)] = SeriesEntry(value, gpow)
    return SeriesTable(arities, max_sources, max_vertices, entries)


# ---------------------------------------------------------------------------
# comparison reports


@dataclass(frozen=True)
class ComparisonReport:
    ok: bool
    diffs: tuple[tuple[str, object, object], ...] = ()

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "equal"
        lines = [f"{len(self.diffs)} mismatch(es):"]
        for key, left, right in self.diffs:
            lines.append(f"  {key}: engine={left} oracle={right}")
        return "\n".join(lines)


def compare(engine_output, oracle_output, tolerance: float = 0.0) -> ComparisonReport:
    """Exact (or toleranced, for floats) equality report with per-item diffs."""
    if isinstance(engine_output, GraphSum) and isinstance(oracle_output, GraphSum):
        left = engine_output.canonical_merge()
        right = oracle_output.canonical_merge()
        diffs = []
        keys = {g for g, _ in left.items()} | {g for g, _ in right.items()}
        for g in sorted(keys, key=lambda g: (g.edges, g.externals)):
            cl, cr = left.coefficient(g), right.coefficient(g)
            if cl != cr:
                diffs.append((f"v={g.vertex_count} edges={g.edges} ext={g.externals}", cl, cr))
        return ComparisonReport(not diffs, tuple(diffs))
    delta = engine_output - oracle_output
    ok = delta == 0 if tolerance == 0.0 else abs(delta) <= tolerance
    if ok:
        return ComparisonReport(True)
    return ComparisonReport(False, (("value", engine_output, oracle_output),))
