"""The graph generator: self-loop and vertex-split operators and the loop/vertex recursion.

Graphs are generated vertex-ordered; identical ordered terms merge their
rational coefficients.  Canonical merging (summing weights over renumbering
classes) is the final reporting step and yields weight 1/S per unordered
connected graph, S being its symmetry factor.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping

from .algebra import BOUND_LABEL_PREFIX, ONE, Monomial, WeightedTensorSum, coproduct
from .graphs import OrderedGraph, canonicalize

HALF = Fraction(1, 2)


class GraphSum:
    """Finite map from ordered graphs to exact rational weights.

    All graphs in one sum share the vertex count and the external label set.
    Zero coefficients are dropped.  Instances are immutable.
    """

    __slots__ = ("vertex_count", "_terms")

    def __init__(
        self,
        vertex_count: int,
        terms: Mapping[OrderedGraph, Fraction] | Iterable[tuple[OrderedGraph, Fraction]] = (),
    ) -> None:
        if vertex_count < 1:
            raise ValueError("vertex count must be positive")
        acc: dict[OrderedGraph, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        label_set: frozenset[str] | None = None
        for g, coeff in items:
            if g.vertex_count != vertex_count:
                raise ValueError("all graphs in a sum must share the vertex count")
            if label_set is None:
                label_set = g.external_labels
            elif g.external_labels != label_set:
                raise ValueError("all graphs in a sum must share the external label set")
            coeff = acc.get(g, Fraction(0)) + coeff
            if coeff:
                acc[g] = coeff
            else:
                acc.pop(g, None)
        self.vertex_count = vertex_count
        self._terms = acc

    def items(self) -> Iterator[tuple[OrderedGraph, Fraction]]:
        return iter(self._terms.items())

    def coefficient(self, g: OrderedGraph) -> Fraction:
        return self._terms.get(g, Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GraphSum):
            return NotImplemented
        return self.vertex_count == other.vertex_count and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.vertex_count, frozenset(self._terms.items())))

    def __add__(self, other: "GraphSum") -> "GraphSum":
        if self.vertex_count != other.vertex_count:
            raise ValueError("vertex count mismatch in sum")
        return GraphSum(
            self.vertex_count, itertools.chain(self._terms.items(), other._terms.items())
        )

    def scaled(self, factor: Fraction) -> "GraphSum":
        if not factor:
            return GraphSum(self.vertex_count)
        return GraphSum(self.vertex_count, ((g, c * factor) for g, c in self._terms.items()))

    def canonical_merge(self) -> "GraphSum":
        """Sum weights over vertex-renumbering classes, keyed by canonical form."""
        return GraphSum(
            self.vertex_count,
            ((canonicalize(g), c) for g, c in self._terms.items()),
        )

    def restricted(self, keep: Callable[[OrderedGraph], bool]) -> "GraphSum":
        return GraphSum(self.vertex_count, ((g, c) for g, c in self._terms.items() if keep(g)))

    def __repr__(self) -> str:
        return f"GraphSum(v={self.vertex_count}, terms={len(self._terms)})"


@dataclass(frozen=True)
class GenOptions:
    """Generation options.

    min_valence is the truncation threshold k: when pruning is active, vertex
    splits leaving one side with fewer than k attached ends are dropped, so
    surviving vertices end with valence at least k+1.  Pruning is only sound
    once no further self-loop can be added, i.e. on recursion cells that have
    already reached max_loops; with max_loops unset no pruning happens.
    """

    min_valence: int = 0
    max_loops: int | None = None
    bound_prefix: str = BOUND_LABEL_PREFIX


DEFAULT_OPTIONS = GenOptions()

_OMEGA_CACHE: dict[tuple, GraphSum] = {}

#: Number of vertex-split distributions produced since the last reset;
#: used to compare pruned and unpruned generation cost.
_STATS = {"split_terms": 0}


def clear_cache() -> None:
    _OMEGA_CACHE.clear()


def reset_stats() -> None:
    _STATS["split_terms"] = 0


def split_term_count() -> int:
    return _STATS["split_terms"]


def apply_T(i: int, s: GraphSum) -> GraphSum:
    """Attach a self-loop at vertex i to every graph; halve every coefficient."""
    if not 1 <= i <= s.vertex_count:
        raise ValueError(f"vertex index {i} out of range 1..{s.vertex_count}")
    return GraphSum(
        s.vertex_count,
        ((OrderedGraph(g.vertex_count, g.edges + ((i, i),), g.externals), c * HALF)
         for g, c in s.items()),
    )


def _split_vertex(g: OrderedGraph, i: int, min_ends: int) -> Iterator[tuple[OrderedGraph, int]]:
    """All ways of splitting vertex i into vertices i and i+1, joined by a new edge.

    Yields (graph, multiplicity); multiplicities > 1 arise from the two
    distinguishable ends of a split self-loop.  With min_ends > 0,
    distributions leaving either side with fewer than min_ends attached ends
    (not counting the new connecting edge) are dropped.
    """

    def shift(x: int) -> int:
        return x + 1 if x > i else x

    # Tokens: one per attached end at vertex i.
    ext_here = [lab for lab, vtx in g.externals if vtx == i]
    ext_rest = [(lab, shift(vtx)) for lab, vtx in g.externals if vtx != i]
    plain_ends: list[int] = []      # other endpoint (already shifted) of a non-self-loop edge
    loop_ids: list[int] = []
    fixed_edges: list[tuple[int, int]] = []
    loop_counter = 0
    for a, b in g.edges:
        if a == b == i:
            loop_ids.append(loop_counter)
            loop_counter += 1
        elif a == i:
            plain_ends.append(shift(b))
        elif b == i:
            plain_ends.append(shift(a))
        else:
            fixed_edges.append((shift(a), shift(b)))

    tokens = (
        [("ext", lab) for lab in ext_here]
        + [("end", other) for other in plain_ends]
        + [("loop", lid, 0) for lid in loop_ids]
        + [("loop", lid, 1) for lid in loop_ids]
    )
    for sides in itertools.product((0, 1), repeat=len(tokens)):
        n_left = sides.count(0)
        n_right = len(sides) - n_left
        if min_ends and (n_left < min_ends or n_right < min_ends):
            continue
        _STATS["split_terms"] += 1
        new_edges = list(fixed_edges)
        new_edges.append((i, i + 1))
        new_ext = list(ext_rest)
        loop_side: dict[int, list[int]] = {}
        for token, side in zip(tokens, sides):
            host = i + side
            if token[0] == "ext":
                new_ext.append((token[1], host))
            elif token[0] == "end":
                new_edges.append((host, token[1]))
            else:
                loop_side.setdefault(token[1], []).append(host)
        for ends in loop_side.values():
            new_edges.append((ends[0], ends[1]))
        yield OrderedGraph(g.vertex_count + 1, tuple(new_edges), tuple(new_ext)), 1


def apply_Q(i: int, s: GraphSum, min_ends: int = 0) -> GraphSum:
    """Split vertex i in all ways and reconnect the halves with a new edge.

    Output has one more vertex (later vertices shift up by one) and every
    coefficient carries an overall factor 1/2.
    """
    if not 1 <= i <= s.vertex_count:
        raise ValueError(f"vertex index {i} out of range 1..{s.vertex_count}")
    acc: dict[OrderedGraph, Fraction] = {}
    for g, c in s.items():
        base = c * HALF
        for new_graph, mult in _split_vertex(g, i, min_ends):
            coeff = acc.get(new_graph, Fraction(0)) + base * mult
            if coeff:
                acc[new_graph] = coeff
            else:
                acc.pop(new_graph, None)
    return GraphSum(s.vertex_count + 1, acc)


def _check_externals(externals: Monomial) -> None:
    if not externals.has_distinct_factors():
        raise ValueError("external labels must be pairwise distinct")


def omega(
    l: int, v: int, externals: Monomial = ONE, opts: GenOptions = DEFAULT_OPTIONS
) -> GraphSum:
    """Weighted sum of all connected graphs with l loops, v vertices and the
    given external labels; after canonical merging each unordered graph
    carries weight 1/S, the inverse of its symmetry factor.

    Results are memoized by (l, v, externals, opts).
    """
    if v < 1:
        raise ValueError("vertex count must be at least 1")
    if l < 0:
        raise ValueError("loop number must be non-negative")
    _check_externals(externals)
    key = (l, v, externals, opts)
    cached = _OMEGA_CACHE.get(key)
    if cached is not None:
        return cached
    if l == 0 and v == 1:
        g = OrderedGraph(1, (), tuple((lab, 1) for lab in externals.factors))
        result = GraphSum(1, {g: Fraction(1)})
    else:
        total = GraphSum(v)
        if v > 1:
            prune = (
                opts.min_valence > 0
                and opts.max_loops is not None
                and l >= opts.max_loops
            )
            min_ends = opts.min_valence if prune else 0
            prev = omega(l, v - 1, externals, opts)
            for i in range(1, v):
                total = total + apply_Q(i, prev, min_ends)
        if l > 0:
            prev = omega(l - 1, v, externals, opts)
            for i in range(1, v + 1):
                total = total + apply_T(i, prev)
        result = total.scaled(Fraction(1, l + v - 1))
    _OMEGA_CACHE[key] = result
    return result


def concat(a: GraphSum, b: GraphSum) -> GraphSum:
    """Tensor concatenation: each pair of graphs side by side as one graph."""
    offset = a.vertex_count
    acc: list[tuple[OrderedGraph, Fraction]] = []
    for ga, ca in a.items():
        for gb, cb in b.items():
            g = OrderedGraph(
                offset + gb.vertex_count,
                ga.edges + tuple((x + offset, y + offset) for x, y in gb.edges),
                ga.externals + tuple((lab, vtx + offset) for lab, vtx in gb.externals),
            )
            acc.append((g, ca * cb))
    return GraphSum(offset + b.vertex_count, acc)


def glue(s: GraphSum | tuple[GraphSum, GraphSum], u: str, w: str) -> GraphSum:
    """Contract the bound external labels u and w into one internal edge.

    Accepts a single sum, or a pair which is concatenated first (u must live
    in the left factor, w in the right).  Coefficients are unchanged.
    """
    if isinstance(s, tuple):
        left, right = s
        for g, _ in left.items():
            if w in g.externals_map:
                raise ValueError(f"bound label {w!r} found in the left glue factor")
            break
        s = concat(left, right)
    acc: list[tuple[OrderedGraph, Fraction]] = []
    for g, c in s.items():
        ext = g.externals_map
        if u not in ext or w not in ext:
            raise ValueError(f"bound labels {u!r}, {w!r} must appear in every term")
        a, b = ext.pop(u), ext.pop(w)
        acc.append(
            (OrderedGraph(g.vertex_count, g.edges + ((a, b),), tuple(ext.items())), c)
        )
    return GraphSum(s.vertex_count, acc)


def _fresh_bound_pair(externals: Monomial, prefix: str) -> tuple[str, str]:
    depth = 0
    while True:
        u, w = f"{prefix}u{depth}", f"{prefix}w{depth}"
        if u not in externals.factors and w not in externals.factors:
            return u, w
        depth += 1


def omega_alt(l: int, v: int, externals: Monomial = ONE) -> GraphSum:
    """Alternative recursion: build from smaller generators glued by one edge.

    The l-loop v-vertex sum is 1/(l+v-1) times (a) the (l-1)-loop sum with an
    extra edge attached in all ways plus (b) all ordered pairs of generators
    with totals (l, v) joined by one edge.  Agrees exactly with omega.
    """
    if v < 1:
        raise ValueError("vertex count must be at least 1")
    if l < 0:
        raise ValueError("loop number must be non-negative")
    _check_externals(externals)
    if l == 0 and v == 1:
        return omega(0, 1, externals)
    u, w = _fresh_bound_pair(externals, BOUND_LABEL_PREFIX)
    uw = Monomial.of(u, w)
    total = GraphSum(v)
    if l > 0:
        total = total + glue(omega(l - 1, v, externals * uw), u, w).scaled(HALF)
    if v > 1:
        split = coproduct(externals)
        for term, pc in split.items():
            part_left, part_right = term.slots
            left_m = part_left * Monomial.of(u)
            right_m = part_right * Monomial.of(w)
            for a in range(l + 1):
                for b in range(1, v):
                    pair = (omega(a, b, left_m), omega(l - a, v - b, right_m))
                    total = total + glue(pair, u, w).scaled(pc * HALF)
    return total.scaled(Fraction(1, l + v - 1))


def vertex_bound(n: int, m: int, a: int) -> int:
    """Largest vertex count a graph with n external edges, at most m loops and
    every vertex of valence at least a (a >= 3) can have: floor((n+2m-2)/(a-2)).
    """
    if a < 3:
        raise ValueError("minimum valence must be at least 3")
    return (n + 2 * m - 2) // (a - 2)


def distribute(s: GraphSum, wts: WeightedTensorSum) -> GraphSum:
    """Attach each tensor slot's labels as externals of the matching vertex.

    Realizes the product of a graph sum with a rank-v weighted tensor sum of
    bare monomials; label sets must stay disjoint.
    """
    acc: list[tuple[OrderedGraph, Fraction]] = []
    for g, cg in s.items():
        if g.vertex_count != wts.rank:
            raise ValueError("tensor rank must equal the vertex count")
        for term, ct in wts.items():
            extra = tuple(
                (lab, slot_index + 1)
                for slot_index, mono in enumerate(term.slots)
                for lab in mono.factors
            )
            acc.append((OrderedGraph(g.vertex_count, g.edges, g.externals + extra), cg * ct))
    return GraphSum(s.vertex_count, acc)
