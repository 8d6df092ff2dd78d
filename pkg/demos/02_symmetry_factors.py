"""Symmetry factors of some familiar diagrams, three ways.

The automorphism count S of a multigraph (with external legs held fixed)
factors into a vertex-permutation part and an edge part; the edge part has
the closed form prod(2^p_i p_i!) * prod(q_j!) over self-loop multiplicities
p_i and parallel-edge multiplicities q_j.  We compare that factorization
against a direct brute-force count.
"""

from feyngen import (
    OrderedGraph,
    brute_force_symmetry_factor,
    edge_symmetry_factor,
    symmetry_factor,
    vertex_symmetry_factor,
)

NAMED = {
    "self-loop (tadpole)": OrderedGraph(1, ((1, 1),)),
    "double self-loop": OrderedGraph(1, ((1, 1), (1, 1))),
    "theta": OrderedGraph(2, ((1, 2), (1, 2), (1, 2))),
    "dumbbell": OrderedGraph(2, ((1, 1), (2, 2), (1, 2))),
    "double edge": OrderedGraph(2, ((1, 2), (1, 2))),
    "sunset with legs": OrderedGraph(2, ((1, 2), (1, 2), (1, 2)), {"x": 1, "y": 2}),
    "one-loop propagator": OrderedGraph(2, ((1, 2), (1, 2)), {"x": 1, "y": 2}),
}

print(f"{'graph':<22}{'S_vertex':>9}{'S_edge':>8}{'product':>9}{'brute':>7}")
for name, g in NAMED.items():
    sv = vertex_symmetry_factor(g)
    se = edge_symmetry_factor(g)
    s = symmetry_factor(g)
    brute = brute_force_symmetry_factor(g)
    assert s == sv * se == brute
    print(f"{name:<22}{sv:>9}{se:>8}{s:>9}{brute:>7}")
