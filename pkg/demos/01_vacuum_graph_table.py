"""Generate the table of connected vacuum multigraphs with up to three edges.

Each cell (l, v) of the recursion contributes every connected multigraph with
l loops and v vertices, weighted by the inverse of its automorphism count.
Summing the weights in a cell gives the cell's contribution to log Z of the
free-field normalized partition function.
"""

from fractions import Fraction

from feyngen import brute_force_symmetry_factor, omega

for e in range(0, 4):
    print(f"--- {e} edge(s) ---")
    for v in range(1, e + 2):
        l = e - v + 1
        cell = omega(l, v).canonical_merge()
        total = Fraction(0)
        for g, w in sorted(cell.items(), key=lambda kv: kv[0].edges):
            s = brute_force_symmetry_factor(g)
            check = "ok" if w == Fraction(1, s) else "MISMATCH"
            print(f"  l={l} v={v}  weight {str(w):>6}  S={s:<3} [{check}]  edges {g.edges}")
            total += w
        print(f"  l={l} v={v}  cell total {total}")
    print()
