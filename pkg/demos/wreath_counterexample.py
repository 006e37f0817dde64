"""In genus 0 the complex can have far more symmetry than K_w.

For w = (1/3^3, 7/12^3) the one-skeleton is three disjoint 3-leaf stars, so
its automorphisms form a wreath product of order 6^3 * 3! = 1296, while
Aut(K_w) = S_3 x S_3 has order 36.

Run: python3 demos/wreath_counterexample.py
"""

from fractions import Fraction

import networkx as nx

from tropical_hassett.complex import aut_complex, build_delta, graph_caption, one_skeleton_g0
from tropical_hassett.verify import induced_map_report
from tropical_hassett.weights import aut_kw

w = [Fraction(1, 3)] * 3 + [Fraction(7, 12)] * 3
X = build_delta(0, w)
print("simplex counts per dimension:", X.sizes())

S = one_skeleton_g0(X)
for comp in nx.connected_components(S):
    star = S.subgraph(comp)
    centre = max(star.degree, key=lambda d: d[1])[0]
    print("component with centre", graph_caption(X.graph(0, centre).graph))
    for leaf in sorted(star.neighbors(centre)):
        print("   leaf", graph_caption(X.graph(0, leaf).graph))

print("|Aut(complex)| =", aut_complex(X).order())
print("|Aut(K_w)|     =", aut_kw(w).order())
ok, witnesses = induced_map_report(X, group_cap=10_000)
print("induced map is a bijection:", ok)
print("complex generators missing from the image:", len(witnesses.get("generators_outside_image", [])))
