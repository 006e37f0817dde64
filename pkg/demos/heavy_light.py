"""Heavy/light weights in genus 0: m light points of weight eps and n heavy ones.

Symmetries of the complex are exactly S_m x S_n. The count of one-edge
expansions of each one-edge tree follows a closed formula, and the trees
that isolate one light and one heavy point are the ones with the most.

Run: python3 demos/heavy_light.py
"""

from fractions import Fraction

from tropical_hassett import graphs as gr
from tropical_hassett.verify import expansion_formula, verify_heavy_light
from tropical_hassett.weights import classify_heavy_light, heavy_light_vector

m, n = 2, 4
eps = Fraction(1, m)
w = heavy_light_vector(m, n, eps)
c = classify_heavy_light(w)
print("weights:", ", ".join(map(str, w.weights)))
print("light:", sorted(c.light), "heavy:", sorted(c.heavy))
print(verify_heavy_light(m, n, eps).summary())

print("\none-edge trees, expansions counted and predicted:")
for G in gr.enumerate_stable_graphs(0, w, max_edges=1)[1]:
    side = G.markings_at(0)
    x, y = len(side), len(side & c.light)
    count = len(gr.one_edge_expansions(G, w, 0))
    small = min(side, G.markings_at(1), key=len)
    tag = "  <- one light + one heavy" if len(small) == 2 and len(small & c.light) == 1 else ""
    print(f"  {sorted(side)!s:>14} | {sorted(G.markings_at(1))!s:<14} {count:>3} {expansion_formula(m, n, x, y):>3}{tag}")
