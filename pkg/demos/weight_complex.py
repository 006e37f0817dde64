"""Walk through a weight complex: faces, facets, symmetries and their normal form.

Run: python3 demos/weight_complex.py
"""

from fractions import Fraction

from tropical_hassett.permgroup import cycle_string
from tropical_hassett.weights import (
    admissible_transpositions,
    aut_kw,
    aut_mbar,
    kw_facets,
    kw_has_one_dimensional_facet,
    symmetrize,
)


def show(w):
    print("weights:", ", ".join(str(x) for x in w))
    print("  facets:", " ".join("{" + ",".join(map(str, sorted(f))) + "}" for f in kw_facets(w)))
    K = aut_kw(w)
    print(f"  |Aut(K_w)| = {K.order()}, generated by", " ".join(cycle_string(g) for g in K.generators) or "()")
    print(f"  admissible transpositions: {admissible_transpositions(w)}")
    print(f"  |group they generate| = {aut_mbar(w).order()}")
    print("  has a 1-dimensional facet:", kw_has_one_dimensional_facet(w))
    print("  symmetrized:", ", ".join(str(x) for x in symmetrize(w).weights))
    print()


half = Fraction(1, 2)
# Three heavy points: K_w is three isolated vertices, any permutation preserves it.
show([1, 1, 1])
# Two heavy points and two half-weights. Only the two halves can be swapped,
# but all 24 permutations keep the thresholds used by admissible swaps.
show([1, 1, half, half])
# Unequal weights with the same complex collapse to a common orbit mean.
show([Fraction(1, 3), Fraction(1, 2), 1])
