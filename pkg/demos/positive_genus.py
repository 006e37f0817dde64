"""For g >= 1 every symmetry of the complex comes from relabelling markings.

The script builds a few complexes, computes their automorphism groups by
search, and compares with Aut(K_w) element by element.

Run: python3 demos/positive_genus.py
"""

from fractions import Fraction

from tropical_hassett.complex import build_delta, v_subcomplex
from tropical_hassett.verify import verify_excluded_case, verify_filtration_and_locals, verify_main_theorem

half = Fraction(1, 2)
for g, w in [(1, (1, 1, 1)), (1, (half, half, half)), (2, (half, half))]:
    report = verify_main_theorem(g, w)
    print(report.summary())
    X = build_delta(g, w)
    levels = [v_subcomplex(X, i).sizes() for i in range(1, 2 * g - 2 + len(w) + 1)]
    print("  vertex-count filtration sizes:", levels)
    print("  ", verify_filtration_and_locals(g, w).summary().splitlines()[0])

# Too few markings: two light points in genus 1 give a single edge and no symmetry.
print(verify_excluded_case(1, (Fraction(2, 5), Fraction(2, 5))).summary())
