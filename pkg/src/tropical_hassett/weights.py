"""Exact weight vectors, the weight complex K_w, and groups derived from w.

Markings (and therefore the entries of ``w``) are numbered ``1 .. n``.  Index
sets passed to the functions here use that numbering.  Permutation groups act
on the points ``0 .. n-1``, point ``k`` standing for marking ``k + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import factorial, prod
from typing import Iterable, Iterator, Sequence

from .errors import DomainError, InputError
from .permgroup import PermutationGroup, transposition

Rational = Fraction

ONE = Fraction(1)


def _as_fraction(x) -> Fraction:
    if isinstance(x, float):
        raise InputError("floating-point weights are not accepted; use Fraction or 'p/q'")
    try:
        return Fraction(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not an exact rational: {x!r}") from exc


@dataclass(frozen=True)
class WeightVector:
    """Weights ``w_1 .. w_n`` with ``0 < w_i <= 1``."""

    weights: tuple[Fraction, ...]

    def __init__(self, weights: Iterable):
        ws = tuple(_as_fraction(x) for x in weights)
        if not ws:
            raise InputError("a weight vector needs at least one entry")
        for i, x in enumerate(ws, 1):
            if not (0 < x <= 1):
                raise InputError(f"w_{i} = {x} is not in (0, 1]")
        object.__setattr__(self, "weights", ws)

    @property
    def n(self) -> int:
        return len(self.weights)

    def __len__(self) -> int:
        return len(self.weights)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.weights)

    def __getitem__(self, i: int) -> Fraction:
        """1-based access: ``w[1]`` is the first weight."""
        if not 1 <= i <= self.n:
            raise InputError(f"marking {i} out of range 1..{self.n}")
        return self.weights[i - 1]

    def total(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def is_stable_for_genus(self, g: int) -> bool:
        return 2 * g - 2 + self.total() > 0

    def require_genus(self, g: int) -> None:
        if g < 0:
            raise InputError("genus must be non-negative")
        if not self.is_stable_for_genus(g):
            raise DomainError(f"2g - 2 + sum(w) must be positive (g={g}, sum={self.total()})")

    def __str__(self) -> str:
        return "(" + ", ".join(str(x) for x in self.weights) + ")"


def as_weights(w) -> WeightVector:
    return w if isinstance(w, WeightVector) else WeightVector(w)


def _check_indices(w: WeightVector, S: Iterable[int]) -> frozenset[int]:
    S = frozenset(S)
    for i in S:
        if not isinstance(i, int) or not 1 <= i <= w.n:
            raise InputError(f"index {i!r} out of range 1..{w.n}")
    return S


def weight_of_subset(w, S: Iterable[int]) -> Fraction:
    """Exact sum of ``w_i`` over ``i in S``."""
    w = as_weights(w)
    S = _check_indices(w, S)
    return sum((w.weights[i - 1] for i in S), Fraction(0))


def kw_contains(w, S: Iterable[int]) -> bool:
    return weight_of_subset(w, S) <= 1


def _faces(w: WeightVector) -> Iterator[tuple[frozenset[int], Fraction]]:
    """Every face of K_w with its weight, by depth-first extension."""
    n = w.n
    ws = w.weights

    def rec(start: int, current: list[int], total: Fraction):
        yield frozenset(current), total
        for j in range(start, n + 1):
            t = total + ws[j - 1]
            if t <= 1:
                current.append(j)
                yield from rec(j + 1, current, t)
                current.pop()

    yield from rec(1, [], Fraction(0))


def _sort_sets(sets: Iterable[frozenset[int]]) -> list[frozenset[int]]:
    return sorted(sets, key=lambda s: (len(s), sorted(s)))


class WeightComplex:
    """The simplicial complex K_w on ``{1..n}``: faces are subsets of weight <= 1."""

    def __init__(self, w):
        self.weights = as_weights(w)

    def __contains__(self, S) -> bool:
        return kw_contains(self.weights, S)

    def faces(self) -> list[frozenset[int]]:
        return _sort_sets(S for S, _ in _faces(self.weights))

    @cached_property
    def facets(self) -> list[frozenset[int]]:
        ws = self.weights.weights
        out = []
        for S, total in _faces(self.weights):
            if all(j in S or total + ws[j - 1] > 1 for j in range(1, self.weights.n + 1)):
                out.append(S)
        return _sort_sets(out)


def kw_facets(w) -> list[frozenset[int]]:
    return WeightComplex(w).facets


def kw_has_one_dimensional_facet(w) -> bool:
    return any(len(F) == 2 for F in kw_facets(w))


def subset_sums(values: Sequence[Fraction], limit: Fraction = ONE) -> set[Fraction]:
    """All sums of sub-multisets of ``values`` that do not exceed ``limit``."""
    sums = {Fraction(0)}
    for v in values:
        sums |= {s + v for s in sums if s + v <= limit}
    return sums


def is_transposition_automorphism(w, i: int, j: int) -> bool:
    """Does swapping markings ``i`` and ``j`` map faces of K_w to faces?

    With ``w_i <= w_j`` the swap fails exactly when some ``T`` avoiding
    ``i, j`` has ``1 - w_j < w(T) <= 1 - w_i``.
    """
    w = as_weights(w)
    _check_indices(w, (i, j))
    if i == j:
        raise InputError("a transposition needs two distinct indices")
    a, b = w[i], w[j]
    if a == b:
        return True
    lo, hi = min(a, b), max(a, b)
    rest = [x for k, x in enumerate(w.weights, 1) if k not in (i, j)]
    return not any(1 - hi < s <= 1 - lo for s in subset_sums(rest, 1 - lo))


def aut_kw(w) -> PermutationGroup:
    """Aut(K_w) as the subgroup of S_n generated by its transpositions."""
    w = as_weights(w)
    n = w.n
    gens = [
        transposition(n, i - 1, j - 1)
        for i, j in combinations(range(1, n + 1), 2)
        if is_transposition_automorphism(w, i, j)
    ]
    return PermutationGroup(n, gens)


def _admissible(w: WeightVector, i: int, j: int, disjoint: bool) -> bool:
    wi, wj = w[i], w[j]
    pool = [k for k in range(1, w.n + 1) if not disjoint or k not in (i, j)]
    for size in range(2, len(pool) + 1):
        for S in combinations(pool, size):
            s = sum((w[k] for k in S), Fraction(0))
            if (wi + s <= 1) != (wj + s <= 1):
                return False
    return True


def admissible_transpositions(w, disjoint: bool = True) -> list[tuple[int, int]]:
    """Pairs ``(i, j)``, ``i < j``, whose swap preserves every threshold test
    ``w_i + w(S) <= 1`` over sets ``S`` with ``|S| >= 2``.

    By default ``S`` ranges over subsets avoiding ``i`` and ``j``; pass
    ``disjoint=False`` to quantify over all subsets instead.
    """
    w = as_weights(w)
    if w.n < 2:
        raise InputError("need at least two markings")
    return [
        (i, j)
        for i, j in combinations(range(1, w.n + 1), 2)
        if _admissible(w, i, j, disjoint)
    ]


def aut_mbar(w, disjoint: bool = True) -> PermutationGroup:
    w = as_weights(w)
    gens = [transposition(w.n, i - 1, j - 1) for i, j in admissible_transpositions(w, disjoint)]
    return PermutationGroup(w.n, gens)


def symmetrize(w) -> WeightVector:
    """Replace each weight by the mean over its Aut(K_w)-orbit.

    The orbit mean keeps K_w unchanged: a set and its images under the
    orbit's symmetric group are faces together, and averaging over those
    images gives the new weight.
    """
    w = as_weights(w)
    if w.n < 2:
        raise InputError("need at least two markings")
    new = list(w.weights)
    for orbit in aut_kw(w).orbits():
        mean = sum((w.weights[k] for k in orbit), Fraction(0)) / len(orbit)
        for k in orbit:
            new[k] = mean
    out = WeightVector(new)
    if kw_facets(out) != kw_facets(w):
        raise AssertionError("orbit averaging changed K_w")  # pragma: no cover
    return out


@dataclass(frozen=True)
class HeavyLight:
    heavy: frozenset[int]
    light: frozenset[int]
    neither: frozenset[int]
    is_heavy_light: bool


def _is_heavy(w: WeightVector, i: int) -> bool:
    return all(w[i] + w[j] > 1 for j in range(1, w.n + 1) if j != i)


def _is_light(w: WeightVector, i: int) -> bool:
    rest = [w[j] for j in range(1, w.n + 1) if j != i]
    return all(s + w[i] <= 1 for s in subset_sums(rest) if s < 1)


def classify_heavy_light(w) -> HeavyLight:
    """Split markings into heavy, light and neither.

    An index that meets both definitions (an all-ones vector, say) counts as
    heavy.  ``is_heavy_light`` holds when every index is heavy or light,
    both kinds occur, and the lights sum to at most one.
    """
    w = as_weights(w)
    heavy = frozenset(i for i in range(1, w.n + 1) if _is_heavy(w, i))
    light = frozenset(i for i in range(1, w.n + 1) if i not in heavy and _is_light(w, i))
    neither = frozenset(range(1, w.n + 1)) - heavy - light
    hl = (
        not neither
        and bool(heavy)
        and bool(light)
        and weight_of_subset(w, light) <= 1
    )
    return HeavyLight(heavy, light, neither, hl)


def heavy_light_vector(m: int, n: int, eps) -> WeightVector:
    """``(eps^(m), 1^(n))``: ``m`` light markings first, then ``n`` heavy ones."""
    eps = _as_fraction(eps)
    return WeightVector([eps] * m + [ONE] * n)


def _min_positive_slack(w: WeightVector) -> Fraction:
    slacks = [1 - t for _, t in _faces(w) if t < 1]
    return min(slacks)


def _extend_by_block(w: WeightVector, k: int) -> WeightVector:
    """Given K_w realising a group G, append markings realising G x S_k."""
    w = symmetrize(w) if w.n >= 2 else w
    cls = classify_heavy_light(w)
    if not cls.heavy:
        return WeightVector(list(w.weights) + [ONE] * k)
    if not cls.light:
        e = _min_positive_slack(w) / k
        return WeightVector(list(w.weights) + [e] * k)
    eps = min(w[i] for i in cls.light)
    facets = kw_facets(w)
    for _ in range(64):
        base = [ONE if i in cls.heavy else eps if i in cls.light else w[i] for i in range(1, w.n + 1)]
        if kw_facets(base) == facets:
            break
        eps /= 2
    else:  # pragma: no cover
        raise AssertionError("could not normalise light weights")
    return WeightVector(base + [1 - eps / k] + [eps / k] * k)


def realize_product(block_sizes: Sequence[int]) -> WeightVector:
    """A weight vector whose Aut(K_w) is the product of S_{n_i}.

    Built inductively: start from an all-ones block, then append each further
    block either as new heavy or light markings, or behind a separating
    marking of weight ``1 - eps/n_k``.  Blocks of size one contribute a
    trivial factor and are skipped.
    """
    sizes = [int(s) for s in block_sizes]
    if not sizes or any(s < 1 for s in sizes):
        raise InputError("block sizes must be a non-empty list of positive integers")
    big = [s for s in sizes if s > 1]
    if not big:
        return WeightVector([ONE])
    w = WeightVector([ONE] * big[0])
    for k in big[1:]:
        w = _extend_by_block(w, k)
    return w


def product_structure_matches(group: PermutationGroup, block_sizes: Sequence[int]) -> bool:
    """Structural certificate that ``group`` is the product of S_{n_i}.

    Checks the order, that the non-trivial orbits have exactly the sizes
    ``n_i > 1``, and that the group is the full product over its orbits.
    """
    sizes = sorted(s for s in block_sizes if s > 1)
    orbit_sizes = sorted(len(o) for o in group.orbits() if len(o) > 1)
    return (
        group.order() == prod(factorial(s) for s in sizes)
        and orbit_sizes == sizes
        and group.is_product_of_full_symmetric_groups()
    )
