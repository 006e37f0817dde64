"""Finite permutation groups given by generators.

Permutations are tuples ``p`` of length ``degree`` with ``p[x]`` the image of
the point ``x``; points are ``0 .. degree-1``.  Composition follows the usual
right-to-left convention, ``compose(p, q)[x] == p[q[x]]``.
"""

from __future__ import annotations

from collections import deque
from math import factorial, prod
from typing import Iterable, Sequence

from .errors import CapacityError, InputError

Perm = tuple

DEFAULT_GROUP_CAP = 10**6


def identity(degree: int) -> Perm:
    return tuple(range(degree))


def compose(p: Sequence[int], q: Sequence[int]) -> Perm:
    """Return ``p o q`` (apply ``q`` first)."""
    return tuple(p[x] for x in q)


def inverse(p: Sequence[int]) -> Perm:
    inv = [0] * len(p)
    for x, y in enumerate(p):
        inv[y] = x
    return tuple(inv)


def is_permutation(p: Sequence[int], degree: int) -> bool:
    return len(p) == degree and sorted(p) == list(range(degree))


def transposition(degree: int, a: int, b: int) -> Perm:
    """Swap of the (0-based) points ``a`` and ``b``."""
    p = list(range(degree))
    p[a], p[b] = p[b], p[a]
    return tuple(p)


def cycles(p: Sequence[int], offset: int = 0) -> list[tuple[int, ...]]:
    """Disjoint non-trivial cycles of ``p``; ``offset`` shifts printed points."""
    seen = set()
    out = []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        x = p[start]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = p[x]
        out.append(tuple(c + offset for c in cyc))
    return out


def cycle_string(p: Sequence[int], offset: int = 1) -> str:
    cs = cycles(p, offset)
    if not cs:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cs)


class PermutationGroup:
    """Subgroup of Sym(degree) generated by ``generators``.

    ``elements()`` enumerates by breadth-first closure and refuses to go past
    ``cap`` elements.  ``order()`` and membership go through a Schreier-Sims
    stabiliser chain, so they stay cheap for large groups.
    """

    def __init__(
        self,
        degree: int,
        generators: Iterable[Sequence[int]] = (),
        cap: int = DEFAULT_GROUP_CAP,
        order: int | None = None,
    ):
        if degree < 0:
            raise InputError("degree must be non-negative")
        self.degree = degree
        self.cap = cap
        ident = identity(degree)
        gens: list[Perm] = []
        for g in generators:
            g = tuple(g)
            if not is_permutation(g, degree):
                raise InputError(f"not a permutation of {degree} points: {g}")
            if g != ident and g not in gens:
                gens.append(g)
        self.generators: tuple[Perm, ...] = tuple(gens)
        self._order = order
        self._elements: frozenset | None = None
        self._sympy = None

    def __repr__(self) -> str:
        return f"PermutationGroup(degree={self.degree}, generators={len(self.generators)})"

    @property
    def identity(self) -> Perm:
        return identity(self.degree)

    def elements(self) -> frozenset:
        if self._elements is None:
            ident = self.identity
            seen = {ident}
            queue = deque([ident])
            while queue:
                g = queue.popleft()
                for s in self.generators:
                    h = compose(s, g)
                    if h not in seen:
                        seen.add(h)
                        if len(seen) > self.cap:
                            raise CapacityError(
                                f"group has more than {self.cap} elements"
                            )
                        queue.append(h)
            self._elements = frozenset(seen)
            if self._order is None:
                self._order = len(seen)
        return self._elements

    def _sympy_group(self):
        if self._sympy is None:
            from sympy.combinatorics import Permutation
            from sympy.combinatorics.perm_groups import PermutationGroup as SymPG

            if self.generators:
                gens = [Permutation(list(g)) for g in self.generators]
            else:
                gens = [Permutation(list(range(max(self.degree, 1))))]
            self._sympy = SymPG(gens)
        return self._sympy

    def order(self) -> int:
        if self._order is None:
            if self._elements is not None:
                self._order = len(self._elements)
            elif not self.generators:
                self._order = 1
            else:
                self._order = int(self._sympy_group().order())
        return self._order

    def __len__(self) -> int:
        return self.order()

    def __contains__(self, perm) -> bool:
        perm = tuple(perm)
        if not is_permutation(perm, self.degree):
            return False
        if self._elements is not None:
            return perm in self._elements
        if not self.generators:
            return perm == self.identity
        from sympy.combinatorics import Permutation

        return bool(self._sympy_group().contains(Permutation(list(perm))))

    def issubgroup(self, other: "PermutationGroup") -> bool:
        return self.degree == other.degree and all(g in other for g in self.generators)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermutationGroup):
            return NotImplemented
        return self.issubgroup(other) and other.issubgroup(self)

    __hash__ = None

    def orbits(self) -> list[tuple[int, ...]]:
        parent = list(range(self.degree))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self.generators:
            for x, y in enumerate(g):
                rx, ry = find(x), find(y)
                if rx != ry:
                    parent[max(rx, ry)] = min(rx, ry)
        blocks: dict[int, list[int]] = {}
        for x in range(self.degree):
            blocks.setdefault(find(x), []).append(x)
        return sorted((tuple(b) for b in blocks.values()), key=lambda b: b[0])

    def transpositions(self) -> list[tuple[int, int]]:
        """All transpositions ``(a, b)``, ``a < b``, lying in the group."""
        out = []
        for orbit in self.orbits():
            for i, a in enumerate(orbit):
                for b in orbit[i + 1:]:
                    if transposition(self.degree, a, b) in self:
                        out.append((a, b))
        return out

    def is_product_of_full_symmetric_groups(self) -> bool:
        """True iff the group is the direct product of Sym(orbit) over its orbits.

        The group always sits inside that product, so comparing orders is a
        complete certificate.
        """
        return self.order() == prod(factorial(len(o)) for o in self.orbits())

    def restrict_is_full_symmetric(self, block: Sequence[int]) -> bool:
        """Whether every transposition inside ``block`` belongs to the group."""
        block = list(block)
        return all(
            transposition(self.degree, a, b) in self
            for i, a in enumerate(block)
            for b in block[i + 1:]
        )
