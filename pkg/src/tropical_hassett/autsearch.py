"""Automorphism groups of finite structures with typed, labelled unary maps.

A structure is a list of node kinds plus, for each node ``x``, a tuple
``out[x]`` of targets: ``out[x][k]`` is the image of ``x`` under the ``k``-th
map defined on nodes of that kind.  An automorphism is a kind-preserving
bijection ``phi`` with ``out[phi(x)][k] == phi(out[x][k])``.

The group is found by individualisation-refinement along a base, with the
order computed as the product of basic orbit lengths.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Sequence


@dataclass
class GroupResult:
    generators: list[tuple[int, ...]]
    order: int
    orbit_sizes: list[int]
    base: list[int]


class _Structure:
    def __init__(self, kind: Sequence[int], out: Sequence[Sequence[int]]):
        self.n = len(kind)
        self.kind = list(kind)
        self.out = [tuple(t) for t in out]
        inc: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for x, targets in enumerate(self.out):
            for k, y in enumerate(targets):
                inc[y].append((k, x))
        self.inc = inc

    def _signatures(self, col: list[int]) -> list[tuple]:
        return [
            (
                col[x],
                tuple(col[y] for y in self.out[x]),
                tuple(sorted((k, col[y]) for k, y in self.inc[x])),
            )
            for x in range(self.n)
        ]

    def refine_pair(self, a: list[int], b: list[int]):
        """Refine two colourings in lockstep; ``None`` once they diverge."""
        while True:
            sa, sb = self._signatures(a), self._signatures(b)
            ordered = sorted(sa)
            if ordered != sorted(sb):
                return None
            rank = {}
            for s in ordered:
                rank.setdefault(s, len(rank))
            na = [rank[s] for s in sa]
            nb = [rank[s] for s in sb]
            if len(rank) == len(set(a)):
                return na, nb
            a, b = na, nb

    def refine(self, col: list[int]) -> list[int]:
        return self.refine_pair(col, col)[0]

    def is_automorphism(self, phi: Sequence[int]) -> bool:
        if sorted(phi) != list(range(self.n)):
            return False
        for x in range(self.n):
            if self.kind[phi[x]] != self.kind[x]:
                return False
            if self.out[phi[x]] != tuple(phi[y] for y in self.out[x]):
                return False
        return True


def _individualise(col: list[int], x: int) -> list[int]:
    new = list(col)
    new[x] = max(col) + 1
    return new


def _target_cell(col: list[int]) -> list[int] | None:
    cells: dict[int, list[int]] = {}
    for x, c in enumerate(col):
        cells.setdefault(c, []).append(x)
    for c in sorted(cells):
        if len(cells[c]) > 1:
            return cells[c]
    return None


def _find_map(S: _Structure, a: list[int], b: list[int]) -> tuple[int, ...] | None:
    """An automorphism carrying colouring ``a`` onto colouring ``b``, if any."""
    pair = S.refine_pair(a, b)
    if pair is None:
        return None
    a, b = pair
    cell = _target_cell(a)
    if cell is None:
        where = {c: y for y, c in enumerate(b)}
        phi = tuple(where[c] for c in a)
        return phi if S.is_automorphism(phi) else None
    colour = a[cell[0]]
    x = cell[0]
    for y in (z for z, c in enumerate(b) if c == colour):
        phi = _find_map(S, _individualise(a, x), _individualise(b, y))
        if phi is not None:
            return phi
    return None


def _orbit(point: int, gens: list[tuple[int, ...]]) -> set[int]:
    seen = {point}
    stack = [point]
    while stack:
        x = stack.pop()
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def automorphism_group(kind: Sequence[int], out: Sequence[Sequence[int]]) -> GroupResult:
    S = _Structure(kind, out)
    if S.n == 0:
        return GroupResult([], 1, [], [])
    start = S.refine(_rank(kind))
    chain = [start]
    base: list[int] = []
    cells: list[list[int]] = []
    while True:
        cell = _target_cell(chain[-1])
        if cell is None:
            break
        base.append(cell[0])
        cells.append(cell)
        chain.append(S.refine(_individualise(chain[-1], cell[0])))

    gens: list[tuple[int, ...]] = []
    sizes: list[int] = []
    for level in reversed(range(len(base))):
        b = base[level]
        orbit = _orbit(b, gens)
        for y in cells[level]:
            if y in orbit:
                continue
            phi = _find_map(S, _individualise(chain[level], b), _individualise(chain[level], y))
            if phi is not None:
                gens.append(phi)
                orbit = _orbit(b, gens)
        sizes.append(len(orbit))
    sizes.reverse()
    return GroupResult(gens, prod(sizes), sizes, base)


def _rank(values: Sequence) -> list[int]:
    order = {v: r for r, v in enumerate(sorted(set(values)))}
    return [order[v] for v in values]
