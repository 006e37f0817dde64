"""The symmetric Delta-complex of stable graphs, as finite tables.

Dimension ``p`` holds the classes ``[G, tau]`` of edge-labelled stable graphs
with ``p + 1`` edges.  Each class is stored by its canonical code together
with a representative whose edge ``e`` carries label ``e``.  Face maps
``d_i`` contract the edge labelled ``i``; the symmetric group acts through
the adjacent transpositions ``s_k`` (swap labels ``k`` and ``k + 1``).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from math import factorial
from typing import Iterable, Sequence

import networkx as nx

from . import graphs as gr
from .autsearch import automorphism_group
from .errors import CapacityError, DomainError, InputError
from .permgroup import PermutationGroup, is_permutation
from .weights import WeightVector, as_weights, aut_kw

DEFAULT_SIMPLEX_CAP = int(os.environ.get("TROPICAL_HASSETT_CAP_SIMPLICES", 50_000))


class SymmetricDeltaComplex:
    """Face tables and generator tables of Delta_{g,w} (or a subcomplex).

    ``faces[p][s][i]`` is the index of ``d_i`` of simplex ``s`` in dimension
    ``p - 1``; ``swaps[p][k][s]`` is the index of ``s_k^*`` applied to ``s``.
    """

    def __init__(self, g: int, w: WeightVector, reps: Sequence[Sequence[gr.EdgeLabelledGraph]], check: bool = True):
        self.g = g
        self.w = as_weights(w)
        self.reps: list[list[gr.EdgeLabelledGraph]] = [list(r) for r in reps]
        while self.reps and not self.reps[-1]:
            self.reps.pop()
        self.codes = [[gr.canonical(H) for H in dim] for dim in self.reps]
        self.index = [{c: s for s, c in enumerate(dim)} for dim in self.codes]
        self.faces: list[list[tuple[int, ...]]] = []
        self.swaps: list[list[tuple[int, ...]]] = []
        for p, dim in enumerate(self.reps):
            if p == 0:
                self.faces.append([() for _ in dim])
            else:
                self.faces.append([tuple(self._lookup(p - 1, gr.contract(H, i)) for i in range(p + 1)) for H in dim])
            self.swaps.append([tuple(self._lookup(p, _swap_labels(H, k)) for H in dim) for k in range(p)])
        if check:
            problems = self.functoriality_violations()
            if problems:
                raise AssertionError(f"complex tables violate functoriality: {problems[:3]}")

    def _lookup(self, p: int, H: gr.EdgeLabelledGraph) -> int:
        try:
            return self.index[p][gr.canonical(H)]
        except (IndexError, KeyError):
            raise AssertionError(f"face of a simplex missing from dimension {p}") from None

    # -- shape -----------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.reps) - 1

    def sizes(self) -> list[int]:
        return [len(d) for d in self.reps]

    def total(self) -> int:
        return sum(self.sizes())

    def simplices(self) -> Iterable[tuple[int, int]]:
        for p, dim in enumerate(self.reps):
            for s in range(len(dim)):
                yield p, s

    def graph(self, p: int, s: int) -> gr.EdgeLabelledGraph:
        return self.reps[p][s]

    def find(self, H: gr.EdgeLabelledGraph) -> tuple[int, int]:
        """Locate the class of a labelled graph: ``(dimension, index)``."""
        p = H.p
        try:
            return p, self.index[p][gr.canonical(H)]
        except (IndexError, KeyError):
            raise InputError("graph is not a simplex of this complex") from None

    def vertex_count(self, p: int, s: int) -> int:
        return self.reps[p][s].graph.n_vertices

    # -- functor structure ----------------------------------------------

    def face(self, p: int, i: int, s: int) -> int:
        return self.faces[p][s][i]

    def swap(self, p: int, k: int, s: int) -> int:
        return self.swaps[p][k][s]

    def act(self, p: int, alpha: Sequence[int], s: int) -> int:
        """``alpha^*`` for ``alpha`` in S_{p+1}, composed from the ``s_k`` tables.

        Bubble-sorting ``alpha`` with swaps ``s_{a_1}, .., s_{a_m}`` writes
        ``alpha = s_{a_m} .. s_{a_1}``, so ``alpha^* = s_{a_1}^* .. s_{a_m}^*``.
        """
        if not is_permutation(alpha, p + 1):
            raise InputError(f"{alpha} is not a permutation of [{p}]")
        word = []
        cur = list(alpha)
        for end in range(p, 0, -1):
            for k in range(end):
                if cur[k] > cur[k + 1]:
                    cur[k], cur[k + 1] = cur[k + 1], cur[k]
                    word.append(k)
        for k in reversed(word):
            s = self.swaps[p][k][s]
        return s

    def functoriality_violations(self) -> list[tuple]:
        """Failures of the simplicial and symmetric-group relations."""
        bad = []
        for p in range(len(self.reps)):
            n = len(self.reps[p])
            for s in range(n):
                if p >= 2:
                    for j in range(p + 1):
                        for i in range(j):
                            lhs = self.faces[p - 1][self.faces[p][s][j]][i]
                            rhs = self.faces[p - 1][self.faces[p][s][i]][j - 1]
                            if lhs != rhs:
                                bad.append(("face", p, s, i, j))
                sw = self.swaps[p]
                for k in range(p):
                    if sw[k][sw[k][s]] != s:
                        bad.append(("involution", p, s, k))
                    if k + 1 < p:
                        x = s
                        for _ in range(3):
                            x = sw[k + 1][sw[k][x]]
                        if x != s:
                            bad.append(("braid", p, s, k))
                    for l in range(k + 2, p):
                        if sw[k][sw[l][s]] != sw[l][sw[k][s]]:
                            bad.append(("commute", p, s, k, l))
        return bad

    def to_json(self) -> dict:
        return {
            "g": self.g,
            "weights": [{"num": x.numerator, "den": x.denominator} for x in self.w.weights],
            "sizes": self.sizes(),
            "dimensions": [
                {
                    "p": p,
                    "classes": [_jsonable(c) for c in self.codes[p]],
                    "faces": [list(f) for f in self.faces[p]],
                    "swaps": [list(t) for t in self.swaps[p]],
                }
                for p in range(len(self.reps))
            ],
        }

    def __repr__(self) -> str:
        return f"SymmetricDeltaComplex(g={self.g}, w={self.w}, sizes={self.sizes()})"


def _jsonable(x):
    if isinstance(x, tuple):
        return [_jsonable(y) for y in x]
    return x


def _swap_labels(H: gr.EdgeLabelledGraph, k: int) -> gr.EdgeLabelledGraph:
    t = {k: k + 1, k + 1: k}
    return gr.EdgeLabelledGraph(H.graph, tuple(t.get(x, x) for x in H.labels))


def edge_action_count(G: gr.MarkedGraph) -> int:
    """Labelled classes on ``G`` predicted by orbit counting: |E|! / |Aut_E(G)|."""
    return factorial(G.n_edges) // len(gr.edge_automorphism_group(G))


def build_delta(g: int, w, cap: int = DEFAULT_SIMPLEX_CAP) -> SymmetricDeltaComplex:
    """Enumerate every labelled stable graph class and tabulate the functor."""
    w = as_weights(w)
    w.require_genus(g)
    levels = gr.enumerate_stable_graphs(g, w)
    predicted = sum(edge_action_count(G) for L in levels.values() for G in L)
    if predicted > cap:
        raise CapacityError(f"complex would have {predicted} simplices (cap {cap})")
    reps = []
    for k in sorted(levels):
        dim = []
        for G in levels[k]:
            classes = gr.labelled_classes(G)
            if len(classes) != edge_action_count(G):
                raise AssertionError(f"labelled class count disagrees with orbit count on {G}")
            dim.extend(classes)
        reps.append(dim)
    return SymmetricDeltaComplex(g, w, reps)


def apply_injection(X: SymmetricDeltaComplex, iota: Sequence[int], q: int, s: int) -> int:
    """``iota^*`` on simplex ``s`` of dimension ``q``, for ``iota: [p] -> [q]``.

    ``iota`` is factored as an order-preserving inclusion after a
    permutation of ``[p]``; the inclusion acts by face maps (largest missing
    label first) and the permutation through the generator tables.
    """
    iota = [int(x) for x in iota]
    p = len(iota) - 1
    if p < 0:
        raise InputError("the empty injection has no simplex to land in")
    if len(set(iota)) != len(iota):
        raise InputError(f"{iota} is not injective")
    if not 0 <= q <= X.dim or not 0 <= s < len(X.reps[q]):
        raise InputError("no such simplex")
    if any(not 0 <= x <= q for x in iota):
        raise InputError(f"{iota} does not map into [{q}]")
    image = sorted(iota)
    for c in sorted(set(range(q + 1)) - set(image), reverse=True):
        s = X.faces[q][s][c]
        q -= 1
    rank = {x: r for r, x in enumerate(image)}
    beta = [rank[x] for x in iota]
    return X.act(p, beta, s)


def apply_injection_via_permutation_first(X: SymmetricDeltaComplex, iota: Sequence[int], q: int, s: int) -> int:
    """Same map through the other factorization: a permutation of ``[q]``
    sending ``j`` to ``iota(j)``, then the standard inclusion ``[p] -> [q]``."""
    iota = [int(x) for x in iota]
    p = len(iota) - 1
    rest = sorted(set(range(q + 1)) - set(iota))
    alpha = iota + rest
    s = X.act(q, alpha, s)
    for c in range(q, p, -1):
        s = X.faces[c][s][c]
    return s


def apply_injection_direct(X: SymmetricDeltaComplex, iota: Sequence[int], q: int, s: int) -> int:
    """Reference implementation working on graphs rather than tables."""
    iota = [int(x) for x in iota]
    H = gr.contract_complement(X.reps[q][s], iota)
    image = sorted(iota)
    pos = {x: j for j, x in enumerate(iota)}
    labels = tuple(pos[image[r]] for r in H.labels)
    return X.index[len(iota) - 1][gr.canonical(gr.EdgeLabelledGraph(H.graph, labels))]


def v_subcomplex(X: SymmetricDeltaComplex, i: int) -> SymmetricDeltaComplex:
    """Simplices whose graph has at most ``i`` vertices."""
    if i < 1:
        raise InputError("the filtration starts at V^1")
    reps = [[H for H in dim if H.graph.n_vertices <= i] for dim in X.reps]
    return SymmetricDeltaComplex(X.g, X.w, reps)


def v_indices(X: SymmetricDeltaComplex, i: int) -> list[frozenset[int]]:
    """Per dimension, the indices of ``X`` lying in V^i."""
    return [frozenset(s for s, H in enumerate(dim) if H.graph.n_vertices <= i) for dim in X.reps]


# -- automorphisms -----------------------------------------------------------


@dataclass(frozen=True)
class ComplexAutomorphism:
    """Bijections ``maps[p]`` on the simplex indices of each dimension."""

    maps: tuple[tuple[int, ...], ...]

    def __call__(self, p: int, s: int) -> int:
        return self.maps[p][s]

    def is_identity(self) -> bool:
        return all(m == tuple(range(len(m))) for m in self.maps)

    def compose(self, other: "ComplexAutomorphism") -> "ComplexAutomorphism":
        """``self o other``."""
        return ComplexAutomorphism(tuple(tuple(a[x] for x in b) for a, b in zip(self.maps, other.maps)))

    def violations(self, X: SymmetricDeltaComplex) -> list[tuple]:
        """Diagram failures: face maps first, then generator tables."""
        bad = []
        if [len(m) for m in self.maps] != X.sizes():
            return [("shape",)]
        for p, m in enumerate(self.maps):
            if sorted(m) != list(range(len(m))):
                bad.append(("not a bijection", p))
                continue
            for s in range(len(m)):
                for i in range(p + 1 if p else 0):
                    if self.maps[p - 1][X.faces[p][s][i]] != X.faces[p][m[s]][i]:
                        bad.append(("face", p, s, i))
                for k in range(p):
                    if m[X.swaps[p][k][s]] != X.swaps[p][k][m[s]]:
                        bad.append(("swap", p, s, k))
        return bad

    def commutes(self, X: SymmetricDeltaComplex) -> bool:
        return not self.violations(X)


def identity_automorphism(X: SymmetricDeltaComplex) -> ComplexAutomorphism:
    return ComplexAutomorphism(tuple(tuple(range(n)) for n in X.sizes()))


def sn_induced_automorphism(X: SymmetricDeltaComplex, sigma: Sequence[int]) -> ComplexAutomorphism:
    """Relabel markings by ``sigma`` (a permutation of points ``0..n-1``).

    Raises :class:`DomainError` unless ``sigma`` preserves K_w, since other
    relabellings leave the stable graphs.
    """
    sigma = tuple(int(x) for x in sigma)
    if not is_permutation(sigma, X.w.n):
        raise InputError(f"{sigma} is not a permutation of {X.w.n} points")
    if sigma not in aut_kw(X.w):
        raise DomainError(f"{sigma} is not an automorphism of K_w")
    maps = []
    for p, dim in enumerate(X.reps):
        maps.append(tuple(
            X.index[p][gr.canonical(gr.EdgeLabelledGraph(H.graph.relabel_markings(sigma), H.labels))]
            for H in dim
        ))
    phi = ComplexAutomorphism(tuple(maps))
    bad = phi.violations(X)
    if bad:
        raise AssertionError(f"induced map fails to commute: {bad[:3]}")
    return phi


class ComplexAutomorphismGroup:
    """Aut of a complex: generators, exact order, and lazy elements."""

    def __init__(self, X: SymmetricDeltaComplex, generators: list[ComplexAutomorphism], order: int,
                 orbit_sizes: list[int]):
        self.complex = X
        self.generators = generators
        self._order = order
        self.orbit_sizes = orbit_sizes

    def order(self) -> int:
        return self._order

    def __len__(self) -> int:
        return self._order

    def order_string(self, symbolic_above: int = 8) -> str:
        """The order, written as ``N!`` when it equals a factorial of ``N > symbolic_above``."""
        n, f = 1, 1
        while f < self._order:
            n += 1
            f *= n
        if f == self._order and n > symbolic_above:
            return f"{n}!"
        return str(self._order)

    def _offsets(self) -> list[int]:
        out, acc = [], 0
        for n in self.complex.sizes():
            out.append(acc)
            acc += n
        return out

    def to_flat(self, phi: ComplexAutomorphism) -> tuple[int, ...]:
        off = self._offsets()
        return tuple(off[p] + x for p, m in enumerate(phi.maps) for x in m)

    def from_flat(self, perm: Sequence[int]) -> ComplexAutomorphism:
        off = self._offsets()
        sizes = self.complex.sizes()
        return ComplexAutomorphism(tuple(
            tuple(perm[off[p] + s] - off[p] for s in range(sizes[p])) for p in range(len(sizes))
        ))

    def permutation_group(self, cap: int | None = None) -> PermutationGroup:
        kw = {} if cap is None else {"cap": cap}
        return PermutationGroup(self.complex.total(), [self.to_flat(g) for g in self.generators], **kw)

    def elements(self, cap: int = 10**6) -> list[ComplexAutomorphism]:
        if self._order > cap:
            raise CapacityError(f"group of order {self.order_string()} exceeds the element cap {cap}")
        return sorted((self.from_flat(p) for p in self.permutation_group(cap).elements()), key=lambda a: a.maps)

    def __contains__(self, phi: ComplexAutomorphism) -> bool:
        # the group is all of Aut, so membership is the diagram check
        return phi.commutes(self.complex)


def _arcs(X: SymmetricDeltaComplex) -> tuple[list[int], list[tuple[int, ...]]]:
    """Flatten the complex into typed nodes with labelled functional arcs."""
    offsets, acc = [], 0
    for n in X.sizes():
        offsets.append(acc)
        acc += n
    kind, out = [], []
    for p, dim in enumerate(X.reps):
        for s in range(len(dim)):
            kind.append(p)
            faces = tuple(offsets[p - 1] + t for t in X.faces[p][s]) if p else ()
            swaps = tuple(offsets[p] + X.swaps[p][k][s] for k in range(p))
            out.append(faces + swaps)
    return kind, out


def aut_complex(X: SymmetricDeltaComplex, cap: int = DEFAULT_SIMPLEX_CAP) -> ComplexAutomorphismGroup:
    """All families of bijections commuting with the face and generator tables.

    The search sees only the tables.  Dimension is the sole initial colour;
    colour refinement and individualisation do the rest, and an
    orbit-stabiliser chain yields the exact order without listing elements.
    """
    if X.total() > cap:
        raise CapacityError(f"complex has {X.total()} simplices (cap {cap})")
    if X.total() <= 1:
        return ComplexAutomorphismGroup(X, [], 1, [])
    kind, out = _arcs(X)
    result = automorphism_group(kind, out)
    group = ComplexAutomorphismGroup(X, [], result.order, result.orbit_sizes)
    group.generators = [group.from_flat(p) for p in result.generators]
    for phi in group.generators:
        if phi.violations(X):
            raise AssertionError("search returned a map that is not an automorphism")
    return group


# -- genus zero ----------------------------------------------------------------


def _require_g0(X: SymmetricDeltaComplex):
    if X.g != 0:
        raise DomainError("this operation is only defined for genus 0")


def one_skeleton_g0(X: SymmetricDeltaComplex) -> nx.Graph:
    """Vertices are the one-edge classes; two are adjacent when they are the
    two faces of a common edge simplex."""
    _require_g0(X)
    G = nx.Graph()
    G.add_nodes_from(range(X.sizes()[0] if X.reps else 0))
    if X.dim >= 1:
        for a, b in X.faces[1]:
            if a != b:
                G.add_edge(min(a, b), max(a, b))
    return G


def simplex_vertices(X: SymmetricDeltaComplex, p: int, s: int) -> frozenset[int]:
    return frozenset(apply_injection(X, [j], p, s) for j in range(p + 1))


def is_flag_g0(X: SymmetricDeltaComplex) -> tuple[bool, frozenset[int] | None]:
    """Every clique of the one-skeleton spans a simplex; returns a bad clique if not."""
    _require_g0(X)
    spanned = {simplex_vertices(X, p, s) for p, s in X.simplices()}
    for clique in nx.enumerate_all_cliques(one_skeleton_g0(X)):
        if len(clique) >= 2 and frozenset(clique) not in spanned:
            return False, frozenset(clique)
    return True, None


def vertex_split(X: SymmetricDeltaComplex, s: int) -> tuple[frozenset[int], frozenset[int]]:
    """For a one-edge genus-0 class, the two marking sets it separates."""
    G = X.reps[0][s].graph
    return G.markings_at(0), G.markings_at(1)


def graph_caption(G: gr.MarkedGraph) -> str:
    return " | ".join(
        f"h={G.genera[v]}; {{{','.join(map(str, sorted(G.markings_at(v))))}}}" for v in range(G.n_vertices)
    )


def complex_to_dot(X: SymmetricDeltaComplex) -> str:
    """DOT picture of the 0- and 1-dimensional data (genus 0 only)."""
    skel = one_skeleton_g0(X)
    lines = ["graph delta {", "  node [shape=box];"]
    for v in skel.nodes:
        lines.append(f'  v{v} [label="{graph_caption(X.reps[0][v].graph)}"];')
    for a, b in sorted(skel.edges):
        lines.append(f"  v{a} -- v{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def complex_to_json_string(X: SymmetricDeltaComplex) -> str:
    return json.dumps(X.to_json(), indent=1)
