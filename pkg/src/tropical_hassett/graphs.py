"""Marked genus-labelled multigraphs: the objects of Gamma_{g,w}.

A :class:`MarkedGraph` stores vertex genera, an edge list (loops allowed,
parallel edges allowed) and a marking map ``marking[i-1] = vertex of marking
i``.  An :class:`EdgeLabelledGraph` adds a bijection from edges to
``{0..p}``.  Isomorphism classes are represented by canonical codes, computed
by colour refinement followed by exhaustive search inside the refined cells.
"""

from __future__ import annotations

from collections import Counter, defaultdict, deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product
from math import factorial, prod
from typing import Iterable, NamedTuple, Sequence, Union

from .errors import CapacityError, InputError
from .weights import as_weights

MAX_CANONICAL_VERTICES = 16
MAX_CANONICAL_ORDERINGS = 500_000
DEFAULT_GRAPH_CAP = 200_000


@dataclass(frozen=True)
class MarkedGraph:
    genera: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    marking: tuple[int, ...]

    def __post_init__(self):
        genera = tuple(int(h) for h in self.genera)
        nv = len(genera)
        if nv == 0:
            raise InputError("a graph needs at least one vertex")
        if any(h < 0 for h in genera):
            raise InputError("vertex genera must be non-negative")
        edges = []
        for e in self.edges:
            u, v = (int(x) for x in e)
            if not (0 <= u < nv and 0 <= v < nv):
                raise InputError(f"edge {e} has an endpoint outside 0..{nv - 1}")
            edges.append((min(u, v), max(u, v)))
        marking = tuple(int(m) for m in self.marking)
        if any(not 0 <= m < nv for m in marking):
            raise InputError("marking points at a missing vertex")
        object.__setattr__(self, "genera", genera)
        object.__setattr__(self, "edges", tuple(edges))
        object.__setattr__(self, "marking", marking)

    @property
    def n_vertices(self) -> int:
        return len(self.genera)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_markings(self) -> int:
        return len(self.marking)

    def valence(self, v: int) -> int:
        return sum((a == v) + (b == v) for a, b in self.edges)

    def loops_at(self, v: int) -> int:
        return sum(1 for a, b in self.edges if a == b == v)

    def markings_at(self, v: int) -> frozenset[int]:
        return frozenset(i for i, m in enumerate(self.marking, 1) if m == v)

    def is_loop(self, e: int) -> bool:
        a, b = self.edges[e]
        return a == b

    def is_connected(self) -> bool:
        return _connected(self.n_vertices, self.edges)

    def genus(self) -> int:
        return first_betti(self) + sum(self.genera)

    def relabel_markings(self, sigma: Sequence[int]) -> "MarkedGraph":
        """The graph sigma . G: marking ``sigma(i)`` sits where ``i`` sat.

        ``sigma`` is a permutation of the points ``0..n-1`` (marking ``k+1``
        is point ``k``).
        """
        new = [0] * len(self.marking)
        for k, v in enumerate(self.marking):
            new[sigma[k]] = v
        return MarkedGraph(self.genera, self.edges, tuple(new))

    def without_markings(self) -> "MarkedGraph":
        return MarkedGraph(self.genera, self.edges, ())


@dataclass(frozen=True)
class EdgeLabelledGraph:
    """A graph together with a bijection ``labels[e]`` from edges onto ``[p]``."""

    graph: MarkedGraph
    labels: tuple[int, ...]

    def __post_init__(self):
        labels = tuple(int(x) for x in self.labels)
        if sorted(labels) != list(range(self.graph.n_edges)):
            raise InputError("edge labels must be a bijection onto 0..|E|-1")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def ordered(cls, graph: MarkedGraph) -> "EdgeLabelledGraph":
        """Label every edge by its position in ``graph.edges``."""
        return cls(graph, tuple(range(graph.n_edges)))

    @property
    def p(self) -> int:
        return self.graph.n_edges - 1

    def edge_with_label(self, i: int) -> int:
        return self.labels.index(i)

    def by_label(self) -> MarkedGraph:
        """Same graph with ``edges`` listed in label order."""
        order = sorted(range(self.graph.n_edges), key=lambda e: self.labels[e])
        g = self.graph
        return MarkedGraph(g.genera, tuple(g.edges[e] for e in order), g.marking)

    def label_of_edge(self, e: int) -> int:
        return self.labels[e]


AnyGraph = Union[MarkedGraph, EdgeLabelledGraph]


def _connected(nv: int, edges: Iterable[tuple[int, int]]) -> bool:
    adj = defaultdict(set)
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    seen = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return len(seen) == nv


def _plain(G: AnyGraph) -> MarkedGraph:
    return G.graph if isinstance(G, EdgeLabelledGraph) else G


def first_betti(G: AnyGraph) -> int:
    G = _plain(G)
    if not G.is_connected():
        raise InputError("graph is not connected")
    return G.n_edges - G.n_vertices + 1


def is_w_stable(G: AnyGraph, w, g: int) -> bool:
    """Genus identity plus ``2h(v) - 2 + val(v) + w(m^-1(v)) > 0`` at every vertex."""
    G = _plain(G)
    w = as_weights(w)
    if G.n_markings != w.n:
        raise InputError(f"graph has {G.n_markings} markings but w has {w.n} entries")
    if not G.is_connected() or G.genus() != g:
        return False
    val = [0] * G.n_vertices
    for a, b in G.edges:
        val[a] += 1
        val[b] += 1
    mass = [Fraction(0)] * G.n_vertices
    for i, v in enumerate(G.marking):
        mass[v] += w.weights[i]
    return all(2 * G.genera[v] - 2 + val[v] + mass[v] > 0 for v in range(G.n_vertices))


# -- contraction ------------------------------------------------------------


def contract_edge(G: MarkedGraph, e: int) -> MarkedGraph:
    """Contract edge ``e``; the remaining edges keep their relative order.

    A loop is deleted and its vertex gains one unit of genus; a non-loop edge
    merges its endpoints, adding their genera.
    """
    if not 0 <= e < G.n_edges:
        raise InputError(f"edge {e} out of range")
    a, b = G.edges[e]
    rest = G.edges[:e] + G.edges[e + 1:]
    if a == b:
        genera = list(G.genera)
        genera[a] += 1
        return MarkedGraph(tuple(genera), rest, G.marking)
    # merge b into a, then close the gap left by b
    def rename(x: int) -> int:
        if x == b:
            x = a
        return x - 1 if x > b else x

    genera = list(G.genera)
    genera[a] += genera[b]
    del genera[b]
    edges = tuple((rename(x), rename(y)) for x, y in rest)
    marking = tuple(rename(m) for m in G.marking)
    return MarkedGraph(tuple(genera), edges, marking)


def contract(G: EdgeLabelledGraph, i: int) -> EdgeLabelledGraph:
    """Contract the edge labelled ``i``; labels above ``i`` drop by one."""
    if not 0 <= i <= G.p:
        raise InputError(f"label {i} out of range 0..{G.p}")
    e = G.edge_with_label(i)
    H = contract_edge(G.graph, e)
    labels = [x - (x > i) for k, x in enumerate(G.labels) if k != e]
    return EdgeLabelledGraph(H, tuple(labels))


def contract_complement(G: EdgeLabelledGraph, keep: Iterable[int]) -> EdgeLabelledGraph:
    """Contract every edge whose label is not in ``keep``.

    Kept edges are relabelled ``0..|keep|-1`` in their original label order.
    """
    keep = frozenset(keep)
    if not keep:
        raise InputError("keep must be non-empty: there are no simplices without edges")
    if not keep <= frozenset(range(G.p + 1)):
        raise InputError("keep contains labels outside [p]")
    H = G
    for i in sorted(set(range(G.p + 1)) - keep, reverse=True):
        H = contract(H, i)
    return H


# -- canonical forms ---------------------------------------------------------


def _vertex_cells(G: MarkedGraph, labels: Sequence[int] | None) -> list[list[int]]:
    """Isomorphism-invariant ordered partition of the vertices."""
    nv = G.n_vertices
    loops = [[] for _ in range(nv)]
    nbrs = [[] for _ in range(nv)]
    for e, (a, b) in enumerate(G.edges):
        lab = labels[e] if labels is not None else -1
        if a == b:
            loops[a].append(lab)
        else:
            nbrs[a].append((b, lab))
            nbrs[b].append((a, lab))
    marks = [[] for _ in range(nv)]
    for i, v in enumerate(G.marking):
        marks[v].append(i)
    sigs = [
        (G.genera[v], tuple(sorted(loops[v])), tuple(marks[v]), len(nbrs[v]), tuple(sorted(l for _, l in nbrs[v])))
        for v in range(nv)
    ]
    colors = _rank(sigs)
    while True:
        sigs = [(colors[v], tuple(sorted((colors[u], l) for u, l in nbrs[v]))) for v in range(nv)]
        new = _rank(sigs)
        if len(set(new)) == len(set(colors)):
            break
        colors = new
    cells: dict[int, list[int]] = defaultdict(list)
    for v, c in enumerate(colors):
        cells[c].append(v)
    return [cells[c] for c in sorted(cells)]


def _rank(sigs: Sequence) -> list[int]:
    order = {s: r for r, s in enumerate(sorted(set(sigs)))}
    return [order[s] for s in sigs]


def _orderings(cells: list[list[int]]):
    n_orders = prod(factorial(len(c)) for c in cells)
    if n_orders > MAX_CANONICAL_ORDERINGS:
        raise CapacityError(f"canonical search would visit {n_orders} vertex orderings")
    for parts in product(*(permutations(c) for c in cells)):
        yield [v for part in parts for v in part]


def _encode(G: MarkedGraph, order: Sequence[int], labels: Sequence[int] | None):
    pos = [0] * G.n_vertices
    for new, old in enumerate(order):
        pos[old] = new
    genera = tuple(G.genera[old] for old in order)
    marking = tuple(pos[m] for m in G.marking)
    if labels is None:
        edges = tuple(sorted((min(pos[a], pos[b]), max(pos[a], pos[b])) for a, b in G.edges))
    else:
        edges = tuple(
            sorted((labels[e], min(pos[a], pos[b]), max(pos[a], pos[b])) for e, (a, b) in enumerate(G.edges))
        )
    return (G.n_vertices, genera, marking, edges)


@lru_cache(maxsize=1 << 18)
def _canonical(G: MarkedGraph, labels: tuple[int, ...] | None):
    if G.n_vertices > MAX_CANONICAL_VERTICES:
        raise CapacityError(f"graph has {G.n_vertices} vertices (> {MAX_CANONICAL_VERTICES})")
    cells = _vertex_cells(G, labels)
    return min(_encode(G, order, labels) for order in _orderings(cells))


def canonical(G: AnyGraph) -> tuple:
    """Canonical code: equal exactly for isomorphic graphs.

    For edge-labelled graphs isomorphisms must respect labels, so the code
    identifies the class ``[G, tau]``.
    """
    if isinstance(G, EdgeLabelledGraph):
        return ("EL",) + _canonical(G.graph, G.labels)
    return ("G",) + _canonical(G, None)


def from_code(code: tuple) -> AnyGraph:
    """Rebuild the canonical representative encoded by ``code``."""
    kind, _, genera, marking, edges = code
    if kind == "EL":
        return EdgeLabelledGraph.ordered(MarkedGraph(genera, tuple((a, b) for _, a, b in edges), marking))
    return MarkedGraph(genera, edges, marking)


def canonical_form(G: AnyGraph) -> AnyGraph:
    return from_code(canonical(G))


class GraphAutomorphism(NamedTuple):
    vertex_map: tuple[int, ...]
    edge_map: tuple[int, ...]


def automorphisms(G: MarkedGraph, cap: int = 1_000_000) -> list[GraphAutomorphism]:
    """All automorphisms preserving genera, markings and incidences.

    Loop half-edge flips are not recorded: an automorphism is a vertex
    bijection together with an edge bijection.
    """
    G = _plain(G)
    if G.n_vertices > MAX_CANONICAL_VERTICES:
        raise CapacityError(f"graph has {G.n_vertices} vertices (> {MAX_CANONICAL_VERTICES})")
    cells = _vertex_cells(G, None)
    by_pair: dict[tuple[int, int], list[int]] = defaultdict(list)
    for e, ab in enumerate(G.edges):
        by_pair[ab].append(e)
    edge_count = Counter(G.edges)
    out = []
    for order in _orderings(cells):
        # send the k-th vertex of the canonical cell order to order[k]
        phi = [0] * G.n_vertices
        for src, dst in zip((v for c in cells for v in c), order):
            phi[src] = dst
        if any(phi[m] != m for m in G.marking):
            continue
        mapped = Counter((min(phi[a], phi[b]), max(phi[a], phi[b])) for a, b in G.edges)
        if mapped != edge_count:
            continue
        pairs = list(by_pair)
        choices = []
        for ab in pairs:
            a, b = ab
            target = by_pair[(min(phi[a], phi[b]), max(phi[a], phi[b]))]
            choices.append(list(permutations(target)))
        for pick in product(*choices):
            em = [0] * G.n_edges
            for ab, tgt in zip(pairs, pick):
                for e, f in zip(by_pair[ab], tgt):
                    em[e] = f
            out.append(GraphAutomorphism(tuple(phi), tuple(em)))
            if len(out) > cap:
                raise CapacityError(f"more than {cap} graph automorphisms")
    return out


def edge_automorphism_group(G: MarkedGraph) -> frozenset[tuple[int, ...]]:
    """Image of Aut(G) in the permutations of E(G)."""
    return frozenset(a.edge_map for a in automorphisms(G))


def labelled_classes(G: MarkedGraph) -> list[EdgeLabelledGraph]:
    """One representative per class ``[G, tau]``, by brute force over all tau."""
    seen = {}
    for tau in permutations(range(G.n_edges)):
        H = EdgeLabelledGraph(G, tau)
        seen.setdefault(canonical(H), H)
    return [from_code(c) for c in sorted(seen)]


def weak_isomorphic(A: EdgeLabelledGraph, B: EdgeLabelledGraph) -> bool:
    """Label-preserving isomorphism of the weighted graphs, markings ignored."""
    if A.graph.n_edges != B.graph.n_edges:
        return False
    strip = lambda H: EdgeLabelledGraph(H.graph.without_markings(), H.labels)
    return canonical(strip(A)) == canonical(strip(B))


# -- decks, bridges, cycles --------------------------------------------------


def deck(G: EdgeLabelledGraph) -> frozenset[tuple[int, tuple]]:
    """Nonloop contraction deck: ``(i, code of G/e_i)`` for each non-loop label."""
    out = set()
    for i in range(G.p + 1):
        if not G.graph.is_loop(G.edge_with_label(i)):
            out.add((i, canonical(contract(G, i))))
    return frozenset(out)


def bridges(G: AnyGraph) -> frozenset[int]:
    """Non-loop edges whose removal disconnects the graph.

    For a labelled graph the result is a set of labels, otherwise edge indices.
    """
    H = _plain(G)
    if not H.is_connected():
        raise InputError("graph is not connected")
    out = set()
    for e, (a, b) in enumerate(H.edges):
        if a != b and not _connected(H.n_vertices, H.edges[:e] + H.edges[e + 1:]):
            out.add(e)
    if isinstance(G, EdgeLabelledGraph):
        return frozenset(G.labels[e] for e in out)
    return frozenset(out)


def _simple_cycle(edges: Sequence[tuple[int, int]]) -> bool:
    if any(a == b for a, b in edges):
        return False
    deg = Counter(v for e in edges for v in e)
    if len(deg) != len(edges) or any(d != 2 for d in deg.values()):
        return False
    verts = sorted(deg)
    index = {v: k for k, v in enumerate(verts)}
    return _connected(len(verts), [(index[a], index[b]) for a, b in edges])


def cycle_index_sets(G: EdgeLabelledGraph, k: int) -> frozenset[frozenset[int]]:
    """Label sets of size ``k`` spanning a ``k``-cycle (1-cycle: a loop, 2-cycle: a parallel pair)."""
    if k < 1:
        raise InputError("cycle length must be positive")
    H = G.graph
    out = set()
    if k == 1:
        out = {frozenset([G.labels[e]]) for e in range(H.n_edges) if H.is_loop(e)}
    else:
        for combo in combinations(range(H.n_edges), k):
            if _simple_cycle([H.edges[e] for e in combo]):
                out.add(frozenset(G.labels[e] for e in combo))
    return frozenset(out)


def loop_pair_index_sets(G: EdgeLabelledGraph) -> frozenset[frozenset[int]]:
    """Pairs of labels carried by two loops at the same vertex."""
    H = G.graph
    loops = [e for e in range(H.n_edges) if H.is_loop(e)]
    return frozenset(
        frozenset((G.labels[e], G.labels[f]))
        for e, f in combinations(loops, 2)
        if H.edges[e] == H.edges[f]
    )


def cycle_signature(G: EdgeLabelledGraph) -> tuple:
    """All k-cycle label sets (every k) plus same-vertex loop pairs."""
    cyc = tuple(
        tuple(sorted(tuple(sorted(s)) for s in cycle_index_sets(G, k)))
        for k in range(1, G.p + 2)
    )
    pairs = tuple(sorted(tuple(sorted(s)) for s in loop_pair_index_sets(G)))
    return cyc, pairs


# -- named families ----------------------------------------------------------


class BGraph(NamedTuple):
    graph: MarkedGraph
    stable: bool


def make_B(g: int, k: int, l: int, A: Iterable[int], w) -> BGraph:
    """The two-vertex graph B^{k,l}_A of genus ``g``.

    Vertex 0 carries ``k`` loops and the markings in ``A``; vertex 1 carries
    ``l`` loops and the rest; ``g - (k + l) + 1`` edges join them.
    """
    w = as_weights(w)
    A = frozenset(A)
    if k < 0 or l < 0 or k + l > g:
        raise InputError("need k, l >= 0 and k + l <= g")
    if not A <= frozenset(range(1, w.n + 1)):
        raise InputError("A must be a subset of the markings")
    edges = [(0, 1)] * (g - k - l + 1) + [(0, 0)] * k + [(1, 1)] * l
    marking = tuple(0 if i in A else 1 for i in range(1, w.n + 1))
    G = MarkedGraph((0, 0), tuple(edges), marking)
    return BGraph(G, is_w_stable(G, w, g))


def make_rose(g: int, n: int) -> MarkedGraph:
    """One genus-0 vertex with ``g`` loops carrying all ``n`` markings."""
    if g < 1:
        raise InputError("a rose needs at least one loop")
    return MarkedGraph((0,), ((0, 0),) * g, (0,) * n)


def trivial_graph(g: int, n: int) -> MarkedGraph:
    """The edgeless graph: one vertex of genus ``g`` carrying every marking."""
    return MarkedGraph((g,), (), (0,) * n)


# -- expansions and enumeration ---------------------------------------------


def one_edge_expansions(G: MarkedGraph, w, g: int) -> list[MarkedGraph]:
    """Canonical representatives of the w-stable graphs with one more edge
    that contract onto ``G``.

    Non-loop expansions split a vertex in two (half-edges, markings and genus
    distributed over the two sides, joined by a new edge); loop expansions
    trade one unit of vertex genus for a new loop.
    """
    G = _plain(G)
    w = as_weights(w)
    if not is_w_stable(G, w, g):
        raise InputError("one_edge_expansions needs a w-stable graph")
    found: dict[tuple, MarkedGraph] = {}

    def offer(H: MarkedGraph):
        if is_w_stable(H, w, g):
            found.setdefault(canonical(H), H)

    nv = G.n_vertices
    for v in range(nv):
        halves = []  # (edge index, which end) for every half-edge at v
        for e, (a, b) in enumerate(G.edges):
            if a == v:
                halves.append((e, 0))
            if b == v:
                halves.append((e, 1))
        marks = [i for i, m in enumerate(G.marking) if m == v]
        new = nv
        for sides in product((0, 1), repeat=len(halves)):
            ends = [list(ab) for ab in G.edges]
            for (e, end), s in zip(halves, sides):
                if s:
                    ends[e][end] = new
            edges = tuple(tuple(x) for x in ends) + ((v, new),)
            for msides in product((0, 1), repeat=len(marks)):
                marking = list(G.marking)
                for i, s in zip(marks, msides):
                    if s:
                        marking[i] = new
                for h1 in range(G.genera[v] + 1):
                    genera = G.genera[:v] + (h1,) + G.genera[v + 1:] + (G.genera[v] - h1,)
                    offer(MarkedGraph(genera, edges, tuple(marking)))
        if G.genera[v] >= 1:
            genera = G.genera[:v] + (G.genera[v] - 1,) + G.genera[v + 1:]
            offer(MarkedGraph(genera, G.edges + ((v, v),), G.marking))
    return [found[c] for c in sorted(found)]


def one_edge_contractions(G: MarkedGraph) -> set[tuple]:
    """Canonical codes of all single-edge contractions of ``G``."""
    return {canonical(contract_edge(G, e)) for e in range(G.n_edges)}


def enumerate_stable_graphs(
    g: int, w, cap: int = DEFAULT_GRAPH_CAP, max_edges: int | None = None
) -> dict[int, list[MarkedGraph]]:
    """All w-stable graphs of genus ``g`` with at least one edge, by edge count.

    Breadth-first over one-edge expansions starting at the edgeless graph;
    every stable graph contracts onto it, so nothing is missed.  With
    ``max_edges`` the search stops after that many edges.
    """
    w = as_weights(w)
    w.require_genus(g)
    frontier = [trivial_graph(g, w.n)]
    levels: dict[int, list[MarkedGraph]] = {}
    total = 0
    k = 0
    while frontier and (max_edges is None or k < max_edges):
        nxt: dict[tuple, MarkedGraph] = {}
        for G in frontier:
            for H in one_edge_expansions(G, w, g):
                nxt.setdefault(canonical(H), H)
        if not nxt:
            break
        k += 1
        total += len(nxt)
        if total > cap:
            raise CapacityError(f"more than {cap} stable graphs")
        frontier = [nxt[c] for c in sorted(nxt)]
        levels[k] = frontier
    return levels
