"""Multigraphs, quivers, spectral dual graphs, and canonical graph keys.

A MultiGraph has positionally labelled edges: the edge list order is part of
the identity, because boundary matrices, matroid ground sets and circuit
relations all refer to edges by position.  The spectral dual graph of a
partition {n_i} at genus g has one vertex per part and n_i*n_j*(2g-2)
parallel edges between distinct vertices i, j.

canonical_key produces a byte string invariant under vertex relabelling and
edge reordering; it is the memoization key for Tutte computations and the
tie-breaker for stratum tables.  It is a brute-force minimal adjacency
encoding with color refinement, twin pruning and prefix pruning, which is
entirely adequate at the sizes arising here (at most a dozen vertices).
"""

from __future__ import annotations

import json
from collections import Counter, deque

from .intlinalg import IntMatrix

GRAPH_FORMAT = "graph/1"


class MultiGraph:
    """Undirected multigraph on vertices 0..r-1; parallel edges and loops allowed."""

    __slots__ = ("vertex_count", "edges")

    def __init__(self, vertex_count, edges):
        vertex_count = int(vertex_count)
        if vertex_count < 1:
            raise ValueError("vertex_count must be positive, got %r" % vertex_count)
        norm = []
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise ValueError("edge (%d, %d) out of range for %d vertices" % (u, v, vertex_count))
            norm.append((u, v))
        self.vertex_count = vertex_count
        self.edges = tuple(norm)

    @property
    def edge_count(self):
        return len(self.edges)

    def loop_count(self):
        return sum(1 for u, v in self.edges if u == v)

    def pair_multiplicities(self):
        """Counter mapping unordered pairs (min,max) to multiplicities; loops as (v,v)."""
        return Counter((min(u, v), max(u, v)) for u, v in self.edges)

    def neighbors(self):
        """Adjacency map vertex -> Counter of {neighbor: multiplicity}, loops excluded."""
        adj = {v: Counter() for v in range(self.vertex_count)}
        for u, v in self.edges:
            if u != v:
                adj[u][v] += 1
                adj[v][u] += 1
        return adj

    def is_connected(self):
        if self.vertex_count == 1:
            return True
        adj = {v: set() for v in range(self.vertex_count)}
        for u, v in self.edges:
            if u != v:
                adj[u].add(v)
                adj[v].add(u)
        seen = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return len(seen) == self.vertex_count

    def without_edges(self, indices):
        """Copy with the edges at the given positions removed (order preserved)."""
        drop = set(indices)
        for i in drop:
            if not (0 <= i < len(self.edges)):
                raise ValueError("edge index %r out of range" % (i,))
        return MultiGraph(
            self.vertex_count,
            [e for i, e in enumerate(self.edges) if i not in drop],
        )

    def __eq__(self, other):
        return (
            isinstance(other, MultiGraph)
            and self.vertex_count == other.vertex_count
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.vertex_count, self.edges))

    def __repr__(self):
        return "MultiGraph(%d, %r)" % (self.vertex_count, list(self.edges))


class Quiver:
    """Directed multigraph; each edge is an ordered (source, target) pair."""

    __slots__ = ("vertex_count", "edges")

    def __init__(self, vertex_count, edges):
        g = MultiGraph(vertex_count, edges)
        self.vertex_count = g.vertex_count
        self.edges = g.edges

    @classmethod
    def from_graph(cls, graph):
        """Orient a multigraph using the stored endpoint order of each edge."""
        return cls(graph.vertex_count, graph.edges)

    def underlying(self):
        """Forget orientations; edge positions are preserved."""
        return MultiGraph(self.vertex_count, self.edges)

    @property
    def edge_count(self):
        return len(self.edges)

    def is_connected(self):
        return self.underlying().is_connected()

    def __eq__(self, other):
        return (
            isinstance(other, Quiver)
            and self.vertex_count == other.vertex_count
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash(("quiver", self.vertex_count, self.edges))

    def __repr__(self):
        return "Quiver(%d, %r)" % (self.vertex_count, list(self.edges))


class VertexPartition:
    """Set partition of {0..r-1} into nonempty disjoint blocks."""

    __slots__ = ("blocks",)

    def __init__(self, blocks):
        norm = []
        seen = set()
        for block in blocks:
            b = tuple(sorted(int(v) for v in block))
            if not b:
                raise ValueError("blocks must be nonempty")
            for v in b:
                if v in seen:
                    raise ValueError("vertex %d appears in two blocks" % v)
                seen.add(v)
            norm.append(b)
        if not norm:
            raise ValueError("a vertex partition needs at least one block")
        norm.sort(key=lambda b: b[0])
        self.blocks = tuple(norm)

    @classmethod
    def singletons(cls, r):
        return cls([(v,) for v in range(r)])

    @classmethod
    def one_block(cls, r):
        return cls([tuple(range(r))])

    def vertex_set(self):
        return set(v for b in self.blocks for v in b)

    def block_of(self):
        """Map vertex -> index of its block (blocks sorted by minimum element)."""
        out = {}
        for i, b in enumerate(self.blocks):
            for v in b:
                out[v] = i
        return out

    def __eq__(self, other):
        return isinstance(other, VertexPartition) and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __len__(self):
        return len(self.blocks)

    def __str__(self):
        return "|".join(",".join(str(v) for v in b) for b in self.blocks)

    def __repr__(self):
        return "VertexPartition(%r)" % (list(self.blocks),)


def _as_multigraph(g):
    return g.underlying() if isinstance(g, Quiver) else g


def spectral_dual_graph(partition, genus):
    """Dual graph of a generic nodal spectral curve for the given partition.

    One vertex per part, and n_i * n_j * (2g - 2) parallel edges between
    distinct vertices i and j; no loops.  Edges are listed in lexicographic
    pair order, consecutive within each pair.  Requires genus >= 2 (the
    canonical bundle must be ample).
    """
    if genus < 2:
        raise ValueError("genus must be at least 2, got %r" % genus)
    parts = partition.parts
    r = len(parts)
    edges = []
    for i in range(r):
        for j in range(i + 1, r):
            edges.extend([(i, j)] * (parts[i] * parts[j] * (2 * genus - 2)))
    return MultiGraph(r, edges)


def spectral_dual_quiver(partition, genus):
    """spectral_dual_graph with each edge oriented from the smaller vertex index."""
    return Quiver.from_graph(spectral_dual_graph(partition, genus))


def betti1(graph):
    """First Betti number s - r + 1 of a connected multigraph."""
    g = _as_multigraph(graph)
    if not g.is_connected():
        raise ValueError("betti1 requires a connected graph")
    return g.edge_count - g.vertex_count + 1


def contract_counting_loops(quiver, vp):
    """Contract each block of ``vp`` to a point; drop loops, count them.

    Edges joining distinct blocks survive with the induced orientation and
    in the input order; edges internal to a block would become loops and are
    deleted.  Returns (contracted quiver, number of deleted loops).
    """
    if not isinstance(vp, VertexPartition):
        vp = VertexPartition(vp)
    if vp.vertex_set() != set(range(quiver.vertex_count)):
        raise ValueError(
            "vertex partition %s does not cover vertices 0..%d" % (vp, quiver.vertex_count - 1)
        )
    index = vp.block_of()
    edges = []
    dropped = 0
    for u, v in quiver.edges:
        bu, bv = index[u], index[v]
        if bu == bv:
            dropped += 1
        else:
            edges.append((bu, bv))
    return Quiver(len(vp.blocks), edges), dropped


def contract(quiver, vp):
    """Contract each block of ``vp`` to a point, deleting the resulting loops."""
    return contract_counting_loops(quiver, vp)[0]


def double(quiver):
    """The doubled quiver: edge k becomes edges 2k (same direction) and 2k+1 (reversed)."""
    edges = []
    for u, v in quiver.edges:
        edges.append((u, v))
        edges.append((v, u))
    return Quiver(quiver.vertex_count, edges)


def boundary_matrix(quiver):
    """Boundary map e -> source(e) - target(e) in the basis v1-v2, ..., v1-vr.

    The result is an (r-1) x s integer matrix; column k encodes edge k, and
    loops give zero columns.  Requires a connected quiver with r >= 2.
    """
    r = quiver.vertex_count
    if r < 2:
        raise ValueError("boundary matrix needs at least 2 vertices")
    if not quiver.is_connected():
        raise ValueError("boundary matrix requires a connected quiver")
    rows = [[0] * quiver.edge_count for _ in range(r - 1)]
    for col, (u, v) in enumerate(quiver.edges):
        if u == v:
            continue
        # source - target = (v1 - v_target) - (v1 - v_source)
        if v >= 1:
            rows[v - 1][col] += 1
        if u >= 1:
            rows[u - 1][col] -= 1
    return IntMatrix(rows)


def _refined_colors(r, mult, loops):
    """Stable 1-dimensional color refinement; returns vertex -> dense color id."""
    neigh = {v: [] for v in range(r)}
    for (u, v), k in mult.items():
        if u != v:
            neigh[u].append((v, k))
            neigh[v].append((u, k))
    initial = {
        v: (loops.get(v, 0), tuple(sorted(k for _, k in neigh[v])))
        for v in range(r)
    }
    order = sorted(set(initial.values()))
    colors = {v: order.index(initial[v]) for v in range(r)}
    while True:
        keys = {
            v: (colors[v], tuple(sorted((k, colors[u]) for u, k in neigh[v])))
            for v in range(r)
        }
        order = sorted(set(keys.values()))
        new = {v: order.index(keys[v]) for v in range(r)}
        if new == colors:
            return colors
        colors = new


def canonical_key(graph):
    """Canonical byte string: equal for isomorphic multigraphs, distinct otherwise.

    Minimizes the row-by-row adjacency encoding over all vertex orders
    compatible with the refined color classes, pruning lexicographically
    dominated prefixes, repeated (placed-set, prefix) states and twin
    vertices.  The encoding contains the full multiplicity matrix, so the
    key determines the graph up to isomorphism.
    """
    g = _as_multigraph(graph)
    r = g.vertex_count
    mult = {}
    loops = {}
    for u, v in g.edges:
        if u == v:
            loops[u] = loops.get(u, 0) + 1
        else:
            key = (min(u, v), max(u, v))
            mult[key] = mult.get(key, 0) + 1

    def m(u, v):
        if u == v:
            return loops.get(u, 0)
        return mult.get((min(u, v), max(u, v)), 0)

    colors = _refined_colors(r, mult, loops)
    class_seq = sorted(colors.values())

    best = None
    visited = set()

    def dfs(placed, prefix):
        nonlocal best
        k = len(placed)
        if best is not None:
            head = best[: len(prefix)]
            if prefix > head:
                return
        if k == r:
            if best is None or prefix < best:
                best = prefix
            return
        state = (frozenset(placed), prefix)
        if state in visited:
            return
        if len(visited) < (1 << 18):
            visited.add(state)
        want = class_seq[k]
        candidates = [v for v in range(r) if v not in placed and colors[v] == want]
        # twin pruning: vertices with identical multiplicities to everything
        # else are exchangeable by an automorphism; keep one representative
        reps = []
        for v in candidates:
            dup = False
            for w in reps:
                if loops.get(v, 0) != loops.get(w, 0):
                    continue
                if all(m(v, x) == m(w, x) for x in range(r) if x != v and x != w):
                    dup = True
                    break
            if not dup:
                reps.append(v)
        for v in reps:
            row = (loops.get(v, 0),) + tuple(m(v, u) for u in placed)
            dfs(placed + (v,), prefix + row)

    dfs((), ())
    return repr((r, best)).encode("ascii")


def to_dot(graph, name="G"):
    """DOT text for visualization; quivers render as digraphs."""
    directed = isinstance(graph, Quiver)
    arrow = "->" if directed else "--"
    kind = "digraph" if directed else "graph"
    lines = ["%s %s {" % (kind, name)]
    for v in range(graph.vertex_count):
        lines.append("  %d;" % v)
    for u, v in graph.edges:
        lines.append("  %d %s %d;" % (u, arrow, v))
    lines.append("}")
    return "\n".join(lines) + "\n"


def dump_graph(graph):
    """Serialize a graph or quiver to the versioned text format."""
    payload = {
        "format": GRAPH_FORMAT,
        "vertices": graph.vertex_count,
        "edges": [[u, v] for u, v in graph.edges],
    }
    return json.dumps(payload, indent=2) + "\n"


def load_graph(text):
    """Parse the versioned text format; returns a Quiver (pairs read as source, target)."""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError("not a graph file: %s" % exc) from None
    if not isinstance(payload, dict) or payload.get("format") != GRAPH_FORMAT:
        raise ValueError("unsupported graph format %r" % (payload.get("format") if isinstance(payload, dict) else None,))
    try:
        vertices = payload["vertices"]
        edges = payload["edges"]
    except (KeyError, TypeError):
        raise ValueError("graph file needs 'vertices' and 'edges' fields") from None
    return Quiver(vertices, [(e[0], e[1]) for e in edges])
