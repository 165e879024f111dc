"""Shared test helpers: seeded random graph generation."""

from ngostrings.graphs import MultiGraph


def random_connected_multigraph(rng, max_vertices=6, max_edges=10, allow_loops=False):
    """Random connected multigraph: a random spanning tree plus extra edges."""
    r = rng.randint(1, max_vertices)
    edges = []
    for v in range(1, r):
        edges.append((rng.randrange(v), v))
    extra = rng.randint(0, max(0, max_edges - len(edges)))
    for _ in range(extra):
        u = rng.randrange(r)
        v = rng.randrange(r)
        if u == v and not allow_loops:
            if r == 1:
                continue
            v = (v + 1) % r
        edges.append((u, v))
    return MultiGraph(r, edges)
