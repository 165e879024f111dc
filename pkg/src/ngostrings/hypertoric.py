"""Combinatorics of Lawrence toric varieties and hypertoric quiver varieties.

For a connected quiver Q with s edges and first Betti number b1, the doubled
quiver presents a Lawrence variety of dimension b1 + s containing a
hypertoric variety of dimension 2*b1, cut out by the circuit relations whose
coefficient rows are exactly the boundary matrix.  Vertex partitions of Q
index the strata of both spaces: the stratum of a partition has normal slice
modelled on the contraction of Q along it, codimension 2*b1(contraction) in
the hypertoric variety, resolution fibers of dimension b1(contraction), and
decomposition multiplicity equal to the sphere count of the contracted
cographic matroid complex.

local_model_dims records the dimension ledger of the ambient moduli
embedding for a partition at genus g: both defining expressions of each
constant are asserted against each other on construction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ResourceLimitError
from .graphs import (
    Quiver,
    VertexPartition,
    betti1,
    boundary_matrix,
    canonical_key,
    contract_counting_loops,
    spectral_dual_graph,
)
from .matroid import top_betti
from .partitions import set_partitions


@dataclass(frozen=True)
class CircuitRelation:
    """One circuit relation sum_e a[e] * z_e * w_e, for a row index i in 2..r."""

    index: int
    coefficients: tuple

    def __str__(self):
        pieces = []
        for e, a in enumerate(self.coefficients):
            if a == 0:
                continue
            term = "z%d*w%d" % (e + 1, e + 1)
            if a == 1:
                piece = term
            elif a == -1:
                piece = "-" + term
            else:
                piece = "%d*%s" % (a, term)
            if pieces and not piece.startswith("-"):
                pieces.append("+ " + piece)
            elif pieces:
                pieces.append("- " + piece[1:])
            else:
                pieces.append(piece)
        return " ".join(pieces) if pieces else "0"


@dataclass(frozen=True)
class StratumRecord:
    """One stratum of the vertex-partition stratification."""

    vp: VertexPartition
    contracted: Quiver
    deleted_loops: int
    b1_contracted: int
    codim_in_X: int
    codim_in_Y: int
    fiber_dim: int
    multiplicity: int


@dataclass(frozen=True)
class SmallnessCertificate:
    passed: bool
    violations: tuple

    def __bool__(self):
        return self.passed


@dataclass(frozen=True)
class LocalModelDims:
    """Dimension constants of the local model of the moduli embedding.

    dim_M = 2*(n^2*(g-1)+1) is the moduli dimension, dim_Y = 2*b1 and
    dim_X = b1 + s the hypertoric and Lawrence dimensions for the spectral
    dual graph, dim_Jbar = 4*(n^2*(g-1)+1) - 3 the ambient family dimension,
    and d_dim, c_dim the two smooth-factor dimensions.
    """

    n: int
    g: int
    partition: object
    s: int
    b1: int
    d_dim: int
    c_dim: int
    dim_M: int
    dim_Y: int
    dim_X: int
    dim_Jbar: int

    def __post_init__(self):
        if self.dim_M != self.dim_Y + 2 * self.d_dim + 2 * self.g + 2:
            raise RuntimeError(
                "internal consistency failure: dim_M != dim_Y + 2*d + 2g + 2 for %s" % (self.partition,)
            )
        if self.dim_Jbar != self.dim_X + self.c_dim:
            raise RuntimeError(
                "internal consistency failure: dim_Jbar != dim_X + c for %s" % (self.partition,)
            )


def lawrence_dims(quiver):
    """(dim of the Lawrence variety, dim of the hypertoric variety) = (b1+s, 2*b1)."""
    if not quiver.is_connected():
        raise ValueError("lawrence_dims requires a connected quiver")
    b1 = betti1(quiver)
    return b1 + quiver.edge_count, 2 * b1


def circuit_relations(quiver):
    """The r-1 circuit relations; coefficient vectors are the boundary matrix rows."""
    if not quiver.is_connected():
        raise ValueError("circuit relations require a connected quiver")
    if quiver.vertex_count == 1:
        return []
    A = boundary_matrix(quiver)
    return [
        CircuitRelation(index=i + 2, coefficients=tuple(A.data[i]))
        for i in range(A.rows)
    ]


def _stratum_geometry(quiver):
    """Yield (vp, contracted, deleted_loops, b1_contracted, s_contracted) per vertex partition."""
    r = quiver.vertex_count
    if r > 12:
        raise ResourceLimitError(
            "stratum enumeration is capped at 12 vertices (Bell growth); got %d" % r
        )
    if not quiver.is_connected():
        raise ValueError("stratum enumeration requires a connected quiver")
    for blocks in set_partitions(range(r)):
        vp = VertexPartition(blocks)
        contracted, dropped = contract_counting_loops(quiver, vp)
        yield vp, contracted, dropped, betti1(contracted), contracted.edge_count


def enumerate_strata(quiver, cache=None):
    """All strata of the vertex-partition stratification, open stratum first.

    One record per vertex partition; the open stratum is the one-block
    partition (its contraction is a point).  Multiplicities are sphere
    counts of the contracted cographic matroid complexes.  Output is sorted
    by (codimension, canonical key of the contraction, blocks).
    """
    records = []
    for vp, contracted, dropped, b1c, sc in _stratum_geometry(quiver):
        records.append(
            StratumRecord(
                vp=vp,
                contracted=contracted,
                deleted_loops=dropped,
                b1_contracted=b1c,
                codim_in_X=b1c + sc,
                codim_in_Y=2 * b1c,
                fiber_dim=b1c,
                multiplicity=top_betti(contracted, cache=cache),
            )
        )
    records.sort(key=lambda rec: (rec.codim_in_Y, rec.codim_in_X, canonical_key(rec.contracted), rec.vp.blocks))
    return records


def certify_small(quiver):
    """Check strict smallness over every nontrivial stratum.

    For each vertex partition with at least two blocks the resolution fiber
    dimension b1(contraction) must be strictly less than the stratum
    codimension b1 + s in the Lawrence variety, i.e. b1(contraction) <
    s(contraction).  Returns a certificate carrying any violating strata.
    """
    violations = []
    for vp, contracted, dropped, b1c, sc in _stratum_geometry(quiver):
        if len(vp.blocks) < 2:
            continue
        if not b1c < sc:
            violations.append(
                StratumRecord(
                    vp=vp,
                    contracted=contracted,
                    deleted_loops=dropped,
                    b1_contracted=b1c,
                    codim_in_X=b1c + sc,
                    codim_in_Y=2 * b1c,
                    fiber_dim=b1c,
                    multiplicity=-1,  # not computed for violating strata
                )
            )
    return SmallnessCertificate(passed=not violations, violations=tuple(violations))


def local_decomposition(quiver, cache=None):
    """Semismall decomposition bookkeeping: every stratum with its multiplicity.

    Every stratum is relevant (2 * fiber_dim equals the codimension in the
    hypertoric variety exactly), and the multiplicity over a stratum is the
    top Betti number of the contracted hypertoric resolution, computed as
    the sphere count of the contracted matroid complex.  The open stratum
    always carries multiplicity 1.

    A nontrivial vertex partition whose contraction has b1 = 0 yields a
    smooth normal slice, so it is not a singular stratum of the hypertoric
    variety at all; such records merge into the open stratum and are
    dropped (a single edge therefore decomposes as just the open summand).
    Contractions of spectral dual graphs always have b1 >= 1, so nothing is
    ever dropped for them.
    """
    out = []
    for rec in enumerate_strata(quiver, cache=cache):
        if len(rec.vp.blocks) > 1 and rec.b1_contracted == 0:
            continue
        out.append((rec, rec.multiplicity))
    return out


def local_model_dims(partition, genus):
    """Dimension ledger of the local model of the moduli embedding at a stratum."""
    if genus < 2:
        raise ValueError("genus must be at least 2, got %r" % genus)
    graph = spectral_dual_graph(partition, genus)
    n = partition.n
    s = graph.edge_count
    b1 = betti1(graph)
    gm1 = genus - 1
    return LocalModelDims(
        n=n,
        g=genus,
        partition=partition,
        s=s,
        b1=b1,
        d_dim=(n * n - 1) * gm1 - 1 - b1,
        c_dim=4 * n * n * gm1 + 1 - b1 - s,
        dim_M=2 * (n * n * gm1 + 1),
        dim_Y=2 * b1,
        dim_X=b1 + s,
        dim_Jbar=4 * (n * n * gm1 + 1) - 3,
    )
