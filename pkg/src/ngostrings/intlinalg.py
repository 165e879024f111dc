"""Exact integer linear algebra: Smith normal form, Gale duals, exactness checks.

All arithmetic is arbitrary-precision integer arithmetic; nothing here ever
touches floating point.  The central consumers are the quiver boundary maps
A: Z^s -> Z^(r-1): their saturated kernel bases (Gale duals) fit into the
exact sequence 0 -> Z^b1 -B-> Z^s -A-> Z^(r-1) -> 0, which verify_exact
certifies condition by condition.

Pivot selection is deterministic everywhere (smallest magnitude, ties by
position) so decompositions reproduce bit for bit across platforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class NotBoundaryMapError(ValueError):
    """The matrix is not surjective over Z, so it has no Gale dual."""


class IntMatrix:
    """Dense matrix of arbitrary-precision integers."""

    __slots__ = ("data",)

    def __init__(self, rows):
        data = [list(int(v) for v in row) for row in rows]
        if data:
            width = len(data[0])
            if any(len(row) != width for row in data):
                raise ValueError("rows have unequal lengths")
        self.data = data

    @classmethod
    def zeros(cls, rows, cols):
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def rows(self):
        return len(self.data)

    @property
    def cols(self):
        return len(self.data[0]) if self.data else 0

    @property
    def entries(self):
        """Row-major tuple of all entries."""
        return tuple(v for row in self.data for v in row)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, IntMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __mul__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(
                "cannot multiply %dx%d by %dx%d"
                % (self.rows, self.cols, other.rows, other.cols)
            )
        out = [[0] * other.cols for _ in range(self.rows)]
        for i, row in enumerate(self.data):
            for k, a in enumerate(row):
                if a:
                    orow = other.data[k]
                    oi = out[i]
                    for j, b in enumerate(orow):
                        if b:
                            oi[j] += a * b
        return IntMatrix(out)

    def transpose(self):
        return IntMatrix([[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def is_zero(self):
        return all(v == 0 for row in self.data for v in row)

    def column(self, j):
        return [row[j] for row in self.data]

    def __str__(self):
        if not self.data:
            return "[]"
        if self.cols == 0:
            return "\n".join("[]" for _ in self.data)
        widths = [max(len(str(self.data[i][j])) for i in range(self.rows)) for j in range(self.cols)]
        lines = []
        for row in self.data:
            cells = [str(v).rjust(widths[j]) for j, v in enumerate(row)]
            lines.append("[" + " ".join(cells) + "]")
        return "\n".join(lines)

    def __repr__(self):
        return "IntMatrix(%r)" % (self.data,)


@dataclass(frozen=True)
class SmithDecomposition:
    """Unimodular U, V with U*A*V = S, S diagonal with divisibility chain."""

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix

    @property
    def invariants(self):
        """Nonzero diagonal entries d1 | d2 | ... of S."""
        k = min(self.S.rows, self.S.cols)
        return tuple(self.S.data[i][i] for i in range(k) if self.S.data[i][i] != 0)

    @property
    def rank(self):
        return len(self.invariants)


def _pivot_in_submatrix(S, t):
    """Smallest-magnitude nonzero entry of S[t:, t:], ties by row-major position."""
    best = None
    for i in range(t, len(S)):
        row = S[i]
        for j in range(t, len(row)):
            v = row[j]
            if v != 0 and (best is None or abs(v) < abs(best[0])):
                best = (v, i, j)
    return best


def smith_normal_form(A):
    """Smith normal form with transforms: returns U, S, V with U*A*V = S.

    Deterministic for a fixed input: the pivot at each step is the
    smallest-magnitude nonzero entry of the remaining submatrix, ties broken
    by row-major position.
    """
    m, n = A.rows, A.cols
    S = [list(row) for row in A.data]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(i, k):
        S[i], S[k] = S[k], S[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in S:
            row[j], row[k] = row[k], row[j]
        for row in V:
            row[j], row[k] = row[k], row[j]

    def add_row(src, dst, factor):
        srow, drow = S[src], S[dst]
        for j in range(n):
            drow[j] += factor * srow[j]
        srow, drow = U[src], U[dst]
        for j in range(m):
            drow[j] += factor * srow[j]

    def add_col(src, dst, factor):
        for row in S:
            row[dst] += factor * row[src]
        for row in V:
            row[dst] += factor * row[src]

    t = 0
    while t < min(m, n):
        found = _pivot_in_submatrix(S, t)
        if found is None:
            break
        _, pi, pj = found
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)
        while True:
            # clear column t below/above the pivot
            restart = False
            for i in range(m):
                if i != t and S[i][t] != 0:
                    q = S[i][t] // S[t][t]
                    add_row(t, i, -q)
                    if S[i][t] != 0:
                        swap_rows(t, i)
                        restart = True
                        break
            if restart:
                continue
            for j in range(n):
                if j != t and S[t][j] != 0:
                    q = S[t][j] // S[t][t]
                    add_col(t, j, -q)
                    if S[t][j] != 0:
                        swap_cols(t, j)
                        restart = True
                        break
            if restart:
                continue
            # enforce divisibility: pivot must divide the rest of the submatrix
            offender = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if S[i][j] % S[t][t] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(offender, t, 1)
        if S[t][t] < 0:
            for j in range(n):
                S[t][j] = -S[t][j]
            for j in range(m):
                U[t][j] = -U[t][j]
        t += 1

    return SmithDecomposition(U=IntMatrix(U), S=IntMatrix(S), V=IntMatrix(V))


def sparse_rank(rows):
    """Rank over Q of a matrix given as sparse rows (dicts col -> value).

    Fraction-free: row combinations are integer cross-multiplications
    followed by a gcd renormalization, which preserves the row space over Q.
    Pivots are chosen deterministically: smallest magnitude first, then
    smallest Markowitz fill estimate, then position.
    """
    work = {}
    col_rows = {}
    for i, row in enumerate(rows):
        entries = {j: int(v) for j, v in row.items() if v}
        if not entries:
            continue
        g = math.gcd(*entries.values()) if len(entries) > 1 else abs(next(iter(entries.values())))
        if g > 1:
            entries = {j: v // g for j, v in entries.items()}
        work[i] = entries
        for j in entries:
            col_rows.setdefault(j, set()).add(i)

    rank = 0
    while work:
        best = None
        for i in sorted(work):
            row = work[i]
            rweight = len(row) - 1
            for j in sorted(row):
                v = abs(row[j])
                cost = (v, rweight * (len(col_rows[j]) - 1), i, j)
                if best is None or cost < best:
                    best = cost
        _, _, pi, pj = best
        prow = work[pi]
        p = prow[pj]
        for i in sorted(col_rows[pj]):
            if i == pi:
                continue
            row = work[i]
            a = row[pj]
            g = math.gcd(p, a)
            fr, fp = p // g, a // g
            merged = {}
            for j, v in row.items():
                merged[j] = fr * v
            for j, v in prow.items():
                nv = merged.get(j, 0) - fp * v
                if nv:
                    merged[j] = nv
                elif j in merged:
                    del merged[j]
            for j in row:
                if j not in merged:
                    col_rows[j].discard(i)
            for j in merged:
                if j not in row:
                    col_rows.setdefault(j, set()).add(i)
            if merged:
                g2 = math.gcd(*merged.values()) if len(merged) > 1 else abs(next(iter(merged.values())))
                if g2 > 1:
                    merged = {j: v // g2 for j, v in merged.items()}
                work[i] = merged
            else:
                del work[i]
        for j in prow:
            col_rows[j].discard(pi)
        del work[pi]
        rank += 1
    return rank


def rational_rank(A):
    """Rank over Q of an IntMatrix (or nested integer lists)."""
    data = A.data if isinstance(A, IntMatrix) else A
    rows = [{j: v for j, v in enumerate(row) if v} for row in data]
    return sparse_rank(rows)


def row_hermite_form(rows, ncols):
    """Canonical basis of the lattice spanned by the given integer rows.

    Row-style Hermite normal form: echelon shape, positive pivots, entries
    above each pivot reduced into [0, pivot).  The output depends only on
    the row lattice, which makes kernel bases reproducible.
    """
    work = [list(r) for r in rows]
    pivot_row = 0
    for col in range(ncols):
        live = [i for i in range(pivot_row, len(work)) if work[i][col] != 0]
        if not live:
            continue
        while True:
            live = [i for i in range(pivot_row, len(work)) if work[i][col] != 0]
            if len(live) <= 1:
                break
            live.sort(key=lambda i: (abs(work[i][col]), i))
            i0 = live[0]
            for i in live[1:]:
                q = work[i][col] // work[i0][col]
                work[i] = [a - q * b for a, b in zip(work[i], work[i0])]
        live = [i for i in range(pivot_row, len(work)) if work[i][col] != 0]
        if not live:
            continue
        i0 = live[0]
        work[pivot_row], work[i0] = work[i0], work[pivot_row]
        if work[pivot_row][col] < 0:
            work[pivot_row] = [-v for v in work[pivot_row]]
        pivot = work[pivot_row][col]
        for i in range(pivot_row):
            q = work[i][col] // pivot
            if q:
                work[i] = [a - q * b for a, b in zip(work[i], work[pivot_row])]
        pivot_row += 1
    return [row for row in work[:pivot_row]]


def gale_dual(A):
    """Integer matrix B whose columns are a canonical basis of the saturated kernel of A.

    Requires A to be surjective over Z (all Smith invariants 1 and full row
    rank), which holds for boundary matrices of connected quivers; raises
    NotBoundaryMapError otherwise.  The columns of the result are the
    Hermite-canonical basis of ker(A), so B is deterministic and satisfies
    A*B = 0 with Z^cols(A)/im(B) torsion free.
    """
    dec = smith_normal_form(A)
    if dec.rank < A.rows or any(d != 1 for d in dec.invariants):
        raise NotBoundaryMapError(
            "matrix is not surjective over Z (Smith invariants %r)" % (dec.invariants,)
        )
    n = A.cols
    kernel_rows = [dec.V.column(j) for j in range(dec.rank, n)]
    basis = row_hermite_form(kernel_rows, n) if kernel_rows else []
    return IntMatrix([[basis[k][i] for k in range(len(basis))] for i in range(n)])


@dataclass(frozen=True)
class ExactnessReport:
    """Condition-by-condition certificate for 0 -> Z^b1 -B-> Z^s -A-> Z^(r-1) -> 0."""

    ok: bool
    product_is_zero: bool
    b_injective: bool
    a_surjective_over_z: bool
    spans_kernel: bool
    saturated: bool
    failures: tuple

    def __bool__(self):
        return self.ok


def verify_exact(A, B):
    """Check that B resolves the kernel of A in an exact sequence of free Z-modules.

    Verifies A*B = 0, B injective, rank(B) = dim ker(A) (spanning over Q),
    A surjective over Z, and that the column lattice of B is saturated; a
    saturated full-rank sublattice of ker(A) is all of ker(A), so the five
    conditions together certify exactness.
    """
    if A.cols != B.rows:
        raise ValueError(
            "shapes do not compose: A is %dx%d, B is %dx%d"
            % (A.rows, A.cols, B.rows, B.cols)
        )
    product_is_zero = (A * B).is_zero() if B.cols else True
    rank_a = rational_rank(A)
    rank_b = rational_rank(B) if B.cols else 0
    b_injective = rank_b == B.cols
    spans_kernel = rank_b == A.cols - rank_a
    a_dec = smith_normal_form(A)
    a_surjective = a_dec.rank == A.rows and all(d == 1 for d in a_dec.invariants)
    if B.cols:
        b_dec = smith_normal_form(B)
        saturated = all(d == 1 for d in b_dec.invariants)
    else:
        saturated = True

    failures = []
    if not product_is_zero:
        failures.append("product A*B nonzero")
    if not b_injective:
        failures.append("B not injective")
    if not a_surjective:
        failures.append("A not surjective over Z")
    if not spans_kernel:
        failures.append("not spanning")
    if not saturated:
        failures.append("kernel not saturated")
    return ExactnessReport(
        ok=not failures,
        product_is_zero=product_is_zero,
        b_injective=b_injective,
        a_surjective_over_z=a_surjective,
        spans_kernel=spans_kernel,
        saturated=saturated,
        failures=tuple(failures),
    )
