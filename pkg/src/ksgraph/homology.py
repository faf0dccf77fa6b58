"""Matrices of the graph differential and bigraded cohomology slices."""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .gclie import differential_graph
from .graphcore import GraphVector, enumerate_basis
from .linalg import Echelon, SparseMatrix, kernel, rank


def _diff_items(g):
    return differential_graph(g)


def differential_columns(basis, threads=1):
    """``differential`` of each basis graph, in basis order.

    With ``threads > 1`` the columns are computed in worker processes; the
    result does not depend on the worker count.
    """
    if threads > 1 and len(basis) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            cols = list(pool.map(_diff_items, basis, chunksize=max(1, len(basis) // (4 * threads))))
    else:
        cols = [differential_graph(g) for g in basis]
    return [dict(c) for c in cols]


def matrix_from_columns(columns, rows=None):
    """Assemble a SparseMatrix; rows default to the sorted union of supports."""
    if rows is None:
        rows = sorted({g for col in columns for g in col})
    index = {g: i for i, g in enumerate(rows)}
    entries = []
    for j, col in enumerate(columns):
        for g, c in col.items():
            if g not in index:
                raise KeyError("image graph %r missing from row basis" % (g,))
            entries.append((index[g], j, c))
    return SparseMatrix(len(rows), len(columns), entries), rows


def matrix_of_differential(n, l, threads=1, rows="basis"):
    """Matrix of the differential from the (n, l) basis to (n+1, l+1).

    ``rows="basis"`` indexes rows by the full target basis; ``rows="image"``
    uses only the graphs that actually occur, which avoids enumerating large
    target slices.  Returns ``(matrix, source_basis, row_graphs)``.
    """
    source = enumerate_basis(n, l)
    cols = differential_columns(source, threads)
    target = enumerate_basis(n + 1, l + 1) if rows == "basis" else None
    m, row_graphs = matrix_from_columns(cols, target)
    return m, source, row_graphs


@dataclass
class CohomologyReport:
    n: int
    l: int
    dim_basis: int
    dim_kernel: int
    dim_image_incoming: int
    representatives: list = field(default_factory=list)

    @property
    def dim_cohomology(self):
        return self.dim_kernel - self.dim_image_incoming

    @property
    def degree(self):
        return 2 * (self.n - 1) - self.l

    def to_json(self):
        return {
            "vertices": self.n,
            "edges": self.l,
            "degree": self.degree,
            "loop_order": self.l - self.n + 1,
            "dim_basis": self.dim_basis,
            "dim_kernel": self.dim_kernel,
            "dim_image_incoming": self.dim_image_incoming,
            "dim": self.dim_cohomology,
            "representatives": [r.to_json() for r in self.representatives],
        }


def cohomology(n, l, threads=1):
    """Kernel of the differential on (n, l) modulo the image from (n-1, l-1)."""
    basis = enumerate_basis(n, l)
    index = {g: i for i, g in enumerate(basis)}
    out_m, _ = matrix_from_columns(differential_columns(basis, threads))
    out_m = SparseMatrix(out_m.row_count, len(basis), out_m.entries())
    kern = kernel(out_m) if basis else []

    incoming = []
    if n > 1 and l > 0:
        for col in differential_columns(enumerate_basis(n - 1, l - 1), threads):
            incoming.append({index[g]: c for g, c in col.items()})
    in_m = SparseMatrix.from_columns(len(basis), incoming)
    dim_image = rank(in_m)

    ech = Echelon()
    for col in incoming:
        ech.add(col)
    reps = []
    for vec in kern:
        sparse = {i: c for i, c in enumerate(vec) if c}
        if ech.add(sparse):
            reps.append(GraphVector({basis[i]: c for i, c in sparse.items()}))
    report = CohomologyReport(n, l, len(basis), len(kern), dim_image, reps)
    if report.dim_cohomology != len(reps):
        raise AssertionError("representative count disagrees with rank count")
    return report


def coordinates(vec, basis):
    """Dense coordinate list of a graph vector in ``basis``."""
    index = {g: i for i, g in enumerate(basis)}
    x = [Fraction(0)] * len(basis)
    for g, c in vec.terms.items():
        x[index[g]] = c
    return x
