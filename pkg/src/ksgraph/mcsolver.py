"""Order-by-order construction of Maurer-Cartan series ``edge + h*Y4 + h^2*Y6 + ...``."""

from dataclasses import dataclass
from fractions import Fraction

from .gclie import bracket, differential, mc_residual
from .graphcore import EDGE, Graph, GraphError, GraphSeries, GraphVector, enumerate_basis
from .homology import differential_columns, matrix_from_columns
from .linalg import Inconsistent, solve

# edge orders as drawn; with them the cocycle has coefficients 1, 2, 1
UPSILON4_SHAPES = (
    Graph(4, [(0, 3), (3, 1), (3, 2), (0, 1), (0, 2)]),
    Graph(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]),
    Graph(4, [(1, 3), (2, 3), (3, 0), (1, 0), (2, 0)]),
)
UPSILON4_COEFFS = (1, 2, 1)


class MCError(GraphError):
    """A series fails the precondition of an extension step."""


class SignConventionError(AssertionError):
    """An obstruction is not closed; indicates an internal sign bug."""


def upsilon4():
    out = GraphVector()
    for g, c in zip(UPSILON4_SHAPES, UPSILON4_COEFFS):
        out = out + GraphVector.from_graph(g, c)
    return out


def ks_seed():
    """``edge + h * Y4``."""
    return GraphSeries({0: GraphVector({EDGE: 1}), 1: upsilon4()})


def check_mc_series(s):
    if s[0] != GraphVector({EDGE: 1}):
        raise MCError("order-0 part must be the single edge")
    for k in s.orders():
        deg = s[k].degree()
        if deg != 1:
            raise MCError("order %d part has degree %s, expected 1" % (k, deg))


def verify_mc(s, up_to):
    res = mc_residual(s, up_to)
    return [(k, not res[k]) for k in range(up_to + 1)]


@dataclass
class ObstructionClass:
    order: int
    obstruction: GraphVector

    def to_json(self):
        return {"order": self.order, "obstruction": self.obstruction.to_json()}


def obstruction(s, order):
    """``-1/2 * sum_{i+j=order, i,j>=1} [s_i, s_j]``."""
    acc = GraphVector()
    for i in range(1, order):
        si, sj = s[i], s[order - i]
        if si and sj:
            acc = acc + bracket(si, sj)
    return acc * Fraction(-1, 2)


def _by_bigrade(v):
    groups = {}
    for g, c in v.terms.items():
        groups.setdefault((g.n, g.l), {})[g] = c
    return groups


def solve_exact(target, threads=1):
    """Some X with ``differential(X) == target``; raises Inconsistent if none."""
    out = GraphVector()
    for (n, l), part in sorted(_by_bigrade(target).items()):
        basis = enumerate_basis(n - 1, l - 1) if n > 1 and l > 0 else []
        cols = differential_columns(basis, threads)
        rows = sorted({g for col in cols for g in col} | set(part))
        m, rows = matrix_from_columns(cols, rows)
        b = [part.get(g, 0) for g in rows]
        x = solve(m, b)
        out = out + GraphVector({basis[j]: c for j, c in enumerate(x) if c})
    return out


def extend_mc(s, order, threads=1):
    """Extend ``s`` by ``h^order * X``; returns the new series or an ObstructionClass."""
    check_mc_series(s)
    if order < 1:
        raise MCError("order must be >= 1")
    failed = [k for k, ok in verify_mc(s, order - 1) if not ok]
    if failed:
        raise MCError("series is not Maurer-Cartan at orders %s" % failed)
    obs = obstruction(s, order)
    if differential(obs):
        raise SignConventionError("obstruction at order %d is not closed" % order)
    try:
        x = solve_exact(obs, threads)
    except Inconsistent:
        return ObstructionClass(order, obs)
    return s.truncate(order - 1).with_order(order, x)


def ks_series(order, threads=1):
    """The Kontsevich-Shoikhet series built up to ``h^order``."""
    s = ks_seed()
    if order <= 1:
        return s.truncate(order)
    for k in range(2, order + 1):
        s = extend_mc(s, k, threads)
        if isinstance(s, ObstructionClass):
            raise MCError("unexpected obstruction at order %d" % k)
    return s
