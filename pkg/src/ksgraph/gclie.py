"""Insertion product, bracket and differential on oriented graphs.

Composite edge order is fixed as host edges first (after reattachment), then
guest edges.  Coherence of this choice is certified by the d^2 = 0 and Jacobi
tests rather than derived by hand.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import product

from .graphcore import (
    EDGE,
    Graph,
    GraphError,
    GraphSeries,
    GraphVector,
    canonicalize_unchecked,
)


def _insert_raw(host, v, guest):
    """Yield raw ``(n, edges)`` summands of inserting ``guest`` at vertex ``v``."""
    if not 0 <= v < host.n:
        raise GraphError("vertex %d out of range for host with %d vertices" % (v, host.n))
    # host vertices other than v keep their order, guest vertices follow
    relabel = {}
    k = 0
    for w in range(host.n):
        if w != v:
            relabel[w] = k
            k += 1
    off = host.n - 1
    guest_edges = [(a + off, b + off) for a, b in guest.edges]
    incident = [i for i, (a, b) in enumerate(host.edges) if a == v or b == v]
    n = host.n - 1 + guest.n
    for choice in product(range(guest.n), repeat=len(incident)):
        target = dict(zip(incident, choice))
        edges = []
        for i, (a, b) in enumerate(host.edges):
            if i in target:
                t = target[i] + off
                a = t if a == v else relabel[a]
                b = t if b == v else relabel[b]
            else:
                a, b = relabel[a], relabel[b]
            edges.append((a, b))
        edges.extend(guest_edges)
        yield n, edges


def insert(host, v, guest):
    acc = {}
    for n, edges in _insert_raw(host, v, guest):
        res = canonicalize_unchecked(n, edges)
        if res is None:
            continue
        g, s = res
        acc[g] = acc.get(g, 0) + s
    return GraphVector(acc)


@lru_cache(maxsize=1 << 18)
def _circ_graphs(host, guest):
    acc = {}
    for v in range(host.n):
        for n, edges in _insert_raw(host, v, guest):
            res = canonicalize_unchecked(n, edges)
            if res is None:
                continue
            g, s = res
            acc[g] = acc.get(g, 0) + s
    return tuple((g, c) for g, c in acc.items() if c)


def circ(a, b):
    """Bilinear pre-Lie product: sum of insertions of ``b`` into vertices of ``a``."""
    acc = {}
    for ga, ca in a.terms.items():
        for gb, cb in b.terms.items():
            k = ca * cb
            for g, c in _circ_graphs(ga, gb):
                acc[g] = acc.get(g, 0) + k * c
    return GraphVector(acc)


def bracket(a, b):
    if not a or not b:
        return GraphVector()
    da, db = a.degree(), b.degree()
    sign = -1 if (da * db) % 2 else 1
    return circ(a, b) - sign * circ(b, a)


@lru_cache(maxsize=None)
def differential_graph(g):
    """``[edge, g]`` for one canonical graph, as a tuple of (graph, coeff)."""
    return tuple(bracket(GraphVector({EDGE: 1}), GraphVector({g: 1})).items())


def differential(a):
    acc = {}
    for g, c in a.terms.items():
        for h, d in differential_graph(g):
            acc[h] = acc.get(h, 0) + c * d
    return GraphVector(acc)


def mc_residual(s, max_order):
    """Order-k parts of ``1/2 [s, s]`` for k <= max_order."""
    half = Fraction(1, 2)
    out = {}
    for k in range(max_order + 1):
        acc = GraphVector()
        for i in range(k + 1):
            si, sj = s[i], s[k - i]
            if si and sj:
                acc = acc + bracket(si, sj) * half
        out[k] = acc
    return GraphSeries(out)
