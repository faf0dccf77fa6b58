"""Free properad on weighted corollas and the action of oriented graphs on it.

A composite term is a connected DAG whose vertices are corollas ``(m, n, a)``
together with globally labeled free output and input legs.  Output flags are
odd (a corolla of type ``(m, n, a)`` has degree ``2 - m``), input flags even,
so a term carries an orientation: an ordering of all output flags, namely the
free outputs and the internal edges (each internal edge consumes one output).
The canonical orientation lists free outputs by label, then internal edges in
sorted order.

A graph ``G`` acts on a corolla by replacing it with ``G``, attaching the legs
to the vertices of ``G`` in all ways and distributing the weight; the edges of
``G`` are prepended to the orientation.  On composite terms the action is
extended as a derivation, which again amounts to prepending the new edges.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .graphcore import Graph, GraphError, canonical_relabelings, frac_str, permutation_sign


class PropadError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Corolla:
    m: int
    n: int
    a: int = 0

    def __post_init__(self):
        if self.m < 1 or self.n < 1 or self.a < 0:
            raise PropadError("corolla needs m, n >= 1 and a >= 0: %r" % (self,))
        if self.m + self.n + self.a < 3:
            raise PropadError("corolla needs m + n + a >= 3: %r" % (self,))

    @property
    def degree(self):
        return 2 - self.m

    def term(self):
        return Term(1, (self.a,), (), (0,) * self.m, (0,) * self.n)

    def to_json(self):
        return {"m": self.m, "n": self.n, "a": self.a}


def is_generator(m, n, a):
    return m >= 1 and n >= 1 and m + n + a >= 3


@dataclass(frozen=True, order=True)
class Term:
    """Canonical composite: ``outs[i]`` / ``ins[j]`` give the vertex of leg i / j."""

    nv: int
    weights: tuple
    edges: tuple
    outs: tuple
    ins: tuple

    def arities(self):
        m = [0] * self.nv
        n = [0] * self.nv
        for u, v in self.edges:
            m[u] += 1
            n[v] += 1
        for u in self.outs:
            m[u] += 1
        for v in self.ins:
            n[v] += 1
        return m, n

    def corollas(self):
        m, n = self.arities()
        return [(m[v], n[v], self.weights[v]) for v in range(self.nv)]

    @property
    def degree(self):
        return sum(2 - m for m, _, _ in self.corollas())

    @property
    def total_weight(self):
        return sum(self.weights)

    @property
    def genus(self):
        return len(self.edges) - self.nv + 1

    def to_json(self):
        return {
            "vertices": [{"m": m, "n": n, "a": a} for m, n, a in self.corollas()],
            "edges": [list(e) for e in self.edges],
            "outputs": list(self.outs),
            "inputs": list(self.ins),
        }


def _valid(nv, weights, edges, outs, ins):
    m = [0] * nv
    n = [0] * nv
    for u, v in edges:
        m[u] += 1
        n[v] += 1
    for u in outs:
        m[u] += 1
    for v in ins:
        n[v] += 1
    for v in range(nv):
        if not is_generator(m[v], n[v], weights[v]):
            return False
    return True


def _has_cycle(nv, edges):
    indeg = [0] * nv
    out = [[] for _ in range(nv)]
    for u, v in edges:
        out[u].append(v)
        indeg[v] += 1
    stack = [v for v in range(nv) if indeg[v] == 0]
    seen = 0
    while stack:
        u = stack.pop()
        seen += 1
        for v in out[u]:
            indeg[v] -= 1
            if not indeg[v]:
                stack.append(v)
    return seen != nv


def canonicalize_term(nv, weights, edges, outs, ins, flags, anonymous=False):
    """Canonical ``(Term, sign)`` or ``None`` if the raw term vanishes.

    ``flags`` orders the output flags: ``("e", k)`` is internal edge ``k`` and
    ``("o", i)`` free output ``i``.  Parallel internal edges or an odd
    automorphism make the term zero.

    With ``anonymous=True`` the global leg labels are forgotten: the result is
    the class of the term modulo relabeling inputs, and relabeling outputs
    up to the sign of the permutation.  Its free legs come back sorted by
    vertex.
    """
    edges = tuple(edges)
    if len(set(edges)) != len(edges):
        return None
    return _canon(nv, tuple(weights), edges, tuple(outs), tuple(ins), tuple(flags), anonymous)


@lru_cache(maxsize=1 << 15)
def _canon(nv, weights, edges, outs, ins, flags, anonymous=False):
    colors = []
    for v in range(nv):
        if anonymous:
            colors.append((weights[v], outs.count(v), ins.count(v)))
        else:
            colors.append((weights[v],
                           tuple(i for i, u in enumerate(outs) if u == v),
                           tuple(j for j, u in enumerate(ins) if u == v)))
    nout = len(outs)
    best = None
    best_sign = 0
    for perm in canonical_relabelings(nv, edges, colors):
        rel = [(perm[u], perm[v]) for u, v in edges]
        sorted_edges = sorted(rel)
        new_w = [0] * nv
        for v in range(nv):
            new_w[perm[v]] = weights[v]
        new_outs = tuple(perm[u] for u in outs)
        new_ins = tuple(perm[u] for u in ins)
        if anonymous:
            # reordering outputs among themselves does not change the class
            new_outs = tuple(sorted(new_outs))
            new_ins = tuple(sorted(new_ins))
        enc = (tuple(sorted_edges), new_outs, new_ins, tuple(new_w))
        # an edge's position in canonical order; edges are distinct
        pos = {e: i for i, e in enumerate(sorted_edges)}
        keys = [f[1] if f[0] == "o" else nout + pos[rel[f[1]]] for f in flags]
        sign = permutation_sign(keys)
        if best is None or enc < best:
            best, best_sign = enc, sign
        elif enc == best and sign != best_sign:
            return None
    edges_c, outs_c, ins_c, w_c = best
    return Term(nv, w_c, edges_c, outs_c, ins_c), best_sign


def term_flags(t):
    """Canonical orientation of a canonical term."""
    return [("o", i) for i in range(len(t.outs))] + [("e", k) for k in range(len(t.edges))]


class PropadVector:
    """Linear combination of canonical terms with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        for t, c in (terms.items() if isinstance(terms, dict) else (terms or ())):
            c = Fraction(c)
            if c:
                self.terms[t] = self.terms.get(t, 0) + c
        self.terms = {t: c for t, c in self.terms.items() if c}

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def items(self):
        return [(t, self.terms[t]) for t in sorted(self.terms)]

    def coeff(self, t):
        return self.terms.get(t, Fraction(0))

    def __eq__(self, other):
        if isinstance(other, PropadVector):
            return self.terms == other.terms
        return NotImplemented

    def __add__(self, other):
        out = dict(self.terms)
        for t, c in other.terms.items():
            v = out.get(t, 0) + c
            if v:
                out[t] = v
            else:
                out.pop(t, None)
        res = PropadVector()
        res.terms = out
        return res

    def __mul__(self, k):
        k = Fraction(k)
        res = PropadVector()
        if k:
            res.terms = {t: c * k for t, c in self.terms.items()}
        return res

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def by_weight_loss(self, a):
        """Split into hbar-orders ``a - total_weight`` relative to top weight ``a``."""
        out = {}
        for t, c in self.terms.items():
            out.setdefault(a - t.total_weight, {})[t] = c
        return {k: PropadVector(v) for k, v in sorted(out.items())}

    def truncate(self, a, order):
        """Keep terms of hbar-order <= ``order`` relative to top weight ``a``."""
        return PropadVector({t: c for t, c in self.terms.items() if a - t.total_weight <= order})

    def __repr__(self):
        return "PropadVector(%d terms)" % len(self.terms)

    def to_json(self):
        return [dict(t.to_json(), coeff=frac_str(c)) for t, c in self.items()]


def _weight_splits(total, parts):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _weight_splits(total - first, parts - 1):
            yield (first,) + rest


def _leg_assignments(nv, m, n, base_out, base_in, weights):
    """Assignments of m output / n input legs making every vertex a generator.

    Depth-first with a deficit bound: the legs still to place must cover what
    each vertex is missing.
    """
    got_out = list(base_out)
    got_in = list(base_in)
    outs = [0] * m
    ins = [0] * n

    def deficit():
        need_o = need_i = need_t = 0
        for v in range(nv):
            o, i = got_out[v], got_in[v]
            do = 1 if o < 1 else 0
            di = 1 if i < 1 else 0
            dt = max(0, 3 - weights[v] - o - i)
            need_o += do
            need_i += di
            need_t += max(dt, do + di)
        return need_o, need_i, need_t

    def rec(pos):
        left_o = m - min(pos, m)
        left_i = n - max(0, pos - m)
        need_o, need_i, need_t = deficit()
        if need_o > left_o or need_i > left_i or need_t > left_o + left_i:
            return
        if pos == m + n:
            yield tuple(outs), tuple(ins)
            return
        for v in range(nv):
            if pos < m:
                outs[pos] = v
                got_out[v] += 1
                yield from rec(pos + 1)
                got_out[v] -= 1
            else:
                ins[pos - m] = v
                got_in[v] += 1
                yield from rec(pos + 1)
                got_in[v] -= 1

    yield from rec(0)


@lru_cache(maxsize=None)
def _act_graph(k, g, c):
    """Terms of the action of ``h^k g`` on corolla ``c`` (one canonical graph)."""
    if k > c.a:
        return ()
    nv = g.n
    base_out = [0] * nv
    base_in = [0] * nv
    for u, v in g.edges:
        base_out[u] += 1
        base_in[v] += 1
    flags = tuple([("e", i) for i in range(g.l)] + [("o", i) for i in range(c.m)])
    acc = {}
    for weights in _weight_splits(c.a - k, nv):
        for outs, ins in _leg_assignments(nv, c.m, c.n, base_out, base_in, weights):
            res = _canon(nv, weights, g.edges, outs, ins, flags)
            if res is None:
                continue
            t, s = res
            acc[t] = acc.get(t, 0) + s
    return tuple((t, c_) for t, c_ in acc.items() if c_)


def act(k, gv, c):
    """Action of ``h^k * gv`` (a GraphVector) on the generator ``c``."""
    acc = {}
    for g, coeff in gv.terms.items():
        for t, s in _act_graph(k, g, c):
            acc[t] = acc.get(t, 0) + coeff * s
    return PropadVector(acc)


def _series_pieces(series, trunc):
    if trunc > series.max_order():
        raise PropadError("series known to order %d, truncation %d requested"
                          % (series.max_order(), trunc))
    return tuple((k, series[k]) for k in range(trunc + 1) if series[k])


def derivation_on_corolla(pieces, c):
    acc = PropadVector()
    for k, gv in pieces:
        if k <= c.a:
            acc = acc + act(k, gv, c)
    return acc


def delta_diamond(c, series, trunc):
    """``F(series)`` on the generator ``c`` through ``h^trunc``."""
    return derivation_on_corolla(_series_pieces(series, trunc), c)


def delta_classical(m, n):
    """Two-corolla splitting sum for the weight-zero generator ``(m, n)``.

    Vertex 0 carries outputs I1, the connecting edge and inputs J1; vertex 1
    carries outputs I2 and inputs J2 plus the edge, with |I2|, |J1| >= 1.
    """
    if m < 1 or n < 1 or m + n < 3:
        raise PropadError("no weight-zero generator of type (%d, %d)" % (m, n))
    acc = {}
    flags = (("e", 0),) + tuple(("o", i) for i in range(m))
    for out_side in product((0, 1), repeat=m):
        if 1 not in out_side:
            continue
        for in_side in product((0, 1), repeat=n):
            if 0 not in in_side:
                continue
            res = canonicalize_term(2, (0, 0), ((0, 1),), out_side, in_side, flags)
            if res is None:
                continue
            t, s = res
            if not _valid(2, (0, 0), ((0, 1),), out_side, in_side):
                continue
            acc[t] = acc.get(t, 0) + s
    return PropadVector(acc)


def _vertex_flags(t, v, flags):
    """Output flags of vertex v in orientation order, and its input legs."""
    out_flags = []
    for f in flags:
        if f[0] == "o":
            if t.outs[f[1]] == v:
                out_flags.append(f)
        elif t.edges[f[1]][0] == v:
            out_flags.append(f)
    in_flags = [("i", j) for j, u in enumerate(t.ins) if u == v]
    in_flags += [("e", k) for k, (_, w) in enumerate(t.edges) if w == v]
    return out_flags, in_flags


def substitute(t, v, sub, flags=None):
    """Replace vertex ``v`` of ``t`` by the canonical local term ``sub``.

    The local output label p of ``sub`` is identified with the p-th output
    flag of ``v`` in orientation order; local input labels with ``v``'s inputs
    in a fixed order.  Returns ``(raw pieces, sign)`` ready for
    canonicalization; the new edges are prepended to the orientation.
    """
    if flags is None:
        flags = term_flags(t)
    out_flags, in_flags = _vertex_flags(t, v, flags)
    keep = [w for w in range(t.nv) if w != v]
    remap = {w: i for i, w in enumerate(keep)}
    off = len(keep)
    nv = off + sub.nv
    weights = [t.weights[w] for w in keep] + list(sub.weights)
    out_target = {f: sub.outs[p] + off for p, f in enumerate(out_flags)}
    in_target = {f: sub.ins[q] + off for q, f in enumerate(in_flags)}
    edges = []
    for k, (a, b) in enumerate(t.edges):
        f = ("e", k)
        na = out_target[f] if a == v else remap[a]
        nb = in_target[f] if b == v else remap[b]
        edges.append((na, nb))
    outs = [out_target[("o", i)] if u == v else remap[u] for i, u in enumerate(t.outs)]
    ins = [in_target[("i", j)] if u == v else remap[u] for j, u in enumerate(t.ins)]
    base = len(edges)
    edges.extend((a + off, b + off) for a, b in sub.edges)
    new_flags = [("e", base + k) for k in range(len(sub.edges))] + list(flags)
    # sub is stored as outs ^ E; the derivation rule wants E ^ outs
    sign = -1 if (len(sub.outs) * len(sub.edges)) % 2 else 1
    return (nv, tuple(weights), tuple(edges), tuple(outs), tuple(ins), tuple(new_flags)), sign


def apply_derivation(pieces, vec, on_corolla=None, anonymous=False):
    """Extend the corolla-level action of ``pieces`` to ``vec`` by Leibniz.

    With ``anonymous=True`` the results are projected by forget_labels.
    """
    if on_corolla is None:
        cache = {}

        def on_corolla(c):
            if c not in cache:
                cache[c] = derivation_on_corolla(pieces, c)
            return cache[c]

    acc = {}
    for t, coeff in vec.terms.items():
        flags = term_flags(t)
        for v, (m, n, a) in enumerate(t.corollas()):
            image = on_corolla(Corolla(m, n, a))
            for sub, c in image.terms.items():
                raw, s = substitute(t, v, sub, flags)
                nv, weights, edges, outs, ins, new_flags = raw
                if _has_cycle(nv, edges):
                    continue
                res = canonicalize_term(nv, weights, edges, outs, ins, new_flags, anonymous)
                if res is None:
                    continue
                u, s2 = res
                acc[u] = acc.get(u, 0) + coeff * c * s * s2
    return PropadVector(acc)


def delta_on_term(vec, series, trunc):
    """The derivation ``F(series)`` (through ``h^trunc``) on a PropadVector."""
    return apply_derivation(_series_pieces(series, trunc), vec)


def forget_labels(vec):
    """Project to classes modulo leg relabeling (outputs with sign).

    Injective on vectors that are invariant under relabeling inputs and
    sign-invariant under relabeling outputs.
    """
    acc = {}
    for t, c in vec.terms.items():
        res = canonicalize_term(t.nv, t.weights, t.edges, t.outs, t.ins, term_flags(t), True)
        if res is None:
            continue
        u, s = res
        acc[u] = acc.get(u, 0) + c * s
    return PropadVector(acc)


def delta_squared(c, series, trunc, reduced=True):
    """``delta(delta(c))`` truncated to hbar-order <= trunc.

    ``delta(delta(c))`` is invariant under leg relabeling because ``c`` is and
    the derivation commutes with relabeling, so by default it is computed on
    label-forgotten classes (see forget_labels): zero there iff zero.
    ``reduced=False`` keeps all labels.
    """
    pieces = _series_pieces(series, trunc)
    first = derivation_on_corolla(pieces, c)
    if reduced:
        first = forget_labels(first)
    second = apply_derivation(pieces, first, anonymous=reduced)
    return second.truncate(c.a, trunc)


def relabel(vec, out_perm=None, in_perm=None):
    """Relabel global legs: output i becomes ``out_perm[i]`` (likewise inputs).

    Output legs are odd, so the coefficient picks up the sign of ``out_perm``.
    """
    acc = {}
    for t, c in vec.terms.items():
        m, n = len(t.outs), len(t.ins)
        op = list(out_perm) if out_perm is not None else list(range(m))
        ip = list(in_perm) if in_perm is not None else list(range(n))
        outs = [0] * m
        for i, u in enumerate(t.outs):
            outs[op[i]] = u
        ins = [0] * n
        for j, u in enumerate(t.ins):
            ins[ip[j]] = u
        # orientation: old output i now carries label op[i]
        flags = [("o", op[i]) for i in range(m)] + [("e", k) for k in range(len(t.edges))]
        res = canonicalize_term(t.nv, t.weights, t.edges, outs, ins, flags)
        if res is None:
            continue
        u, s = res
        acc[u] = acc.get(u, 0) + c * s
    return PropadVector(acc)


def quantizability_composite():
    """The genus-one four-corolla composite: one input leg, one output leg.

    Bottom (2,1) feeds the middle (1,2) and the right (2,1); the right vertex
    feeds the middle and the top (1,2); the middle feeds the top.
    """
    edges = ((0, 1), (0, 2), (1, 2), (1, 3), (2, 3))
    flags = tuple(("e", k) for k in range(5)) + (("o", 0),)
    res = canonicalize_term(4, (0, 0, 0, 0), edges, (3,), (0,), flags)
    if res is None:
        raise GraphError("quantizability composite vanished")
    return res
