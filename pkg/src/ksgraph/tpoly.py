"""Polyvector fields on a d-dimensional coordinate space and graph operations on them.

A monomial is a pair ``(x, psi)``: ``x`` is a tuple of d exponents of the
commuting coordinates, ``psi`` a strictly increasing tuple of 0-based indices
of anticommuting symbols.  The psi-count is the grading; an m-vector field has
psi-count m.  In JSON the psi indices are 1-based to match ``x_1 .. x_d``.

An edge ``u -> v`` of a graph acts on a tensor product of polyvectors by
``sum_a d/dpsi_a`` on the factor at ``u`` and ``d/dx_a`` on the factor at
``v``; ``d/dpsi`` is the left derivative and is odd.
"""

from fractions import Fraction
from itertools import permutations, product
from math import factorial

from .graphcore import EDGE, Graph, frac_str, permutation_sign


class PolyError(ValueError):
    pass


def _sorted_psi(seq):
    """``(sign, sorted tuple)`` for a psi word, or ``(0, None)`` on a repeat."""
    if len(set(seq)) != len(seq):
        return 0, None
    return permutation_sign(seq), tuple(sorted(seq))


class PolyVector:
    """Finite sum of ``coeff * x^e * psi_I`` with Fraction coefficients."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim, terms=None):
        if dim < 1:
            raise PolyError("dimension must be positive")
        self.dim = dim
        acc = {}
        for (x, psi), c in (terms or {}).items():
            x = tuple(x)
            if len(x) != dim or any(e < 0 for e in x):
                raise PolyError("bad exponent vector %r for dimension %d" % (x, dim))
            if any(not 0 <= i < dim for i in psi):
                raise PolyError("psi index out of range in %r" % (psi,))
            s, p = _sorted_psi(tuple(psi))
            if not s:
                continue
            c = Fraction(c) * s
            if c:
                acc[(x, p)] = acc.get((x, p), 0) + c
        self.terms = {k: c for k, c in acc.items() if c}

    @classmethod
    def _raw(cls, dim, terms):
        out = cls.__new__(cls)
        out.dim = dim
        out.terms = {k: c for k, c in terms.items() if c}
        return out

    @classmethod
    def monomial(cls, dim, x, psi=(), coeff=1):
        return cls(dim, {(tuple(x), tuple(psi)): coeff})

    @classmethod
    def coordinate(cls, dim, i):
        x = [0] * dim
        x[i] = 1
        return cls.monomial(dim, x)

    @classmethod
    def psi(cls, dim, i):
        return cls.monomial(dim, [0] * dim, (i,))

    def _check(self, other):
        if not isinstance(other, PolyVector):
            raise TypeError("expected PolyVector")
        if other.dim != self.dim:
            raise PolyError("dimension mismatch: %d vs %d" % (self.dim, other.dim))

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, PolyVector):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __hash__(self):
        return hash((self.dim, frozenset(self.terms.items())))

    def __add__(self, other):
        self._check(other)
        acc = dict(self.terms)
        for k, c in other.terms.items():
            acc[k] = acc.get(k, 0) + c
        return PolyVector._raw(self.dim, acc)

    def __neg__(self):
        return PolyVector._raw(self.dim, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        k = Fraction(k)
        return PolyVector._raw(self.dim, {t: c * k for t, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, PolyVector):
            return self.scale(other)
        return self.wedge(other)

    def __rmul__(self, k):
        return self.scale(k)

    def wedge(self, other):
        self._check(other)
        acc = {}
        for (x1, p1), c1 in self.terms.items():
            for (x2, p2), c2 in other.terms.items():
                s, p = _sorted_psi(p1 + p2)
                if not s:
                    continue
                key = (tuple(a + b for a, b in zip(x1, x2)), p)
                acc[key] = acc.get(key, 0) + s * c1 * c2
        return PolyVector._raw(self.dim, acc)

    def d_x(self, a):
        acc = {}
        for (x, p), c in self.terms.items():
            if x[a]:
                y = x[:a] + (x[a] - 1,) + x[a + 1:]
                acc[(y, p)] = acc.get((y, p), 0) + c * x[a]
        return PolyVector._raw(self.dim, acc)

    def d_psi(self, a):
        """Left derivative in ``psi_a``."""
        acc = {}
        for (x, p), c in self.terms.items():
            if a in p:
                i = p.index(a)
                q = p[:i] + p[i + 1:]
                acc[(x, q)] = acc.get((x, q), 0) + (-c if i % 2 else c)
        return PolyVector._raw(self.dim, acc)

    def psi_counts(self):
        return sorted({len(p) for _, p in self.terms})

    def x_degrees(self):
        return sorted({sum(x) for x, _ in self.terms})

    def psi_count(self):
        """The psi-count of a homogeneous nonzero element (None for zero)."""
        counts = self.psi_counts()
        if len(counts) > 1:
            raise PolyError("inhomogeneous psi-count %s" % counts)
        return counts[0] if counts else None

    def by_psi_count(self):
        parts = {}
        for k, c in self.terms.items():
            parts.setdefault(len(k[1]), {})[k] = c
        return {m: PolyVector._raw(self.dim, t) for m, t in sorted(parts.items())}

    def items(self):
        return sorted(self.terms.items(), key=lambda kc: (len(kc[0][1]), kc[0][1], kc[0][0]))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (x, p), c in self.items():
            mono = "".join("x%d^%d" % (i + 1, e) if e > 1 else "x%d" % (i + 1)
                           for i, e in enumerate(x) if e)
            mono += "".join("psi%d" % (i + 1) for i in p)
            parts.append("%s*%s" % (c, mono or "1"))
        return " + ".join(parts)

    def to_json(self):
        return {"dim": self.dim,
                "terms": [{"x": list(x), "psi": [i + 1 for i in p], "coeff": frac_str(c)}
                          for (x, p), c in self.items()]}

    @classmethod
    def from_json(cls, obj):
        try:
            dim = int(obj["dim"])
            terms = {}
            for t in obj["terms"]:
                key = (tuple(int(e) for e in t["x"]), tuple(int(i) - 1 for i in t["psi"]))
                if key in terms:
                    raise PolyError("repeated monomial %r" % (t,))
                terms[key] = Fraction(t["coeff"])
        except (KeyError, TypeError, ValueError) as exc:
            raise PolyError("malformed polyvector: %s" % exc) from exc
        return cls(dim, terms)


def zero(dim):
    return PolyVector(dim)


class PolySeries:
    """hbar-series of polyvectors, keyed by the power of hbar."""

    def __init__(self, dim, by_order=None):
        self.dim = dim
        self.by_order = {}
        for k, v in (by_order or {}).items():
            if v.dim != dim:
                raise PolyError("dimension mismatch in series")
            if v:
                self.by_order[int(k)] = v

    def __getitem__(self, k):
        return self.by_order.get(k, PolyVector(self.dim))

    def orders(self):
        return sorted(self.by_order)

    def __eq__(self, other):
        return isinstance(other, PolySeries) and self.dim == other.dim and self.by_order == other.by_order

    def is_zero(self):
        return not self.by_order

    def to_json(self):
        return {"dim": self.dim,
                "orders": [{"hbar": k, "poly": self.by_order[k].to_json()} for k in self.orders()]}

    @classmethod
    def from_json(cls, obj):
        try:
            dim = int(obj["dim"])
            parts = {int(o["hbar"]): PolyVector.from_json(o["poly"]) for o in obj["orders"]}
        except (KeyError, TypeError, ValueError) as exc:
            raise PolyError("malformed series: %s" % exc) from exc
        return cls(dim, parts)


def _graph_parts(g):
    if isinstance(g, Graph):
        return g.n, tuple(g.edges)
    n, edges = g
    return n, tuple(tuple(e) for e in edges)


def graph_apply(g, slots):
    """Fixed-assignment contraction: ``slots[i]`` sits on vertex ``i``.

    Edge operators are applied in edge order, then the factors are multiplied
    in vertex order.  ``g`` may be a Graph or a raw ``(n, edges)`` pair (which
    may contain parallel edges).
    """
    n, edges = _graph_parts(g)
    if len(slots) != n:
        raise PolyError("graph has %d vertices, got %d inputs" % (n, len(slots)))
    dim = slots[0].dim
    for s in slots:
        if s.dim != dim:
            raise PolyError("dimension mismatch among inputs")
    state = {}
    for combo in product(*[list(s.terms.items()) for s in slots]):
        key = tuple(k for k, _ in combo)
        c = Fraction(1)
        for _, ci in combo:
            c *= ci
        state[key] = state.get(key, 0) + c
    for u, v in edges:
        nxt = {}
        for key, c in state.items():
            before = sum(len(key[w][1]) for w in range(u))
            xu, pu = key[u]
            for i, a in enumerate(pu):
                xv = key[v][0] if v != u else xu
                e = xv[a]
                if not e:
                    continue
                new = list(key)
                new[u] = (xu, pu[:i] + pu[i + 1:])
                xv2, pv = new[v]
                new[v] = (xv2[:a] + (xv2[a] - 1,) + xv2[a + 1:], pv)
                sign = -1 if (before + i) % 2 else 1
                nk = tuple(new)
                nxt[nk] = nxt.get(nk, 0) + sign * e * c
        state = {k: c for k, c in nxt.items() if c}
        if not state:
            return PolyVector(dim)
    acc = {}
    for key, c in state.items():
        x = tuple(map(sum, zip(*[k[0] for k in key])))
        s, p = _sorted_psi(sum((k[1] for k in key), ()))
        if s:
            acc[(x, p)] = acc.get((x, p), 0) + s * c
    return PolyVector._raw(dim, acc)


def _degrees(n, edges):
    outd = [0] * n
    ind = [0] * n
    for u, v in edges:
        outd[u] += 1
        ind[v] += 1
    return outd, ind


def _act_homogeneous(n, edges, items):
    """Symmetrized sum over assignments of psi-homogeneous ``items`` to vertices."""
    dim = items[0].dim
    parity = [item.psi_count() % 2 for item in items]
    classes = []
    cls_of = []
    for item in items:
        for ci, rep in enumerate(classes):
            if rep == item:
                cls_of.append(ci)
                break
        else:
            classes.append(item)
            cls_of.append(len(classes) - 1)
    mult = 1
    for ci in range(len(classes)):
        members = [i for i in range(n) if cls_of[i] == ci]
        if len(members) > 1 and parity[members[0]]:
            return PolyVector(dim)
        mult *= factorial(len(members))
    outd, ind = _degrees(n, edges)
    max_psi = [max(item.psi_counts(), default=0) for item in items]
    max_x = [max(item.x_degrees(), default=0) for item in items]
    acc = PolyVector(dim)
    seen = set()
    for sigma in permutations(range(n)):
        pattern = tuple(cls_of[i] for i in sigma)
        if pattern in seen:
            continue
        seen.add(pattern)
        if any(outd[v] > max_psi[sigma[v]] or ind[v] > max_x[sigma[v]] for v in range(n)):
            continue
        odd = [i for i in sigma if parity[i]]
        sign = permutation_sign(odd)
        val = graph_apply((n, edges), [items[i] for i in sigma])
        if val:
            acc = acc + val.scale(sign * mult)
    return acc


def graph_act(g, inputs):
    """Sum over all assignments of ``inputs`` to the vertices of ``g``, Koszul-signed.

    Inputs are split into psi-homogeneous parts and the result is extended
    multilinearly; the sign of a reordering counts transpositions of
    odd-psi-count inputs.
    """
    n, edges = _graph_parts(g)
    if len(inputs) != n:
        raise PolyError("graph has %d vertices, got %d inputs" % (n, len(inputs)))
    dim = inputs[0].dim
    for s in inputs:
        if s.dim != dim:
            raise PolyError("dimension mismatch among inputs")
    if any(not s for s in inputs):
        return PolyVector(dim)
    total_psi = sum(max(s.psi_counts()) for s in inputs)
    total_x = sum(max(s.x_degrees()) for s in inputs)
    if len(edges) > total_psi or len(edges) > total_x:
        return PolyVector(dim)
    acc = PolyVector(dim)
    for parts in product(*[list(s.by_psi_count().values()) for s in inputs]):
        acc = acc + _act_homogeneous(n, edges, list(parts))
    return acc


def schouten(a, b):
    """Schouten bracket: the edge operation with sign ``-(-1)^|a|``.

    With this normalization ``schouten(v, f) = v(f)`` and ``schouten(v, w)`` is
    the Lie bracket of vector fields.
    """
    a._check(b)
    acc = PolyVector(a.dim)
    for m, pa in a.by_psi_count().items():
        for pb in b.by_psi_count().values():
            val = graph_act(EDGE, [pa, pb])
            acc = acc + (val if m % 2 else val.scale(-1))
    return acc


def ks_bracket(gv, inputs):
    """Linear extension of graph_act over a GraphVector."""
    dim = inputs[0].dim if inputs else None
    acc = PolyVector(dim) if dim else None
    for g, c in gv.items():
        if g.n != len(inputs):
            raise PolyError("graph with %d vertices given %d inputs" % (g.n, len(inputs)))
        term = graph_act(g, inputs).scale(c)
        acc = term if acc is None else acc + term
    if acc is None:
        raise PolyError("empty graph vector")
    return acc


def default_prefactor(n):
    """``1/(2n)!`` in front of the 2n-bracket."""
    return Fraction(1, factorial(2 * n))


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def quantizable_residual(p, K, ks, prefactor=default_prefactor):
    """``sum_n hbar^(n-1) prefactor(n) [p, ..., p]_2n`` through ``hbar^K``.

    ``ks`` is a GraphSeries with the 2n-vertex graph at hbar-order n - 1; the
    2-bracket is the edge operation.
    """
    if K < 0:
        raise PolyError("order must be non-negative")
    if K > ks.max_order():
        raise PolyError("graph series known to order %d, residual order %d requested"
                        % (ks.max_order(), K))
    out = {}
    for n in range(1, K + 2):
        gv = ks[n - 1]
        if not gv:
            continue
        pref = Fraction(prefactor(n))
        for rest in range(K - (n - 1) + 1):
            order = n - 1 + rest
            total = PolyVector(p.dim)
            for split in _compositions(rest, 2 * n):
                ins = [p[a] for a in split]
                if any(not v for v in ins):
                    continue
                total = total + ks_bracket(gv, ins)
            if total:
                out[order] = out.get(order, PolyVector(p.dim)) + total.scale(pref)
    return PolySeries(p.dim, out)


def _check_shape(v, psi, xdeg, name):
    for x, ps in v.terms:
        if len(ps) != psi or sum(x) != xdeg:
            raise PolyError("%s must have psi-count %d and coefficient degree %d" % (name, psi, xdeg))


def check_odd_bialgebra(xi, phi):
    """The three relation families of an odd Lie bialgebra, each tested for vanishing.

    ``xi_xi`` is xi acting on its own coefficients (Jacobi for the symmetric
    bracket encoded by xi), ``xi_phi`` is ``{xi, phi}`` (compatibility) and
    ``phi_phi`` is ``{phi, phi}`` (Jacobi for the linear Poisson structure).
    With commuting coordinates ``{xi + phi, xi + phi}`` only sees the last
    one, since ``{xi, xi}`` vanishes and the cross terms cancel; it is
    reported as ``square``.
    """
    xi._check(phi)
    _check_shape(xi, 1, 2, "xi")
    _check_shape(phi, 2, 1, "phi")
    comps = {
        "xi_xi": graph_apply(EDGE, [xi, xi]),
        "xi_phi": schouten(xi, phi),
        "phi_phi": schouten(phi, phi),
    }
    failing = [k for k in ("xi_xi", "xi_phi", "phi_phi") if comps[k]]
    return {"ok": not failing, "failing": failing, "components": comps,
            "square": schouten(xi + phi, xi + phi)}


QUANTIZABILITY_GRAPH = Graph(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
# two edges from the bivector to the vector field
INVOLUTIVITY_GRAPH = (2, ((0, 1), (0, 1)))


def quantizability_value(xi, phi):
    """The genus-one composite: phi, phi, xi, xi on the vertices of the wiring."""
    return graph_apply(QUANTIZABILITY_GRAPH, [phi, phi, xi, xi])


def involutivity_value(xi, phi):
    """Both outputs of phi fed into xi."""
    return graph_apply(INVOLUTIVITY_GRAPH, [phi, xi])


def check_quantizable(xi, phi):
    """``(composite, vanishes)``; the pair must pass check_odd_bialgebra."""
    report = check_odd_bialgebra(xi, phi)
    if not report["ok"]:
        raise PolyError("not an odd Lie bialgebra: %s fail" % ", ".join(report["failing"]))
    value = quantizability_value(xi, phi)
    return value, not value
