"""Oriented graphs with odd edges: canonical forms, bases and linear combinations.

A graph is stored as a vertex count and an ordered tuple of directed edges
``(source, target)`` with 0-based vertex indices.  The position of an edge in
the tuple is its label; permuting labels multiplies the graph by the sign of
the permutation.  Vertices carry even degree, so relabeling vertices is free.

The canonical representative of an isomorphism class is the relabeling that
minimizes the sorted edge list, with edges then stored in sorted order.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
import json


class GraphError(ValueError):
    """Malformed or out-of-domain graph input."""


class Graph:
    """A connected directed acyclic graph with labeled (ordered) edges."""

    __slots__ = ("n", "edges", "_hash")

    def __init__(self, n, edges):
        self.n = int(n)
        self.edges = tuple((int(u), int(v)) for u, v in edges)
        self._hash = hash((self.n, self.edges))

    @property
    def l(self):
        return len(self.edges)

    @property
    def degree(self):
        return 2 * (self.n - 1) - len(self.edges)

    @property
    def loop_order(self):
        return len(self.edges) - self.n + 1

    def sort_key(self):
        return (self.n, len(self.edges), self.edges)

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "Graph(%d, %r)" % (self.n, list(self.edges))

    def to_json(self):
        return {"vertices": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["vertices"], [tuple(e) for e in obj["edges"]])

    def __reduce__(self):
        return (Graph, (self.n, self.edges))


EDGE = Graph(2, [(0, 1)])
POINT = Graph(1, [])


def check_well_formed(g):
    for u, v in g.edges:
        if not (0 <= u < g.n and 0 <= v < g.n):
            raise GraphError("vertex index out of range in edge (%d, %d)" % (u, v))


def is_oriented(g):
    """True iff ``g`` has no closed directed path (Kahn's algorithm)."""
    check_well_formed(g)
    indeg = [0] * g.n
    out = [[] for _ in range(g.n)]
    for u, v in g.edges:
        out[u].append(v)
        indeg[v] += 1
    stack = [v for v in range(g.n) if indeg[v] == 0]
    seen = 0
    while stack:
        u = stack.pop()
        seen += 1
        for v in out[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                stack.append(v)
    return seen == g.n


def is_connected(n, edges):
    if n == 0:
        return False
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


def permutation_sign(seq):
    """Sign of the permutation that sorts ``seq`` (entries distinct)."""
    inv = 0
    m = len(seq)
    for i in range(m):
        a = seq[i]
        for j in range(i + 1, m):
            if seq[j] < a:
                inv += 1
    return -1 if inv & 1 else 1


def _layers(n, out, indeg):
    # longest path from a source, for every vertex
    layer = [0] * n
    deg = list(indeg)
    stack = [v for v in range(n) if deg[v] == 0]
    while stack:
        u = stack.pop()
        for v in out[u]:
            if layer[u] + 1 > layer[v]:
                layer[v] = layer[u] + 1
            deg[v] -= 1
            if deg[v] == 0:
                stack.append(v)
    return layer


def _refine(colors, out, inn):
    """Equitable refinement; colors are ints whose order is label-invariant."""
    n = len(colors)
    count = len(set(colors))
    while True:
        sigs = [
            (colors[v], tuple(sorted(colors[w] for w in out[v])),
             tuple(sorted(colors[w] for w in inn[v])))
            for v in range(n)
        ]
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(ranks) == count:
            return new
        colors, count = new, len(ranks)


def _search(colors, out, inn, leaves):
    n = len(colors)
    if len(set(colors)) == n:
        leaves.append(colors)
        return
    cells = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    target = min(c for c, vs in cells.items() if len(vs) > 1)
    for v in cells[target]:
        # individualize v: it sorts before the rest of its cell
        indiv = [2 * c + (0 if w == v else 1) if c == target else 2 * c + 1
                 for w, c in enumerate(colors)]
        _search(_refine(indiv, out, inn), out, inn, leaves)


def canonical_relabelings(n, edges, vertex_colors=None):
    """All leaves of the individualization-refinement tree as vertex maps.

    Each leaf maps old vertex index to new label in ``range(n)``.  The set of
    leaves is invariant under isomorphism, so the minimum over any invariant
    encoding is a canonical form, and leaves realizing it differ by
    automorphisms.
    """
    out = [[] for _ in range(n)]
    inn = [[] for _ in range(n)]
    for u, v in edges:
        out[u].append(v)
        inn[v].append(u)
    indeg = [len(x) for x in inn]
    layer = _layers(n, out, indeg)
    base = [(len(inn[v]), len(out[v]), layer[v],
             vertex_colors[v] if vertex_colors is not None else 0) for v in range(n)]
    ranks = {s: i for i, s in enumerate(sorted(set(base)))}
    colors = _refine([ranks[s] for s in base], out, inn)
    leaves = []
    _search(colors, out, inn, leaves)
    return leaves


@lru_cache(maxsize=1 << 20)
def _canonicalize(n, edges):
    if len(set(edges)) != len(edges):
        return None
    best = None
    best_sign = 0
    for perm in canonical_relabelings(n, edges):
        relabeled = [(perm[u], perm[v]) for u, v in edges]
        enc = tuple(sorted(relabeled))
        sign = permutation_sign(relabeled)
        if best is None or enc < best:
            best, best_sign = enc, sign
        elif enc == best and sign != best_sign:
            return None
    return Graph(n, best), best_sign


def canonicalize(g):
    """Return ``(canonical_graph, sign)`` with ``g == sign * canonical_graph``.

    Returns ``None`` when ``g`` vanishes: parallel same-direction edges, or an
    automorphism acting by an odd permutation on the edges.
    """
    check_well_formed(g)
    for u, v in g.edges:
        if u == v:
            raise GraphError("self-loop at vertex %d" % u)
    if not is_connected(g.n, g.edges):
        raise GraphError("graph is not connected")
    if not is_oriented(g):
        raise GraphError("graph has a directed cycle")
    return _canonicalize(g.n, g.edges)


def canonicalize_unchecked(n, edges):
    """Fast path for internally generated DAGs that are known to be connected."""
    return _canonicalize(n, tuple(edges))


@lru_cache(maxsize=None)
def _basis(n, l):
    pairs = list(combinations(range(n), 2))
    found = set()
    for subset in combinations(pairs, l):
        if not is_connected(n, subset):
            continue
        res = _canonicalize(n, subset)
        if res is not None:
            found.add(res[0])
    return tuple(sorted(found))


def enumerate_basis(n, l):
    """Canonical connected simple DAGs with ``n`` vertices and ``l`` edges,
    excluding those with an odd automorphism.  Every DAG has a topological
    labeling, so it suffices to run over edge subsets of ``i < j`` pairs."""
    if n < 1 or l < 0:
        raise GraphError("need n >= 1 and l >= 0")
    if l < n - 1 or l > n * (n - 1) // 2:
        return []
    return list(_basis(n, l))


def _frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


def frac_str(q):
    q = Fraction(q)
    return "%d/%d" % (q.numerator, q.denominator)


class GraphVector:
    """Finite linear combination of canonical graphs with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for g, c in items:
                c = _frac(c)
                if c:
                    self.terms[g] = self.terms.get(g, 0) + c
            self.terms = {g: c for g, c in self.terms.items() if c}

    @classmethod
    def from_graph(cls, g, coeff=1):
        """Canonicalize a raw graph and wrap it (zero vector if it vanishes)."""
        res = canonicalize(g)
        if res is None:
            return cls()
        h, s = res
        return cls({h: s * _frac(coeff)})

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms))

    def items(self):
        return [(g, self.terms[g]) for g in sorted(self.terms)]

    def coeff(self, g):
        return self.terms.get(g, Fraction(0))

    def __eq__(self, other):
        if isinstance(other, GraphVector):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __add__(self, other):
        out = dict(self.terms)
        for g, c in other.terms.items():
            v = out.get(g, 0) + c
            if v:
                out[g] = v
            else:
                out.pop(g, None)
        res = GraphVector()
        res.terms = out
        return res

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k):
        k = _frac(k)
        res = GraphVector()
        if k:
            res.terms = {g: c * k for g, c in self.terms.items()}
        return res

    __rmul__ = __mul__

    def degrees(self):
        return {g.degree for g in self.terms}

    def degree(self):
        """The common degree, or ``None`` for zero; raises if inhomogeneous."""
        ds = self.degrees()
        if not ds:
            return None
        if len(ds) > 1:
            raise GraphError("inhomogeneous graph vector (degrees %s)" % sorted(ds))
        return ds.pop()

    def vertex_counts(self):
        return {g.n for g in self.terms}

    def __repr__(self):
        inner = ", ".join("%s*%r" % (c, g) for g, c in self.items())
        return "GraphVector(%s)" % inner

    def to_json(self):
        return [{"graph": g.to_json(), "coeff": frac_str(c)} for g, c in self.items()]

    @classmethod
    def from_json(cls, data):
        out = cls()
        for item in data:
            out = out + cls.from_graph(Graph.from_json(item["graph"]), Fraction(item["coeff"]))
        return out


def combine(scalars, vectors):
    if len(scalars) != len(vectors):
        raise ValueError("scalars and vectors differ in length")
    acc = {}
    for k, v in zip(scalars, vectors):
        k = _frac(k)
        if not k:
            continue
        for g, c in v.terms.items():
            acc[g] = acc.get(g, 0) + k * c
    res = GraphVector()
    res.terms = {g: c for g, c in acc.items() if c}
    return res


class GraphSeries:
    """Formal power series in hbar with graph-vector coefficients."""

    def __init__(self, by_order=None):
        self.by_order = {int(k): v for k, v in (by_order or {}).items() if v}

    def __getitem__(self, k):
        return self.by_order.get(k, GraphVector())

    def orders(self):
        return sorted(self.by_order)

    def max_order(self):
        return max(self.by_order) if self.by_order else -1

    def truncate(self, k):
        return GraphSeries({i: v for i, v in self.by_order.items() if i <= k})

    def with_order(self, k, v):
        d = dict(self.by_order)
        d[k] = v
        return GraphSeries(d)

    def __eq__(self, other):
        return isinstance(other, GraphSeries) and self.by_order == other.by_order

    def to_json(self):
        return [{"hbar": k, "terms": self.by_order[k].to_json()} for k in self.orders()]

    @classmethod
    def from_json(cls, data):
        return cls({block["hbar"]: GraphVector.from_json(block["terms"]) for block in data})


def dumps(obj):
    """Deterministic JSON (sorted keys, fixed separators)."""
    return json.dumps(obj, sort_keys=True, indent=1, separators=(",", ": "))
