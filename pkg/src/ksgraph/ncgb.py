"""Cubic noncommutative algebras with strongly free relations.

Words are tuples of nonzero ints: ``i > 0`` is the generator ``x_i`` (word
degree 1, homological degree 0) and ``-i`` is ``u_i = u_{i,i+1,i+2}`` (word
degree 3, homological degree -1).
"""

from fractions import Fraction
from itertools import combinations, permutations, product
from math import comb

from .linalg import SparseMatrix, rank


class ResourceBoundExceeded(RuntimeError):
    pass


def letter_weight(a):
    return 1 if a > 0 else 3


def word_weight(w):
    return sum(letter_weight(a) for a in w)


def word_str(w):
    return "".join("x%d" % a if a > 0 else "u%d" % -a for a in w) or "1"


class NcPoly:
    """Noncommutative polynomial: dict from word to nonzero Fraction."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        for w, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                w = tuple(w)
                self.terms[w] = self.terms.get(w, 0) + c
        self.terms = {w: c for w, c in self.terms.items() if c}

    @classmethod
    def word(cls, w, c=1):
        return cls({tuple(w): c})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, NcPoly) and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out.get(w, 0) + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        res = NcPoly()
        res.terms = out
        return res

    def __neg__(self):
        return NcPoly({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, NcPoly):
            acc = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    w = w1 + w2
                    acc[w] = acc.get(w, 0) + c1 * c2
            return NcPoly(acc)
        return NcPoly({w: c * other for w, c in self.terms.items()})

    def __rmul__(self, k):
        return NcPoly({w: c * k for w, c in self.terms.items()})

    def items(self):
        return sorted(self.terms.items())

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.items():
            parts.append("%s*%s" % (c, word_str(w)))
        return " + ".join(parts)

    def to_json(self):
        return [{"word": word_str(w), "coeff": "%d/%d" % (c.numerator, c.denominator)}
                for w, c in self.items()]


def commutator(a, b):
    return a * b - b * a


def expand_relation(i, n):
    """``[[x_i, x_{i+2}], x_{i+1}]`` expanded into four words."""
    if not 1 <= i <= n - 2:
        raise ValueError("relation index %d out of range for n = %d" % (i, n))
    x = lambda k: NcPoly.word((k,))
    return commutator(commutator(x(i), x(i + 2)), x(i + 1))


def cubic_relations(n):
    return [expand_relation(i, n) for i in range(1, n - 1)]


def generic_relation(c, i):
    """``sum_s c[s] x_{i+s1} x_{i+s2} x_{i+s3}`` over permutations s of (1,2,3)."""
    return NcPoly({tuple(i + s for s in sigma): c.get(sigma, 0)
                   for sigma in permutations((1, 2, 3))})


def generic_relations(c, n):
    return [generic_relation(c, i) for i in range(0, n - 2)]


class MonomialOrder:
    """Degree-lexicographic order induced by a ranking of the letters."""

    def __init__(self, ranking):
        # ranking: letters from smallest to largest
        self.ranking = list(ranking)
        self.rank = {a: r for r, a in enumerate(self.ranking)}

    @classmethod
    def multiples_of_three_high(cls, n, descending_within_class=False):
        """Letters x_{3k} above all others; ties by index (ascending by default)."""
        low = [i for i in range(1, n + 1) if i % 3]
        high = [i for i in range(1, n + 1) if i % 3 == 0]
        if descending_within_class:
            low.reverse()
            high.reverse()
        return cls(low + high)

    def satisfies_class_constraint(self):
        high = [self.rank[a] for a in self.ranking if a % 3 == 0]
        low = [self.rank[a] for a in self.ranking if a % 3]
        return not high or not low or min(high) > max(low)

    def key(self, w):
        return (word_weight(w), tuple(self.rank[a] for a in w))

    def compare(self, w1, w2):
        k1, k2 = self.key(w1), self.key(w2)
        return (k1 > k2) - (k1 < k2)


def leading_monomial(p, order):
    if not p:
        raise ValueError("zero polynomial has no leading monomial")
    return max(p.terms, key=order.key)


def check_condition_lm(c):
    """For every first index i, ``c[i,j,k]`` or ``c[i,k,j]`` is nonzero."""
    for i in (1, 2, 3):
        j, k = [t for t in (1, 2, 3) if t != i]
        if not c.get((i, j, k), 0) and not c.get((i, k, j), 0):
            return False
    return True


def _overlaps(w1, w2):
    """Proper suffixes of w1 equal to proper prefixes of w2."""
    out = []
    for s in range(1, min(len(w1), len(w2))):
        if w1[-s:] == w2[:s]:
            out.append(s)
    return out


def _contains(big, small):
    k = len(small)
    return any(big[i:i + k] == small for i in range(len(big) - k + 1))


def strongly_free_check(n, relations, order):
    """Leading words pairwise distinct, without overlaps or inclusions.

    Returns ``(ok, certificate)``; the certificate records the leading words,
    any offending pairs, and for each word whether its first letter (alone)
    has index divisible by 3.
    """
    leads = [leading_monomial(r, order) for r in relations]
    problems = []
    for a, w1 in enumerate(leads):
        for b, w2 in enumerate(leads):
            if a != b and (w1 == w2 or _contains(w1, w2)):
                problems.append({"kind": "inclusion", "pair": [a, b]})
            for s in _overlaps(w1, w2):
                problems.append({"kind": "overlap", "pair": [a, b], "length": s})
    structure = [w[0] % 3 == 0 and all(x % 3 for x in w[1:]) for w in leads]
    cert = {
        "n": n,
        "order": [word_str((a,)) for a in order.ranking],
        "leading_words": [word_str(w) for w in leads],
        "first_letter_divisible_by_3": structure,
        "problems": problems,
    }
    return not problems, cert


def _letters(n):
    return list(range(1, n + 1))


def normal_word_counts(n, D, leading_words):
    """Number of x-words of each length 0..D avoiding every leading word.

    Counts by a suffix automaton: the state is the last ``L - 1`` letters where
    ``L`` is the longest leading word.
    """
    leading = {tuple(w) for w in leading_words}
    L = max((len(w) for w in leading), default=1)
    counts = [1]
    states = {(): 1}
    for _ in range(D):
        nxt = {}
        for suffix, c in states.items():
            for a in _letters(n):
                s = suffix + (a,)
                if any(s[len(s) - len(w):] == w for w in leading if len(w) <= len(s)):
                    continue
                key = s[-(L - 1):] if L > 1 else ()
                nxt[key] = nxt.get(key, 0) + c
        states = nxt
        counts.append(sum(states.values()))
    return counts


def normal_words(n, d, leading_words):
    """Brute-force list of normal words of length ``d`` (test oracle)."""
    leading = [tuple(w) for w in leading_words]
    return [w for w in product(_letters(n), repeat=d)
            if not any(_contains(w, lw) for lw in leading)]


def hilbert_series_coefficients(n, D, r=None, deg=3):
    """Coefficients of ``1 / (1 - n t + r t^deg)``, r defaulting to n - 2."""
    r = n - 2 if r is None else r
    h = []
    for k in range(D + 1):
        v = 1 if k == 0 else n * h[k - 1]
        if k >= deg:
            v -= r * h[k - deg]
        h.append(v)
    return h


def hilbert(n, D, order=None):
    """Dimensions of A_n in word degrees 0..D from normal-word counts."""
    order = order or MonomialOrder.multiples_of_three_high(n)
    rels = cubic_relations(n)
    ok, cert = strongly_free_check(n, rels, order)
    if not ok:
        raise ValueError("relations are not strongly free under this order: %s" % cert["problems"])
    return normal_word_counts(n, D, [leading_monomial(r, order) for r in rels])


def dg_differential(p, n):
    """Derivation with d(x_i) = 0 and d(u_i) = expand_relation(i), graded Leibniz."""
    acc = NcPoly()
    for w, c in p.terms.items():
        parity = 0
        for pos, a in enumerate(w):
            if a < 0:
                sign = -1 if parity else 1
                middle = expand_relation(-a, n)
                left = NcPoly.word(w[:pos])
                right = NcPoly.word(w[pos + 1:])
                acc = acc + (left * middle * right) * (sign * c)
                parity ^= 1
    return acc


def dg_words(n, weight, k):
    """Words with exactly ``k`` u-letters and the given total word degree."""
    xs = _letters(n)
    us = [-i for i in range(1, n - 1)]
    nx = weight - 3 * k
    if nx < 0 or (k and not us):
        return []
    out = []
    length = nx + k
    for upos in combinations(range(length), k):
        uset = set(upos)
        for ulet in product(us, repeat=k):
            for xlet in product(xs, repeat=nx):
                w = []
                ui = xi = 0
                for p in range(length):
                    if p in uset:
                        w.append(ulet[ui])
                        ui += 1
                    else:
                        w.append(xlet[xi])
                        xi += 1
                out.append(tuple(w))
    return sorted(out)


def dg_cohomology(n, L, max_basis=250000):
    """Cohomology dimensions of the dg algebra per (word degree, homological degree).

    Returns ``{(w, -k): dim}`` for every nonempty chain group with w <= L.
    Raises ResourceBoundExceeded if any chain group exceeds ``max_basis``.
    """
    table = {}
    for w in range(L + 1):
        kmax = w // 3
        sizes = {}
        bases = {}
        for k in range(kmax + 1):
            count = dg_chain_size(n, w, k)
            if count > max_basis:
                raise ResourceBoundExceeded("chain group (%d, %d) has %d words" % (w, -k, count))
            bases[k] = dg_words(n, w, k)
            sizes[k] = count
        ranks = {}
        for k in range(1, kmax + 1):
            ranks[k] = rank(dg_matrix(n, bases[k], bases[k - 1]))
        for k in range(kmax + 1):
            if not sizes[k]:
                continue
            dim = sizes[k] - ranks.get(k, 0) - ranks.get(k + 1, 0)
            table[(w, -k)] = dim
    return table


def dg_chain_size(n, weight, k):
    """Number of words with k u-letters of the given word degree."""
    nx = weight - 3 * k
    if nx < 0 or (k and n < 3):
        return 0
    return comb(nx + k, k) * (n - 2) ** k * n ** nx


def dg_matrix(n, source, target):
    index = {w: i for i, w in enumerate(target)}
    entries = []
    for j, w in enumerate(source):
        for v, c in dg_differential(NcPoly.word(w), n).terms.items():
            entries.append((index[v], j, c))
    return SparseMatrix(len(target), len(source), entries)
