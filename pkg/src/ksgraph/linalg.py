"""Exact sparse linear algebra over the rationals.

Elimination is right-looking with a Markowitz-style pivot choice: the pivot
row is a shortest remaining row, and within it the column with the fewest
remaining entries.  All arithmetic is done with ``Fraction``.
"""

from fractions import Fraction
import heapq


class Inconsistent(Exception):
    """Raised by :func:`solve` when the system has no solution."""


class SparseMatrix:
    """Rows x cols matrix stored as a dict ``(row, col) -> Fraction``."""

    def __init__(self, row_count, col_count, entries=()):
        self.row_count = int(row_count)
        self.col_count = int(col_count)
        self.data = {}
        if isinstance(entries, dict):
            entries = [(r, c, v) for (r, c), v in entries.items()]
        for r, c, val in entries:
            val = Fraction(val)
            if not (0 <= r < self.row_count and 0 <= c < self.col_count):
                raise IndexError("entry (%d, %d) outside %dx%d" % (r, c, self.row_count, self.col_count))
            if val:
                self.data[(r, c)] = self.data.get((r, c), 0) + val
        self.data = {k: v for k, v in self.data.items() if v}

    @classmethod
    def from_columns(cls, row_count, columns):
        """Build from a list of sparse columns ``{row: value}``."""
        m = cls(row_count, len(columns))
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    m.data[(i, j)] = Fraction(v)
        return m

    @classmethod
    def from_dense(cls, rows):
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, [(i, j, v) for i, r in enumerate(rows)
                                      for j, v in enumerate(r) if v])

    def entries(self):
        return [(r, c, v) for (r, c), v in sorted(self.data.items())]

    @property
    def nnz(self):
        return len(self.data)

    def transpose(self):
        t = SparseMatrix(self.col_count, self.row_count)
        t.data = {(c, r): v for (r, c), v in self.data.items()}
        return t

    def rows(self):
        out = [dict() for _ in range(self.row_count)]
        for (r, c), v in self.data.items():
            out[r][c] = v
        return out

    def columns(self):
        out = [dict() for _ in range(self.col_count)]
        for (r, c), v in self.data.items():
            out[c][r] = v
        return out

    def apply(self, x):
        x = list(x)
        if len(x) != self.col_count:
            raise ValueError("vector length %d != %d columns" % (len(x), self.col_count))
        y = [Fraction(0)] * self.row_count
        for (r, c), v in self.data.items():
            if x[c]:
                y[r] += v * x[c]
        return y

    def to_dense(self):
        out = [[Fraction(0)] * self.col_count for _ in range(self.row_count)]
        for (r, c), v in self.data.items():
            out[r][c] = v
        return out

    def to_text(self):
        """Coordinate format: header ``rows cols nnz`` then ``row col p/q`` lines."""
        lines = ["%d %d %d" % (self.row_count, self.col_count, self.nnz)]
        for r, c, v in self.entries():
            lines.append("%d %d %d/%d" % (r, c, v.numerator, v.denominator))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        lines = [ln for ln in text.splitlines() if ln.strip()]
        nr, nc, nnz = (int(t) for t in lines[0].split())
        entries = []
        for ln in lines[1:]:
            r, c, v = ln.split()
            entries.append((int(r), int(c), Fraction(v)))
        if len(entries) != nnz:
            raise ValueError("header says %d entries, found %d" % (nnz, len(entries)))
        return cls(nr, nc, entries)

    def __eq__(self, other):
        return (isinstance(other, SparseMatrix) and self.row_count == other.row_count
                and self.col_count == other.col_count and self.data == other.data)

    def __repr__(self):
        return "SparseMatrix(%d, %d, nnz=%d)" % (self.row_count, self.col_count, self.nnz)


def _eliminate(rows, ncols, rhs=None):
    """Markowitz elimination on a list of sparse rows (destroys ``rows``).

    Returns the pivot sequence ``[(row_index, col)]``; ``rows`` is left in
    reduced form and ``rhs``, when given, is transformed alongside.
    """
    colsets = {}
    for i, row in enumerate(rows):
        for c in row:
            colsets.setdefault(c, set()).add(i)
    alive = {i for i, r in enumerate(rows) if r}
    heap = [(len(rows[i]), i) for i in alive]
    heapq.heapify(heap)
    pivots = []
    while heap:
        length, i = heapq.heappop(heap)
        if i not in alive or length != len(rows[i]):
            continue
        row = rows[i]
        if not row:
            alive.discard(i)
            continue
        c = min(row, key=lambda k: (len(colsets[k]), k))
        alive.discard(i)
        pv = row[c]
        for k in row:
            colsets[k].discard(i)
        pivots.append((i, c))
        for j in sorted(colsets.pop(c)):
            other = rows[j]
            f = other[c] / pv
            for k, v in row.items():
                nv = other.get(k, 0) - f * v
                if nv:
                    if k not in other:
                        colsets[k].add(j)
                    other[k] = nv
                else:
                    if k in other:
                        del other[k]
                        if k != c:
                            colsets[k].discard(j)
            if rhs is not None and rhs[i]:
                rhs[j] = rhs[j] - f * rhs[i]
            heapq.heappush(heap, (len(other), j))
    return pivots


def rank(m):
    """Exact rank over Q."""
    rows = [r for r in m.rows() if r] if m.row_count <= m.col_count else \
        [r for r in m.columns() if r]
    return len(_eliminate(rows, None))


def solve(m, b):
    """Some exact solution ``x`` of ``m x = b``; raises :class:`Inconsistent`."""
    b = [Fraction(v) for v in b]
    if len(b) != m.row_count:
        raise ValueError("right-hand side has length %d, expected %d" % (len(b), m.row_count))
    rows = m.rows()
    rhs = list(b)
    pivots = _eliminate(rows, m.col_count, rhs)
    pivot_rows = {i for i, _ in pivots}
    for i in range(m.row_count):
        if i not in pivot_rows and rhs[i]:
            raise Inconsistent("row %d reduces to 0 = %s" % (i, rhs[i]))
    x = [Fraction(0)] * m.col_count
    for i, c in reversed(pivots):
        row = rows[i]
        acc = rhs[i]
        for k, v in row.items():
            if k != c and x[k]:
                acc -= v * x[k]
        x[c] = acc / row[c]
    return x


def kernel(m):
    """A basis of the right null space, as dense Fraction lists."""
    rows = m.rows()
    pivots = _eliminate(rows, m.col_count)
    pivot_cols = {c for _, c in pivots}
    free = [c for c in range(m.col_count) if c not in pivot_cols]
    basis = []
    for f in free:
        x = [Fraction(0)] * m.col_count
        x[f] = Fraction(1)
        for i, c in reversed(pivots):
            row = rows[i]
            acc = Fraction(0)
            for k, v in row.items():
                if k != c and x[k]:
                    acc -= v * x[k]
            x[c] = acc / row[c]
        basis.append(x)
    return basis


class Echelon:
    """Incremental independence test for sparse vectors ``{index: value}``."""

    def __init__(self):
        self.pivots = {}

    def reduce(self, vec):
        v = {k: Fraction(x) for k, x in vec.items() if x}
        # later pivots never contain earlier leading keys, so one ordered pass suffices
        for lead, p in self.pivots.items():
            if lead not in v:
                continue
            f = v[lead] / p[lead]
            for k, x in p.items():
                nv = v.get(k, 0) - f * x
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
        return v

    def add(self, vec):
        """Insert ``vec``; returns True iff it was independent of earlier ones."""
        v = self.reduce(vec)
        if not v:
            return False
        self.pivots[min(v)] = v
        return True

    @property
    def rank(self):
        return len(self.pivots)


def dense_rank(rows):
    """Textbook dense Gaussian elimination; an independent oracle for tests."""
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return 0
    nr, nc = len(a), len(a[0])
    r = 0
    for c in range(nc):
        p = next((i for i in range(r, nr) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        for i in range(r + 1, nr):
            if a[i][c]:
                f = a[i][c] / a[r][c]
                for k in range(c, nc):
                    a[i][k] -= f * a[r][k]
        r += 1
        if r == nr:
            break
    return r
