"""Exact linear algebra over the rationals and the integers.

Everything here works with :class:`fractions.Fraction` and Python ints; no
floating point is involved.  Row reduction is fraction-free: rows are scaled
to primitive integer vectors and combined with integer multipliers, which
keeps coefficient growth under control for the sparse, mostly +-1 matrices
produced by the chain and form complexes.
"""
from fractions import Fraction
from math import gcd

Rational = Fraction


class SparseMatrixQ:
    """Sparse rational matrix stored as ``{(row, col): Fraction}``.

    Zero entries are never stored.  Instances are treated as immutable.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries=None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        self.rows = rows
        self.cols = cols
        clean = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry ({i}, {j}) outside {rows}x{cols} matrix")
            v = Fraction(v)
            if v:
                clean[(i, j)] = v
        self.entries = clean

    @classmethod
    def from_dense(cls, data, cols=None):
        rows = len(data)
        if cols is None:
            cols = len(data[0]) if rows else 0
        entries = {}
        for i, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("ragged dense matrix")
            for j, v in enumerate(row):
                if v:
                    entries[(i, j)] = v
        return cls(rows, cols, entries)

    @classmethod
    def identity(cls, n):
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def zero(cls, rows, cols):
        return cls(rows, cols)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, key):
        return self.entries.get(key, Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, SparseMatrixQ):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __repr__(self):
        return f"SparseMatrixQ({self.rows}x{self.cols}, nnz={len(self.entries)})"

    def to_dense(self):
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def row_dicts(self):
        rows = [dict() for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows

    def transpose(self):
        return SparseMatrixQ(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def matvec(self, x):
        if len(x) != self.cols:
            raise ValueError(f"vector length {len(x)} != {self.cols} columns")
        out = [Fraction(0)] * self.rows
        for (i, j), v in self.entries.items():
            if x[j]:
                out[i] += v * x[j]
        return out

    def __matmul__(self, other):
        if not isinstance(other, SparseMatrixQ):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        right = other.row_dicts()
        acc = {}
        for (i, k), v in self.entries.items():
            for j, w in right[k].items():
                acc[(i, j)] = acc.get((i, j), 0) + v * w
        return SparseMatrixQ(self.rows, other.cols, acc)

    def is_zero(self):
        return not self.entries


def _primitive_int_row(row):
    """Scale a ``{col: Fraction}`` row to a primitive integer row with positive lead."""
    den = 1
    for v in row.values():
        d = v.denominator if isinstance(v, Fraction) else 1
        den = den * d // gcd(den, d)
    ints = {c: int(v * den) for c, v in row.items() if v}
    return _normalize(ints)


def _normalize(row):
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    if g == 0:
        return {}
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g != 1:
        row = {c: v // g for c, v in row.items()}
    return row


def _echelon(row_dicts):
    """Fraction-free online elimination.

    Returns ``{pivot_col: int_row}``; each stored row has its smallest column
    equal to the pivot and zero in no other pivot's leading position below it.
    """
    pivots = {}
    for raw in row_dicts:
        row = _primitive_int_row(raw)
        while row:
            lead = min(row)
            prow = pivots.get(lead)
            if prow is None:
                pivots[lead] = row
                break
            a = row[lead]
            p = prow[lead]
            g = gcd(a, p)
            ma, mp = p // g, a // g
            new = {c: ma * v for c, v in row.items()}
            for c, v in prow.items():
                w = new.get(c, 0) - mp * v
                if w:
                    new[c] = w
                else:
                    new.pop(c, None)
            row = _normalize(new)
    return pivots


def rank(m):
    """Exact rank over the rationals."""
    return len(_echelon(m.row_dicts()))


def _back_substitute(pivots, ncols, fixed):
    """Solve the echelon system with free columns set from ``fixed`` (default 0).

    Columns ``>= ncols`` in a row hold the right-hand side value as ``-rhs``
    convention: a row reads ``sum_c a_c x_c + a_rhs = 0``.
    """
    x = [Fraction(0)] * ncols
    for c, v in fixed.items():
        x[c] = Fraction(v)
    for lead in sorted(pivots, reverse=True):
        row = pivots[lead]
        acc = Fraction(0)
        for c, v in row.items():
            if c == lead:
                continue
            if c >= ncols:
                acc += v
            elif x[c]:
                acc += v * x[c]
        x[lead] = -acc / row[lead]
    return x


def kernel_basis(m):
    """Basis of the right kernel ``{v : m v = 0}``, one vector per free column."""
    pivots = _echelon(m.row_dicts())
    free = [c for c in range(m.cols) if c not in pivots]
    return [_back_substitute(pivots, m.cols, {f: 1}) for f in free]


def solve(m, b):
    """Return some ``x`` with ``m x = b`` exactly, or ``None`` when inconsistent."""
    if len(b) != m.rows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {m.rows}")
    rows = m.row_dicts()
    rhs_col = m.cols
    for i, v in enumerate(b):
        v = Fraction(v)
        if v:
            rows[i][rhs_col] = -v
    pivots = _echelon(rows)
    if rhs_col in pivots:
        return None
    return _back_substitute(pivots, m.cols, {})


# -- integer matrices ---------------------------------------------------------

class IntMatrix:
    """Dense integer matrix (list of row lists)."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data, cols=None):
        data = [[int(v) for v in row] for row in data]
        self.rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        for row in data:
            if len(row) != cols:
                raise ValueError("ragged integer matrix")
        self.cols = cols
        self.data = data

    @classmethod
    def identity(cls, n):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zero(cls, rows, cols):
        return cls([[0] * cols for _ in range(rows)], cols)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, key):
        i, j = key
        return self.data[i][j]

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __repr__(self):
        return f"IntMatrix({self.data!r})"

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            cols_t = list(zip(*other.data)) if other.rows else [()] * other.cols
            return IntMatrix([[sum(a * b for a, b in zip(row, col)) for col in cols_t]
                              for row in self.data], other.cols)
        vec = list(other)
        if len(vec) != self.cols:
            raise ValueError(f"vector length {len(vec)} != {self.cols} columns")
        return tuple(sum(a * b for a, b in zip(row, vec)) for row in self.data)

    def transpose(self):
        return IntMatrix([list(col) for col in zip(*self.data)] if self.rows else
                         [[] for _ in range(self.cols)], self.rows)

    def det(self):
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        return _bareiss_det([row[:] for row in self.data])


def _bareiss_det(a):
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_normal_form(m):
    """Smith normal form ``U m V = D`` with unimodular ``U``, ``V``.

    ``D`` is diagonal with non-negative entries and ``d_i | d_{i+1}``.
    """
    rows, cols = m.rows, m.cols
    d = [row[:] for row in m.data]
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):  # row[dst] += q * row[src]
        d[dst] = [a + q * b for a, b in zip(d[dst], d[src])]
        u[dst] = [a + q * b for a, b in zip(u[dst], u[src])]

    def add_col(src, dst, q):  # col[dst] += q * col[src]
        for row in d:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if d[i][j] and (best is None or abs(d[i][j]) < abs(d[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = d[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if d[i][t]:
                    add_row(t, i, -(d[i][t] // p))
                    dirty = dirty or d[i][t] != 0
            for j in range(t + 1, cols):
                if d[t][j]:
                    add_col(t, j, -(d[t][j] // p))
                    dirty = dirty or d[t][j] != 0
            if dirty:
                continue
            # divisibility: fold an offending row into row t and retry
            bad = next((i for i in range(t + 1, rows)
                        if any(d[i][j] % p for j in range(t + 1, cols))), None)
            if bad is None:
                break
            add_row(bad, t, 1)
        if t < rows and t < cols and d[t][t] < 0:
            d[t] = [-a for a in d[t]]
            u[t] = [-a for a in u[t]]
    return IntMatrix(u, rows), IntMatrix(d, cols), IntMatrix(v, cols)
