"""Dense exact matrices over any FieldElement domain.

Plain Gaussian elimination with first-nonzero pivoting; entries live in
a field, so no fraction-free tricks are needed and determinism matters
more than speed.
"""

from __future__ import annotations


class LinalgError(Exception):
    pass


class Singular(LinalgError):
    pass


class DimensionMismatch(LinalgError):
    pass


class Matrix:
    """Immutable row-major matrix; all entries share one field."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field, entries):
        self.field = field
        self.entries = tuple(tuple(r) for r in entries)
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0

    @classmethod
    def from_rows(cls, field, rows):
        return cls(field, [[field.element(x) if isinstance(x, int) else x
                            for x in r] for r in rows])

    @classmethod
    def identity(cls, field, n):
        one, zero = field.one, field.zero
        return cls(field, [[one if i == j else zero for j in range(n)]
                           for i in range(n)])

    @classmethod
    def zero(cls, field, rows, cols):
        z = field.zero
        return cls(field, [[z] * cols for _ in range(rows)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i):
        return self.entries[i]

    def column(self, j):
        return tuple(r[j] for r in self.entries)

    def transpose(self):
        return Matrix(self.field, list(zip(*self.entries)))

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.field, self.entries))

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix shapes differ")
        return Matrix(self.field,
                      [[a + b for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self.entries, other.entries)])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise DimensionMismatch("inner dimensions differ")
            bt = list(zip(*other.entries))
            return Matrix(self.field,
                          [[_dot(r, c, self.field) for c in bt]
                           for r in self.entries])
        # matrix * vector (tuple of elements)
        if self.cols != len(other):
            raise DimensionMismatch("matrix/vector dimensions differ")
        return tuple(_dot(r, other, self.field) for r in self.entries)

    def is_identity(self):
        return self == Matrix.identity(self.field, self.rows)

    def _eliminated(self):
        """(echelon rows, pivot columns, det accumulated over pivots)."""
        rows = [list(r) for r in self.entries]
        pivots = []
        det = self.field.one
        r = 0
        for c in range(self.cols):
            pr = next((i for i in range(r, len(rows)) if rows[i][c]), None)
            if pr is None:
                continue
            if pr != r:
                rows[r], rows[pr] = rows[pr], rows[r]
            det = det * rows[r][c]
            inv = rows[r][c].inverse()
            rows[r] = [x * inv for x in rows[r]]
            for i in range(len(rows)):
                if i != r and rows[i][c]:
                    f = rows[i][c]
                    rows[i] = [a + f * b for a, b in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
        return rows, pivots, det

    def rank(self):
        return len(self._eliminated()[1])

    def det(self):
        if self.rows != self.cols:
            raise DimensionMismatch("determinant of a non-square matrix")
        _, pivots, det = self._eliminated()
        return det if len(pivots) == self.rows else self.field.zero

    def inverse(self):
        if self.rows != self.cols:
            raise Singular("inverse of a non-square matrix")
        n = self.rows
        ident = Matrix.identity(self.field, n)
        aug = Matrix(self.field,
                     [list(r) + list(ir)
                      for r, ir in zip(self.entries, ident.entries)])
        rows, pivots, _ = aug._eliminated()
        if pivots[:n] != list(range(n)):
            raise Singular("matrix is rank-deficient")
        return Matrix(self.field, [r[n:] for r in rows[:n]])

    def solve(self, b):
        """One solution x of A x = b, or raise Singular if inconsistent."""
        aug = Matrix(self.field,
                     [list(r) + [v] for r, v in zip(self.entries, b)])
        rows, pivots, _ = aug._eliminated()
        if self.cols in pivots:
            raise Singular("inconsistent system")
        zero = self.field.zero
        x = [zero] * self.cols
        for i, c in enumerate(pivots):
            x[c] = rows[i][self.cols]
        return tuple(x)

    def kernel_basis(self):
        """Matrix whose rows span the right kernel of self."""
        rows, pivots, _ = self._eliminated()
        free = [c for c in range(self.cols) if c not in pivots]
        zero, one = self.field.zero, self.field.one
        basis = []
        for fc in free:
            v = [zero] * self.cols
            v[fc] = one
            for i, pc in enumerate(pivots):
                v[pc] = rows[i][fc]
            basis.append(v)
        return Matrix(self.field, basis) if basis else Matrix(self.field, [])

    def row_space_contains(self, v):
        stacked = Matrix(self.field, list(self.entries) + [list(v)])
        return stacked.rank() == self.rank()

    def rref(self):
        rows, pivots, _ = self._eliminated()
        return Matrix(self.field, [r for r in rows if any(r)]
                      if pivots else [])

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in r) for r in self.entries)
        return f"Matrix[{body}]"


def _dot(r, c, field):
    acc = field.zero
    for a, b in zip(r, c):
        if a and b:
            acc = acc + a * b
    return acc


def vec_add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def vec_scale(c, x):
    return tuple(c * a for a in x)
