"""Bit-packed arithmetic for dim-8 algebras over gf(2).

Elements are ints whose bit i is the i-th coordinate; linear maps are
tuples of column bitmasks.  This is the engine behind the exhaustive
sweeps and the conjugacy-orbit searches, where generic field elements
are too slow.
"""

from __future__ import annotations


class Tables:
    """Precomputed structure data of one algebra over gf(2)."""

    __slots__ = ("dim", "mul_masks", "norms")

    def __init__(self, algebra):
        if algebra.field.order != 2:
            raise ValueError("bit tables need gf(2)")
        d = algebra.dim
        self.dim = d
        self.mul_masks = [
            [sum(1 << k for k in range(d) if algebra.table[i][j][k].rep)
             for j in range(d)]
            for i in range(d)]
        self.norms = bytes(
            algebra.norm_coords(
                tuple(algebra.field.element((x >> i) & 1)
                      for i in range(d))).rep
            for x in range(1 << d))

    def mul(self, x, y):
        acc = 0
        mm = self.mul_masks
        i = 0
        while x:
            if x & 1:
                row = mm[i]
                yy = y
                j = 0
                while yy:
                    if yy & 1:
                        acc ^= row[j]
                    yy >>= 1
                    j += 1
            x >>= 1
            i += 1
        return acc

    def norm(self, x):
        return self.norms[x]

    def is_automorphism(self, mat):
        if apply_mat(mat, 1) != 1:
            return False
        if mat_inverse(mat, self.dim) is None:
            return False
        d = self.dim
        for i in range(d):
            gi = mat[i]
            for j in range(d):
                if apply_mat(mat, self.mul_masks[i][j]) != self.mul(gi,
                                                                    mat[j]):
                    return False
        return True


def identity_mat(dim):
    return tuple(1 << i for i in range(dim))


def apply_mat(mat, x):
    acc = 0
    i = 0
    while x:
        if x & 1:
            acc ^= mat[i]
        x >>= 1
        i += 1
    return acc


def mat_mul(a, b):
    return tuple(apply_mat(a, col) for col in b)


def mat_inverse(mat, dim):
    """Inverse of a column-mask matrix, or None if singular."""
    rows = []
    for i in range(dim):
        r = 0
        for j in range(dim):
            if (mat[j] >> i) & 1:
                r |= 1 << j
        rows.append(r | (1 << (dim + i)))  # augment with identity
    piv = 0
    for c in range(dim):
        pr = next((i for i in range(piv, dim) if (rows[i] >> c) & 1), None)
        if pr is None:
            return None
        rows[piv], rows[pr] = rows[pr], rows[piv]
        for i in range(dim):
            if i != piv and (rows[i] >> c) & 1:
                rows[i] ^= rows[piv]
        piv += 1
    inv_rows = [r >> dim for r in rows]
    return tuple(
        sum(((inv_rows[i] >> j) & 1) << i for i in range(dim))
        for j in range(dim))


def from_matrix(M):
    d = M.rows
    return tuple(
        sum((M[i, j].rep & 1) << i for i in range(d)) for j in range(d))


def to_matrix(field, mat):
    d = len(mat)
    return _matrix(field,
                   [[field.element((mat[j] >> i) & 1) for j in range(d)]
                    for i in range(d)])


def _matrix(field, rows):
    from .linalg import Matrix
    return Matrix(field, rows)
