import pytest

from octo2.linalg import Matrix, Singular, DimensionMismatch


def test_identity_and_multiplication(f4):
    ident = Matrix.identity(f4, 3)
    m = Matrix.from_rows(f4, [[1, 0, 1], [0, 1, 1], [1, 1, 0]])
    assert m * ident == m
    assert ident * m == m
    assert (m * m).rows == 3


def test_inverse_roundtrip(f2):
    m = Matrix.from_rows(f2, [[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    # rank check first: rows sum to zero over gf(2)?
    if m.rank() == 3:
        assert (m * m.inverse()).is_identity()
    else:
        with pytest.raises(Singular):
            m.inverse()


def test_inverse_rational(rf1):
    x = rf1.indeterminate(0)
    m = Matrix.from_rows(rf1, [[x, rf1.one], [rf1.one, rf1.zero]])
    assert (m * m.inverse()).is_identity()
    assert m.det() == rf1.one  # -1 = 1 in char 2


def test_rank_and_kernel(f2):
    m = Matrix.from_rows(f2, [[1, 1, 0, 0], [0, 0, 1, 1], [1, 1, 1, 1]])
    assert m.rank() == 2
    ker = m.kernel_basis()
    assert ker.rows == 2
    for i in range(ker.rows):
        assert all(not c for c in m * ker.row(i))


def test_solve(f4):
    g = f4.generator()
    m = Matrix.from_rows(f4, [[1, g], [g, 1]])
    b = (f4.one, g * g)
    x = m.solve(b)
    assert m * x == b


def test_solve_inconsistent(f2):
    m = Matrix.from_rows(f2, [[1, 1], [1, 1]])
    with pytest.raises(Singular):
        m.solve((f2.one, f2.zero))


def test_shape_mismatch(f2):
    a = Matrix.identity(f2, 2)
    b = Matrix.identity(f2, 3)
    with pytest.raises(DimensionMismatch):
        a + b
    with pytest.raises(DimensionMismatch):
        a * b


def test_row_space_and_rref(f2):
    m = Matrix.from_rows(f2, [[1, 0, 1], [0, 1, 1]])
    assert m.row_space_contains((f2.one, f2.one, f2.zero))
    assert not m.row_space_contains((f2.one, f2.one, f2.one))
    assert m.rref().rank() == 2


def test_matrix_hashable(f2):
    a = Matrix.identity(f2, 2)
    b = Matrix.identity(f2, 2)
    assert len({a, b}) == 1
