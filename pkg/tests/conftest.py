import pytest

from octo2.field import GF, RationalFunctionField
from octo2.composition import build


@pytest.fixture(scope="session")
def f2():
    return GF(1)


@pytest.fixture(scope="session")
def f4():
    return GF(2)


@pytest.fixture(scope="session")
def rf2():
    """gf(2)(x1, x2)"""
    return RationalFunctionField(GF(1), ("x1", "x2"))


@pytest.fixture(scope="session")
def rf1():
    """gf(2)(x1)"""
    return RationalFunctionField(GF(1), ("x1",))


@pytest.fixture(scope="session")
def octo_gf2(f2):
    """Split octonion algebra over gf(2), alpha = beta = gamma = 1."""
    return build(f2, 8, f2.one, f2.one, f2.one)


@pytest.fixture(scope="session")
def octo_gf4(f4):
    return build(f4, 8, f4.one, f4.one, f4.one)


@pytest.fixture(scope="session")
def octo_rational(rf2):
    """Octonion algebra over gf(2)(x1,x2) with alpha=0, beta=x1,
    gamma=x2; its canonical totally singular subalgebra is division."""
    return build(rf2, 8, rf2.zero, rf2.indeterminate(0),
                 rf2.indeterminate(1))


@pytest.fixture(scope="session")
def octo_rational_quat(rf2):
    """Octonion over gf(2)(x1,x2) whose canonical quaternion subalgebra
    is division: alpha=x1, beta=x2."""
    return build(rf2, 8, rf2.indeterminate(0), rf2.indeterminate(1),
                 rf2.one)
