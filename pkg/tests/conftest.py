"""Shared fixtures: the generator matrices used across the test suite."""

import pytest

from srr.fields import FFMatrix, make_field


def matrix(q, rows):
    return FFMatrix.from_rows(make_field(q), rows)


@pytest.fixture(scope="session")
def g1():
    """2x4 binary replication-style matrix; region is the box [0,3] x [0,1]."""
    return matrix(2, [[1, 0, 1, 1],
                      [0, 1, 0, 0]])


@pytest.fixture(scope="session")
def g2():
    """3x6 ternary systematic matrix with the fully worked recovery lists."""
    return matrix(3, [[1, 0, 0, 1, 0, 1],
                      [0, 1, 0, 1, 2, 2],
                      [0, 0, 1, 1, 1, 1]])


@pytest.fixture(scope="session")
def mds24():
    """2x4 systematic MDS matrix over F_3 whose region is the pentagon."""
    return matrix(3, [[1, 0, 1, 1],
                      [0, 1, 1, 2]])


@pytest.fixture(scope="session")
def skew_h():
    """3x4 binary matrix with hypercube size 1/2 strictly below min(sum/k, delta)."""
    return matrix(2, [[1, 1, 0, 1],
                      [0, 0, 1, 1],
                      [0, 0, 0, 1]])


@pytest.fixture(scope="session")
def ident_parity():
    """[I_3 | all-ones] over F_2: systematic MDS with n < 2k."""
    return matrix(2, [[1, 0, 0, 1],
                      [0, 1, 0, 1],
                      [0, 0, 1, 1]])


@pytest.fixture(scope="session")
def simplex37():
    """Binary simplex code generator, availability 3."""
    return matrix(2, [[1, 0, 0, 1, 1, 0, 1],
                      [0, 1, 0, 1, 0, 1, 1],
                      [0, 0, 1, 0, 1, 1, 1]])


@pytest.fixture(scope="session")
def uniform36():
    """3x6 ternary matrix with per-object uniform recovery-set sizes (2,3,11/4)."""
    return matrix(3, [[0, 1, 1, 2, 1, 2],
                      [1, 2, 2, 2, 1, 1],
                      [0, 0, 0, 1, 2, 2]])


@pytest.fixture(scope="session")
def wide28():
    """2x8 ternary matrix used for the non-binary clip-bound comparison."""
    return matrix(3, [[1, 0, 1, 1, 0, 0, 1, 1],
                      [0, 1, 0, 0, 1, 1, 1, 2]])


@pytest.fixture(scope="session")
def nonsys_f7():
    """Non-systematic 2x4 MDS matrix over F_7 with max-sum capacity 2."""
    return matrix(7, [[2, 1, 3, 4],
                      [1, 2, 3, 5]])
