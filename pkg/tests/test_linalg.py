import random
from fractions import Fraction

from catc import linalg


def _random_matrix(rng, rows, cols):
    return [[Fraction(rng.randint(-4, 4), rng.randint(1, 3))
             for _ in range(cols)] for _ in range(rows)]


def _matvec(m, x):
    return [sum(c * v for c, v in zip(row, x)) for row in m]


def test_kernel_vectors_annihilate():
    rng = random.Random(0)
    for _ in range(40):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        m = _random_matrix(rng, r, c)
        sparse = linalg.to_sparse(m)
        for flip in (False, True):
            basis = linalg.kernel_basis(sparse, c, eliminate_from_right=flip)
            assert len(basis) + linalg.rank(sparse, c) == c
            for v in basis:
                assert all(x == 0 for x in _matvec(m, v))


def test_kernel_right_elimination_keeps_leading_coords_free():
    # x0 free, x1 = 2 x0
    m = [[Fraction(2), Fraction(-1)]]
    basis = linalg.kernel_basis(linalg.to_sparse(m), 2,
                                eliminate_from_right=True)
    assert basis == [[Fraction(1), Fraction(2)]]


def test_cokernel_kills_exactly_the_span():
    rng = random.Random(1)
    for _ in range(30):
        r, c = rng.randint(1, 5), rng.randint(1, 6)
        m = _random_matrix(rng, r, c)
        sparse = linalg.to_sparse(m)
        q, qmat = linalg.cokernel_quotient(sparse, c)
        assert q == c - linalg.rank(sparse, c)
        for row in m:
            assert all(x == 0 for x in _matvec(qmat, row))
        # the quotient map is surjective: its rank is q
        assert linalg.rank(linalg.to_sparse(qmat), c) == q


def test_solve_particular():
    m = [[Fraction(1), Fraction(2)], [Fraction(0), Fraction(1)]]
    sol = linalg.solve_particular(linalg.to_sparse(m), 2, [Fraction(5), Fraction(2)])
    assert _matvec(m, sol) == [Fraction(5), Fraction(2)]
    none = linalg.solve_particular(
        linalg.to_sparse([[Fraction(0), Fraction(0)]]), 2, [Fraction(1)])
    assert none is None


def test_is_invertible():
    assert linalg.is_invertible([[Fraction(2)]])
    assert not linalg.is_invertible([[Fraction(1), Fraction(2)],
                                     [Fraction(2), Fraction(4)]])
    assert linalg.is_invertible(linalg.identity(3))
