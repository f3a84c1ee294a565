"""Sanity checks for the exact matrix layer.

Ranks and kernels are cross-checked against brute-force oracles that never
touch the row-reduction code under test: minor enumeration for ranks,
vector enumeration over F_2 for kernels.
"""

import itertools
import random
from fractions import Fraction

import pytest

from levelcert.linalg import (
    Mat, PrimeField, QQ, block_diag, extend_to_basis, hstack, parse_field,
    parse_scalar, subspace_basis, vstack,
)

F2 = PrimeField(2)
F5 = PrimeField(5)
F101 = PrimeField(101)


def oracle_rank_by_minors(field, rows):
    """Rank as the largest r with a nonvanishing r x r minor (Laplace)."""
    n, m = len(rows), len(rows[0]) if rows else 0

    def det(sub):
        if not sub:
            return field.one
        total = field.zero
        for j in range(len(sub)):
            minor = [r[:j] + r[j + 1:] for r in sub[1:]]
            term = field.mul(sub[0][j], det(minor))
            total = field.add(total, term) if j % 2 == 0 else field.sub(total, term)
        return total

    best = 0
    for r in range(1, min(n, m) + 1):
        found = False
        for ri in itertools.combinations(range(n), r):
            for ci in itertools.combinations(range(m), r):
                sub = [[rows[i][j] for j in ci] for i in ri]
                if not field.is_zero(det(sub)):
                    found = True
                    break
            if found:
                break
        if found:
            best = r
        else:
            break
    return best


def oracle_kernel_f2(rows, ncols):
    """All kernel vectors of an F_2 matrix by enumeration."""
    out = []
    for vec in itertools.product([0, 1], repeat=ncols):
        if all(sum(r[j] * vec[j] for j in range(ncols)) % 2 == 0 for r in rows):
            out.append(vec)
    return set(out)


def test_rank_all_ones_f2():
    A = Mat.from_rows(F2, [[1, 1], [1, 1]])
    assert A.rank() == 1
    assert A.rank() == oracle_rank_by_minors(F2, [[1, 1], [1, 1]])


def test_kernel_f2_line():
    A = Mat.from_rows(F2, [[1, 1]])
    K = A.kernel_basis()
    assert K.ncols == 1
    assert K.col_entries(0) == [1, 1]
    spanned = {(0, 0), (1, 1)}
    assert oracle_kernel_f2([[1, 1]], 2) == spanned


def test_solve_q():
    A = Mat.from_rows(QQ, [[1, 2], [3, 4]])
    b = Mat.column(QQ, [5, 6])
    X = A.solve(b)
    assert X is not None
    assert A @ X == b
    assert X.col_entries(0) == [Fraction(-4), Fraction(9, 2)]


def test_solve_inconsistent_is_none():
    A = Mat.from_rows(F5, [[1, 2], [2, 4]])
    b = Mat.column(F5, [0, 1])
    assert A.solve(b) is None


def test_inverse_roundtrip():
    A = Mat.from_rows(F101, [[2, 1, 0], [1, 1, 1], [0, 3, 1]])
    Ainv = A.inverse()
    assert Ainv is not None
    assert A @ Ainv == Mat.identity(F101, 3)
    assert Ainv @ A == Mat.identity(F101, 3)
    singular = Mat.from_rows(F101, [[1, 2], [2, 4]])
    assert singular.inverse() is None


def test_empty_shapes():
    A = Mat.zeros(F2, 0, 3)
    assert A.rank() == 0
    K = A.kernel_basis()
    assert K.shape == (3, 3)
    B = Mat.zeros(F2, 3, 0)
    assert B.kernel_basis().shape == (0, 0)
    assert B.rank() == 0
    assert (A @ Mat.zeros(F2, 3, 2)).shape == (0, 2)


def test_rref_pivot_rule_is_lowest_row_then_column():
    # first pivot must come from row 0 even though row 1 also works
    A = Mat.from_rows(F5, [[0, 2, 1], [3, 1, 0]])
    R, pivots = A.rref()
    assert pivots == (0, 1)
    assert R.entry(0, 0) == 1 and R.entry(1, 1) == 1


@pytest.mark.parametrize("field", [F2, F5, F101, QQ])
def test_kernel_and_solve_randomized(field):
    rng = random.Random(7)
    for _ in range(40):
        n, m = rng.randint(0, 5), rng.randint(0, 5)
        if field is QQ:
            rows = [[Fraction(rng.randint(-3, 3)) for _ in range(m)] for _ in range(n)]
        else:
            rows = [[rng.randrange(field.p) for _ in range(m)] for _ in range(n)]
        A = Mat.from_rows(field, rows) if n else Mat.zeros(field, 0, m)
        K = A.kernel_basis()
        assert (A @ K).is_zero()
        assert K.rank() == K.ncols
        assert A.rank() + K.ncols == m
        # exact ranks against the minor oracle on small instances
        if n and m and n <= 4 and m <= 4:
            assert A.rank() == oracle_rank_by_minors(field, A.to_lists())
        X = A.solve(Mat.zeros(field, n, 1))
        assert X is not None and (A @ X).is_zero()


def test_kernel_matches_enumeration_f2():
    rng = random.Random(3)
    for _ in range(25):
        n, m = rng.randint(1, 3), rng.randint(1, 4)
        rows = [[rng.randrange(2) for _ in range(m)] for _ in range(n)]
        A = Mat.from_rows(F2, rows)
        K = A.kernel_basis()
        brute = oracle_kernel_f2(rows, m)
        spanned = set()
        for coeffs in itertools.product([0, 1], repeat=K.ncols):
            v = [0] * m
            for j, c in enumerate(coeffs):
                if c:
                    v = [(a + b) % 2 for a, b in zip(v, K.col_entries(j))]
            spanned.add(tuple(v))
        assert spanned == brute


def test_determinism_same_input_same_output():
    rows = [[4, 1, 3], [2, 0, 1], [1, 1, 1]]
    a = Mat.from_rows(F5, rows)
    b = Mat.from_rows(F5, rows)
    assert a.rref()[0].to_lists() == b.rref()[0].to_lists()
    assert a.kernel_basis().to_lists() == b.kernel_basis().to_lists()


def test_stack_and_blockdiag():
    A = Mat.identity(F2, 2)
    B = Mat.from_rows(F2, [[1, 1], [0, 1]])
    H = hstack([A, B])
    assert H.shape == (2, 4)
    V = vstack([A, B])
    assert V.shape == (4, 2)
    D = block_diag(F2, [A, B])
    assert D.shape == (4, 4)
    assert D.entry(2, 2) == 1 and D.entry(0, 3) == 0


def test_subspace_and_extension_helpers():
    v1 = Mat.column(F5, [1, 2, 0])
    v2 = Mat.column(F5, [2, 4, 0])
    basis = subspace_basis([v1, v2])
    assert basis.ncols == 1
    ext = extend_to_basis(F5, basis)
    assert len(ext) == 2
    full = hstack([basis] + [Mat.column(F5, [1 if i == j else 0 for i in range(3)])
                             for j in ext])
    assert full.rank() == 3


def test_field_parsing():
    assert parse_field("F101").p == 101
    assert parse_field("Q") == QQ
    assert parse_scalar(QQ, "3/2") == Fraction(3, 2)
    assert parse_scalar(PrimeField(7), "-1") == 6
    with pytest.raises(Exception):
        parse_field("F4")
