import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rigidcoh.intmatrix import (
    IntMatrix,
    hermite_basis,
    invariant_factor_diagonal,
    kernel_basis_rows,
    lattice_contains,
    smith_normal_form,
    smith_with_inverses,
    solve_vector,
)


def check_snf(A):
    U, Uinv, D, V, Vinv = smith_with_inverses(A)
    assert U * A * V == D
    assert U * Uinv == IntMatrix.identity(A.rows)
    assert V * Vinv == IntMatrix.identity(A.cols)
    assert U.det() in (1, -1) and V.det() in (1, -1)
    diag = invariant_factor_diagonal(D)
    for i in range(D.rows):
        for j in range(D.cols):
            if i != j:
                assert D[i][j] == 0
    for i in range(len(diag) - 1):
        assert diag[i] >= 0
        if diag[i] == 0:
            assert diag[i + 1] == 0
        else:
            assert diag[i + 1] % diag[i] == 0
    return diag


def test_snf_zero_matrix():
    U, D, V = smith_normal_form(IntMatrix([[0]]))
    assert D == IntMatrix([[0]])
    assert U == IntMatrix([[1]]) and V == IntMatrix([[1]])


def test_snf_identity():
    U, D, V = smith_normal_form(IntMatrix.identity(3))
    assert D == IntMatrix.identity(3)


def test_snf_hand_example():
    # oracle: d1 = gcd of entries = 2, d1*d2 = |det| = 8
    A = IntMatrix([[2, 4], [6, 8]])
    diag = check_snf(A)
    assert diag == [2, 4]


def test_snf_brute_force_small():
    # oracle: search over small unimodular transforms for 2x2 matrices
    rng = random.Random(0)
    elem = []
    for c in (-1, 0, 1):
        elem.append(IntMatrix([[1, c], [0, 1]]))
        elem.append(IntMatrix([[1, 0], [c, 1]]))
    elem.append(IntMatrix([[0, 1], [1, 0]]))
    elem.append(IntMatrix([[-1, 0], [0, 1]]))
    words = [IntMatrix.identity(2)]
    for _ in range(4):
        words = [w * e for w in words for e in elem]
        words = list({w.entries: w for w in words}.values())[:800]
    for _ in range(5):
        A = IntMatrix([[rng.randint(-3, 3) for _ in range(2)] for _ in range(2)])
        diag = check_snf(A)
        best = None
        for L in words[:200]:
            for R in words[:200]:
                M = L * A * R
                if M[0][1] == 0 and M[1][0] == 0:
                    cand = sorted((abs(M[0][0]), abs(M[1][1])))
                    if cand[0] and cand[1] % cand[0] == 0 or cand[0] == 0:
                        best = cand if best is None else min(best, cand)
        if best is not None and all(best):
            assert [d for d in diag if d] == [d for d in best if d]


def test_snf_random_battery():
    rng = random.Random(42)
    for _ in range(150):
        r, c = rng.randint(0, 5), rng.randint(0, 5)
        A = IntMatrix([[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)], cols=c)
        check_snf(A)


@settings(max_examples=60, deadline=None)
@given(
    st.lists(
        st.lists(st.integers(min_value=-9, max_value=9), min_size=3, max_size=3),
        min_size=1,
        max_size=4,
    )
)
def test_snf_property(rows):
    check_snf(IntMatrix(rows))


def test_kernel_examples():
    ker = kernel_basis_rows(IntMatrix([[1, 1]]))
    assert len(ker) == 1 and sorted(ker[0]) == [-1, 1]
    assert kernel_basis_rows(IntMatrix([[2]])) == []
    ker = kernel_basis_rows(IntMatrix([[1, 2, 3], [2, 4, 6]]))
    h = hermite_basis(ker)
    assert len(ker) == 2
    # oracle: these small vectors are annihilated, so they must be present
    assert lattice_contains(h, (2, -1, 0))
    assert lattice_contains(h, (3, 0, -1))


def test_kernel_saturated_and_correct():
    rng = random.Random(7)
    for _ in range(100):
        r, c = rng.randint(1, 4), rng.randint(1, 5)
        A = IntMatrix([[rng.randint(-4, 4) for _ in range(c)] for _ in range(r)], cols=c)
        ker = kernel_basis_rows(A)
        for v in ker:
            assert all(x == 0 for x in A.apply(v))
        # saturation: enumerate small integer vectors in the kernel and check
        # membership in the computed lattice
        h = hermite_basis(ker)
        from itertools import product

        for v in product(range(-2, 3), repeat=c):
            if all(x == 0 for x in A.apply(v)):
                assert lattice_contains(h, v)


def test_solve_and_det():
    rng = random.Random(3)
    for _ in range(80):
        n = rng.randint(1, 5)
        A = IntMatrix([[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)])
        x = [rng.randint(-4, 4) for _ in range(n)]
        b = A.apply(x)
        s = solve_vector(A, b)
        assert s is not None and A.apply(s) == b
    M = IntMatrix([[2, 1], [1, 1]])
    assert M.det() == 1
    assert M.inverse_unimodular() * M == IntMatrix.identity(2)
    with pytest.raises(ValueError):
        IntMatrix([[1, 2]]).det()


def test_hermite_canonical():
    # equal lattices in different presentations give equal bases
    a = hermite_basis([(2, 0), (0, 2), (1, 1)])
    b = hermite_basis([(1, 1), (1, -1)])
    assert a == b
    assert hermite_basis([(0, 0)]) == []
