import itertools
import random

import pytest

from chainring.errors import NotChainRing, NotFree, NotInvertible, RankTooLarge
from chainring.linalg import (
    RingMatrix,
    determinant,
    free_envelope,
    hermite_form,
    inverse,
    is_free_rows,
    kernel,
    parity_check,
    rank,
    rank_profile,
    rank_distance,
    reduced_row_echelon,
    row_membership,
    smith_normal_form,
    standard_form,
)
from chainring.oracles import brute_rank, module_elements
from chainring.rings import integer_ring


def rand_matrix(ring, m, n, rng):
    elems = list(ring.elements())
    return RingMatrix(ring, [[rng.choice(elems) for _ in range(n)] for _ in range(m)])


def test_rank_examples(z8):
    A = RingMatrix(z8, [[2, 0], [0, 4]])
    assert rank(A) == 2
    assert rank(A.scale(6)) == 1
    assert rank(RingMatrix.zeros(z8, 3, 3)) == 0
    assert rank(RingMatrix.identity(z8, 4)) == 4


def test_rank_matches_brute_force(z4):
    rng = random.Random(12)
    for _ in range(15):
        A = rand_matrix(z4, 2, 3, rng)
        assert rank(A) == brute_rank(A)


def test_smith_form_exact(z8, z9):
    rng = random.Random(5)
    for ring in (z8, z9):
        for _ in range(10):
            A = rand_matrix(ring, 3, 4, rng)
            dec = smith_normal_form(A)
            assert (dec.u @ dec.d @ dec.v) == A
            assert (dec.u @ dec.u_inv) == RingMatrix.identity(ring, 3)
            assert (dec.v @ dec.v_inv) == RingMatrix.identity(ring, 4)
            diag = dec.diagonal()
            vals = [ring.valuation(x) for x in diag]
            assert vals == sorted(vals)  # divisibility chain
            for i in range(3):
                for j in range(4):
                    if i != j:
                        assert dec.d.rows[i][j].is_zero()


def test_smith_already_diagonal(z8):
    A = RingMatrix(z8, [[2, 0], [0, 4]])
    dec = smith_normal_form(A)
    assert [x.data for x in dec.diagonal()] == [2, 4]


def test_hermite_exact_and_identity(z8):
    rng = random.Random(8)
    for _ in range(10):
        A = rand_matrix(z8, 3, 4, rng)
        dec = hermite_form(A)
        assert (dec.p @ dec.t) == A
        assert (dec.p @ dec.p_inv) == RingMatrix.identity(z8, 3)
        for i, j in dec.pivots:
            # zero below every pivot and reduced entries above
            e = z8.valuation(dec.t.rows[i][j])
            for i2 in range(i + 1, 3):
                assert dec.t.rows[i2][j].is_zero()
            for i2 in range(i):
                assert z8.reduce_mod_pi_power(dec.t.rows[i2][j], e) == dec.t.rows[i2][j]
    I = RingMatrix.identity(z8, 3)
    dec = hermite_form(I)
    assert dec.p == I and dec.t == I


def test_kernel_examples(z8):
    gens = kernel(RingMatrix(z8, [[2]]))
    assert [[x.data for x in g] for g in gens] == [[4]]
    assert kernel(RingMatrix.identity(z8, 2)) == []


def test_kernel_matches_enumeration(z4):
    rng = random.Random(3)
    for _ in range(10):
        A = rand_matrix(z4, 2, 3, rng)
        gens = kernel(A)
        expected = {
            v
            for v in itertools.product(list(z4.elements()), repeat=3)
            if all(x.is_zero() for x in A.mul_vector(v))
        }
        if gens:
            got = module_elements(z4, gens)
        else:
            got = {(z4.zero,) * 3}
        assert got == expected


def test_free_envelope_examples(z8):
    E = RingMatrix(z8, [[2, 0, 4]])
    B = free_envelope(E, 1)
    assert [[x.data for x in row] for row in B.rows] == [[1, 0, 2]]
    assert row_membership(B, E.rows[0])

    # a free row space of full rank is its own unique envelope
    A = RingMatrix(z8, [[1, 0, 2], [0, 1, 3]])
    B2 = free_envelope(A, 2)
    assert all(row_membership(B2, row) for row in A.rows)
    assert all(row_membership(A, row) for row in B2.rows)


def test_free_envelope_contains_rows(z4):
    rng = random.Random(77)
    for _ in range(10):
        v = [rng.choice(list(z4.elements())) for _ in range(3)]
        A = RingMatrix(z4, [v])
        if rank(A) > 1:
            continue
        B = free_envelope(A, 1)
        assert row_membership(B, A.rows[0])


def test_free_envelope_rank_too_large(z8):
    A = RingMatrix(z8, [[1, 0, 0], [0, 1, 0]])
    with pytest.raises(RankTooLarge):
        free_envelope(A, 1)
    with pytest.raises(RankTooLarge):
        free_envelope(A, 4)


def test_parity_check_examples(z8):
    B = RingMatrix(z8, [[1, 0, 2]])
    Z = parity_check(B)
    assert [[x.data for x in row] for row in Z.rows] == [[0, 6], [1, 0], [0, 1]]
    for y in itertools.product(list(z8.elements()), repeat=3):
        in_row = row_membership(B, y)
        yz_zero = all(x.is_zero() for x in Z.transpose().mul_vector(y))
        assert in_row == yz_zero

    B2 = RingMatrix(z8, [[1, 0, 0], [0, 1, 0]])
    Z2 = parity_check(B2)
    assert [[x.data for x in row] for row in Z2.rows] == [[0], [0], [1]]


def test_parity_check_full_equivalence(z9):
    rng = random.Random(4)
    found = 0
    while found < 5:
        B = rand_matrix(z9, 1, 3, rng)
        if not is_free_rows(B):
            continue
        found += 1
        Z = parity_check(B)
        for y in itertools.product(list(z9.elements()), repeat=3):
            lhs = row_membership(B, y)
            rhs = all(x.is_zero() for x in Z.transpose().mul_vector(y))
            assert lhs == rhs


def test_parity_check_not_free(z8):
    with pytest.raises(NotFree):
        parity_check(RingMatrix(z8, [[2, 0, 4]]))


def test_standard_form(z8):
    rng = random.Random(6)
    done = 0
    while done < 8:
        Z = rand_matrix(z8, 3, 2, rng)
        try:
            P, Zp, Q = standard_form(Z)
        except NotFree:
            continue
        done += 1
        stacked = RingMatrix.identity(z8, 2).vstack(Zp)
        assert (P @ stacked @ Q) == Z
        # P is a permutation matrix
        for row in P.rows:
            assert sum(1 for x in row if not x.is_zero()) == 1
    # already standard: the decomposition is the trivial one
    Zs = RingMatrix.identity(z8, 2).vstack(RingMatrix(z8, [[3, 5]]))
    P, Zp, Q = standard_form(Zs)
    assert P == RingMatrix.identity(z8, 3)
    assert Q == RingMatrix.identity(z8, 2)
    assert Zp == RingMatrix(z8, [[3, 5]])


def test_standard_form_z6_counterexample():
    z6 = integer_ring(6)
    Z = RingMatrix(z6, [[z6.from_int(2)], [z6.from_int(3)]])
    with pytest.raises(NotChainRing):
        standard_form(Z)


def test_rank_metric_axioms(z8):
    rng = random.Random(99)
    for _ in range(200):
        A = rand_matrix(z8, 2, 2, rng)
        B = rand_matrix(z8, 2, 2, rng)
        C = rand_matrix(z8, 2, 2, rng)
        assert rank_distance(A, A) == 0
        dab = rank_distance(A, B)
        assert dab == rank_distance(B, A)
        if A != B:
            assert dab >= 1
        assert rank_distance(A, C) <= dab + rank_distance(B, C)


def test_rank_transpose_invariance(z8):
    rng = random.Random(13)
    for _ in range(30):
        A = rand_matrix(z8, 2, 3, rng)
        assert rank(A) == rank(A.transpose())


def test_row_span_preserved_by_invertible(z8):
    rng = random.Random(21)
    done = 0
    while done < 5:
        U = rand_matrix(z8, 2, 2, rng)
        try:
            inverse(U)
        except NotInvertible:
            continue
        done += 1
        A = rand_matrix(z8, 2, 3, rng)
        UA = U @ A
        for y in itertools.product(list(z8.elements()), repeat=3):
            assert row_membership(A, y) == row_membership(UA, y)


def test_inverse(z8):
    A = RingMatrix(z8, [[1, 2], [3, 7]])
    Ainv = inverse(A)
    assert (A @ Ainv) == RingMatrix.identity(z8, 2)
    with pytest.raises(NotInvertible):
        inverse(RingMatrix(z8, [[2, 0], [0, 1]]))


def test_determinant_matches_cofactor(z8):
    A = RingMatrix(z8, [[1, 2, 3], [4, 5, 6], [7, 1, 2]])
    det = determinant(A)
    brute = z8.zero
    for perm in itertools.permutations(range(3)):
        sign = 1
        for i in range(3):
            for j in range(i + 1, 3):
                if perm[i] > perm[j]:
                    sign =-sign
        term = z8.one
        for i in range(3):
            term = z8.mul(term, A.rows[i][perm[i]])
        brute = z8.add(brute, term if sign > 0 else z8.neg(term))
    assert det == brute


def test_product_ring_componentwise(z8):
    z6 = integer_ring(6)
    A = RingMatrix(z6, [[z6.from_int(2), z6.from_int(0)], [z6.from_int(0), z6.from_int(3)]])
    dec = smith_normal_form(A)
    assert (dec.u @ dec.d @ dec.v) == A
    assert rank(A) == max(rank_profile(A))
    assert len(rank_profile(A)) == 2


def test_matrix_json_roundtrip(z8):
    A = RingMatrix(z8, [[1, 2], [3, 4]])
    assert RingMatrix.from_json(A.to_json()) == A


def test_rre_trims_zero_rows(z8):
    A = RingMatrix(z8, [[2, 4], [4, 0], [6, 4]])
    E = reduced_row_echelon(A)
    assert all(any(not x.is_zero() for x in row) for row in E.rows)
    # same row module
    for y in itertools.product(list(z8.elements()), repeat=2):
        assert row_membership(A, y) == row_membership(E, y)
