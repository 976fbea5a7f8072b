import random
from fractions import Fraction

import pytest

from bilinv.canonical import (elementary_divisors, divisor_multiset,
                              indecomposable_decomposition, invariant_factors,
                              jordan_chevalley, min_poly,
                              primary_decomposition)
from bilinv.errors import SmallCharacteristic, Singular
from bilinv.fields import PrimeField, QQ
from bilinv.linalg import Matrix, char_poly, eval_poly_at_matrix, restriction
from bilinv.poly import Poly, factor

F101 = PrimeField(101)


def rand_invertible(field, n, rng):
    while True:
        if isinstance(field, PrimeField):
            M = Matrix(field, [[rng.randrange(field.p) for _ in range(n)]
                               for _ in range(n)], coerce=False)
        else:
            M = Matrix(field, [[rng.randrange(-4, 5) for _ in range(n)]
                               for _ in range(n)])
        if not field.is_zero(M.det()):
            return M


def test_invariant_factor_examples():
    assert [d.to_str() for d in invariant_factors(Matrix(QQ, [[1, 1], [0, 1]]))] \
        == ["1", "x^2 - 2*x + 1"]
    assert [d.to_str() for d in invariant_factors(Matrix.identity(QQ, 2))] \
        == ["x - 1", "x - 1"]
    F7 = PrimeField(7)
    diag = invariant_factors(Matrix.diagonal(F7, [2, 3]))
    assert diag[0].is_one()
    assert diag[1] == Poly.x_minus(F7, 2) * Poly.x_minus(F7, 3)


def test_invariant_factors_divide_and_multiply_to_char_poly():
    rng = random.Random(41)
    for field in (QQ, F101):
        for _ in range(15):
            T = rand_invertible(field, rng.randrange(2, 6), rng)
            fac = invariant_factors(T)
            prod = Poly.one(field)
            for i in range(len(fac) - 1):
                assert (fac[i + 1] % fac[i]).is_zero()
                prod = prod * fac[i]
            assert prod * fac[-1] == char_poly(T)


def test_min_poly_examples():
    assert min_poly(Matrix.identity(QQ, 3)) == Poly.x_minus(QQ, 1)
    C = Matrix.companion(Poly.parse(QQ, "x^2-3*x+1"))
    assert min_poly(C) == char_poly(C)
    J = Matrix(QQ, [[1, 1], [0, 1]])
    assert min_poly(J) == char_poly(J)


def test_min_poly_properties():
    rng = random.Random(43)
    for _ in range(20):
        T = rand_invertible(F101, rng.randrange(2, 6), rng)
        m = min_poly(T)
        chi = char_poly(T)
        assert (chi % m).is_zero()
        assert eval_poly_at_matrix(m, T).is_zero()
        # no maximal proper divisor annihilates
        for p, _ in factor(m):
            assert not eval_poly_at_matrix(m // p, T).is_zero()


def test_elementary_divisor_examples():
    divs = elementary_divisors(Matrix.identity(QQ, 3))
    assert [(d.p.to_str(), d.k, d.multiplicity) for d in divs] == \
        [("x - 1", 1, 3)]
    divs = elementary_divisors(Matrix(QQ, [[1, 1], [0, 1]]))
    assert [(d.p.to_str(), d.k, d.multiplicity) for d in divs] == \
        [("x - 1", 2, 1)]
    C = Matrix.companion(Poly.parse(QQ, "x^2-3*x+1"))
    divs = elementary_divisors(Matrix.block_diagonal(QQ, [C, C]))
    assert [(d.p.to_str(), d.k, d.multiplicity) for d in divs] == \
        [("x^2 - 3*x + 1", 1, 2)]


def test_divisor_product_is_char_poly():
    rng = random.Random(44)
    for field in (QQ, F101):
        for _ in range(10):
            T = rand_invertible(field, rng.randrange(1, 6), rng)
            prod = Poly.one(field)
            for d in elementary_divisors(T):
                prod = prod * d.p ** (d.k * d.multiplicity)
            assert prod == char_poly(T)


def test_elementary_divisors_conjugation_invariant():
    rng = random.Random(47)
    T = Matrix.block_diagonal(F101, [
        Matrix.jordan_block(F101, 1, 2),
        Matrix.companion(Poly.parse(F101, "x^2-3*x+1"))])
    base = divisor_multiset(elementary_divisors(T))
    for _ in range(50):
        g = rand_invertible(F101, 4, rng)
        assert divisor_multiset(elementary_divisors(g * T * g.inverse())) == base


def test_elementary_divisors_degree_limit_propagates():
    from bilinv.errors import DegreeLimit
    big = Poly(QQ, [2] + [0] * 25 + [1])   # x^26 - ... degree above the cap
    T = Matrix.companion(big)
    with pytest.raises(DegreeLimit):
        elementary_divisors(T)
    divs = elementary_divisors(T, degree_limit=30)
    assert sum(d.dim for d in divs) == 26


def test_primary_decomposition_examples():
    T = Matrix.diagonal(QQ, [1, -1, 2, Fraction(1, 2)])
    pd = primary_decomposition(T)
    assert (pd.e, pd.f) == (1, 1)
    assert pd.chi_o == Poly.x_minus(QQ, 2) * Poly.x_minus(QQ, Fraction(1, 2))
    U = Matrix.jordan_block(QQ, 1, 3)
    pd = primary_decomposition(U)
    assert (pd.e, pd.f) == (3, 0) and pd.chi_o.is_one()
    assert pd.basis_o.ncols == 0
    C = Matrix.companion(Poly.parse(QQ, "x^2-3*x+1"))
    pd = primary_decomposition(C)
    assert (pd.e, pd.f) == (0, 0) and pd.basis_o.ncols == 2
    with pytest.raises(Singular):
        primary_decomposition(Matrix.diagonal(QQ, [1, 0]))


def test_primary_blocks_are_invariant():
    rng = random.Random(53)
    T = Matrix.block_diagonal(QQ, [
        Matrix.jordan_block(QQ, 1, 2),
        Matrix.jordan_block(QQ, -1, 1),
        Matrix.companion(Poly.parse(QQ, "x^2-3*x+1"))])
    g = rand_invertible(QQ, 5, rng)
    Tc = g * T * g.inverse()
    pd = primary_decomposition(Tc)
    assert pd.basis_plus.ncols == 2 and pd.basis_minus.ncols == 1
    for basis in (pd.basis_plus, pd.basis_minus, pd.basis_o):
        if basis.ncols:
            restriction(Tc, basis)   # raises unless invariant
    assert char_poly(pd.T_o) == pd.chi_o


def expected_local_block(field, p, k):
    if p.degree == 1 and p.coeff(0) in (field.one, field.neg(field.one)):
        U = Matrix(field, [[field.one if i in (j, j + 1) else field.zero
                            for j in range(k)] for i in range(k)],
                   coerce=False)
        return U if p.coeff(0) == field.neg(field.one) else -U
    return Matrix.companion(p ** k)


def test_indecomposable_examples():
    s = indecomposable_decomposition(Matrix(QQ, [[1, 1], [0, 1]]))
    assert [(x.p.to_str(), x.k) for x in s] == [("x - 1", 2)]
    s = indecomposable_decomposition(Matrix.diagonal(QQ, [2, 3]))
    assert sorted((x.p.to_str(), x.k) for x in s) == \
        [("x - 2", 1), ("x - 3", 1)]
    JJ = Matrix.block_diagonal(QQ, [Matrix.jordan_block(QQ, 1, 2),
                                    Matrix.jordan_block(QQ, 1, 2)])
    s = indecomposable_decomposition(JJ)
    assert [(x.p.to_str(), x.k, x.copy_index) for x in s] == \
        [("x - 1", 2, 0), ("x - 1", 2, 1)]


def test_reassembly_to_block_form():
    rng = random.Random(59)
    blocks = [Matrix.jordan_block(QQ, 1, 3),
              Matrix.jordan_block(QQ, -1, 2),
              Matrix.companion(Poly.parse(QQ, "x^2-3*x+1"))]
    T0 = Matrix.block_diagonal(QQ, blocks)
    for _ in range(5):
        g = rand_invertible(QQ, 7, rng)
        T = g * T0 * g.inverse()
        summands = indecomposable_decomposition(T)
        C = summands[0].basis
        for s in summands[1:]:
            C = C.hstack(s.basis)
        assembled = C.inverse() * T * C
        expected = Matrix.block_diagonal(
            QQ, [expected_local_block(QQ, s.p, s.k) for s in summands])
        assert assembled == expected


def test_jordan_chevalley_examples():
    T = Matrix(QQ, [[2, 1], [0, 2]])
    jc = jordan_chevalley(T)
    assert jc.semisimple == Matrix.diagonal(QQ, [2, 2])
    assert jc.unipotent_or_nilpotent == Matrix(QQ, [["1", "1/2"], ["0", "1"]])
    semi = Matrix.diagonal(QQ, [2, 3])
    assert jordan_chevalley(semi).unipotent_or_nilpotent == \
        Matrix.identity(QQ, 2)
    uni = Matrix.jordan_block(QQ, 1, 3)
    assert jordan_chevalley(uni).semisimple == Matrix.identity(QQ, 3)


def test_jordan_chevalley_properties_and_equivariance():
    rng = random.Random(61)
    from bilinv.poly import poly_gcd
    T0 = Matrix.block_diagonal(QQ, [
        Matrix.jordan_block(QQ, 2, 2),
        Matrix.companion(Poly.parse(QQ, "x^2-3*x+1") ** 2)])
    for _ in range(5):
        g = rand_invertible(QQ, 6, rng)
        T = g * T0 * g.inverse()
        jc = jordan_chevalley(T)
        Ts, Tu = jc.semisimple, jc.unipotent_or_nilpotent
        assert Ts * Tu == Tu * Ts == T
        assert ((Tu - Matrix.identity(QQ, 6)) ** 6).is_zero()
        ms = min_poly(Ts)
        assert poly_gcd(ms, ms.derivative()).is_one()
        # uniqueness: the splitting is equivariant under conjugation
        jc0 = jordan_chevalley(T0)
        assert Ts == g * jc0.semisimple * g.inverse()
    jc = jordan_chevalley(T0, mode="additive")
    assert jc.semisimple + jc.unipotent_or_nilpotent == T0
    assert (jc.unipotent_or_nilpotent ** 6).is_zero()


def test_jordan_chevalley_small_characteristic_rejected():
    F3 = PrimeField(3)
    with pytest.raises(SmallCharacteristic):
        jordan_chevalley(Matrix.identity(F3, 3))
