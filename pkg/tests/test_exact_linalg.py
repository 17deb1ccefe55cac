from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from nilgraph.exact_linalg import (
    Matrix,
    Poly,
    QuadScalar,
    char_poly,
    companion,
    det,
    determinant_divisors,
    determinant_divisors_by_minors,
    has_eigenvalue_one,
    hermite_normal_form,
    integer_kernel,
    inverse,
    is_integer_like,
    lattice_index,
    nullspace,
    rank,
    resultant,
    saturation,
    smith_normal_form,
)
from nilgraph.lie_ring import random_unimodular


def int_matrices(max_dim: int = 5, bound: int = 9, square: bool = False):
    @st.composite
    def build(draw):
        r = draw(st.integers(1, max_dim))
        c = r if square else draw(st.integers(1, max_dim))
        rows = draw(st.lists(st.lists(st.integers(-bound, bound), min_size=c, max_size=c), min_size=r, max_size=r))
        return Matrix(rows, c)
    return build()


def _sym(m: Matrix) -> sympy.Matrix:
    return sympy.Matrix(m.tolist())


def _sym_poly(p: Poly):
    x = sympy.Symbol("x")
    return sympy.Poly(sum(sympy.Rational(c.numerator, c.denominator) * x ** i
                          for i, c in enumerate(map(Fraction, p.coeffs))), x)


# --- scalars and polynomials ------------------------------------------------


def test_quad_scalar_sqrt_squares_to_d():
    r2 = QuadScalar.sqrt(2)
    assert r2 * r2 == 2
    assert (1 + r2) * (1 - r2) == -1
    assert (1 + r2).inverse() == r2 - 1


def test_quad_scalar_rejects_square_factor():
    with pytest.raises(ValueError):
        QuadScalar(0, 1, 8)


def test_quad_scalar_json_round_trip():
    q = QuadScalar(Fraction(1, 3), Fraction(-2, 5), 7)
    assert QuadScalar.from_json(q.to_json()) == q


def test_poly_arithmetic_and_printing():
    x = Poly.x()
    p = x * x - Poly([3]) * x + Poly([1])
    assert p == Poly.from_highest([1, -3, 1])
    assert p(1) == -1
    assert (p * p).degree == 4
    assert str(p) == "x^2 - 3*x + 1"


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=4), st.lists(st.integers(-5, 5), min_size=1, max_size=4))
def test_resultant_matches_sympy(a, b):
    p, q = Poly(a + [1]), Poly(b + [1])
    x = sympy.Symbol("x")
    # sympy's sign convention differs when deg p < deg q, so compare magnitudes here
    assert abs(resultant(p, q)) == abs(sympy.resultant(_sym_poly(p).as_expr(), _sym_poly(q).as_expr(), x))


def test_resultant_sign_follows_root_product():
    # Res(p, q) = prod q(a) over the roots a of monic p
    assert resultant(Poly([0, 1]), Poly([1, 0, 0, 1])) == 1
    assert resultant(Poly([-2, 1]), Poly([1, 0, 1])) == 5
    assert resultant(Poly([1, 0, 1]), Poly([0, 1])) == 1


def test_companion_has_its_polynomial_as_char_poly():
    for coeffs in ([1, -3, 1], [1, 0, -3, 0, 1], [1, 2, -1, 5]):
        p = Poly.from_highest(coeffs)
        assert char_poly(companion(p)) == p


# --- determinants and characteristic polynomials -----------------------------


@given(int_matrices(square=True))
def test_det_matches_sympy(m):
    assert det(m) == _sym(m).det()


@given(int_matrices(max_dim=4, square=True), st.randoms(use_true_random=False))
def test_det_is_multiplicative(m, rnd):
    n = m.nrows
    other = Matrix([[rnd.randint(-4, 4) for _ in range(n)] for _ in range(n)], n)
    assert det(m @ other) == det(m) * det(other)


@given(int_matrices(square=True))
def test_char_poly_matches_sympy(m):
    ours = char_poly(m)
    theirs = _sym(m).charpoly(sympy.Symbol("x")).all_coeffs()[::-1]
    assert [int(c) for c in ours.coeffs] == [int(c) for c in theirs]


@given(int_matrices(max_dim=4, square=True), st.integers(0, 2**32))
def test_char_poly_is_similarity_invariant(m, seed):
    u = random_unimodular(random.Random(seed), m.nrows)
    assert char_poly(u @ m @ inverse(u)) == char_poly(m)


@given(int_matrices(max_dim=4, square=True, bound=3))
def test_eigenvalue_one_iff_char_poly_vanishes_at_one(m):
    assert has_eigenvalue_one(m) == (char_poly(m)(1) == 0)


def test_integer_like():
    assert is_integer_like(Matrix([[2, 1], [1, 1]]))
    assert not is_integer_like(Matrix([[2, 0], [0, 1]]))
    assert is_integer_like(Matrix([[0, Fraction(1, 2)], [2, 0]]))


def test_quadratic_entries_compute_determinants():
    r2 = QuadScalar.sqrt(2)
    m = Matrix([[r2, 1], [1, r2]])
    assert det(m) == 1
    assert m.ring == "QQ(sqrt2)"


# --- linear algebra over QQ -------------------------------------------------


@given(int_matrices())
def test_rank_and_nullspace(m):
    assert rank(m) == _sym(m).rank()
    ns = nullspace(m)
    assert len(ns) == m.ncols - rank(m)
    for v in ns:
        assert all(x == 0 for x in m.apply(v))


@given(int_matrices(max_dim=4, square=True))
def test_inverse(m):
    if det(m) == 0:
        with pytest.raises(ValueError):
            inverse(m)
    else:
        assert m @ inverse(m) == Matrix.identity(m.nrows)


# --- Smith normal form and lattices ------------------------------------------


@given(int_matrices())
def test_snf_transforms_and_divisibility(m):
    res = smith_normal_form(m)
    assert res.U @ m @ res.V == res.S
    assert abs(det(res.U)) == 1 and abs(det(res.V)) == 1
    d = res.diagonal
    for i, j in ((i, j) for i in range(res.S.nrows) for j in range(res.S.ncols)):
        if i != j:
            assert res.S[i, j] == 0
    assert all(x >= 0 for x in d)
    for a, b in zip(d, d[1:]):
        assert (b == 0) if a == 0 else (b % a == 0)


@given(int_matrices())
def test_snf_agrees_with_minor_gcd_oracle(m):
    d = smith_normal_form(m).diagonal
    prod = 1
    for l in range(1, len(d) + 1):
        prod *= d[l - 1]
        assert determinant_divisors_by_minors(m, l) == prod
        assert determinant_divisors(m, l) == prod


@given(int_matrices(max_dim=4))
def test_snf_matches_sympy(m):
    theirs = _sym(m)
    s = sympy_snf(theirs, domain=sympy.ZZ)
    assert sorted(abs(int(s[i, i])) for i in range(min(s.shape))) == sorted(smith_normal_form(m).diagonal)


def test_snf_known_example():
    assert smith_normal_form(Matrix([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])).diagonal == (2, 6, 12)


@given(int_matrices(max_dim=4))
def test_integer_kernel_is_a_basis_of_the_kernel(m):
    ker = integer_kernel(m)
    assert len(ker) == m.ncols - rank(m)
    for v in ker:
        assert all(x == 0 for x in m.apply(v))
    if ker:
        assert saturation(ker, m.ncols) == hermite_normal_form(ker, m.ncols)


def test_saturation_and_index():
    sat = saturation([[2, 0], [0, 2]], 2)
    assert sat == Matrix.identity(2)
    assert lattice_index([[2, 0], [0, 3]], sat) == 6
    assert lattice_index([[2, 4]], saturation([[2, 4]], 2)) == 2


def test_hermite_normal_form_is_row_echelon():
    h = hermite_normal_form([[4, 6], [2, 2]], 2)
    assert h == Matrix([[2, 0], [0, 2]])


def test_listed_determinants():
    assert det(Matrix([[2, 1], [1, 1]])) == 1
    assert det(Matrix.identity(3)) == 1
    assert det(Matrix([[2, 4], [6, 8]])) == -8
    with pytest.raises(ValueError):
        det(Matrix([[1, 2, 3]]))


def test_listed_char_polys():
    assert char_poly(Matrix([[2, 1], [1, 1]])) == Poly.from_highest([1, -3, 1])
    assert char_poly(Matrix([[5]])) == Poly.from_highest([1, -5])


def test_listed_integer_like_and_eigenvalue_one():
    assert is_integer_like(Matrix([[1, 0], [0, -1]]))
    assert has_eigenvalue_one(Matrix.identity(3))
    assert not has_eigenvalue_one(Matrix([[1, 1], [1, 0]]))


def test_listed_smith_forms_and_divisors():
    assert smith_normal_form(Matrix([[2, 4], [6, 8]])).S == Matrix.diag([2, 4])
    assert smith_normal_form(Matrix.identity(3)).S == Matrix.identity(3)
    assert smith_normal_form(Matrix.zeros(2, 3)).S == Matrix.zeros(2, 3)
    assert [determinant_divisors(Matrix.diag([2, 6]), l) for l in (1, 2)] == [2, 12]
    assert [determinant_divisors(Matrix([[2, 4], [6, 8]]), l) for l in (1, 2)] == [2, 8]
    assert all(determinant_divisors(Matrix.identity(4), l) == 1 for l in range(1, 5))
    with pytest.raises(ValueError):
        determinant_divisors(Matrix.identity(2), 3)
