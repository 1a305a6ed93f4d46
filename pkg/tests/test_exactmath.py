"""Exact linear algebra and polynomial machinery."""

import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from tensordeg.exactmath import (
    DimensionError,
    Matrix,
    NEGATIVE_DEFINITE,
    NEITHER,
    POSITIVE_DEFINITE,
    UniPoly,
    basis_vector,
    cauchy_root_bound,
    definiteness,
    det_exact,
    dot,
    gcd_poly,
    isolate_real_root,
    kernel_basis,
    normalize_primitive,
    rank_exact,
    rat,
    solve_linear,
    square_free_part,
    sturm_chain,
    sturm_root_count,
    symmetric_diagonalize,
    vec_is_zero,
)


def cofactor_det(m: Matrix) -> F:
    """Independent oracle: Laplace expansion along the first row."""
    n = m.rows
    if n == 0:
        return F(1)
    if n == 1:
        return m.at(0, 0)
    total = F(0)
    for j in range(n):
        if m.at(0, j) == 0:
            continue
        sub = Matrix.from_rows([[m.at(i, c) for c in range(n) if c != j]
                                for i in range(1, n)])
        total += (-1) ** j * m.at(0, j) * cofactor_det(sub)
    return total


def random_matrix(rng, rows, cols, lo=-2, hi=2) -> Matrix:
    return Matrix.from_rows([[rng.randint(lo, hi) for _ in range(cols)]
                             for _ in range(rows)])


class TestDet:
    def test_identity(self):
        assert det_exact(Matrix.identity(2)) == 1

    def test_hand_2x2(self):
        assert det_exact(Matrix.from_rows([[1, 2], [3, 4]])) == -2

    def test_repeated_row(self):
        m = Matrix.from_rows([[1, 2, 3], [4, 5, 6], [1, 2, 3]])
        assert det_exact(m) == 0

    def test_non_square_raises(self):
        with pytest.raises(DimensionError):
            det_exact(Matrix.zero(2, 3))

    def test_rational_entries(self):
        m = Matrix.from_rows([[F(1, 2), F(1, 3)], [F(1, 5), F(1, 7)]])
        assert det_exact(m) == F(1, 2) * F(1, 7) - F(1, 3) * F(1, 5)

    def test_against_cofactor_expansion_sampled(self):
        # sizes <= 4, entries in {-2..2}, >= 1000 samples
        rng = random.Random(101)
        for _ in range(1000):
            n = rng.randint(1, 4)
            m = random_matrix(rng, n, n)
            assert det_exact(m) == cofactor_det(m)

    def test_multiplicativity_sampled(self):
        rng = random.Random(7)
        for _ in range(100):
            a = random_matrix(rng, 3, 3)
            b = random_matrix(rng, 3, 3)
            assert det_exact(a.matmul(b)) == det_exact(a) * det_exact(b)


class TestRankKernel:
    def test_zero_matrix(self):
        assert rank_exact(Matrix.zero(3, 3)) == 0
        assert len(kernel_basis(Matrix.zero(3, 3))) == 3

    def test_outer_product_rank_one(self):
        u, v = (1, -2, 3), (2, 5, -1)
        m = Matrix.from_rows([[a * b for b in v] for a in u])
        assert rank_exact(m) == 1

    def test_identity(self):
        assert rank_exact(Matrix.identity(2)) == 2
        assert kernel_basis(Matrix.identity(4)) == []

    def test_hand_kernel(self):
        basis = kernel_basis(Matrix.from_rows([[1, 1], [2, 2]]))
        assert len(basis) == 1
        (v,) = basis
        assert v[0] * 1 + v[1] * (-1) != 0 or v == (F(-1), F(1))
        assert v[0] + v[1] == 0  # proportional to (1, -1)

    def test_kernel_vectors_annihilate(self):
        rng = random.Random(3)
        for _ in range(200):
            m = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
            for v in kernel_basis(m):
                assert vec_is_zero(m.matvec(v))
                assert not vec_is_zero(v)

    def test_rank_kernel_dimension_law(self):
        rng = random.Random(17)
        for _ in range(300):
            m = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
            r = rank_exact(m)
            assert r == m.rows - len(kernel_basis(m.transpose()))
            assert r == m.cols - len(kernel_basis(m))

    def test_solve_linear(self):
        m = Matrix.from_rows([[2, 1], [1, 3]])
        x = solve_linear(m, (F(5), F(10)))
        assert m.matvec(x) == (F(5), F(10))
        assert solve_linear(Matrix.from_rows([[1, 1], [1, 1]]), (F(0), F(1))) is None


def descartes_sign_counts(p: UniPoly) -> tuple[int, int, int]:
    """Independent eigen-sign oracle: positive/negative/zero root counts of a
    polynomial with all-real roots via Descartes' rule (exact in that case)."""
    coeffs = list(p.coefficients)
    zeros = 0
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
        zeros += 1
    signs = [1 if c > 0 else -1 for c in coeffs if c != 0]
    pos = sum(1 for a, b in zip(signs, signs[1:]) if a != b)
    mirrored = [c * (-1) ** i for i, c in enumerate(coeffs)]
    msigns = [1 if c > 0 else -1 for c in mirrored if c != 0]
    neg = sum(1 for a, b in zip(msigns, msigns[1:]) if a != b)
    return pos, neg, zeros


def char_poly(m: Matrix) -> UniPoly:
    """Characteristic polynomial det(xI - m) by Lagrange interpolation on
    exact determinant evaluations (independent of the polynomial division
    machinery under test)."""
    n = m.rows
    points = [F(k) for k in range(n + 1)]
    values = []
    for x in points:
        shifted = Matrix.from_rows([[ (x if i == j else F(0)) - m.at(i, j)
                                     for j in range(n)] for i in range(n)])
        values.append(det_exact(shifted))
    poly = UniPoly.zero()
    for i, xi in enumerate(points):
        li = UniPoly.of(1)
        denom = F(1)
        for j, xj in enumerate(points):
            if i == j:
                continue
            li = li * UniPoly.of(-xj, 1)
            denom *= (xi - xj)
        poly = poly + li.scale(values[i] / denom)
    return poly


class TestDefiniteness:
    def test_identity_pd(self):
        assert definiteness(Matrix.identity(3)) == POSITIVE_DEFINITE

    def test_indefinite(self):
        assert definiteness(Matrix.from_rows([[1, 0], [0, -1]])) == NEITHER

    def test_singular(self):
        assert definiteness(Matrix.from_rows([[1, 0], [0, 0]])) == NEITHER

    def test_negative_definite(self):
        assert definiteness(Matrix.from_rows([[-2, 1], [1, -3]])) == NEGATIVE_DEFINITE

    def test_non_symmetric_raises(self):
        with pytest.raises(DimensionError):
            definiteness(Matrix.from_rows([[1, 2], [3, 4]]))

    def test_against_eigen_sign_oracle(self):
        # all symmetric 3x3 with entries in {-2..2} is 5^6 matrices; sample
        # densely instead, plus the full 2x2 family
        rng = random.Random(23)
        cases = []
        vals = [-2, -1, 0, 1, 2]
        for a in vals:
            for b in vals:
                for c in vals:
                    cases.append(Matrix.from_rows([[a, b], [b, c]]))
        for _ in range(400):
            a, b, c, d, e, f = (rng.randint(-2, 2) for _ in range(6))
            cases.append(Matrix.from_rows([[a, b, c], [b, d, e], [c, e, f]]))
        for q in cases:
            pos, neg, zeros = descartes_sign_counts(char_poly(q))
            n = q.rows
            expected = (POSITIVE_DEFINITE if pos == n
                        else NEGATIVE_DEFINITE if neg == n else NEITHER)
            assert definiteness(q) == expected, q.to_rows()

    def test_diagonalize_congruence(self):
        rng = random.Random(5)
        for _ in range(150):
            n = rng.randint(1, 4)
            a = random_matrix(rng, n, n)
            q = a.add(a.transpose())
            vecs, vals = symmetric_diagonalize(q)
            assert len(vecs) == n
            for i, v in enumerate(vecs):
                assert dot(v, q.matvec(v)) == vals[i]
                for j in range(i):
                    assert dot(v, q.matvec(vecs[j])) == 0


class TestUniPoly:
    def test_normalization_strips_leading_zeros(self):
        assert UniPoly.of(1, 2, 0, 0).coefficients == (F(1), F(2))
        assert UniPoly.of(0, 0).is_zero

    def test_divmod_roundtrip(self):
        rng = random.Random(9)
        for _ in range(200):
            a = UniPoly(tuple(F(rng.randint(-4, 4)) for _ in range(rng.randint(1, 6))))
            b = UniPoly(tuple(F(rng.randint(-4, 4)) for _ in range(rng.randint(1, 4))))
            if b.is_zero:
                continue
            q, r = a.divmod(b)
            assert q * b + r == a
            assert r.is_zero or r.degree < b.degree

    def test_evaluate_horner(self):
        p = UniPoly.of(1, -3, 2)  # 2x^2 - 3x + 1
        assert p.evaluate(F(1)) == 0
        assert p.evaluate(F(1, 2)) == 0
        assert p.evaluate(2) == 3


class TestGcd:
    def test_common_factor(self):
        g = gcd_poly(UniPoly.of(-1, 0, 1), UniPoly.of(-1, 1))
        assert g.coefficients == (F(-1), F(1))  # monic x - 1

    def test_coprime(self):
        g = gcd_poly(UniPoly.of(0, 1), UniPoly.of(1, 1))
        assert g.degree == 0 and g.leading == 1

    def test_gcd_with_zero(self):
        p = UniPoly.of(2, 4)
        g = gcd_poly(p, UniPoly.zero())
        assert g == p.monic()

    def test_both_zero_raises(self):
        with pytest.raises(ValueError):
            gcd_poly(UniPoly.zero(), UniPoly.zero())

    def test_divides_both(self):
        rng = random.Random(31)
        for _ in range(100):
            common = UniPoly(tuple(F(rng.randint(-3, 3)) for _ in range(rng.randint(1, 3))))
            a = common * UniPoly(tuple(F(rng.randint(-3, 3)) for _ in range(rng.randint(1, 3))))
            b = common * UniPoly(tuple(F(rng.randint(-3, 3)) for _ in range(rng.randint(1, 3))))
            if a.is_zero and b.is_zero:
                continue
            g = gcd_poly(a, b)
            for p in (a, b):
                if not p.is_zero:
                    _, r = p.divmod(g)
                    assert r.is_zero


class TestSturm:
    def test_sqrt2(self):
        p = UniPoly.of(-2, 0, 1)
        assert sturm_root_count(p) == 2

    def test_no_real_roots(self):
        assert sturm_root_count(UniPoly.of(1, 0, 1)) == 0

    def test_half_interval(self):
        p = UniPoly.of(-2, 0, 1)
        assert sturm_root_count(p, F(0), F(2)) == 1

    def test_zero_poly_raises(self):
        with pytest.raises(ValueError):
            sturm_root_count(UniPoly.zero())

    def test_interval_is_half_open_right(self):
        p = UniPoly.of(0, 1)  # root at 0
        assert sturm_root_count(p, F(-1), F(0)) == 1
        assert sturm_root_count(p, F(0), F(1)) == 0

    def test_chain_shape(self):
        p = UniPoly.of(-2, 0, 1)
        chain = sturm_chain(p)
        assert chain.polys[0] == p
        assert chain.polys[1] == p.derivative()

    def test_products_of_linear_factors(self):
        rng = random.Random(13)
        for _ in range(200):
            roots = [F(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(rng.randint(1, 5))]
            p = UniPoly.of(1)
            for r in roots:
                p = p * UniPoly.of(-r, 1)
            lo = F(rng.randint(-9, 0))
            hi = F(rng.randint(1, 9))
            expected = len({r for r in roots if lo < r <= hi})
            assert sturm_root_count(p, lo, hi) == expected
            assert sturm_root_count(p) == len(set(roots))

    def test_repeated_roots_counted_once(self):
        p = UniPoly.of(0, 0, 1)  # x^2
        assert sturm_root_count(p) == 1

    def test_isolate_bracket(self):
        p = UniPoly.of(-2, 0, 1)
        kind, *data = isolate_real_root(p)
        if kind == "bracket":
            lo, hi = data
            assert p.evaluate(lo) * p.evaluate(hi) < 0
        else:
            assert p.evaluate(data[0]) == 0

    def test_isolate_rational(self):
        p = UniPoly.of(-6, 1, 1)  # (x+3)(x-2)
        kind, root = isolate_real_root(p)
        assert kind == "root" and p.evaluate(root) == 0

    def test_isolate_none(self):
        assert isolate_real_root(UniPoly.of(1, 0, 1)) is None

    def test_square_free_part(self):
        p = UniPoly.of(0, 0, 1) * UniPoly.of(-1, 1)
        sf = square_free_part(p)
        assert sturm_root_count(sf) == 2
        assert gcd_poly(sf, sf.derivative()).degree == 0

    def test_cauchy_bound(self):
        p = UniPoly.of(-2, 0, 1)
        b = cauchy_root_bound(p)
        assert sturm_root_count(p, -b, b) == 2


@st.composite
def small_fractions(draw):
    num = draw(st.integers(min_value=-20, max_value=20))
    den = draw(st.integers(min_value=1, max_value=12))
    return F(num, den)


class TestVectorHelpers:
    @given(st.lists(small_fractions(), min_size=1, max_size=6))
    @settings(max_examples=150, deadline=None)
    def test_normalize_primitive(self, coords):
        v = tuple(coords)
        if vec_is_zero(v):
            with pytest.raises(ValueError):
                normalize_primitive(v)
            return
        p = normalize_primitive(v)
        assert all(c.denominator == 1 for c in p)
        lead = next(c for c in p if c != 0)
        assert lead > 0
        scale = next(c / d for c, d in zip(v, p) if d != 0)
        assert scale != 0
        assert all(c == scale * d for c, d in zip(v, p))

    def test_basis_vector(self):
        assert basis_vector(3, 1) == (F(0), F(1), F(0))
        with pytest.raises(IndexError):
            basis_vector(2, 2)

    def test_rat_rejects_floats(self):
        with pytest.raises(TypeError):
            rat(0.5)
