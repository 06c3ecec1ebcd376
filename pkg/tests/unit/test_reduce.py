"""Tests for reduction covariants and model reduction."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st
from sympy import ImmutableMatrix

from genusone.arith import is_lll_reduced
from genusone.arith.lattice import scale_gram
from genusone.errors import ArgumentError
from genusone.invariants import binary_quartic_IJ, invariants
from genusone.models import (
    BinaryQuarticModel,
    CubicModel,
    CubicTransformation,
    QuadricPairModel,
    QuadricTransformation,
    QuarticTransformation,
    WeierstrassModel,
)
from genusone.reduce import (
    covariant2,
    covariant2_roots,
    covariant2_torsion,
    covariant3,
    covariant4,
    normalise_cross_terms,
    normalise_gram,
    reduce_model,
    torsion_matrices2,
    torsion_matrices3,
)

F3_COVARIANT = np.array(
    [
        [176413988.185, -11560848.1174, 3471.84429193],
        [-11560848.1174, 757736.524016, -1499.92503970],
        [3471.84429193, -1499.92503970, 13237.5156939],
    ]
)

QUARTIC = (Fraction(-18), Fraction(116), Fraction(48), Fraction(-12), Fraction(30))

PAIR_COVARIANT = np.array(
    [
        [8857.72019, 5117.00780, -3885.97776, 5665.67630],
        [5117.00780, 3080.24124, -2279.16858, 3348.18401],
        [-3885.97776, -2279.16858, 1716.07038, -2498.36286],
        [5665.67630, 3348.18401, -2498.36286, 3706.96839],
    ]
)


def unimodular(n: int) -> st.SearchStrategy[np.ndarray]:
    """Products of elementary integer matrices of size n with small entries."""
    moves = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), st.integers(-1, 1))

    def build(steps: list[tuple[int, int, int]]) -> np.ndarray:
        m = np.eye(n, dtype=np.int64)
        for i, j, c in steps:
            if i != j:
                m[:, j] += c * m[:, i]
        return m

    return st.lists(moves, min_size=1, max_size=4).map(build)


def max_coefficient(model: BinaryQuarticModel | CubicModel | QuadricPairModel) -> int:
    return int(max(abs(c) for c in model.coefficients))


class TestCovariant2:
    """Tests for the binary quartic covariant."""

    @pytest.mark.parametrize("method", ["torsion", "roots"])
    def test_symmetric_quartic(self, method: str) -> None:
        """Test x^4 + z^4 has covariant proportional to the identity."""
        gram = covariant2((1, 0, 0, 0, 1), method)  # type: ignore[arg-type]
        assert np.allclose(gram, np.eye(2), atol=1e-9)

    @given(st.lists(st.integers(-6, 6), min_size=5, max_size=5))
    @settings(max_examples=100, deadline=None)
    def test_methods_agree(self, coeffs: list[int]) -> None:
        """Test the torsion and root constructions give the same form."""
        i, j = binary_quartic_IJ(coeffs)
        assume(4 * i**3 != j**2)
        torsion = covariant2_torsion(coeffs)
        assert np.allclose(torsion, covariant2_roots(coeffs), rtol=0, atol=1e-8)
        assert np.all(np.linalg.eigvalsh(torsion) > 0)

    @given(st.lists(st.integers(-6, 6), min_size=5, max_size=5))
    @settings(max_examples=50, deadline=None)
    def test_torsion_sum_vanishes(self, coeffs: list[int]) -> None:
        """Test sum over E[2] of (det M_T)^-1 M_T^t M_T is zero."""
        i, j = binary_quartic_IJ(coeffs)
        assume(4 * i**3 != j**2)
        terms = [np.eye(2, dtype=complex)] + [
            t.matrix.T @ t.matrix / t.det for t in torsion_matrices2(coeffs)
        ]
        scale = max(np.abs(term).max() for term in terms)
        assert np.abs(sum(terms)).max() <= 1e-6 * scale

    def test_selection_unique(self) -> None:
        """Test exactly one A_phi has positive determinant for four real roots."""
        matrices = torsion_matrices2((1, 0, -5, 0, 4))
        assert sum(1 for t in matrices if t.det.real > 0) == 1
        assert all(abs(t.det.imag) < 1e-12 for t in matrices)

    def test_vanishing_a_phi(self) -> None:
        """Test x^4 + 3x^2 z^2 - 2z^4, where A_phi is zero at phi = 6."""
        quartic = (1, 0, 3, 0, -2)
        matrices = torsion_matrices2(quartic)
        assert all(abs(t.det) > 1 for t in matrices)
        expected = np.diag([1 / np.sqrt(2), 1])
        for method in ("roots", "torsion"):
            gram = covariant2(quartic, method)  # type: ignore[arg-type]
            assert np.allclose(gram, expected, atol=1e-9)

    @pytest.mark.parametrize("method", ["torsion", "roots"])
    def test_mixed_quartic(self, method: str) -> None:
        """Test 2x^4 - x^3 z + 5x z^3 - 3z^4."""
        gram = covariant2((2, -1, 0, 5, -3), method)  # type: ignore[arg-type]
        expected = np.array([[0.880, -0.327], [-0.327, 1]])
        assert np.allclose(gram, expected, atol=1e-3)

    @pytest.mark.parametrize("method", ["torsion", "roots"])
    @pytest.mark.parametrize("quartic", [QUARTIC, (1, 0, 3, 0, -2), (1, 0, -5, 0, 4)])
    def test_covariance(self, method: str, quartic: tuple[int, ...]) -> None:
        """Test phi(F o W) is proportional to W^t phi(F) W."""
        for w in (np.array([[1, 0], [3, 1]]), np.array([[1, 1], [0, 1]])):
            g = QuarticTransformation(1, (0, 0, 0), ImmutableMatrix(w.T.tolist()))
            moved = g.apply_quartic(quartic)
            before = covariant2(quartic, method)  # type: ignore[arg-type]
            expected = normalise_gram(w.T @ before @ w)
            after = covariant2(moved, method)  # type: ignore[arg-type]
            assert np.allclose(after, expected, rtol=1e-6, atol=1e-9)

    def test_leading_zero(self) -> None:
        """Test a quartic with no x^4 term is shifted before root finding."""
        gram = covariant2_roots((0, 1, 0, 0, 1))
        assert np.all(np.linalg.eigvalsh(gram) > 0)

    def test_unknown_method(self) -> None:
        """Test an unknown method name raises."""
        with pytest.raises(ArgumentError):
            covariant2(QUARTIC, "bogus")  # type: ignore[arg-type]


class TestCovariant3:
    """Tests for the ternary cubic covariant."""

    def test_f3_matches_printed_covariant(self, f3: CubicModel) -> None:
        """Test the covariant of F3 against published values."""
        gram = covariant3(f3)
        assert np.allclose(gram, normalise_gram(F3_COVARIANT), rtol=1e-6, atol=1e-10)

    def test_hesse_is_scalar(self, hesse: CubicModel) -> None:
        """Test x^3 + y^3 + z^3 has covariant proportional to the identity."""
        assert np.allclose(covariant3(hesse), np.eye(3), atol=1e-8)

    def test_eight_torsion_matrices(self, f4: CubicModel) -> None:
        """Test the eight non-trivial 3-torsion points are found."""
        assert len(torsion_matrices3(f4)) == 8

    @given(st.lists(st.integers(-3, 3), min_size=10, max_size=10))
    @settings(max_examples=10, deadline=None)
    def test_opposite_points_invert(self, coeffs: list[int]) -> None:
        """Test M_T M_-T is a scalar matrix."""
        cubic = CubicModel.from_coefficients(coeffs)
        assume(not invariants(cubic).is_singular())
        matrices = torsion_matrices3(cubic)
        for plus, minus in zip(matrices[::2], matrices[1::2], strict=True):
            product = plus.matrix @ minus.matrix
            assert np.allclose(product / product[0, 0], np.eye(3), atol=1e-6)

    def test_hesse_matrices_are_monomial(self, hesse: CubicModel) -> None:
        """Test each M_T of x^3 + y^3 + z^3 has one unit entry per row."""
        for t in torsion_matrices3(hesse):
            for row in np.abs(t.matrix):
                nonzero = row[row > 1e-8]
                assert len(nonzero) == 1
                assert abs(nonzero[0] - 1) < 1e-8

    def test_large_coefficients(self, f1: CubicModel) -> None:
        """Test the torsion action is found for a cubic with six digit coefficients."""
        assert len(torsion_matrices3(f1)) == 8
        assert np.all(np.linalg.eigvalsh(covariant3(f1)) > 0)

    def test_covariance(self, f4: CubicModel) -> None:
        """Test covariance under a unimodular change of variables."""
        w = np.array([[1, 0, 0], [2, 1, 0], [0, -1, 1]])
        moved = CubicTransformation(1, ImmutableMatrix(w.T.tolist())).apply(f4)
        expected = normalise_gram(w.T @ covariant3(f4) @ w)
        assert np.allclose(covariant3(moved), expected, rtol=1e-6, atol=1e-10)

    def test_seed_independent(self, f4: CubicModel) -> None:
        """Test the covariant does not depend on the random seed."""
        assert np.allclose(covariant3(f4, seed=0), covariant3(f4, seed=7), rtol=1e-6)


class TestCovariant4:
    """Tests for the quadric intersection covariant."""

    def test_matches_printed_covariant(self, minimal_pair: QuadricPairModel) -> None:
        """Test the covariant of the minimal pair against published values."""
        assert np.allclose(
            covariant4(minimal_pair), normalise_gram(PAIR_COVARIANT), atol=1e-4
        )

    @given(unimodular(4))
    @settings(
        max_examples=10,
        deadline=None,
        suppress_health_check=[HealthCheck.function_scoped_fixture],
    )
    def test_covariance(self, minimal_pair: QuadricPairModel, w: np.ndarray) -> None:
        """Test phi(Q o W) is proportional to W^t phi(Q) W."""
        moved = QuadricTransformation(n=ImmutableMatrix(w.T.tolist())).apply(
            minimal_pair
        )
        expected = normalise_gram(w.T @ covariant4(minimal_pair) @ w)
        assert np.allclose(covariant4(moved), expected, rtol=1e-4, atol=1e-6)

    def test_positive_definite(self, minimal_pair: QuadricPairModel) -> None:
        """Test the covariant is a positive definite Gram matrix."""
        gram = covariant4(minimal_pair)
        assert gram.shape == (4, 4)
        assert np.allclose(gram, gram.T)
        assert np.all(np.linalg.eigvalsh(gram) > 0)


class TestCrossTerms:
    """Tests for the integer y-shift on generalised binary quartics."""

    def test_even_cross_term_removed(self) -> None:
        """Test y^2 + 2x^2 y = 0 shifts to y^2 = x^4."""
        model = BinaryQuarticModel((2, 0, 0), (0, 0, 0, 0, 0))
        shifted, g = normalise_cross_terms(model)
        assert shifted.p == (0, 0, 0)
        assert shifted.q == (1, 0, 0, 0, 0)
        assert g.r == (-1, 0, 0)

    def test_odd_cross_term_kept(self) -> None:
        """Test P = 3xz becomes xz."""
        model = BinaryQuarticModel((0, 3, 0), (1, 0, 0, 0, 1))
        shifted, g = normalise_cross_terms(model)
        assert g.r == (0, -1, 0)
        assert shifted.p == (0, 1, 0)
        assert shifted.quartic() == model.quartic()

    def test_non_integral_rejected(self) -> None:
        """Test the shift needs an integral model."""
        model = BinaryQuarticModel((Fraction(1, 2), 0, 0), (1, 0, 0, 0, 1))
        with pytest.raises(ArgumentError):
            normalise_cross_terms(model)


class TestReduceModel:
    """Tests for reduce_model."""

    def test_f3(self, f3: CubicModel) -> None:
        """Test F3 reduces to coefficients no larger than F4's."""
        result = reduce_model(f3)
        assert invariants(result.model) == invariants(f3)
        assert max_coefficient(result.model) <= 171
        assert result.transformation.apply(f3) == result.model
        assert is_lll_reduced(scale_gram(result.gram_after))

    def test_minimal_pair(self, minimal_pair: QuadricPairModel) -> None:
        """Test the minimal pair reduces to coefficients of size at most 2."""
        result = reduce_model(minimal_pair)
        assert max_coefficient(result.model) <= 2
        assert invariants(result.model) == invariants(minimal_pair)
        assert result.transformation.apply(minimal_pair) == result.model

    def test_quartic(self, quartic_7823: BinaryQuarticModel) -> None:
        """Test reduction keeps the invariants and normalises P."""
        result = reduce_model(quartic_7823)
        assert invariants(result.model) == invariants(quartic_7823)
        assert all(c in (0, 1) for c in result.model.p)  # type: ignore[union-attr]

    def test_rejects_non_integral(self) -> None:
        """Test reduction needs an integral model."""
        cubic = CubicModel.from_coefficients([Fraction(1, 2)] + [1] * 9)
        with pytest.raises(ArgumentError):
            reduce_model(cubic)

    def test_rejects_degree_one(self) -> None:
        """Test Weierstrass models are not reduced."""
        with pytest.raises(ArgumentError):
            reduce_model(WeierstrassModel(0, 0, 0, 0, 1))
