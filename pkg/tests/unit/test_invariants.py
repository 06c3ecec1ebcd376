"""Tests for invariants, covariant forms and levels."""

from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from sympy import ImmutableMatrix, Matrix

from genusone.errors import (
    ArgumentError,
    InvariantViolationError,
    ModelIsSingularError,
)
from genusone.invariants import (
    InvariantTriple,
    a_invariants,
    binary_quartic_IJ,
    discriminant,
    doubling,
    hessian,
    invariants,
    jacobian_weierstrass,
    laska_kraus,
    level,
    levels,
    minimal_weierstrass,
    pencil_determinant,
    pf_rd,
    require_nonsingular,
)
from genusone.invariants.weierstrass import local_scaling_exponent
from genusone.models import (
    BinaryQuarticModel,
    CubicModel,
    CubicTransformation,
    QuadricPairModel,
    QuadricTransformation,
    QuarticTransformation,
    WeierstrassModel,
    WeierstrassTransformation,
)

small = st.integers(-5, 5)
DELTA_E = -(2**4) * 3**5 * 11**2 * 37**2


def _realisable(c4: int, c6: int) -> bool:
    """True if some integral Weierstrass model has invariants (c4, c6)."""
    for a1 in (0, 1):
        for a2 in (-1, 0, 1):
            for a3 in (0, 1):
                b2 = a1 * a1 + 4 * a2
                b4, r4 = divmod(b2 * b2 - c4, 24)
                b6, r6 = divmod(-c6 - b2**3 + 36 * b2 * b4, 216)
                if r4 or r6:
                    continue
                if (b4 - a1 * a3) % 2 == 0 and (b6 - a3 * a3) % 4 == 0:
                    return True
    return False


class TestInvariantTriple:
    """Tests for the (c4, c6, Δ) container."""

    def test_syzygy_enforced(self) -> None:
        """Test an inconsistent triple raises."""
        with pytest.raises(InvariantViolationError):
            InvariantTriple(Fraction(1), Fraction(1), Fraction(1))

    def test_from_c4_c6(self) -> None:
        """Test Δ is derived from c4 and c6."""
        triple = InvariantTriple.from_c4_c6(0, -864)
        assert triple.discriminant == -432

    def test_scaled(self) -> None:
        """Test weights 4, 6 and 12."""
        triple = InvariantTriple.from_c4_c6(16, 8).scaled(2)
        assert (triple.c4, triple.c6) == (16 * 2**4, 8 * 2**6)


class TestInvariants:
    """Tests for invariants of models of each degree."""

    def test_weierstrass(self) -> None:
        """Test y^2 = x^3 + 1."""
        inv = invariants(WeierstrassModel(0, 0, 0, 0, 1))
        assert (inv.c4, inv.c6, inv.discriminant) == (0, -864, -432)

    def test_quartic(self) -> None:
        """Test y^2 = x^4 + z^4."""
        inv = invariants(BinaryQuarticModel.from_quartic((1, 0, 0, 0, 1)))
        assert (inv.c4, inv.c6, inv.discriminant) == (192, 0, 4096)

    def test_binary_quartic_ij(self) -> None:
        """Test I and J of x^4 + z^4."""
        assert binary_quartic_IJ((1, 0, 0, 0, 1)) == (12, 0)

    def test_fermat_cubic(self, hesse: CubicModel) -> None:
        """Test x^3 + y^3 + z^3 has the invariants of 27a."""
        inv = invariants(hesse)
        assert (inv.c4, inv.c6, inv.discriminant) == (0, 5832, -(3**9))

    def test_hessian(self, hesse: CubicModel) -> None:
        """Test H(x^3 + y^3 + z^3) = 216 xyz."""
        assert hessian(hesse).coefficients == (0,) * 9 + (216,)

    def test_f1_discriminant(self, f1: CubicModel) -> None:
        """Test Δ(F1) = 3^12 503^12 Δ_E."""
        delta_e = 2**39 * 3 * 5**9 * 7**3 * 503
        assert discriminant(f1) == 3**12 * 503**12 * delta_e

    def test_pencil_determinant(self, minimal_pair: QuadricPairModel) -> None:
        """Test det(Ax + Bz) of the minimal pair."""
        assert pencil_determinant(minimal_pair) == tuple(
            4 * c for c in (-9, 13, -18, 0, 3)
        )

    def test_quadric_pair_invariants(self, minimal_pair: QuadricPairModel) -> None:
        """Test the minimal pair has the invariants of y^2 = x^3 - 1221."""
        inv = invariants(minimal_pair)
        assert (inv.c4, inv.c6) == (0, 1054944)
        assert inv.discriminant == DELTA_E

    def test_model_d(self, pair_7823: QuadricPairModel) -> None:
        """Test the 7823 quadrics have minimal invariants."""
        inv = invariants(pair_7823)
        assert (inv.c4, inv.c6) == (0, -864 * 7823)
        assert inv.discriminant == -432 * 7823**2

    def test_pf_rd(self) -> None:
        """Test det of second partials = pf^2 + 4 rd."""
        q = (1, 1, 0, 0, 1, 0, 0, 1, 1, 1)
        pf, rd = pf_rd(q)
        m = QuadricPairModel(q, q).matrices()[0]
        assert pf**2 + 4 * rd == Fraction(int(m.det()))

    def test_singular_model(self) -> None:
        """Test the zero cubic is singular."""
        zero = CubicModel.from_coefficients([0] * 10)
        assert invariants(zero).is_singular()
        with pytest.raises(ModelIsSingularError) as exc:
            require_nonsingular(zero)
        assert exc.value.exit_code == 3
        with pytest.raises(ModelIsSingularError):
            jacobian_weierstrass(zero)

    def test_a_invariants_match(self, f4: CubicModel) -> None:
        """Test the a-invariants carry the model's c4 and c6."""
        a = a_invariants(f4)
        inv = invariants(f4)
        assert (a.c4, a.c6) == (inv.c4, inv.c6)
        assert invariants(jacobian_weierstrass(f4)) == inv

    @given(st.lists(small, min_size=10, max_size=10))
    @settings(max_examples=1000, deadline=None)
    def test_cubic_invariants_integral(self, coeffs: list[int]) -> None:
        """Test integral cubics have integral invariants."""
        inv = invariants(CubicModel.from_coefficients(coeffs))
        assert inv.c4.denominator == inv.c6.denominator == 1
        assert inv.discriminant.denominator == 1

    @given(st.lists(small, min_size=8, max_size=8))
    @settings(max_examples=1000, deadline=None)
    def test_quartic_invariants_integral(self, coeffs: list[int]) -> None:
        """Test integral generalised binary quartics have integral invariants."""
        inv = invariants(BinaryQuarticModel.from_coefficients(coeffs))
        assert inv.c4.denominator == inv.c6.denominator == 1
        assert inv.discriminant.denominator == 1

    @given(st.lists(small, min_size=5, max_size=5))
    @settings(max_examples=1000, deadline=None)
    def test_weierstrass_invariants_integral(self, coeffs: list[int]) -> None:
        """Test integral Weierstrass models have integral invariants."""
        inv = invariants(WeierstrassModel.from_coefficients(coeffs))
        assert inv.c4.denominator == inv.c6.denominator == 1
        assert inv.discriminant.denominator == 1

    @given(st.lists(small, min_size=20, max_size=20))
    @settings(max_examples=1000, deadline=None)
    def test_quadric_invariants_integral(self, coeffs: list[int]) -> None:
        """Test integral quadric pairs have integral invariants."""
        inv = invariants(QuadricPairModel.from_coefficients(coeffs))
        assert inv.c4.denominator == inv.c6.denominator == 1
        assert inv.discriminant.denominator == 1

    @given(st.lists(small, min_size=20, max_size=20))
    @settings(max_examples=500, deadline=None)
    def test_doubling_preserves_invariants(self, coeffs: list[int]) -> None:
        """Test the doubled quartic has the invariants of the pair."""
        pair = QuadricPairModel.from_coefficients(coeffs)
        doubled = doubling(pair)
        assert doubled.quartic() == pencil_determinant(pair)
        assert invariants(doubled) == invariants(pair)


class TestCovariance:
    """Tests for the weights of the invariants."""

    @given(
        st.lists(small, min_size=5, max_size=5),
        st.sampled_from([-3, -2, -1, 1, 2, 3]),
        st.lists(small, min_size=3, max_size=3),
    )
    @settings(max_examples=200, deadline=None)
    def test_weierstrass_weight(
        self, coeffs: list[int], u: int, rst: list[int]
    ) -> None:
        """Test the weight law for Weierstrass changes of variables."""
        w = WeierstrassModel.from_coefficients(coeffs)
        g = WeierstrassTransformation(u, *rst)
        assert invariants(g.apply(w)) == invariants(w).scaled(g.det)

    @given(
        st.lists(small, min_size=10, max_size=10),
        st.lists(small, min_size=9, max_size=9),
        st.integers(1, 3),
    )
    @settings(max_examples=200, deadline=None)
    def test_cubic_weight(self, coeffs: list[int], m: list[int], mu: int) -> None:
        """Test invariants(g F) = det(g)^k invariants(F)."""
        assume(Matrix(3, 3, m).det() != 0)
        f = CubicModel.from_coefficients(coeffs)
        g = CubicTransformation(mu, ImmutableMatrix(3, 3, m))
        assert invariants(g.apply(f)) == invariants(f).scaled(g.det)

    @given(
        st.lists(small, min_size=8, max_size=8),
        st.lists(small, min_size=4, max_size=4),
        st.lists(small, min_size=3, max_size=3),
    )
    @settings(max_examples=200, deadline=None)
    def test_quartic_weight(
        self, coeffs: list[int], m: list[int], r: list[int]
    ) -> None:
        """Test the weight law for generalised binary quartics."""
        model = BinaryQuarticModel.from_coefficients(coeffs)
        assume(Matrix(2, 2, m).det() != 0)
        g = QuarticTransformation(2, tuple(r), ImmutableMatrix(2, 2, m))
        assert invariants(g.apply(model)) == invariants(model).scaled(g.det)

    @given(
        st.lists(small, min_size=20, max_size=20),
        st.lists(small, min_size=16, max_size=16),
    )
    @settings(max_examples=200, deadline=None)
    def test_quadric_weight(self, coeffs: list[int], n: list[int]) -> None:
        """Test the weight law for quadric pairs."""
        pair = QuadricPairModel.from_coefficients(coeffs)
        assume(Matrix(4, 4, n).det() != 0)
        pencil = ImmutableMatrix([[1, 2], [1, -1]])
        g = QuadricTransformation(pencil, ImmutableMatrix(4, 4, n))
        assert invariants(g.apply(pair)) == invariants(pair).scaled(g.det)


class TestLevels:
    """Tests for minimal discriminants and levels."""

    def test_laska_kraus_scales_by_two(self) -> None:
        """Test y^2 = x^3 + 64 is not minimal at 2."""
        u, c4, c6, _ = laska_kraus(0, -864 * 64)
        assert (u, c4, c6) == (2, 0, -864)

    def test_laska_kraus_minimal(self) -> None:
        """Test y^2 = x^3 + 7823 is minimal."""
        u, _, _, delta = laska_kraus(0, -864 * 7823)
        assert u == 1
        assert delta == -432 * 7823**2

    def test_scaling_keeps_discriminant_integral(self, hesse: CubicModel) -> None:
        """Test the Fermat cubic is not rescaled at 3 although 3^6 divides c6."""
        assert local_scaling_exponent(Fraction(0), Fraction(5832), 3) == 0
        assert laska_kraus(0, 5832) == (1, 0, 5832, -19683)
        report = level(hesse, 3)
        assert (report.level, report.v_delta_min) == (0, 9)
        assert levels(hesse) == []

    @given(
        st.lists(small, min_size=5, max_size=5),
        st.sampled_from([1, 2, 3, 6]),
    )
    @settings(max_examples=200, deadline=None)
    def test_laska_kraus_against_search(self, coeffs: list[int], d: int) -> None:
        """Test minimality against a search for integral a-invariants."""
        inv = invariants(WeierstrassModel.from_coefficients(coeffs))
        assume(not inv.is_singular())
        c4, c6 = int(inv.c4) * d**4, int(inv.c6) * d**6
        assert _realisable(c4, c6)
        u, c4_min, c6_min, _ = laska_kraus(c4, c6)
        assert _realisable(c4_min, c6_min)
        assert u % d == 0
        for p in (2, 3, 5, 7):
            if c4_min % p**4 == 0 and c6_min % p**6 == 0:
                assert not _realisable(c4_min // p**4, c6_min // p**6)

    def test_minimal_weierstrass(self) -> None:
        """Test the reduced model with invariants (0, -864)."""
        assert minimal_weierstrass(0, -864) == WeierstrassModel(0, 0, 0, 0, 1)

    def test_f1_levels(self, f1: CubicModel) -> None:
        """Test F1 has level 1 at 3 and 503 only."""
        reports = levels(f1)
        assert [(r.p, r.level) for r in reports] == [(3, 1), (503, 1)]
        assert level(f1, 2).level == 0

    def test_skoro_levels(self, skoro: QuadricPairModel) -> None:
        """Test the pair has level 1 at 2 and level 4 at 3."""
        assert {r.p: r.level for r in levels(skoro)} == {2: 1, 3: 4}

    def test_minimal_models_have_no_levels(
        self,
        f4: CubicModel,
        minimal_pair: QuadricPairModel,
        pair_7823: QuadricPairModel,
    ) -> None:
        """Test minimal models report no primes."""
        assert levels(f4) == []
        assert levels(minimal_pair) == []
        assert levels(pair_7823) == []

    def test_critical_levels(
        self,
        critical_quartic: BinaryQuarticModel,
        critical_cubic: CubicModel,
        critical_pair: QuadricPairModel,
    ) -> None:
        """Test the critical examples have level 2."""
        assert level(critical_quartic, 2).level == 2
        assert level(critical_cubic, 3).level == 2
        assert level(critical_pair, 2).level == 2

    def test_level_needs_integral_model(self) -> None:
        """Test a model with a denominator at p is rejected."""
        coeffs = [Fraction(1, 3), 1, 1, 0, 0, 0, 0, 0, 0, 0]
        model = CubicModel.from_coefficients(coeffs)
        with pytest.raises(ArgumentError):
            level(model, 3)
