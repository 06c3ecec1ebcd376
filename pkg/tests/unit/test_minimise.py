"""Tests for local and global minimisation."""

from fractions import Fraction

import pytest

from genusone.errors import (
    ArgumentError,
    InvariantViolationError,
    ModelIsSingularError,
)
from genusone.invariants import discriminant, invariants, level, levels
from genusone.minimise import (
    CertificateKind,
    StepKind,
    flip_flop,
    is_critical,
    minimise_bq,
    minimise_global,
    minimise_local,
    minimise_qi,
    minimise_tc,
    normalise_sign,
    quadrics,
    scale_to_integral,
)
from genusone.minimise.gbq2 import gbq2_step, minimise_gbq2, repeated_root_form
from genusone.models import (
    BinaryQuarticModel,
    CubicModel,
    QuadricPairModel,
    WeierstrassModel,
    identity,
)
from genusone.models.transformations import scalar

DELTA_F1 = 2**39 * 3 * 5**9 * 7**3 * 503
DELTA_SKORO = -(2**4) * 3**5 * 11**2 * 37**2


class TestCritical:
    """Tests for the critical model patterns."""

    def test_critical_examples(
        self,
        critical_quartic: BinaryQuarticModel,
        critical_cubic: CubicModel,
        critical_pair: QuadricPairModel,
    ) -> None:
        """Test each critical example is recognised."""
        assert is_critical(critical_quartic, 2)
        assert is_critical(critical_cubic, 3)
        assert is_critical(critical_pair, 2)

    def test_minimal_models_are_not_critical(
        self, f4: CubicModel, minimal_pair: QuadricPairModel
    ) -> None:
        """Test level zero models fail the patterns."""
        assert not is_critical(f4, 3)
        assert not is_critical(minimal_pair, 2)
        assert not is_critical(minimal_pair, 3)

    def test_non_integral_is_not_critical(self) -> None:
        """Test a model with a denominator at p is never critical."""
        cubic = CubicModel.from_coefficients([Fraction(1, 3), 3, 9] + [0] * 6 + [18])
        assert not is_critical(cubic, 3)

    def test_flip_flop(self) -> None:
        """Test the flip-flop has determinant 1."""
        assert flip_flop(3).det == 1


class TestLocalMinimisation:
    """Tests for the per-prime minimisers."""

    def test_critical_models_keep_their_level(
        self,
        critical_quartic: BinaryQuarticModel,
        critical_cubic: CubicModel,
        critical_pair: QuadricPairModel,
    ) -> None:
        """Test minimisers stop at critical models without moving."""
        for model, p in (
            (critical_quartic, 2),
            (critical_cubic, 3),
            (critical_pair, 2),
        ):
            result = minimise_local(model, p)
            assert result.certificate.kind is CertificateKind.CRITICAL
            assert result.initial_level == result.final_level == 2
            assert result.model == model
            assert result.steps == []

    def test_scaled_cubic_divides(self, hesse: CubicModel) -> None:
        """Test 3(x^3 + y^3 + z^3) has level 1 and divides back."""
        scaled = scalar(3, 3).apply(hesse)
        result = minimise_tc(scaled, 3)
        assert result.initial_level == 1
        assert result.final_level == 0
        assert result.model == hesse
        assert [s.kind for s in result.steps] == [StepKind.DIVIDE]

    def test_scaled_quartic(self) -> None:
        """Test y^2 = 9(x^4 + z^4) has level 1 at 3."""
        result = minimise_bq((9, 0, 0, 0, 9), 3)
        assert result.initial_level == 1
        assert result.final_level == 0
        assert result.level_drop == 1
        assert discriminant(result.model) == 4096

    def test_bq_rejects_two(self) -> None:
        """Test binary quartics at 2 go through the generalised minimiser."""
        with pytest.raises(ArgumentError):
            minimise_bq((1, 0, 0, 0, 1), 2)

    def test_f1_at_three(self, f1: CubicModel) -> None:
        """Test the cubic drops from level 1 to 0 at 3."""
        result = minimise_tc(f1, 3)
        assert (result.initial_level, result.final_level) == (1, 0)
        assert result.transformation.apply(f1) == result.model
        assert result.model.is_integral()
        assert discriminant(result.model) == discriminant(f1) / 3**12
        assert level(result.model, 503).level == 1

    def test_skoro_at_three(self, skoro: QuadricPairModel) -> None:
        """Test the quadric pair drops from level 4 to 0 at 3."""
        result = minimise_qi(skoro, 3)
        assert (result.initial_level, result.final_level) == (4, 0)
        assert result.certificate.kind is CertificateKind.LEVEL_ZERO
        assert result.transformation.apply(skoro) == result.model
        assert result.model.is_p_integral(3)
        assert level(result.model, 2).level == 1

    def test_steps_record_levels(self, skoro: QuadricPairModel) -> None:
        """Test each step's level_before matches the previous level_after."""
        result = minimise_qi(skoro, 3)
        assert result.steps
        assert result.steps[0].level_before == 4
        for prev, step in zip(result.steps, result.steps[1:], strict=False):
            assert prev.level_after == step.level_before
        assert result.steps[-1].level_after == 0

    def test_round_cap_is_an_internal_error(
        self, skoro: QuadricPairModel, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        """Test running out of rounds raises instead of returning a model."""
        monkeypatch.setattr(quadrics, "CAP_FACTOR", 0)
        with pytest.raises(InvariantViolationError) as excinfo:
            minimise_qi(skoro, 3)
        assert excinfo.value.exit_code == 5

    def test_non_integral_rejected(self) -> None:
        """Test minimisers need p-integral input."""
        cubic = CubicModel.from_coefficients([Fraction(1, 3)] + [1] * 9)
        with pytest.raises(ArgumentError):
            minimise_tc(cubic, 3)

    def test_degree_one_rejected(self) -> None:
        """Test Weierstrass models have no local minimiser."""
        with pytest.raises(ArgumentError):
            minimise_local(WeierstrassModel(0, 0, 0, 0, 1), 2)


class TestGeneralisedQuarticAtTwo:
    """Tests for minimising generalised binary quartics at 2."""

    @pytest.mark.parametrize(
        ("p", "q"),
        [((2, 0, 0), (4, 0, 0, 0, 4)), ((0, 0, 0), (4, 0, 0, 4, 4))],
    )
    def test_divides_first(self, p: tuple[int, ...], q: tuple[int, ...]) -> None:
        """Test 2 | P and 4 | Q is removed by dividing by 2."""
        model = BinaryQuarticModel(p, q)
        result = minimise_gbq2(model)
        first = result.steps[0]
        assert first.kind is StepKind.DIVIDE
        assert first.level_after == first.level_before - 1
        assert result.final_level < result.initial_level
        assert result.transformation.apply(model) == result.model
        assert result.model.is_p_integral(2)

    def test_rejects_non_integral(self) -> None:
        """Test the model must be 2-integral."""
        with pytest.raises(ArgumentError):
            minimise_gbq2(BinaryQuarticModel((1, 0, 0), (Fraction(1, 2), 0, 0, 0, 1)))

    def test_form_is_p_when_p_is_a_unit(self) -> None:
        """Test the repeated root is looked for in P when 2 does not divide it."""
        model = BinaryQuarticModel((1, 0, 1), (2, 0, 0, 0, 2))
        assert repeated_root_form(model) == (1, 0, 1)

    def test_form_is_mixed_partial(self) -> None:
        """Test 2 | P with Q a unit gives the form (3b, 4c, 3d)."""
        model = BinaryQuarticModel((2, 0, 0), (1, 2, 3, 4, 5))
        assert repeated_root_form(model) == (6, 12, 12)

    def test_form_is_half_q(self) -> None:
        """Test 2 | P with v(Q) = 1 gives Q / 2."""
        model = BinaryQuarticModel((2, 0, 0), (0, 0, 2, 0, 2))
        assert repeated_root_form(model) == (0, 0, 1, 0, 1)

    def test_step_on_half_q(self) -> None:
        """Test the move at a double root of Q / 2 keeps the model 2-integral."""
        model = BinaryQuarticModel((2, 0, 0), (0, 0, 2, 0, 2))
        g = gbq2_step(model)
        assert g is not None
        moved = g.apply(model)
        assert moved.is_p_integral(2)
        assert discriminant(moved) == discriminant(model)


class TestScaling:
    """Tests for integral scaling and sign normalisation."""

    def test_cubic_scale(self) -> None:
        """Test degree 3 multiplies by the lcm of the denominators."""
        cubic = CubicModel.from_coefficients(
            [Fraction(1, 2), Fraction(1, 3)] + [1] * 8
        )
        g = scale_to_integral(cubic, 1000)
        assert g.det == 6
        assert g.apply(cubic).is_integral()

    def test_quartic_scale(self) -> None:
        """Test degree 2 weights P by 1 and Q by 2."""
        model = BinaryQuarticModel(
            (Fraction(1, 2), 0, 0), (Fraction(1, 4), 0, 0, 0, 1)
        )
        g = scale_to_integral(model, 1000)
        scaled = g.apply(model)
        assert scaled.p == (1, 0, 0)
        assert scaled.q == (1, 0, 0, 0, 4)

    def test_weierstrass_unsupported(self) -> None:
        """Test degree 1 has no integral scaling."""
        with pytest.raises(ArgumentError):
            scale_to_integral(WeierstrassModel(Fraction(1, 2), 0, 0, 0, 1), 1000)

    def test_normalise_sign(self, minimal_pair: QuadricPairModel) -> None:
        """Test negative leading coefficients are flipped."""
        g = normalise_sign(minimal_pair)
        assert g.apply(minimal_pair).q1[0] == 364
        cubic = CubicModel.from_coefficients([-1] + [0] * 9)
        assert normalise_sign(cubic).apply(cubic).coeffs[0] == 1
        positive = CubicModel.from_coefficients([1] + [0] * 9)
        assert normalise_sign(positive) == identity(3)


class TestGlobalMinimisation:
    """Tests for minimisation at every prime."""

    def test_minimal_cubic_is_untouched(self, f4: CubicModel) -> None:
        """Test a minimal model with positive leading term is a fixed point."""
        result = minimise_global(f4)
        assert result.model == f4
        assert result.local == []
        assert result.is_minimal

    def test_rational_input(self, f4: CubicModel) -> None:
        """Test a model with denominators is scaled before minimising."""
        halved = scalar(3, Fraction(1, 2)).apply(f4)
        result = minimise_global(halved)
        assert result.model == f4
        assert result.transformation.apply(halved) == f4

    def test_singular_rejected(self) -> None:
        """Test Δ = 0 raises."""
        with pytest.raises(ModelIsSingularError):
            minimise_global(CubicModel.from_coefficients([0] * 10))

    def test_degree_one_rejected(self) -> None:
        """Test Weierstrass models are not minimised here."""
        with pytest.raises(ArgumentError):
            minimise_global(WeierstrassModel(0, 0, 0, 0, 1))

    @pytest.mark.slow
    def test_f1(self, f1: CubicModel) -> None:
        """Test F1 minimises at 3 and 503 to discriminant Δ_E."""
        result = minimise_global(f1)
        assert [r.p for r in result.levels_before] == [3, 503]
        assert [r.prime for r in result.local] == [3, 503]
        assert result.is_minimal
        assert result.model.is_integral()
        assert discriminant(result.model) == DELTA_F1
        assert result.transformation.apply(f1) == result.model

    @pytest.mark.slow
    def test_skoro(self, skoro: QuadricPairModel) -> None:
        """Test the pair minimises at 3 then 2."""
        result = minimise_global(skoro)
        assert [r.prime for r in result.local] == [3, 2]
        assert result.is_minimal
        assert levels(result.model) == []
        assert discriminant(result.model) == DELTA_SKORO
        assert next(c for c in result.model.q1 if c) > 0

    @pytest.mark.slow
    def test_idempotent(self, skoro: QuadricPairModel) -> None:
        """Test minimising a minimised model changes nothing."""
        first = minimise_global(skoro)
        second = minimise_global(first.model)
        assert second.model == first.model
        assert second.local == []

    @pytest.mark.slow
    def test_quartic_7823(self, quartic_7823: BinaryQuarticModel) -> None:
        """Test the 2-covering of y^2 = x^3 + 7823 minimises to Δ_min."""
        result = minimise_global(quartic_7823)
        assert result.is_minimal
        inv = invariants(result.model)
        assert (inv.c4, inv.c6) == (0, -864 * 7823)
