"""Checks for the definitional oracles themselves.

The oracles are ground truth for everything else, so they get their own
direct scrutiny: hand-counted joint tables, textbook values of the component
information measures, the internal independence cross-check, and quadrature
against exact special values.
"""

import math

import pytest

from infoclosure import (
    CategoricalParam,
    DomainError,
    Hyperparameter,
    InternalConsistencyError,
    ResourceCapError,
    build_joint,
    ntic,
    one_step_ntic,
    one_step_pointwise_ntic,
    oracle_expected_log_predictive,
    oracle_kl_quadrature,
    oracle_mutual_information,
    oracle_ntic,
    oracle_pointwise_ntic,
    oracle_transfer_entropy,
    pointwise_ntic,
    symbol_entropy,
)

UNIFORM2 = CategoricalParam((0.5, 0.5))
XI_FLAT2 = Hyperparameter((1, 1))


class TestBuildJoint:
    def test_uniform_cube(self):
        joint = build_joint(UNIFORM2, XI_FLAT2, 3)
        assert len(joint) == 8
        assert all(p == 0.125 for p in joint.probs)

    def test_deterministic_process(self):
        joint = build_joint(CategoricalParam((1.0, 0.0)), XI_FLAT2, 5)
        assert len(joint) == 1
        assert joint.probs[0] == 1.0

    def test_three_symbols(self):
        joint = build_joint(
            CategoricalParam((0.2, 0.3, 0.5)), Hyperparameter((1, 1, 1)), 2
        )
        assert len(joint) == 9
        assert math.fsum(joint.probs.tolist()) == pytest.approx(1.0, abs=1e-12)

    def test_cap(self):
        with pytest.raises(ResourceCapError):
            build_joint(UNIFORM2, XI_FLAT2, 30, cap=1000)

    def test_needs_positive_depth(self):
        with pytest.raises(DomainError):
            build_joint(UNIFORM2, XI_FLAT2, 0)

    def test_entries_kernel_consistency(self):
        # Every entry's final state must be the previous state plus a one-hot
        # of the last symbol, and states derive from the start plus counts.
        xi0 = Hyperparameter((0.5, 2))
        joint = build_joint(CategoricalParam((0.3, 0.7)), xi0, 3)
        total = 0.0
        for (traj, xi_prev, xi_t), p in joint.entries():
            diff = [after - before for after, before in zip(xi_t, xi_prev)]
            expected = [0] * joint.k
            expected[traj[-1]] = 1
            assert diff == expected
            total += p
        assert total == pytest.approx(1.0, abs=1e-12)

    def test_prob_lookup(self):
        joint = build_joint(CategoricalParam((0.2, 0.8)), XI_FLAT2, 3)
        assert joint.prob((1, 1, 0)) == pytest.approx(0.8 * 0.8 * 0.2)
        with pytest.raises(DomainError):
            joint.prob((0, 1))


class TestOracleMutualInformation:
    def test_deterministic_is_zero(self):
        joint = build_joint(CategoricalParam((1.0, 0.0)), XI_FLAT2, 4)
        assert oracle_mutual_information(joint, "full_past") == pytest.approx(0.0)
        assert oracle_mutual_information(joint, "one_step") == pytest.approx(0.0)

    def test_single_step_reveals_symbol(self):
        joint = build_joint(UNIFORM2, XI_FLAT2, 1)
        assert oracle_mutual_information(joint, "full_past") == pytest.approx(math.log(2))

    def test_two_steps_full_past_is_count_entropy(self):
        joint = build_joint(UNIFORM2, XI_FLAT2, 2)
        assert oracle_mutual_information(joint, "full_past") == pytest.approx(
            1.5 * math.log(2), abs=1e-14
        )

    def test_unknown_mode(self):
        joint = build_joint(UNIFORM2, XI_FLAT2, 1)
        with pytest.raises(DomainError):
            oracle_mutual_information(joint, "weekly")


class TestOracleTransferEntropy:
    def test_deterministic_is_zero(self):
        joint = build_joint(CategoricalParam((1.0, 0.0)), XI_FLAT2, 4)
        assert oracle_transfer_entropy(joint) == pytest.approx(0.0)

    def test_uniform_equals_log2(self):
        for t in (1, 2, 4):
            joint = build_joint(UNIFORM2, XI_FLAT2, t)
            assert oracle_transfer_entropy(joint) == pytest.approx(math.log(2), abs=1e-12)

    def test_biased_equals_symbol_entropy(self):
        phi = CategoricalParam((0.25, 0.75))
        for t in (1, 3):
            joint = build_joint(phi, XI_FLAT2, t)
            assert oracle_transfer_entropy(joint) == pytest.approx(
                symbol_entropy(phi), abs=1e-12
            )


class TestOracleNtic:
    def test_t_one_is_zero(self):
        assert oracle_ntic(UNIFORM2, XI_FLAT2, 1, "full_past") == pytest.approx(0.0)

    def test_two_step_value(self):
        assert oracle_ntic(UNIFORM2, XI_FLAT2, 2, "full_past") == pytest.approx(
            0.5 * math.log(2), abs=1e-12
        )

    def test_one_step_matches_closed_form(self):
        phi = CategoricalParam((0.3, 0.7))
        assert oracle_ntic(phi, XI_FLAT2, 5, "one_step") == pytest.approx(
            one_step_ntic(phi, 5), abs=1e-10
        )

    def test_full_past_matches_closed_form(self):
        phi = CategoricalParam((0.2, 0.3, 0.5))
        xi0 = Hyperparameter((0.5, 2, 2))
        for t in (1, 2, 4, 6):
            assert oracle_ntic(phi, xi0, t, "full_past") == pytest.approx(
                ntic(phi, t).value, abs=1e-10
            )


class TestOraclePointwise:
    @pytest.mark.parametrize(
        "probs,xi0",
        [((0.5, 0.5), (1, 1)), ((0.2, 0.8), (0.5, 2)), ((0.2, 0.3, 0.5), (3, 3, 3))],
    )
    def test_full_past_matches_closed_form(self, probs, xi0):
        phi = CategoricalParam(probs)
        joint = build_joint(phi, Hyperparameter(xi0), 4)
        for row in joint.trajectories.tolist():
            traj = tuple(row)
            assert oracle_pointwise_ntic(joint, traj, "full_past") == pytest.approx(
                pointwise_ntic(phi, traj), abs=1e-12
            )

    @pytest.mark.parametrize(
        "probs,xi0",
        [((0.5, 0.5), (1, 1)), ((0.2, 0.8), (10, 1)), ((0.2, 0.3, 0.5), (1, 1, 1))],
    )
    def test_one_step_matches_relative_frequency(self, probs, xi0):
        phi = CategoricalParam(probs)
        joint = build_joint(phi, Hyperparameter(xi0), 5)
        for row in joint.trajectories.tolist():
            traj = tuple(row)
            assert oracle_pointwise_ntic(joint, traj, "one_step") == pytest.approx(
                one_step_pointwise_ntic(traj), abs=1e-12
            )

    def test_zero_probability_trajectory(self):
        joint = build_joint(CategoricalParam((1.0, 0.0)), XI_FLAT2, 3)
        with pytest.raises(DomainError):
            oracle_pointwise_ntic(joint, (0, 1, 0), "one_step")


class TestQuadrature:
    def test_equal_parameters_give_zero(self):
        xi = Hyperparameter((2.5, 4))
        assert oracle_kl_quadrature(xi, xi) == pytest.approx(0.0, abs=1e-12)

    def test_first_observation_value(self):
        value = oracle_kl_quadrature(Hyperparameter((2, 1)), XI_FLAT2)
        assert value == pytest.approx(math.log(2) - 0.5, abs=1e-8)

    def test_against_exact_symmetric_case(self):
        # KL[Beta(2,2) || Beta(1,1)] = ln 6 + 2 * (Psi(2) - Psi(4)), with
        # exact harmonic numbers: Psi(2) - Psi(4) = -(1/2 + 1/3) = -5/6.
        exact = math.log(6.0) - 2.0 * (5.0 / 6.0)
        value = oracle_kl_quadrature(Hyperparameter((2, 2)), XI_FLAT2)
        assert value == pytest.approx(exact, abs=1e-8)

    def test_three_three_case_matches_closed_form(self):
        from infoclosure import full_past_info_gain

        value = oracle_kl_quadrature(Hyperparameter((3, 3)), XI_FLAT2)
        assert value == pytest.approx(full_past_info_gain(XI_FLAT2, (0, 0, 1, 1)), abs=1e-7)

    def test_requires_two_symbols(self):
        with pytest.raises(DomainError):
            oracle_kl_quadrature(Hyperparameter((1, 1, 1)), Hyperparameter((1, 1, 1)))

    def test_expected_log_predictive_integer_identities(self):
        assert oracle_expected_log_predictive(XI_FLAT2, 0) == pytest.approx(-1.0, abs=1e-10)
        assert oracle_expected_log_predictive(Hyperparameter((2, 1)), 0) == pytest.approx(
            -0.5, abs=1e-10
        )

    def test_expected_log_predictive_point_mass(self):
        assert oracle_expected_log_predictive(Hyperparameter((3,)), 0) == 0.0


class TestInternalConsistency:
    def test_dsep_check_runs_clean_on_grid(self):
        # The simplified and whole-past conditional informations coincide for
        # every grid point; the oracle enforces it internally.
        for probs in [(0.5, 0.5), (0.1, 0.9), (0.2, 0.3, 0.5)]:
            phi = CategoricalParam(probs)
            xi0 = Hyperparameter((1,) * len(probs))
            for t in (1, 2, 4):
                oracle_transfer_entropy(build_joint(phi, xi0, t))

    def test_probability_sum_guard(self):
        # A parameter at the edge of its own normalization gate drifts past
        # the joint's tighter budget once probabilities are multiplied out.
        phi = CategoricalParam((0.5, 0.5 - 9e-13))
        with pytest.raises(InternalConsistencyError):
            build_joint(phi, XI_FLAT2, 2)
