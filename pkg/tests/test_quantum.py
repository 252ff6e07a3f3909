"""State semantics: weights, tables, closed forms, masking, reconstruction."""

import numpy as np
import pytest

from localize import (
    DomainError,
    InconsistentProbes,
    Infeasible,
    NotDensity,
    Subspace,
    SupportViolation,
    UnderdeterminedSystem,
    bloch_vector,
    certify_density,
    entropy,
    line_weight,
    log_weight,
    mask,
    measurement_projector,
    mixture_including,
    multi_probability_table,
    probability_table,
    qubit_state,
    qubit_weights,
    reconstruct,
    state_decompose,
    support,
    unmask,
)

E1 = Subspace.line(np.array([1.0, 0.0]))


class TestDensityValidation:
    def test_accepts_density(self):
        certify_density(np.diag([0.5, 0.5]))

    def test_rejects_wrong_trace(self):
        with pytest.raises(NotDensity):
            certify_density(np.diag([0.5, 0.6]))


class TestQubitClosedForms:
    def test_hand_fixture(self):
        # a = 1/2, theta = pi/3: weight 1/2, weight_perp 3/10, deficiency 1/5
        closed = qubit_weights(0.5, np.pi / 3)
        assert closed.weight == pytest.approx(0.5, abs=1e-15)
        assert closed.weight_perp == pytest.approx(0.3, abs=1e-15)
        assert closed.deficiency == pytest.approx(0.2, abs=1e-15)
        assert closed.leftover_bloch.x == pytest.approx(np.sqrt(3) * 1.25, abs=1e-12)
        assert closed.leftover_bloch.y == 0.0
        assert closed.leftover_bloch.z == pytest.approx(0.25, abs=1e-15)

    def test_right_angle(self):
        closed = qubit_weights(0.5, np.pi / 2)
        assert closed.weight == pytest.approx(0.375)
        assert closed.weight_perp == pytest.approx(0.375)
        assert closed.leftover_bloch.x == pytest.approx(2.0)
        assert closed.leftover_bloch.z == pytest.approx(0.0, abs=1e-15)

    def test_matches_numeric_route(self):
        for a in (0.2, 0.6, 0.85):
            for theta in (0.3, 1.1, 2.5):
                closed = qubit_weights(a, theta)
                table = probability_table(qubit_state(a, theta), E1)
                assert table.weight == pytest.approx(closed.weight, abs=1e-12)
                assert table.weight_perp == pytest.approx(closed.weight_perp, abs=1e-12)
                assert table.deficiency == pytest.approx(closed.deficiency, abs=1e-12)

    def test_center_has_no_leftover(self):
        assert qubit_weights(0.0, 1.0).leftover_bloch is None

    def test_domain(self):
        with pytest.raises(DomainError):
            qubit_weights(1.0, 1.0)
        with pytest.raises(DomainError):
            qubit_weights(0.5, 0.0)
        with pytest.raises(DomainError):
            qubit_weights(0.5, np.pi)

    def test_qubit_state_bloch_roundtrip(self):
        rho = qubit_state(0.7, 1.2)
        vec = bloch_vector(rho)
        assert vec.x == pytest.approx(0.7 * np.sin(1.2))
        assert vec.y == pytest.approx(0.0, abs=1e-15)
        assert vec.z == pytest.approx(0.7 * np.cos(1.2))


class TestStateDecomposition:
    def test_fixture_table(self):
        table = probability_table(qubit_state(0.5, np.pi / 3), E1)
        assert table.overlap == pytest.approx(0.625)
        assert table.joint_v_inside == pytest.approx(0.5)
        assert table.joint_perp_inside == 0.0
        assert table.joint_v_outside == pytest.approx(0.125)
        assert table.joint_perp_outside == pytest.approx(0.375)

    def test_components_are_states(self):
        split = state_decompose(qubit_state(0.5, np.pi / 3), E1)
        assert np.trace(split.inside).real == pytest.approx(1.0)
        assert np.trace(split.outside).real == pytest.approx(1.0)
        assert np.linalg.eigvalsh(split.inside).min() >= -1e-12

    def test_zero_weight_leaves_none(self):
        rho = np.diag([0.0, 1.0]).astype(complex)
        split = state_decompose(rho, E1)
        assert split.weight == 0.0
        assert split.inside is None
        assert np.allclose(split.outside, rho)

    def test_full_weight_leaves_none_outside(self):
        rho = np.diag([1.0, 0.0]).astype(complex)
        split = state_decompose(rho, E1)
        assert split.weight == pytest.approx(1.0)
        assert split.outside is None

    def test_log_weight(self):
        assert log_weight(np.eye(2) / 2, E1) == pytest.approx(np.log(0.5))
        assert log_weight(np.diag([0.0, 1.0]).astype(complex), E1) == float("-inf")


class TestMultiSplit:
    def test_qutrit_flag(self):
        rng = np.random.default_rng(21)
        g = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        arr = g @ g.conj().T + 0.3 * np.eye(3)
        rho = arr / np.trace(arr).real
        frame = np.eye(3, dtype=complex)
        chain = [Subspace(frame[:, :2]), Subspace(frame[:, :1]), Subspace.zero(3)]
        table = multi_probability_table(rho, chain)
        weights = [cell.weight for cell in table.components]
        assert sum(weights) == pytest.approx(1.0, abs=1e-9)
        assert sum(cell.overlap for cell in table.components) >= 1.0 - 1e-9
        for j in range(len(table.components)):
            column = sum(cell.joints[j] for cell in table.components)
            assert column == pytest.approx(table.components[j].overlap, abs=1e-9)
            assert table.components[j].joints[j] == pytest.approx(weights[j], abs=1e-9)


class TestSupportAndMixture:
    def test_support_span(self):
        sub = support([np.array([1.0, 0.0]), np.array([1.0, 1.0]) / np.sqrt(2)], [0.5, 0.5])
        assert sub.dim == 2

    def test_support_validation(self):
        with pytest.raises(DomainError):
            support([np.array([1.0, 0.0])], [0.0])

    def test_mixture_fixture(self):
        # maximally mixed qubit through |+>: floor 1/2, two equal weights
        plus = np.array([1.0, 1.0]) / np.sqrt(2)
        mixture = mixture_including(np.eye(2) / 2.0, [plus])
        assert mixture.floor == pytest.approx(0.5)
        assert sorted(mixture.weights) == pytest.approx([0.5, 0.5])
        assert abs(abs(np.vdot(mixture.vectors[0], plus)) - 1.0) < 1e-12
        rebuilt = sum(w * np.outer(v, v.conj()) for w, v in zip(mixture.weights, mixture.vectors))
        assert np.allclose(rebuilt, np.eye(2) / 2.0, atol=1e-12)

    def test_mixture_infeasible_outside_range(self):
        rho = np.diag([1.0, 0.0]).astype(complex)
        with pytest.raises(Infeasible):
            mixture_including(rho, [np.array([0.0, 1.0])])

    def test_mixture_floor_divides_among_targets(self):
        rho = np.diag([0.5, 0.5]).astype(complex)
        e1 = np.array([1.0, 0.0])
        e2 = np.array([0.0, 1.0])
        mixture = mixture_including(rho, [e1, e2])
        assert mixture.floor == pytest.approx(0.25)
        assert sum(mixture.weights) == pytest.approx(1.0, abs=1e-12)


class TestReconstruction:
    def test_recovers_diagonal(self):
        target = np.diag([2.0, 3.0]).astype(complex)
        probes = []
        for vec in (
            np.array([1.0, 0.0]),
            np.array([0.0, 1.0]),
            np.array([1.0, 1.0]) / np.sqrt(2),
            np.array([1.0, 1.0j]) / np.sqrt(2),
        ):
            probes.append((vec, line_weight(target, vec)))
        rebuilt = reconstruct(probes)
        assert np.allclose(rebuilt, target, atol=1e-10)

    def test_underdetermined(self):
        vec = np.array([1.0, 0.0])
        with pytest.raises(UnderdeterminedSystem):
            reconstruct([(vec, 1.0)] * 5)

    def test_inconsistent_probes(self):
        target = np.diag([2.0, 3.0]).astype(complex)
        rng = np.random.default_rng(8)
        probes = []
        for _ in range(8):
            vec = rng.normal(size=2) + 1j * rng.normal(size=2)
            vec /= np.linalg.norm(vec)
            probes.append((vec, line_weight(target, vec)))
        vec, weight = probes[0]
        probes.append((vec, weight * 2.0))
        with pytest.raises(InconsistentProbes):
            reconstruct(probes)


class TestEntropy:
    def test_maximally_mixed(self):
        assert entropy(np.eye(2) / 2.0) == pytest.approx(np.log(2.0))

    def test_pure_state(self):
        assert entropy(np.diag([1.0, 0.0]).astype(complex)) == pytest.approx(0.0, abs=1e-12)


class TestMasking:
    def _triple(self):
        rho_in = np.zeros((3, 3), dtype=complex)
        rho_in[0, 0] = 1.0
        rho_out = np.diag([0.0, 0.6, 0.4]).astype(complex)
        sub = Subspace.line(np.array([1.0, 0.0, 0.0]))
        return rho_in, rho_out, sub

    def test_roundtrip(self):
        rho_in, rho_out, sub = self._triple()
        blended = mask(rho_in, rho_out, 0.3, sub)
        weight, got_in, got_out = unmask(blended, sub)
        assert weight == pytest.approx(0.3, abs=1e-12)
        assert np.allclose(got_in, rho_in, atol=1e-10)
        assert np.allclose(got_out, rho_out, atol=1e-10)

    def test_support_violations(self):
        rho_in, rho_out, sub = self._triple()
        with pytest.raises(SupportViolation):
            mask(rho_out, rho_in, 0.3, sub)
        leaky = 0.5 * rho_in + 0.5 * rho_out
        with pytest.raises(SupportViolation):
            mask(leaky, rho_out, 0.3, sub)

    def test_weight_domain(self):
        rho_in, rho_out, sub = self._triple()
        for bad in (0.0, 1.0, -0.2, 1.5):
            with pytest.raises(DomainError):
                mask(rho_in, rho_out, bad, sub)


class TestMeasurementProjector:
    def test_expectation_equals_weight(self):
        rho = qubit_state(0.5, np.pi / 3)
        proj = measurement_projector(rho, E1)
        assert np.allclose(proj @ proj, proj, atol=1e-10)
        assert np.allclose(proj, proj.conj().T)
        weight = state_decompose(rho, E1).weight
        assert np.trace(proj @ rho).real == pytest.approx(weight, abs=1e-10)

    def test_zero_when_unreachable(self):
        rho = np.diag([0.0, 1.0]).astype(complex)
        assert np.allclose(measurement_projector(rho, E1), 0.0)
