"""Instance generators, the independent trace oracle, and the check suites."""

import numpy as np
import pytest

from localize import (
    DomainError,
    InstanceSpec,
    Subspace,
    ToleranceConfig,
    UnknownSuite,
    decompose,
    feasible_trace_ascent,
    list_suites,
    maximality_falsifier,
    random_density,
    random_psd,
    random_subspace,
    random_unit_vector,
    run_suite,
    spectral_norm,
)
from localize.fileio import dumps_json


class TestInstanceSpec:
    def test_accepts_valid(self):
        spec = InstanceSpec(dim=4, rank=2, subspace_dim=1, seed=7)
        assert spec.positivity == "psd"

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(dim=0, rank=0, subspace_dim=0, seed=1),
            dict(dim=3, rank=4, subspace_dim=1, seed=1),
            dict(dim=3, rank=-1, subspace_dim=1, seed=1),
            dict(dim=3, rank=2, subspace_dim=4, seed=1),
            dict(dim=3, rank=2, subspace_dim=1, seed=-1),
            dict(dim=3, rank=2, subspace_dim=1, seed=1, positivity="indefinite"),
            dict(dim=3, rank=2, subspace_dim=1, seed=1, positivity="pd"),
        ],
    )
    def test_rejects_invalid(self, kwargs):
        with pytest.raises(DomainError):
            InstanceSpec(**kwargs)


class TestGenerators:
    def test_psd_deterministic(self):
        spec = InstanceSpec(dim=5, rank=3, subspace_dim=2, seed=11)
        a = random_psd(spec)
        b = random_psd(spec)
        assert a.tobytes() == b.tobytes()

    def test_streams_decorrelated(self):
        # operator draw must not move when only the subspace request changes
        base = InstanceSpec(dim=5, rank=3, subspace_dim=1, seed=11)
        other = InstanceSpec(dim=5, rank=3, subspace_dim=4, seed=11)
        assert random_psd(base).tobytes() == random_psd(other).tobytes()
        narrow = InstanceSpec(dim=5, rank=1, subspace_dim=2, seed=11)
        wide = InstanceSpec(dim=5, rank=5, subspace_dim=2, seed=11)
        assert random_subspace(narrow).basis.tobytes() == random_subspace(wide).basis.tobytes()

    def test_psd_shape(self):
        spec = InstanceSpec(dim=6, rank=2, subspace_dim=0, seed=3)
        arr = random_psd(spec)
        assert spectral_norm(arr) == pytest.approx(1.0)
        assert np.linalg.matrix_rank(arr, tol=1e-10) == 2
        assert np.linalg.eigvalsh(arr).min() >= -1e-12

    def test_psd_rank_zero(self):
        spec = InstanceSpec(dim=4, rank=0, subspace_dim=1, seed=3)
        assert np.count_nonzero(random_psd(spec)) == 0

    def test_pd_flavor_has_floor(self):
        spec = InstanceSpec(dim=5, rank=5, subspace_dim=1, seed=3, positivity="pd")
        assert np.linalg.eigvalsh(random_psd(spec)).min() > 1e-4

    def test_density_normalized(self):
        spec = InstanceSpec(dim=4, rank=2, subspace_dim=1, seed=9)
        rho = random_density(spec)
        assert np.trace(rho).real == pytest.approx(1.0)
        with pytest.raises(DomainError):
            random_density(InstanceSpec(dim=4, rank=0, subspace_dim=1, seed=9))

    def test_subspace_orthonormal(self):
        spec = InstanceSpec(dim=5, rank=5, subspace_dim=3, seed=4)
        sub = random_subspace(spec)
        assert sub.dim == 3
        gram = sub.basis.conj().T @ sub.basis
        assert np.allclose(gram, np.eye(3), atol=1e-12)
        assert random_subspace(InstanceSpec(5, 5, 0, 4)).dim == 0

    def test_unit_vector(self):
        spec = InstanceSpec(dim=7, rank=7, subspace_dim=1, seed=5)
        vec = random_unit_vector(spec)
        assert np.linalg.norm(vec) == pytest.approx(1.0)
        assert vec.tobytes() == random_unit_vector(spec).tobytes()


class TestTraceOracle:
    def test_commuting_fixture(self):
        result = feasible_trace_ascent(np.diag([3.0, 5.0]), Subspace.line(np.array([1.0, 0.0])))
        assert result.converged
        assert result.value == pytest.approx(3.0, abs=1e-9)

    def test_coupled_fixture(self):
        arr = np.array([[2.0, 1.0], [1.0, 1.0]])
        result = feasible_trace_ascent(arr, Subspace.line(np.array([1.0, 0.0])))
        assert result.value == pytest.approx(1.0, abs=1e-9)

    def test_zero_subspace(self):
        result = feasible_trace_ascent(np.eye(3), Subspace.zero(3))
        assert result.value == 0.0
        assert result.converged

    def test_unreachable_subspace(self):
        arr = np.diag([0.0, 1.0])
        result = feasible_trace_ascent(arr, Subspace.line(np.array([1.0, 0.0])))
        assert result.value == pytest.approx(0.0, abs=1e-12)

    def test_tracks_decomposition_on_random_instances(self):
        for t in range(12):
            dim = 2 + t % 3
            spec = InstanceSpec(dim, 1 + (t + 1) % dim, 1 + t % dim, seed=300 + t)
            arr = random_psd(spec)
            sub = random_subspace(spec)
            inside_trace = decompose(arr, sub).inside_trace
            result = feasible_trace_ascent(arr, sub, seed=t)
            assert result.converged
            assert result.value - inside_trace <= 1e-9
            assert abs(result.value - inside_trace) <= 1e-4
            assert result.feasibility_margin <= 1e-13 * spectral_norm(arr) + 1e-300


class TestFalsifier:
    def test_fixture_is_maximal(self):
        arr = np.array([[2.0, 1.0], [1.0, 1.0]])
        probe = maximality_falsifier(arr, Subspace.line(np.array([1.0, 0.0])), directions=25)
        assert probe.passed
        assert probe.worst_margin <= 0.0
        assert probe.directions == 25

    def test_zero_subspace_trivially_passes(self):
        probe = maximality_falsifier(np.eye(2), Subspace.zero(2))
        assert probe.passed
        assert probe.directions == 0


class TestSuites:
    def test_unknown_suite(self):
        with pytest.raises(UnknownSuite, match="route-agreement"):
            run_suite("no-such-suite")

    def test_trials_must_be_positive(self):
        with pytest.raises(DomainError):
            run_suite("route-agreement", trials=0)

    @pytest.mark.parametrize("name", list_suites())
    def test_every_suite_passes_on_small_runs(self, name):
        report = run_suite(name, trials=6, seed=1)
        assert report.passed, "\n".join(report.summary_lines())
        assert report.trials == 6
        assert report.counterexamples == []

    def test_payload_shape_and_serializability(self):
        report = run_suite("route-agreement", trials=3, seed=2)
        payload = report.payload()
        assert payload["suite"] == "route-agreement"
        assert payload["passed"] is True
        assert set(payload["checks"]) >= {"schur-vs-projection", "schur-vs-inverse", "additivity"}
        for stats in payload["checks"].values():
            assert stats["failures"] == 0
            assert stats["passes"] >= 1
        dumps_json(payload)
        first = report.summary_lines()[0]
        assert first.startswith("suite route-agreement: PASS")

    def test_reports_are_deterministic(self):
        one = run_suite("probability-bounds", trials=4, seed=5).payload()
        two = run_suite("probability-bounds", trials=4, seed=5).payload()
        one.pop("elapsed_seconds")
        two.pop("elapsed_seconds")
        assert dumps_json(one) == dumps_json(two)

    def test_counterexamples_captured_on_failure(self):
        # impossible agreement tolerance forces recorded failures
        strangled = ToleranceConfig(agree_tol=1e-300)
        report = run_suite("route-agreement", trials=2, seed=0, tol=strangled)
        assert not report.passed
        assert report.counterexamples
        entry = report.counterexamples[0]
        assert {"check", "residual", "limit"} <= set(entry)
        assert entry["residual"] > entry["limit"]
        dumps_json(report.payload())
