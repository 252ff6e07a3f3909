"""Core linear algebra: tolerances, deterministic eigh, pseudo powers, subspaces."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from localize import (
    DEFAULT_TOL,
    DimensionMismatch,
    NegativeEigenvalue,
    NotHermitian,
    NotPSD,
    Subspace,
    ToleranceConfig,
    ZeroVector,
    certify_hermitian,
    certify_psd,
    complement,
    eigh,
    hermitize,
    intersect,
    is_disjoint,
    is_psd,
    is_pvm,
    pseudo_power,
    range_of,
    same_subspace,
    spectral_norm,
    subspace_sum,
    tensor,
    tensor_subspace,
)
from localize.linalg import as_matrix, as_vector


def _fixture_matrix():
    return np.array([[2.0, 1.0], [1.0, 1.0]], dtype=complex)


class TestToleranceConfig:
    def test_defaults(self):
        assert DEFAULT_TOL.rank_tol == 1e-10
        assert DEFAULT_TOL.hermitian_tol == 1e-10
        assert DEFAULT_TOL.psd_tol == 1e-9
        assert DEFAULT_TOL.agree_tol == 1e-8

    @pytest.mark.parametrize("field", ["rank_tol", "hermitian_tol", "psd_tol", "agree_tol"])
    @pytest.mark.parametrize("bad", [0.0, -1e-12, 1e-2, 0.5])
    def test_rejects_out_of_band(self, field, bad):
        with pytest.raises(Exception):
            ToleranceConfig(**{field: bad})

    def test_frozen(self):
        with pytest.raises(Exception):
            DEFAULT_TOL.rank_tol = 1e-5


class TestCoercions:
    def test_as_matrix_rejects_nonsquare(self):
        with pytest.raises(DimensionMismatch):
            as_matrix(np.zeros((2, 3)))

    def test_as_vector_length_check(self):
        with pytest.raises(DimensionMismatch):
            as_vector([1.0, 0.0], dim=3)

    def test_certify_hermitian_rejects(self):
        with pytest.raises(NotHermitian):
            certify_hermitian(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_hermitize_is_projection(self):
        m = np.array([[1.0, 2.0 + 1j], [0.0, 3.0]])
        h = hermitize(m)
        assert np.allclose(h, h.conj().T)
        assert np.allclose(hermitize(h), h)


class TestEigh:
    def test_fixture_eigenvalues(self):
        es = eigh(_fixture_matrix())
        expected = np.array([(3.0 - np.sqrt(5.0)) / 2.0, (3.0 + np.sqrt(5.0)) / 2.0])
        assert np.allclose(es.values, expected, atol=1e-14)

    def test_ascending_and_orthonormal(self):
        rng = np.random.default_rng(3)
        g = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
        arr = hermitize(g @ g.conj().T)
        es = eigh(arr)
        assert np.all(np.diff(es.values) >= 0)
        assert np.allclose(es.vectors.conj().T @ es.vectors, np.eye(5), atol=1e-12)

    def test_byte_identical_reruns(self):
        rng = np.random.default_rng(4)
        arr = hermitize(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))
        first = eigh(arr)
        second = eigh(arr.copy())
        assert first.values.tobytes() == second.values.tobytes()
        assert first.vectors.tobytes() == second.vectors.tobytes()

    def test_phase_convention(self):
        # first significant component of each eigenvector is real positive
        rng = np.random.default_rng(5)
        arr = hermitize(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))
        es = eigh(arr)
        for col in es.vectors.T:
            lead = col[np.abs(col) > 1e-8 * np.abs(col).max()][0]
            assert lead.real > 0
            assert abs(lead.imag) < 1e-12

    def test_degenerate_block_deterministic(self):
        proj = np.diag([1.0, 1.0, 0.0]).astype(complex)
        es1, es2 = eigh(proj), eigh(proj + 0.0)
        assert es1.vectors.tobytes() == es2.vectors.tobytes()


class TestPsdAndPowers:
    def test_certify_psd_accepts_and_scales(self):
        arr, es, scale = certify_psd(_fixture_matrix())
        assert scale == pytest.approx((3.0 + np.sqrt(5.0)) / 2.0)
        assert np.allclose(arr, _fixture_matrix())

    def test_certify_psd_rejects_negative(self):
        with pytest.raises(NotPSD):
            certify_psd(np.diag([1.0, -1.0]))

    def test_certify_psd_tolerates_tiny_dip(self):
        arr = np.diag([1.0, -1e-12])
        certify_psd(arr)

    def test_pseudo_inverse_fixture(self):
        inv = pseudo_power(_fixture_matrix(), -1)
        assert np.allclose(inv, np.array([[1.0, -1.0], [-1.0, 2.0]]), atol=1e-12)

    def test_square_root_squares_back(self):
        root = pseudo_power(_fixture_matrix(), 0.5)
        assert np.allclose(root @ root, _fixture_matrix(), atol=1e-12)

    def test_zeroth_power_is_range_projector(self):
        rank1 = np.outer([1.0, 1.0], [1.0, 1.0]) / 2.0
        proj = pseudo_power(rank1, 0)
        assert np.allclose(proj, rank1, atol=1e-12)

    def test_kernel_stays_kernel(self):
        rank1 = np.outer([1.0, 1.0], [1.0, 1.0]).astype(complex)
        inv = pseudo_power(rank1, -1)
        kernel_vec = np.array([1.0, -1.0]) / np.sqrt(2)
        assert np.linalg.norm(inv @ kernel_vec) < 1e-12

    def test_fractional_power_rejects_negative_spectrum(self):
        with pytest.raises(NegativeEigenvalue):
            pseudo_power(np.diag([1.0, -1.0]), 0.5)

    def test_integer_power_allows_negative_spectrum(self):
        arr = np.diag([2.0, -3.0]).astype(complex)
        assert np.allclose(pseudo_power(arr, 2), np.diag([4.0, 9.0]))
        assert np.allclose(pseudo_power(arr, -1), np.diag([0.5, -1.0 / 3.0]))

    def test_spectral_norm(self):
        assert spectral_norm(np.diag([-3.0, 2.0])) == pytest.approx(3.0)

    def test_is_psd(self):
        assert is_psd(_fixture_matrix())
        assert not is_psd(np.diag([1.0, -1.0]))


class TestSubspace:
    def test_requires_orthonormal_columns(self):
        with pytest.raises(Exception):
            Subspace(np.array([[1.0], [1.0]]))

    def test_zero_and_full(self):
        zero = Subspace.zero(3)
        full = Subspace.full(3)
        assert zero.dim == 0 and zero.ambient_dim == 3
        assert full.dim == 3
        assert np.allclose(zero.projector(), np.zeros((3, 3)))
        assert np.allclose(full.projector(), np.eye(3))

    def test_line_normalizes(self):
        line = Subspace.line(np.array([3.0, 4.0]))
        assert line.dim == 1
        assert np.linalg.norm(line.basis[:, 0]) == pytest.approx(1.0)

    def test_line_rejects_zero(self):
        with pytest.raises(ZeroVector):
            Subspace.line(np.zeros(2))

    def test_span_drops_dependent_columns(self):
        sub = Subspace.span([np.array([1.0, 0.0]), np.array([2.0, 0.0])])
        assert sub.dim == 1

    def test_span_of_matrix_columns(self):
        mat = np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]])
        assert Subspace.span(mat).dim == 2

    def test_projector_idempotent(self):
        sub = Subspace.span([np.array([1.0, 1.0, 0.0]), np.array([0.0, 0.0, 1.0])])
        proj = sub.projector()
        assert np.allclose(proj @ proj, proj, atol=1e-12)
        assert np.allclose(proj, proj.conj().T)

    def test_basis_write_locked(self):
        sub = Subspace.full(2)
        with pytest.raises(ValueError):
            sub.basis[0, 0] = 5.0

    def test_intersect_planes_in_line(self):
        u = Subspace.span([np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 1.0]) / np.sqrt(2)])
        v = Subspace.span([np.array([0.0, 1.0, 1.0]) / np.sqrt(2), np.array([0.0, 1.0, -1.0])])
        meet = intersect(u, v)
        assert meet.dim == 1
        direction = meet.basis[:, 0]
        target = np.array([0.0, 1.0, 1.0]) / np.sqrt(2)
        assert abs(abs(np.vdot(direction, target)) - 1.0) < 1e-10

    def test_intersect_disjoint(self):
        u = Subspace.line(np.array([1.0, 0.0]))
        v = Subspace.line(np.array([0.0, 1.0]))
        assert intersect(u, v).dim == 0
        # is_disjoint compares operator ranges, so feed it the projectors
        assert is_disjoint(u.projector(), v.projector())

    def test_sum_and_complement(self):
        u = Subspace.line(np.array([1.0, 0.0, 0.0]))
        v = Subspace.line(np.array([0.0, 1.0, 0.0]))
        total = subspace_sum(u, v)
        assert total.dim == 2
        comp = complement(total)
        assert comp.dim == 1
        assert abs(abs(comp.basis[2, 0]) - 1.0) < 1e-12

    def test_complement_of_zero_is_full(self):
        assert complement(Subspace.zero(3)).dim == 3

    def test_range_of_with_scale_override(self):
        tiny = np.diag([1e-14, 0.0])
        # relative to its own scale the operator has rank 1
        assert range_of(tiny).dim == 1
        # relative to a unit-scale parent it is numerically zero
        assert range_of(tiny, scale=1.0).dim == 0

    def test_same_subspace_ignores_basis_choice(self):
        u = Subspace.span([np.array([1.0, 1.0]) / np.sqrt(2), np.array([1.0, -1.0]) / np.sqrt(2)])
        assert same_subspace(u, Subspace.full(2))

    def test_is_pvm(self):
        p1 = np.diag([1.0, 0.0]).astype(complex)
        p2 = np.diag([0.0, 1.0]).astype(complex)
        assert is_pvm([p1, p2])
        assert not is_pvm([p1, p1])

    def test_mismatched_ambient_rejected(self):
        with pytest.raises(DimensionMismatch):
            intersect(Subspace.zero(2), Subspace.zero(3))

    def test_tensor_dims(self):
        u = Subspace.line(np.array([1.0, 0.0]))
        v = Subspace.full(3)
        assert tensor_subspace(u, v).dim == 3
        assert tensor_subspace(u, v).ambient_dim == 6
        assert tensor(np.eye(2), np.eye(3)).shape == (6, 6)


@st.composite
def psd_matrices(draw):
    dim = draw(st.integers(min_value=1, max_value=4))
    seed = draw(st.integers(min_value=0, max_value=10_000))
    rng = np.random.default_rng(seed)
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return hermitize(g @ g.conj().T)


@settings(max_examples=60, deadline=None)
@given(psd_matrices())
def test_eigh_reconstructs_operator(arr):
    es = eigh(arr)
    rebuilt = es.vectors @ np.diag(es.values) @ es.vectors.conj().T
    assert np.linalg.norm(rebuilt - arr) <= 1e-10 * (1.0 + np.linalg.norm(arr))


@settings(max_examples=60, deadline=None)
@given(psd_matrices())
def test_pseudo_inverse_is_inverse_on_range(arr):
    proj = pseudo_power(arr, 0)
    inv = pseudo_power(arr, -1)
    assert np.linalg.norm(arr @ inv - proj) <= 1e-8 * (1.0 + np.linalg.norm(arr))


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=5000))
def test_span_invariant_under_column_scaling(seed):
    rng = np.random.default_rng(seed)
    cols = rng.normal(size=(4, 2)) + 1j * rng.normal(size=(4, 2))
    scaled = cols @ np.diag([2.0, -0.5 + 0.5j])
    assert same_subspace(Subspace.span(cols), Subspace.span(scaled))
