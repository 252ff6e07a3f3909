"""Dense complex Hermitian linear algebra with explicit tolerance policy.

Everything downstream (operator decomposition, quantum interpretation,
property suites) is built on the primitives here: a deterministic Hermitian
eigendecomposition, pseudo-powers that act only on the range, and a small
subspace algebra. Operators are plain complex128 ndarrays; ``Subspace``
carries an orthonormal basis together with its ambient dimension so that the
zero subspace is a first-class value.

All rank and positivity decisions are relative: an eigenvalue counts as zero
when its magnitude is at most ``rank_tol`` times the largest eigenvalue
magnitude of the operator being examined (or of a caller-supplied reference
scale), and an operator counts as positive semidefinite when no eigenvalue
lies below ``-psd_tol`` times that scale.
"""

from __future__ import annotations

import dataclasses
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import (
    ConvergenceFailure,
    DimensionMismatch,
    DomainError,
    NegativeEigenvalue,
    NotHermitian,
    NotPSD,
    ZeroVector,
)

__all__ = [
    "ToleranceConfig",
    "DEFAULT_TOL",
    "EigenSystem",
    "Subspace",
    "as_matrix",
    "as_vector",
    "certify_hermitian",
    "hermitize",
    "eigh",
    "spectral_norm",
    "pseudo_power",
    "range_of",
    "intersect",
    "subspace_sum",
    "complement",
    "apply_map",
    "is_psd",
    "is_disjoint",
    "is_pvm",
    "same_subspace",
    "tensor",
    "tensor_subspace",
]


@dataclasses.dataclass(frozen=True)
class ToleranceConfig:
    """Numerical decision thresholds threaded through every operation.

    rank_tol
        Relative cutoff below which an eigenvalue or singular value counts
        as zero (rank and kernel decisions, subspace intersections).
    hermitian_tol
        Allowed relative asymmetry ``max|M - M†|`` before a matrix is
        rejected as non-Hermitian.
    psd_tol
        How far below zero an eigenvalue may sit, relative to the spectral
        scale, before the operator is rejected as not PSD.
    agree_tol
        Cross-construction agreement threshold, relative Frobenius norm.
    """

    rank_tol: float = 1e-10
    hermitian_tol: float = 1e-10
    psd_tol: float = 1e-9
    agree_tol: float = 1e-8

    def __post_init__(self):
        for name in ("rank_tol", "hermitian_tol", "psd_tol", "agree_tol"):
            value = getattr(self, name)
            if not (0.0 < value < 1e-2):
                raise DomainError(
                    f"{name} must lie strictly between 0 and 1e-2, got {value!r}"
                )


DEFAULT_TOL = ToleranceConfig()

# Relative magnitude below which a component of a unit eigenvector is treated
# as zero when picking the phase-fixing pivot.
_PHASE_CUT = 1e-8

# Consecutive eigenvalues closer than this (times the spectral scale) form a
# degenerate group whose eigenvectors are ordered lexicographically.
_TIE_CUT = 64.0 * np.finfo(np.float64).eps


def as_matrix(mat, square: bool = True) -> np.ndarray:
    """Coerce to a 2-D complex128 array, optionally requiring squareness."""
    arr = np.asarray(mat, dtype=np.complex128)
    if arr.ndim != 2:
        raise DimensionMismatch(f"expected a 2-D matrix, got shape {arr.shape}")
    if square and arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {arr.shape}")
    return arr


def as_vector(vec, dim: int | None = None) -> np.ndarray:
    arr = np.asarray(vec, dtype=np.complex128).reshape(-1)
    if dim is not None and arr.size != dim:
        raise DimensionMismatch(f"expected a vector of length {dim}, got {arr.size}")
    return arr


def hermitize(mat: np.ndarray) -> np.ndarray:
    """Hermitian part (M + M†)/2; used to scrub roundoff off products."""
    return 0.5 * (mat + mat.conj().T)


def certify_hermitian(op, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Validate that ``op`` is Hermitian within ``hermitian_tol``.

    Returns the coerced array unchanged; raises :class:`NotHermitian` when
    ``max|M - M†|`` exceeds ``hermitian_tol * (1 + max|M|)``.
    """
    arr = as_matrix(op)
    if arr.size == 0:
        raise DimensionMismatch("operators must have dimension at least 1")
    top = np.abs(arr).max()
    gap = np.abs(arr - arr.conj().T).max()
    if gap > tol.hermitian_tol * (1.0 + top):
        raise NotHermitian(
            f"matrix deviates from Hermitian by {gap:.3e} "
            f"(allowed {tol.hermitian_tol * (1.0 + top):.3e})"
        )
    return arr


class EigenSystem(NamedTuple):
    """Ascending eigenvalues and matching orthonormal eigenvector columns."""

    values: np.ndarray
    vectors: np.ndarray


def _fix_phases(vectors: np.ndarray) -> np.ndarray:
    """Make the first significant component of each column real positive."""
    out = np.array(vectors, dtype=np.complex128, copy=True)
    for j in range(out.shape[1]):
        col = out[:, j]
        mags = np.abs(col)
        top = mags.max()
        if top <= 0.0:
            continue
        pivot_idx = int(np.argmax(mags > _PHASE_CUT * top))
        pivot = col[pivot_idx]
        out[:, j] = col * (pivot.conjugate() / abs(pivot))
        out[pivot_idx, j] = abs(pivot)
    return out


def _sort_degenerate(values: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    """Reorder columns inside degenerate eigenvalue groups lexicographically.

    Lexicographic order compares interleaved (real, imag) entries of the
    phase-fixed columns, which makes the output independent of the
    eigensolver's arbitrary choice of basis ordering within a degenerate
    eigenspace.
    """
    n = values.size
    scale = max(float(np.abs(values).max()) if n else 0.0, 1.0)
    out = vectors.copy()
    start = 0
    while start < n:
        stop = start + 1
        while stop < n and values[stop] - values[stop - 1] <= _TIE_CUT * scale:
            stop += 1
        if stop - start > 1:
            cols = range(start, stop)
            keys = {
                j: tuple(np.stack([out[:, j].real, out[:, j].imag], axis=1).ravel())
                for j in cols
            }
            order = sorted(cols, key=keys.__getitem__)
            out[:, start:stop] = out[:, order]
        start = stop
    return out


def eigh(op, tol: ToleranceConfig = DEFAULT_TOL) -> EigenSystem:
    """Deterministic Hermitian eigendecomposition.

    Eigenvalues come out ascending. Each eigenvector's phase is fixed by
    making its first significant component real positive, and degenerate
    groups are ordered lexicographically, so identical inputs give
    byte-identical outputs.
    """
    arr = certify_hermitian(op, tol)
    try:
        values, vectors = np.linalg.eigh(arr)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"eigensolver failed: {exc}") from exc
    vectors = _fix_phases(vectors)
    vectors = _sort_degenerate(values, vectors)
    return EigenSystem(values, vectors)


def spectral_norm(op, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Largest eigenvalue magnitude of a Hermitian operator."""
    values = eigh(op, tol).values
    return float(np.abs(values).max())


def certify_psd(
    op, tol: ToleranceConfig = DEFAULT_TOL
) -> tuple[np.ndarray, EigenSystem, float]:
    """Validate Hermitian + PSD; return the array, its eigensystem and scale.

    The eigensystem is returned so callers can reuse it instead of
    re-decomposing. Raises :class:`NotPSD` when an eigenvalue sits below
    ``-psd_tol`` times the largest eigenvalue magnitude.
    """
    arr = certify_hermitian(op, tol)
    es = eigh(arr, tol)
    scale = float(np.abs(es.values).max())
    if scale > 0.0 and float(es.values.min()) < -tol.psd_tol * scale:
        raise NotPSD(
            f"eigenvalue {es.values.min():.6e} below -psd_tol * scale "
            f"= {-tol.psd_tol * scale:.6e}"
        )
    return arr, es, scale


def pseudo_power(op, exponent: float, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Raise a Hermitian operator to ``exponent`` on its range, zero on its kernel.

    Exponent 0 gives the orthogonal projector onto the range. Fractional
    exponents require a PSD operator: a retained eigenvalue below
    ``-psd_tol`` (relative) raises :class:`NegativeEigenvalue`; retained
    eigenvalues inside the PSD tolerance band are used by magnitude.
    """
    es = eigh(op, tol)
    values, vectors = es
    scale = float(np.abs(values).max())
    n = values.size
    if scale <= 0.0:
        return np.zeros((n, n), dtype=np.complex128)
    keep = np.abs(values) > tol.rank_tol * scale
    if not keep.any():
        return np.zeros((n, n), dtype=np.complex128)
    vals = values[keep]
    vecs = vectors[:, keep]
    if float(exponent).is_integer():
        powered = vals ** exponent
    else:
        floor = vals.min()
        if floor < -tol.psd_tol * scale:
            raise NegativeEigenvalue(
                f"fractional power {exponent} of an operator with eigenvalue "
                f"{floor:.3e} (scale {scale:.3e})"
            )
        powered = np.abs(vals) ** exponent
    return hermitize((vecs * powered) @ vecs.conj().T)


@dataclasses.dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of C^n held as an orthonormal basis matrix of shape (n, k).

    ``k`` may be zero: the zero subspace is an ordinary value, not an error.
    Instances are immutable; the basis array is copied and write-locked.
    """

    basis: np.ndarray

    def __post_init__(self):
        arr = np.array(self.basis, dtype=np.complex128, copy=True)
        if arr.ndim != 2:
            raise DimensionMismatch(f"basis must be 2-D, got shape {arr.shape}")
        n, k = arr.shape
        if n < 1:
            raise DimensionMismatch("ambient dimension must be at least 1")
        if k > n:
            raise DimensionMismatch(f"{k} basis vectors cannot fit in dimension {n}")
        if k:
            gram = arr.conj().T @ arr
            if np.abs(gram - np.eye(k)).max() > 1e-8:
                raise ValueError("basis columns are not orthonormal")
        arr.setflags(write=False)
        object.__setattr__(self, "basis", arr)

    @property
    def ambient_dim(self) -> int:
        return self.basis.shape[0]

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @staticmethod
    def zero(ambient_dim: int) -> "Subspace":
        return Subspace(np.zeros((ambient_dim, 0), dtype=np.complex128))

    @staticmethod
    def full(ambient_dim: int) -> "Subspace":
        return Subspace(np.eye(ambient_dim, dtype=np.complex128))

    @staticmethod
    def line(vector, tol: ToleranceConfig = DEFAULT_TOL) -> "Subspace":
        """Span of a single vector; rejects the zero vector."""
        v = as_vector(vector)
        norm = np.linalg.norm(v)
        if norm <= tol.rank_tol:
            raise ZeroVector("cannot span a line on a zero vector")
        return Subspace((v / norm).reshape(-1, 1))

    @staticmethod
    def span(vectors, tol: ToleranceConfig = DEFAULT_TOL) -> "Subspace":
        """Orthonormal basis of the span of the given columns.

        ``vectors`` is an (n, m) matrix whose columns span the space, or a
        list/tuple of length-n vectors. Directions whose singular value
        falls below ``rank_tol`` times the largest are dropped, so dependent
        inputs simply collapse.
        """
        if isinstance(vectors, (list, tuple)):
            cols = [as_vector(v) for v in vectors]
            if not cols:
                raise DimensionMismatch("cannot infer ambient dimension from an empty list")
            arr = np.stack(cols, axis=1)
        else:
            arr = np.asarray(vectors, dtype=np.complex128)
            if arr.ndim == 1:
                arr = arr.reshape(-1, 1)
        if arr.ndim != 2:
            raise DimensionMismatch(f"vectors must form a 2-D array, got shape {arr.shape}")
        n, m = arr.shape
        if m == 0:
            return Subspace.zero(n)
        u, s, _ = np.linalg.svd(arr, full_matrices=False)
        if s.size == 0 or s[0] <= 0.0:
            return Subspace.zero(n)
        rank = int(np.sum(s > tol.rank_tol * s[0]))
        if rank == 0:
            return Subspace.zero(n)
        return Subspace(_fix_phases(u[:, :rank]))

    def projector(self) -> np.ndarray:
        """Orthogonal projector onto this subspace as an (n, n) matrix."""
        if self.dim == 0:
            return np.zeros((self.ambient_dim, self.ambient_dim), dtype=np.complex128)
        return hermitize(self.basis @ self.basis.conj().T)


def _require_same_ambient(u: Subspace, v: Subspace) -> None:
    if u.ambient_dim != v.ambient_dim:
        raise DimensionMismatch(
            f"subspaces live in dimensions {u.ambient_dim} and {v.ambient_dim}"
        )


def intersect(u: Subspace, v: Subspace, tol: ToleranceConfig = DEFAULT_TOL) -> Subspace:
    """Intersection of two subspaces by the principal-angle criterion.

    The intersection is the eigenspace of ``P_u P_v P_u`` with eigenvalue
    within ``rank_tol`` of 1 (cosine of a principal angle equal to 1).
    """
    _require_same_ambient(u, v)
    if u.dim == 0 or v.dim == 0:
        return Subspace.zero(u.ambient_dim)
    product = hermitize(u.projector() @ v.projector() @ u.projector())
    values, vectors = eigh(product, tol)
    keep = values >= 1.0 - tol.rank_tol
    if not keep.any():
        return Subspace.zero(u.ambient_dim)
    return Subspace(vectors[:, keep])


def subspace_sum(u: Subspace, v: Subspace, tol: ToleranceConfig = DEFAULT_TOL) -> Subspace:
    """Smallest subspace containing both operands."""
    _require_same_ambient(u, v)
    return Subspace.span(np.hstack([u.basis, v.basis]), tol)


def complement(v: Subspace) -> Subspace:
    """Orthogonal complement."""
    n, k = v.basis.shape
    if k == 0:
        return Subspace.full(n)
    if k == n:
        return Subspace.zero(n)
    u, _, _ = np.linalg.svd(v.basis, full_matrices=True)
    return Subspace(_fix_phases(u[:, k:]))


def apply_map(mat, v: Subspace, tol: ToleranceConfig = DEFAULT_TOL) -> Subspace:
    """Image of a subspace under a linear map, dropping collapsed directions."""
    arr = as_matrix(mat, square=False)
    if arr.shape[1] != v.ambient_dim:
        raise DimensionMismatch(
            f"map expects dimension {arr.shape[1]}, subspace has {v.ambient_dim}"
        )
    if v.dim == 0:
        return Subspace.zero(arr.shape[0])
    return Subspace.span(arr @ v.basis, tol)


def range_of(
    op,
    tol: ToleranceConfig = DEFAULT_TOL,
    *,
    scale: float | None = None,
) -> Subspace:
    """Range (column space) of a Hermitian operator.

    ``scale`` overrides the reference magnitude for the rank cutoff; callers
    that know the operator is a piece of a larger one pass the parent's
    spectral scale so that junk eigenvalues of a numerically-zero piece do
    not masquerade as rank.
    """
    values, vectors = eigh(op, tol)
    ref = float(np.abs(values).max()) if scale is None else float(scale)
    if ref <= 0.0:
        return Subspace.zero(values.size)
    keep = np.abs(values) > tol.rank_tol * ref
    if not keep.any():
        return Subspace.zero(values.size)
    return Subspace(vectors[:, keep])


def is_psd(op, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """True when no eigenvalue lies below ``-psd_tol`` times the scale."""
    values = eigh(op, tol).values
    scale = float(np.abs(values).max())
    if scale <= 0.0:
        return True
    return float(values.min()) >= -tol.psd_tol * scale


def is_disjoint(x, y, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """True when the ranges of two Hermitian operators intersect only in 0."""
    return intersect(range_of(x, tol), range_of(y, tol), tol).dim == 0


def is_pvm(projectors: Sequence, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Check that the operators form a projective decomposition of identity.

    Each must be Hermitian and idempotent, products of distinct members must
    vanish, and the sum must be the identity, all within ``agree_tol``.
    """
    if not projectors:
        return False
    mats = [certify_hermitian(p, tol) for p in projectors]
    n = mats[0].shape[0]
    for m in mats:
        if m.shape[0] != n:
            raise DimensionMismatch("projectors live in different dimensions")
    cut = tol.agree_tol * max(1.0, float(n))
    for i, m in enumerate(mats):
        if np.linalg.norm(m @ m - m) > cut:
            return False
        for other in mats[i + 1 :]:
            if np.linalg.norm(m @ other) > cut:
                return False
    total = sum(mats)
    return bool(np.linalg.norm(total - np.eye(n)) <= cut)


def same_subspace(u: Subspace, v: Subspace, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """True when the two subspaces agree as sets (projectors coincide)."""
    _require_same_ambient(u, v)
    if u.dim != v.dim:
        return False
    gap = np.linalg.norm(u.projector() - v.projector())
    return bool(gap <= tol.agree_tol * max(1.0, float(u.dim)))


def tensor(x, y) -> np.ndarray:
    """Kronecker product with row-major index pairing (i, j) -> i*dim_y + j."""
    return np.kron(as_matrix(x, square=False), as_matrix(y, square=False))


def tensor_subspace(u: Subspace, v: Subspace) -> Subspace:
    """Tensor product subspace spanned by pairwise products of basis vectors."""
    return Subspace(np.kron(u.basis, v.basis))
