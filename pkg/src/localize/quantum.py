"""Quantum reading of the subspace decomposition of a density matrix.

For a state rho and a subspace V the splitting rho = inside + outside gives
rho = w * rho_in + (1 - w) * rho_out with w = Tr(inside): the state behaves
as a mixture of a state located inside V (weight w) and one whose support
avoids V. This module exposes that weight, the joint probability table over
(V, V_perp) x (inside, outside), the closed forms for a qubit probed along
the z axis, mixture surgery (mask/unmask, mixtures through chosen pure
states), reconstruction of the operator from probe weights, and entropies.
"""

from __future__ import annotations

import dataclasses
from typing import NamedTuple, Sequence

import numpy as np

from .decomp import chain_decompose, decompose
from .errors import (
    DimensionMismatch,
    DomainError,
    InconsistentProbes,
    Infeasible,
    NotDensity,
    SupportViolation,
    ToleranceBreakdown,
    UnderdeterminedSystem,
    ZeroVector,
)
from .linalg import (
    DEFAULT_TOL,
    Subspace,
    ToleranceConfig,
    as_matrix,
    as_vector,
    certify_psd,
    complement,
    eigh,
    hermitize,
    intersect,
    pseudo_power,
    range_of,
)

__all__ = [
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
    "BlochVector",
    "StateDecomposition",
    "ProbabilityTable",
    "ComponentCell",
    "MultiSplitTable",
    "QubitWeights",
    "Mixture",
    "certify_density",
    "state_decompose",
    "probability_table",
    "multi_probability_table",
    "qubit_state",
    "qubit_weights",
    "bloch_vector",
    "support",
    "mixture_including",
    "reconstruct",
    "entropy",
    "log_weight",
    "mask",
    "unmask",
    "measurement_projector",
]

PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)


class BlochVector(NamedTuple):
    x: float
    y: float
    z: float


def certify_density(rho, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Validate Hermitian, PSD and unit trace within tolerance."""
    arr, _, _ = certify_psd(rho, tol)
    trace = float(np.trace(arr).real)
    if abs(trace - 1.0) > tol.agree_tol:
        raise NotDensity(f"trace is {trace!r}, expected 1 within {tol.agree_tol}")
    return arr


def _clamped_weight(raw: float, tol: ToleranceConfig) -> float:
    """Clamp a computed weight into [0, 1]; beyond psd_tol it is an error."""
    if raw < -tol.psd_tol or raw > 1.0 + tol.psd_tol:
        raise ToleranceBreakdown(f"weight {raw!r} is outside [0, 1] beyond psd_tol")
    return min(max(raw, 0.0), 1.0)


@dataclasses.dataclass(frozen=True, eq=False)
class StateDecomposition:
    """rho = weight * inside + (1 - weight) * outside.

    ``inside`` and ``outside`` are unit-trace states; either is None when
    its weight vanishes (within ``rank_tol``), since no normalized state is
    then defined.
    """

    weight: float
    inside: np.ndarray | None
    outside: np.ndarray | None


def state_decompose(rho, v: Subspace, tol: ToleranceConfig = DEFAULT_TOL) -> StateDecomposition:
    """Split a state into located-inside and located-outside parts."""
    arr = certify_density(rho, tol)
    dec = decompose(arr, v, tol)
    weight = _clamped_weight(dec.inside_trace, tol)
    inside = dec.inside / weight if weight > tol.rank_tol else None
    outside = dec.outside / (1.0 - weight) if 1.0 - weight > tol.rank_tol else None
    return StateDecomposition(weight, inside, outside)


@dataclasses.dataclass(frozen=True)
class ProbabilityTable:
    """Joint location/component probabilities for a state and a subspace.

    Rows are the mixture components (inside, outside), columns the
    projective outcomes (V, V_perp). The inside component is certain to be
    found in V, so its V_perp cell is exactly zero. Marginals: the inside
    row sums to ``weight``, the V column to ``overlap`` = Tr(P rho). The
    deficiency ``1 - weight - weight_perp`` is the amount by which the two
    one-sided mixtures fail to tile the state.
    """

    weight: float
    weight_perp: float
    overlap: float
    deficiency: float
    joint_v_inside: float
    joint_perp_inside: float
    joint_v_outside: float
    joint_perp_outside: float


def probability_table(rho, v: Subspace, tol: ToleranceConfig = DEFAULT_TOL) -> ProbabilityTable:
    arr = certify_density(rho, tol)
    weight = _clamped_weight(decompose(arr, v, tol).inside_trace, tol)
    weight_perp = _clamped_weight(decompose(arr, complement(v), tol).inside_trace, tol)
    if v.dim == 0:
        overlap = 0.0
    else:
        overlap = float(np.trace(v.basis.conj().T @ arr @ v.basis).real)
    return ProbabilityTable(
        weight=weight,
        weight_perp=weight_perp,
        overlap=overlap,
        deficiency=1.0 - weight - weight_perp,
        joint_v_inside=weight,
        joint_perp_inside=0.0,
        joint_v_outside=overlap - weight,
        joint_perp_outside=1.0 - overlap,
    )


@dataclasses.dataclass(frozen=True, eq=False)
class ComponentCell:
    """One chain component: its weight, overlap, and joint row.

    ``joints[j]`` is the joint probability of finding the state in support
    subspace j while the mixture component is k; the diagonal entry equals
    ``weight`` and the column sums reproduce the overlaps.
    """

    weight: float
    overlap: float
    joints: np.ndarray


@dataclasses.dataclass(frozen=True, eq=False)
class MultiSplitTable:
    components: list[ComponentCell]
    supports: list[Subspace]


def multi_probability_table(
    rho, chain: Sequence[Subspace], tol: ToleranceConfig = DEFAULT_TOL
) -> MultiSplitTable:
    """Probability table for the multi-component split along a chain.

    The chain decomposition writes rho as a sum of components with pairwise
    disjoint supports W_k; the component weights sum to one and the
    overlaps p_k = Tr(P_k rho) over the orthogonal projectors onto the W_k
    sum to at least one. Both facts are verified here.
    """
    arr = certify_density(rho, tol)
    chain_dec = chain_decompose(arr, chain, tol)
    projectors = [s.projector() for s in chain_dec.supports]
    weights = [_clamped_weight(w, tol) for w in chain_dec.weights]
    total = sum(weights)
    if abs(total - 1.0) > tol.psd_tol:
        raise ToleranceBreakdown(f"component weights sum to {total!r}, expected 1")
    overlaps = [float(np.trace(p @ arr).real) for p in projectors]
    if sum(overlaps) < 1.0 - tol.psd_tol:
        raise ToleranceBreakdown(f"overlaps sum to {sum(overlaps)!r}, expected >= 1")
    cells = []
    for k, comp in enumerate(chain_dec.components):
        joints = np.array([float(np.trace(p @ comp).real) for p in projectors])
        cells.append(ComponentCell(weight=weights[k], overlap=overlaps[k], joints=joints))
    return MultiSplitTable(components=cells, supports=list(chain_dec.supports))


def qubit_state(a: float, theta: float) -> np.ndarray:
    """Qubit with Bloch vector (a sin(theta), 0, a cos(theta))."""
    if not 0.0 <= a <= 1.0:
        raise DomainError(f"Bloch radius must lie in [0, 1], got {a!r}")
    return 0.5 * (
        np.eye(2, dtype=np.complex128)
        + a * np.sin(theta) * PAULI_X
        + a * np.cos(theta) * PAULI_Z
    )


def bloch_vector(rho) -> BlochVector:
    arr = as_matrix(rho)
    if arr.shape != (2, 2):
        raise DimensionMismatch("Bloch coordinates are defined for 2x2 operators")
    return BlochVector(
        float(np.trace(arr @ PAULI_X).real),
        float(np.trace(arr @ PAULI_Y).real),
        float(np.trace(arr @ PAULI_Z).real),
    )


@dataclasses.dataclass(frozen=True)
class QubitWeights:
    """Closed-form localization data for a qubit probed along +z.

    For the state with Bloch vector (a sin(theta), 0, a cos(theta)) and the
    probe line spanned by |+z>, the inside weights along the line and its
    complement, the deficiency, and the Bloch vector of the leftover state
    all have rational closed forms. ``leftover_bloch`` is None when a = 0
    (the leftover direction degenerates).
    """

    weight: float
    weight_perp: float
    deficiency: float
    leftover_bloch: BlochVector | None


def qubit_weights(a: float, theta: float) -> QubitWeights:
    """Closed forms for the qubit probed along the z axis.

    Domain: 0 <= a < 1 (mixed states) and 0 < theta < pi, so that the state
    is full-rank and genuinely non-commuting with the probe except in the
    limits.
    """
    if not 0.0 <= a < 1.0:
        raise DomainError(f"Bloch radius must lie in [0, 1), got {a!r}")
    if not 0.0 < theta < np.pi:
        raise DomainError(f"theta must lie strictly between 0 and pi, got {theta!r}")
    c = a * np.cos(theta)
    weight = 0.5 * (1.0 - a * a) / (1.0 - c)
    weight_perp = 0.5 * (1.0 - a * a) / (1.0 + c)
    deficiency = a * a * np.sin(theta) ** 2 / (1.0 - c * c)
    if a == 0.0:
        leftover = None
    else:
        leftover = BlochVector(
            float((1.0 - c * c) / (a * np.sin(theta))),
            0.0,
            float(c),
        )
    return QubitWeights(
        weight=float(weight),
        weight_perp=float(weight_perp),
        deficiency=float(deficiency),
        leftover_bloch=leftover,
    )


def support(psis: Sequence, weights: Sequence[float], tol: ToleranceConfig = DEFAULT_TOL) -> Subspace:
    """Span of the pure states appearing in a positively weighted sum.

    The range of sum_k w_k |psi_k><psi_k| with all w_k > 0 equals
    span{psi_k}; this computes it through the operator's range.
    """
    if len(psis) != len(weights) or not psis:
        raise DimensionMismatch("need equally many states and weights, at least one")
    vecs = [as_vector(p) for p in psis]
    dim = vecs[0].size
    acc = np.zeros((dim, dim), dtype=np.complex128)
    for vec, w in zip(vecs, weights):
        if vec.size != dim:
            raise DimensionMismatch("state vectors have mixed lengths")
        if float(np.linalg.norm(vec)) <= tol.rank_tol:
            raise ZeroVector("support got a zero state vector")
        if not w > 0.0:
            raise DomainError(f"weights must be positive, got {w!r}")
        acc += w * np.outer(vec, vec.conj())
    return range_of(hermitize(acc), tol)


@dataclasses.dataclass(frozen=True, eq=False)
class Mixture:
    """An explicit convex mixture of pure states reproducing a density matrix.

    ``floor`` is the guaranteed weight of each requested state in the
    mixture: the smallest nonzero eigenvalue of rho divided by the number
    of requested states.
    """

    floor: float
    weights: list[float]
    vectors: list[np.ndarray]


def _basis_through(first: np.ndarray, frame: np.ndarray) -> list[np.ndarray]:
    """Orthonormal basis of span(frame columns) whose first vector is ``first``.

    ``first`` must already lie in the span. Sequential orthogonalization of
    the frame columns against the growing basis; exactly one column drops.
    """
    basis = [first]
    for j in range(frame.shape[1]):
        vec = frame[:, j].copy()
        for b in basis:
            vec -= np.vdot(b, vec) * b
        norm = float(np.linalg.norm(vec))
        if norm > 1e-8:
            basis.append(vec / norm)
    return basis


def mixture_including(rho, psis: Sequence, tol: ToleranceConfig = DEFAULT_TOL) -> Mixture:
    """Write rho as a mixture in which each given pure state appears.

    Feasible exactly when every psi_k lies in ran(rho); then each appears
    with weight at least lambda_min / n where lambda_min is the smallest
    nonzero eigenvalue of rho and n the number of requested states. The
    construction charges lambda_min/n to a basis of ran(rho) through each
    psi_k and spectrally decomposes the PSD residue.
    """
    arr = certify_density(rho, tol)
    if not psis:
        raise DimensionMismatch("need at least one state to include")
    es = eigh(arr, tol)
    scale = float(np.abs(es.values).max())
    keep = np.abs(es.values) > tol.rank_tol * scale
    lam_min = float(es.values[keep].min())
    frame = es.vectors[:, keep]
    projector = frame @ frame.conj().T
    n = len(psis)
    normed = []
    for k, psi in enumerate(psis):
        vec = as_vector(psi, arr.shape[0])
        norm = float(np.linalg.norm(vec))
        if norm <= tol.rank_tol:
            raise ZeroVector(f"state {k} is the zero vector")
        vec = vec / norm
        stray = float(np.linalg.norm(vec - projector @ vec))
        if stray > tol.rank_tol:
            raise Infeasible(
                f"state {k} has a component of size {stray:.3e} outside ran(rho); "
                "no mixture of rho can contain it"
            )
        normed.append(projector @ vec / np.linalg.norm(projector @ vec))

    share = lam_min / n
    weights: list[float] = []
    vectors: list[np.ndarray] = []
    for vec in normed:
        for member in _basis_through(vec, frame):
            weights.append(share)
            vectors.append(member)
    residue = hermitize(arr - lam_min * projector)
    res_vals, res_vecs = eigh(residue, tol)
    for value, column in zip(res_vals, res_vecs.T):
        if value > tol.rank_tol * max(scale, 1.0):
            weights.append(float(value))
            vectors.append(column)

    rebuilt = sum(w * np.outer(v, v.conj()) for w, v in zip(weights, vectors))
    if np.linalg.norm(rebuilt - arr) > tol.agree_tol * (1.0 + np.linalg.norm(arr)):
        raise ToleranceBreakdown("mixture failed to reproduce the state")
    return Mixture(floor=share, weights=weights, vectors=vectors)


def reconstruct(probes: Sequence, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Recover a positive-definite operator from line weights.

    Each probe is a pair (psi, w) with psi a unit vector and w > 0 the
    localization weight along psi, which fixes one linear functional
    <psi| A^{-1} |psi> = 1/w of the inverse. An informationally complete
    probe set (rank d^2 as Hermitian forms) determines the inverse by least
    squares; the operator is its pseudo-inverse.
    """
    pairs = [(as_vector(p), float(w)) for p, w in probes]
    if not pairs:
        raise UnderdeterminedSystem("no probes given")
    dim = pairs[0][0].size
    rows = []
    rhs = []
    for k, (vec, w) in enumerate(pairs):
        if vec.size != dim:
            raise DimensionMismatch("probe vectors have mixed lengths")
        norm = float(np.linalg.norm(vec))
        if norm <= tol.rank_tol:
            raise ZeroVector(f"probe {k} is the zero vector")
        if abs(norm - 1.0) > 1e-6:
            raise DomainError(f"probe {k} must be normalized, got norm {norm!r}")
        if not w > 0.0:
            raise DomainError(f"probe weights must be positive, got {w!r}")
        row = np.zeros(dim * dim)
        row[:dim] = np.abs(vec) ** 2
        pos = dim
        for i in range(dim):
            for j in range(i + 1, dim):
                cross = vec[i].conjugate() * vec[j]
                row[pos] = 2.0 * cross.real
                row[pos + 1] = -2.0 * cross.imag
                pos += 2
        rows.append(row)
        rhs.append(1.0 / w)
    design = np.array(rows)
    target = np.array(rhs)
    solution, residuals, rank, _ = np.linalg.lstsq(design, target, rcond=tol.rank_tol)
    if rank < dim * dim:
        raise UnderdeterminedSystem(
            f"probe set spans only {rank} of {dim * dim} Hermitian-form dimensions"
        )
    misfit = float(np.linalg.norm(design @ solution - target))
    if misfit > tol.agree_tol * max(1.0, float(np.linalg.norm(target))):
        raise InconsistentProbes(
            f"probe equations are inconsistent (residual {misfit:.3e})"
        )
    inverse = np.zeros((dim, dim), dtype=np.complex128)
    inverse[np.diag_indices(dim)] = solution[:dim]
    pos = dim
    for i in range(dim):
        for j in range(i + 1, dim):
            inverse[i, j] = solution[pos] + 1j * solution[pos + 1]
            inverse[j, i] = solution[pos] - 1j * solution[pos + 1]
            pos += 2
    return pseudo_power(inverse, -1, tol)


def entropy(rho, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Von Neumann entropy in natural log units."""
    arr = certify_density(rho, tol)
    values = eigh(arr, tol).values
    scale = float(np.abs(values).max())
    kept = values[values > tol.rank_tol * max(scale, 1e-300)]
    return float(-np.sum(kept * np.log(kept)))


def log_weight(rho, v: Subspace, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Natural log of the localization weight; -inf when the weight is zero."""
    weight = state_decompose(rho, v, tol).weight
    if weight <= 0.0:
        return float("-inf")
    return float(np.log(weight))


def mask(rho, sigma, weight: float, v: Subspace, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Blend a state supported inside V with one supported away from V.

    The blend w * rho + (1 - w) * sigma can be undone exactly by ``unmask``
    because the two supports are recoverable from the blend. Raises
    :class:`SupportViolation` when rho leaks outside V or sigma's support
    touches V.
    """
    rho_arr = certify_density(rho, tol)
    sigma_arr = certify_density(sigma, tol)
    if rho_arr.shape != sigma_arr.shape:
        raise DimensionMismatch("rho and sigma live in different dimensions")
    _ambient_check(rho_arr, v)
    if not 0.0 < weight < 1.0:
        raise DomainError(f"mask weight must lie strictly inside (0, 1), got {weight!r}")
    rho_range = range_of(rho_arr, tol)
    if intersect(rho_range, v, tol).dim != rho_range.dim:
        raise SupportViolation("rho must be supported inside the subspace")
    sigma_range = range_of(sigma_arr, tol)
    if intersect(sigma_range, v, tol).dim != 0:
        raise SupportViolation("sigma's support must meet the subspace only at zero")
    return weight * rho_arr + (1.0 - weight) * sigma_arr


def unmask(
    rho_prime, v: Subspace, tol: ToleranceConfig = DEFAULT_TOL
) -> tuple[float, np.ndarray | None, np.ndarray | None]:
    """Recover (weight, inside state, outside state) from a blended state."""
    split = state_decompose(rho_prime, v, tol)
    return split.weight, split.inside, split.outside


def measurement_projector(rho, v: Subspace, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Projector whose expectation on rho equals the localization weight.

    Q projects onto the image under rho^{-1/2} (pseudo power) of
    ran(rho) ∩ V; then Tr(Q rho) equals the inside weight, expressing the
    weight as an ordinary projective expectation value.
    """
    arr = certify_density(rho, tol)
    _ambient_check(arr, v)
    reachable = intersect(range_of(arr, tol), v, tol)
    if reachable.dim == 0:
        return np.zeros_like(arr)
    warped = pseudo_power(arr, -0.5, tol) @ reachable.basis
    return Subspace.span(warped, tol).projector()


def _ambient_check(arr: np.ndarray, v: Subspace) -> None:
    if arr.shape[0] != v.ambient_dim:
        raise DimensionMismatch(
            f"operator dimension {arr.shape[0]} vs subspace ambient {v.ambient_dim}"
        )
