"""Decomposition of a PSD operator into inside and outside components.

Given a positive-semidefinite operator A and a subspace V, there is exactly
one splitting A = B + C in which B is supported inside V while the support
of C meets V only in the zero vector. ``decompose`` builds that splitting by
block reduction (the canonical route); ``decompose_via_projection`` and
``decompose_via_inverse`` rebuild it through two independent constructions
and exist to cross-check the canonical one, never to replace it silently.

The component supported inside the subspace is called ``inside`` (its trace
is the localization weight of the quantum layer); the complementary
component is ``outside``.
"""

from __future__ import annotations

import dataclasses
from typing import Sequence

import numpy as np

from .errors import (
    AgreementError,
    BlockInconsistency,
    ChainNotNested,
    DimensionMismatch,
    DomainError,
    NotPositiveDefinite,
    ZeroVector,
)
from .linalg import (
    DEFAULT_TOL,
    Subspace,
    ToleranceConfig,
    as_vector,
    certify_hermitian,
    certify_psd,
    complement,
    eigh,
    hermitize,
    intersect,
    pseudo_power,
    range_of,
)

__all__ = [
    "BlockForm",
    "Decomposition",
    "ChainDecomposition",
    "block_form",
    "decompose",
    "decompose_via_projection",
    "decompose_via_inverse",
    "trace_inside",
    "trace_outside",
    "trace_overlap",
    "line_weight",
    "warped_inner",
    "oblique_projector",
    "chain_decompose",
    "trace_bounds",
    "deficiency_operator",
]


@dataclasses.dataclass(frozen=True, eq=False)
class BlockForm:
    """A PSD operator written in an adapted basis [V | active | kernel].

    ``active`` spans the part of the orthogonal complement of V on which the
    compressed operator is invertible; ``kernel`` spans the rest. For a PSD
    operator the coupling between V and the kernel must vanish, which
    ``block_form`` enforces within tolerance.

    head
        The V-by-V block of the operator.
    coupling
        The active-by-V block (rows indexed by the active basis).
    core
        The active-by-active block; positive definite by construction, with
        smallest eigenvalue above ``rank_tol`` times the operator's scale.
    """

    subspace: Subspace
    active: Subspace
    kernel: Subspace
    head: np.ndarray
    coupling: np.ndarray
    core: np.ndarray


@dataclasses.dataclass(frozen=True, eq=False)
class Decomposition:
    """The unique splitting A = inside + outside along a subspace.

    ``inside`` is supported within the subspace, ``outside`` has support
    meeting it only at zero. When a component vanishes within tolerance it
    is the exact zero matrix and its range the zero subspace.
    """

    inside: np.ndarray
    outside: np.ndarray
    inside_trace: float
    outside_trace: float
    inside_range: Subspace
    outside_range: Subspace


@dataclasses.dataclass(frozen=True, eq=False)
class ChainDecomposition:
    """Telescoped components of A along a descending subspace chain.

    ``components[k]`` is the piece split off at chain step k; the pieces sum
    to A, their supports are pairwise disjoint, and each component equals
    the inside part of A along its own support.
    """

    components: list[np.ndarray]
    supports: list[Subspace]
    weights: list[float]


def _check_ambient(arr: np.ndarray, v: Subspace) -> None:
    if v.ambient_dim != arr.shape[0]:
        raise DimensionMismatch(
            f"operator dimension {arr.shape[0]} vs subspace ambient {v.ambient_dim}"
        )


def block_form(op, v: Subspace, tol: ToleranceConfig = DEFAULT_TOL) -> BlockForm:
    """Adapted-basis block reduction of a PSD operator along a subspace.

    Splits the orthogonal complement of ``v`` into the active part (where
    the compressed operator has eigenvalues above ``rank_tol`` times the
    operator scale) and its kernel, and checks that the V-to-kernel coupling
    vanishes within ``psd_tol`` times the Frobenius norm, as positivity
    demands. Requires 0 < dim(v) < ambient dimension.
    """
    arr, _, scale = certify_psd(op, tol)
    _check_ambient(arr, v)
    if v.dim == 0 or v.dim == v.ambient_dim:
        raise DomainError("block form needs a proper nontrivial subspace")
    perp = complement(v)
    compressed = hermitize(perp.basis.conj().T @ arr @ perp.basis)
    values, vectors = eigh(compressed, tol)
    live = values > tol.rank_tol * scale
    active = Subspace(perp.basis @ vectors[:, live]) if live.any() else Subspace.zero(arr.shape[0])
    dead = ~live
    kernel = Subspace(perp.basis @ vectors[:, dead]) if dead.any() else Subspace.zero(arr.shape[0])
    head = hermitize(v.basis.conj().T @ arr @ v.basis)
    coupling = active.basis.conj().T @ arr @ v.basis
    core = np.diag(values[live]).astype(np.complex128)
    if kernel.dim:
        stray = np.linalg.norm(kernel.basis.conj().T @ arr @ v.basis)
        allowed = tol.psd_tol * max(np.linalg.norm(arr), 1e-300)
        if stray > allowed:
            raise BlockInconsistency(
                f"subspace-to-kernel coupling {stray:.3e} exceeds {allowed:.3e}; "
                "the operator is not PSD within tolerance"
            )
    return BlockForm(v, active, kernel, head, coupling, core)


def _finish(arr: np.ndarray, scale: float, inside: np.ndarray, tol: ToleranceConfig) -> Decomposition:
    """Assemble a Decomposition from A and a computed inside component.

    Rank decisions for the two components are taken relative to A's own
    spectral scale, and a component that vanishes at that scale is snapped
    to the exact zero matrix (its partner then equals A exactly).
    """
    n = arr.shape[0]
    zero = np.zeros((n, n), dtype=np.complex128)
    inside = hermitize(inside)
    inside_range = range_of(inside, tol, scale=scale)
    if inside_range.dim == 0:
        inside = zero
        outside = arr.copy()
    else:
        outside = hermitize(arr - inside)
    outside_range = range_of(outside, tol, scale=scale)
    if outside_range.dim == 0:
        outside = zero
        inside = arr.copy()
        inside_range = range_of(inside, tol, scale=scale)
    return Decomposition(
        inside=inside,
        outside=outside,
        inside_trace=float(np.trace(inside).real),
        outside_trace=float(np.trace(outside).real),
        inside_range=inside_range,
        outside_range=outside_range,
    )


def decompose(op, v: Subspace, tol: ToleranceConfig = DEFAULT_TOL) -> Decomposition:
    """Split a PSD operator along a subspace (canonical block-reduction route).

    The inside component is the compression of A to V minus the correction
    mediated by the active part of the complement: with A written in the
    adapted basis as blocks (head, coupling, core), the inside component is
    head - coupling† core^{-1} coupling padded back into the full space.

    Raises NotPSD when A fails positivity, BlockInconsistency when the
    block structure contradicts positivity beyond tolerance.
    """
    arr, _, scale = certify_psd(op, tol)
    _check_ambient(arr, v)
    n = arr.shape[0]
    zero = np.zeros((n, n), dtype=np.complex128)
    if scale <= 0.0:
        zsub = Subspace.zero(n)
        return Decomposition(zero, zero.copy(), 0.0, 0.0, zsub, zsub)
    if v.dim == 0:
        return _finish(arr, scale, zero, tol)
    if v.dim == n:
        return _finish(arr, scale, arr, tol)
    form = block_form(arr, v, tol)
    if form.active.dim == 0:
        # the complement carries nothing, so A already lives inside V
        return _finish(arr, scale, arr, tol)
    try:
        solved = np.linalg.solve(form.core, form.coupling)
    except np.linalg.LinAlgError as exc:
        raise BlockInconsistency(f"core block solve failed: {exc}") from exc
    reduced = hermitize(form.head - form.coupling.conj().T @ solved)
    inside = form.subspace.basis @ reduced @ form.subspace.basis.conj().T
    return _finish(arr, scale, inside, tol)


def decompose_via_projection(op, v: Subspace, tol: ToleranceConfig = DEFAULT_TOL) -> Decomposition:
    """Verification route: inside = A^{1/2} Q A^{1/2}.

    Q is the orthogonal projector onto the image under A^{-1/2} (pseudo
    power) of V ∩ ran(A). Used to cross-check ``decompose``; same contract.
    """
    arr, es, scale = certify_psd(op, tol)
    _check_ambient(arr, v)
    n = arr.shape[0]
    if scale <= 0.0:
        zsub = Subspace.zero(n)
        zero = np.zeros((n, n), dtype=np.complex128)
        return Decomposition(zero, zero.copy(), 0.0, 0.0, zsub, zsub)
    reachable = intersect(v, range_of(arr, tol), tol)
    if reachable.dim == 0:
        return _finish(arr, scale, np.zeros((n, n), dtype=np.complex128), tol)
    inv_root = pseudo_power(arr, -0.5, tol)
    warped = inv_root @ reachable.basis
    projector = Subspace.span(warped, tol).projector()
    root = pseudo_power(arr, 0.5, tol)
    inside = root @ projector @ root
    return _finish(arr, scale, inside, tol)


def decompose_via_inverse(op, v: Subspace, tol: ToleranceConfig = DEFAULT_TOL) -> Decomposition:
    """Verification route: the inside component's pseudo-inverse is P~ A^+ P~.

    P~ projects onto V ∩ ran(A). The inside component is recovered by
    pseudo-inverting that compression. Same contract as ``decompose``.
    """
    arr, es, scale = certify_psd(op, tol)
    _check_ambient(arr, v)
    n = arr.shape[0]
    if scale <= 0.0:
        zsub = Subspace.zero(n)
        zero = np.zeros((n, n), dtype=np.complex128)
        return Decomposition(zero, zero.copy(), 0.0, 0.0, zsub, zsub)
    reachable = intersect(v, range_of(arr, tol), tol)
    if reachable.dim == 0:
        return _finish(arr, scale, np.zeros((n, n), dtype=np.complex128), tol)
    proj = reachable.projector()
    compressed = hermitize(proj @ pseudo_power(arr, -1, tol) @ proj)
    inside = pseudo_power(compressed, -1, tol)
    return _finish(arr, scale, inside, tol)


def trace_inside(op, v: Subspace, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Trace of the inside component (the localization weight for states)."""
    return decompose(op, v, tol).inside_trace


def trace_outside(op, v: Subspace, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Trace of the outside component."""
    return decompose(op, v, tol).outside_trace


def trace_overlap(op, v: Subspace, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Tr(P A) for the orthogonal projector P onto the subspace."""
    arr = certify_hermitian(op, tol)
    _check_ambient(arr, v)
    if v.dim == 0:
        return 0.0
    return float(np.trace(v.basis.conj().T @ arr @ v.basis).real)


def line_weight(op, psi, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Localization weight along the line spanned by a unit vector.

    Equals 1 / <psi| A^+ |psi> when psi lies in ran(A) and 0 when psi has a
    component outside ran(A) larger than ``rank_tol``. Agrees with
    ``trace_inside`` on the one-dimensional subspace; this closed form is
    cheaper and is exercised against the general route in the tests.
    """
    arr, es, scale = certify_psd(op, tol)
    vec = as_vector(psi, arr.shape[0])
    norm = float(np.linalg.norm(vec))
    if norm <= tol.rank_tol:
        raise ZeroVector("line_weight needs a nonzero vector")
    if abs(norm - 1.0) > 1e-6:
        raise DomainError(f"psi must be normalized, got norm {norm!r}")
    if scale <= 0.0:
        return 0.0
    keep = np.abs(es.values) > tol.rank_tol * scale
    frame = es.vectors[:, keep]
    coeffs = frame.conj().T @ vec
    # Residual computed directly; differencing squared norms loses half the
    # significant digits and false-flags vectors inside the range.
    outside = float(np.linalg.norm(vec - frame @ coeffs))
    if outside > tol.rank_tol:
        return 0.0
    denom = float(np.sum(np.abs(coeffs) ** 2 / es.values[keep]).real)
    return 1.0 / denom


def warped_inner(op, x, y, tol: ToleranceConfig = DEFAULT_TOL) -> complex:
    """Inner product <x, A^{-1} y> for a positive-definite operator."""
    arr, es, scale = certify_psd(op, tol)
    if scale <= 0.0 or float(es.values.min()) <= tol.rank_tol * scale:
        raise NotPositiveDefinite("warped_inner needs a positive-definite operator")
    xv = as_vector(x, arr.shape[0])
    yv = as_vector(y, arr.shape[0])
    cx = es.vectors.conj().T @ xv
    cy = es.vectors.conj().T @ yv
    return complex(np.sum(cx.conj() * cy / es.values))


def oblique_projector(op, v: Subspace, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """The idempotent map sending A to its inside component.

    For positive-definite A the operator inside @ A^{-1} is idempotent,
    reproduces the inside component when applied to A, and is Hermitian
    with respect to the inner product warped by A^{-1}.
    """
    arr, es, scale = certify_psd(op, tol)
    if scale <= 0.0 or float(es.values.min()) <= tol.rank_tol * scale:
        raise NotPositiveDefinite("oblique_projector needs a positive-definite operator")
    dec = decompose(arr, v, tol)
    return dec.inside @ pseudo_power(arr, -1, tol)


def chain_decompose(
    op, chain: Sequence[Subspace], tol: ToleranceConfig = DEFAULT_TOL
) -> ChainDecomposition:
    """Split A into components along a strictly descending subspace chain.

    The chain must strictly decrease in dimension, each member contained in
    the previous (checked through ``intersect``), and end at the zero
    subspace. Step k decomposes the running inside component along chain[k]
    and splits off its outside part as component k. Requires positive
    definite A. Every component is verified to equal the inside component
    of the original A along the component's own support.
    """
    arr, es, scale = certify_psd(op, tol)
    if scale <= 0.0 or float(es.values.min()) <= tol.rank_tol * scale:
        raise NotPositiveDefinite("chain_decompose needs a positive-definite operator")
    subs = list(chain)
    if not subs:
        raise ChainNotNested("chain must contain at least the zero subspace")
    for sub in subs:
        _check_ambient(arr, sub)
    for prev, nxt in zip(subs, subs[1:]):
        if nxt.dim >= prev.dim:
            raise ChainNotNested(
                f"chain dimensions must strictly decrease, got {prev.dim} -> {nxt.dim}"
            )
        if intersect(nxt, prev, tol).dim != nxt.dim:
            raise ChainNotNested("each chain member must be contained in the previous")
    if subs[-1].dim != 0:
        raise ChainNotNested("chain must end at the zero subspace")

    running = arr
    components: list[np.ndarray] = []
    supports: list[Subspace] = []
    weights: list[float] = []
    for sub in subs:
        dec = decompose(running, sub, tol)
        components.append(dec.outside)
        supports.append(dec.outside_range)
        weights.append(dec.outside_trace)
        running = dec.inside

    norm_a = float(np.linalg.norm(arr))
    for index, (comp, sup) in enumerate(zip(components, supports)):
        direct = decompose(arr, sup, tol).inside
        gap = float(np.linalg.norm(direct - comp))
        if gap > tol.agree_tol * (1.0 + norm_a):
            raise AgreementError(
                f"chain component {index} disagrees with the direct decomposition "
                f"along its support by {gap:.3e}"
            )
    return ChainDecomposition(components, supports, weights)


def trace_bounds(op, v: Subspace, tol: ToleranceConfig = DEFAULT_TOL) -> tuple[float, float]:
    """Eigenvalue-sum bracket for the inside trace.

    With m the dimension of V ∩ ran(A), the inside trace lies between the
    sum of the m smallest and the sum of the m largest eigenvalues of A.
    """
    arr, es, scale = certify_psd(op, tol)
    _check_ambient(arr, v)
    if scale <= 0.0:
        return (0.0, 0.0)
    m = intersect(v, range_of(arr, tol), tol).dim
    if m == 0:
        return (0.0, 0.0)
    ascending = np.sort(es.values)
    return (float(ascending[:m].sum()), float(ascending[-m:].sum()))


def deficiency_operator(op, v: Subspace, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """A minus its inside components along V and along the complement of V.

    The result has nonnegative trace; it vanishes exactly when V reduces A,
    and for positive-definite A with a non-invariant V it carries at least
    one strictly negative eigenvalue.
    """
    arr, _, scale = certify_psd(op, tol)
    _check_ambient(arr, v)
    along = decompose(arr, v, tol).inside
    across = decompose(arr, complement(v), tol).inside
    return hermitize(arr - along - across)
