"""Randomized self-verification suites with independent numerical oracles.

Each suite draws reproducible random instances, exercises one family of
identities or inequalities satisfied by the splitting, and reports per-check
pass counts, worst residuals, and replayable counterexamples. Instance
generation is driven by :class:`InstanceSpec`; the operator, subspace, and
state streams are decorrelated so that changing one ingredient does not
reshuffle the others.

The trace oracle :func:`feasible_trace_ascent` maximizes the inside trace
over the feasible set directly (greedy rank-one ascent whose iterates are
certified feasible at every accepted step) and shares no code with the
closed-form construction it is used to test.
"""

from __future__ import annotations

import dataclasses
import time
from typing import Callable

import numpy as np
from scipy.linalg import expm

from .decomp import (
    block_form,
    chain_decompose,
    decompose,
    decompose_via_inverse,
    decompose_via_projection,
    deficiency_operator,
    line_weight,
    oblique_projector,
    trace_bounds,
    trace_overlap,
    warped_inner,
)
from .errors import DimensionMismatch, DomainError, Infeasible, SupportViolation, UnderdeterminedSystem, UnknownSuite
from .fileio import matrix_payload, subspace_payload, vector_payload
from .linalg import (
    DEFAULT_TOL,
    Subspace,
    ToleranceConfig,
    certify_psd,
    complement,
    hermitize,
    intersect,
    is_pvm,
    pseudo_power,
    range_of,
    same_subspace,
    spectral_norm,
    tensor,
    tensor_subspace,
)
from .quantum import (
    bloch_vector,
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

__all__ = [
    "InstanceSpec",
    "random_psd",
    "random_subspace",
    "random_density",
    "random_unit_vector",
    "AscentResult",
    "feasible_trace_ascent",
    "FalsifierResult",
    "maximality_falsifier",
    "CheckStats",
    "SuiteReport",
    "SUITES",
    "list_suites",
    "run_suite",
    "run_all",
]

# Dedicated substreams per ingredient so instances stay decorrelated.
STREAM_PSD = 0
STREAM_SUBSPACE = 1
STREAM_DENSITY = 2
STREAM_VECTOR = 3


@dataclasses.dataclass(frozen=True)
class InstanceSpec:
    """Reproducible description of one random test instance."""

    dim: int
    rank: int
    subspace_dim: int
    seed: int
    positivity: str = "psd"

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise DomainError(f"dim must be at least 1, got {self.dim}")
        if not 0 <= self.rank <= self.dim:
            raise DomainError(f"rank must lie in [0, {self.dim}], got {self.rank}")
        if not 0 <= self.subspace_dim <= self.dim:
            raise DomainError(
                f"subspace_dim must lie in [0, {self.dim}], got {self.subspace_dim}"
            )
        if self.positivity not in ("psd", "pd"):
            raise DomainError(f"positivity must be 'psd' or 'pd', got {self.positivity!r}")
        if self.positivity == "pd" and self.rank != self.dim:
            raise DomainError("positive-definite instances need full rank")
        if self.seed < 0:
            raise DomainError(f"seed must be nonnegative, got {self.seed}")


def _rng(spec: InstanceSpec, stream: int) -> np.random.Generator:
    return np.random.default_rng([spec.seed, stream])


def _ginibre(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return (rng.normal(size=(rows, cols)) + 1j * rng.normal(size=(rows, cols))) / np.sqrt(2.0)


def random_psd(spec: InstanceSpec) -> np.ndarray:
    """Random PSD operator of the prescribed rank, unit spectral norm.

    Wishart construction G G* with G drawn from the operator stream; the
    'pd' flavor adds a small spectral floor for conditioning.
    """
    if spec.rank == 0:
        return np.zeros((spec.dim, spec.dim), dtype=np.complex128)
    g = _ginibre(_rng(spec, STREAM_PSD), spec.dim, spec.rank)
    arr = hermitize(g @ g.conj().T)
    if spec.positivity == "pd":
        floor = 0.05 * float(np.trace(arr).real) / spec.dim
        arr = arr + floor * np.eye(spec.dim)
    return arr / spectral_norm(arr)


def random_subspace(spec: InstanceSpec) -> Subspace:
    """Haar-distributed subspace of the prescribed dimension."""
    if spec.subspace_dim == 0:
        return Subspace.zero(spec.dim)
    g = _ginibre(_rng(spec, STREAM_SUBSPACE), spec.dim, spec.subspace_dim)
    q, r = np.linalg.qr(g)
    diag = np.diagonal(r)
    phases = np.where(np.abs(diag) > 0, diag / np.abs(np.where(diag == 0, 1, diag)), 1.0)
    return Subspace(q * phases.conj()[np.newaxis, :])


def random_density(spec: InstanceSpec) -> np.ndarray:
    """Random unit-trace state of the prescribed rank (density stream)."""
    if spec.rank == 0:
        raise DomainError("a density matrix cannot have rank 0")
    g = _ginibre(_rng(spec, STREAM_DENSITY), spec.dim, spec.rank)
    arr = hermitize(g @ g.conj().T)
    if spec.positivity == "pd":
        floor = 0.1 * float(np.trace(arr).real) / spec.dim
        arr = arr + floor * np.eye(spec.dim)
    return arr / float(np.trace(arr).real)


def random_unit_vector(spec: InstanceSpec) -> np.ndarray:
    """Haar-random unit vector (vector stream)."""
    rng = _rng(spec, STREAM_VECTOR)
    vec = rng.normal(size=spec.dim) + 1j * rng.normal(size=spec.dim)
    return vec / np.linalg.norm(vec)


# ---------------------------------------------------------------------------
# independent trace oracle


@dataclasses.dataclass(frozen=True)
class AscentResult:
    """Outcome of the greedy feasible ascent.

    ``value`` is a certified lower bound on the maximal inside trace; the
    slack A - X stayed PSD within 1e-13 of the operator scale at every
    accepted step, so the value can overshoot the true maximum by at most a
    few times that slop.
    """

    value: float
    converged: bool
    sweeps: int
    feasibility_margin: float


def feasible_trace_ascent(
    op,
    v: Subspace,
    tol: ToleranceConfig = DEFAULT_TOL,
    *,
    max_sweeps: int = 150,
    seed: int = 0,
) -> AscentResult:
    """Maximize Tr(X) over PSD X supported in V with X <= A, from below.

    Greedy rank-one ascent: along a unit direction u in ran(S) for the
    current slack S = A - X the exact headroom is 1 / <u, S^+ u>, and only
    directions in V ∩ ran(S) can be boosted at all. Each sweep rebuilds
    that cone, then boosts its basis directions, the eigendirections of the
    compressed slack, and a few random mixes, with backtracking so every
    accepted iterate is certified feasible. The feasible set is an operator
    interval, so each sweep recovers at least a fixed fraction of the
    remaining gap and stalls only happen at the top.
    """
    arr, _, scale = certify_psd(op, tol)
    if v.ambient_dim != arr.shape[0]:
        raise DimensionMismatch(
            f"operator dimension {arr.shape[0]} vs subspace ambient {v.ambient_dim}"
        )
    if v.dim == 0 or scale <= 0.0:
        return AscentResult(0.0, True, 0, 0.0)
    rng = np.random.default_rng([seed, 101])
    slack = arr.copy()
    total = 0.0
    floor = 1e-13 * scale
    kernel_cut = 1e-12 * scale
    worst = 0.0
    proj_v = v.projector()
    vals, vecs = np.linalg.eigh(slack)

    for sweep in range(1, max_sweeps + 1):
        gained = 0.0
        # Rank decisions on the shrinking slack stay relative to A's scale.
        cone = intersect(v, range_of(slack, tol, scale=scale), tol)
        if cone.dim == 0:
            return AscentResult(total, True, sweep, worst)
        cbasis = cone.basis
        m = cone.dim
        compressed = hermitize(cbasis.conj().T @ slack @ cbasis)
        _, comp_vecs = np.linalg.eigh(compressed)
        directions = [cbasis[:, j] for j in range(m)]
        directions += [cbasis @ comp_vecs[:, j] for j in range(m)]
        for _ in range(2 * m):
            g = rng.normal(size=m) + 1j * rng.normal(size=m)
            directions.append(cbasis @ (g / np.linalg.norm(g)))
        for u in directions:
            live = vals > kernel_cut
            # Snap the proposal into ran(slack); the cone construction makes
            # the discarded component numerical dust.
            live_frame = vecs[:, live]
            coeff = live_frame.conj().T @ u
            inside_norm = float(np.linalg.norm(coeff))
            if inside_norm < 0.5:
                continue
            coeff = coeff / inside_norm
            u = live_frame @ coeff
            # Boosting mass outside V would overstate the inside trace, so a
            # snapped direction that drifted from V is discarded (the cone is
            # rebuilt fresh each sweep).
            if float(np.linalg.norm(u - proj_v @ u)) > 1e-7:
                continue
            quad = float((np.abs(coeff) ** 2 / vals[live]).sum())
            if quad <= 0.0:
                continue
            step = (1.0 - 1e-9) / quad
            if step <= 1e-14 * scale:
                continue
            for _ in range(55):
                trial = hermitize(slack - step * np.outer(u, u.conj()))
                low = float(np.linalg.eigvalsh(trial).min())
                if low >= -floor:
                    slack = trial
                    total += step
                    gained += step
                    worst = min(worst, low)
                    vals, vecs = np.linalg.eigh(slack)
                    break
                step *= 0.5
                if step <= 1e-16 * scale:
                    break
        if gained <= 1e-12 * scale:
            return AscentResult(total, True, sweep, worst)
    return AscentResult(total, False, max_sweeps, worst)


@dataclasses.dataclass(frozen=True)
class FalsifierResult:
    """Worst-case margin over random attempts to enlarge the inside part.

    For each probe direction u in V the minimal eigenvalue of
    A - inside - eps u u* must drop below -0.9 eps |w|^2, where w is the
    component of u orthogonal to the outside component's range (never zero,
    since the outside range meets V only at zero). ``worst_margin`` is the
    largest value of min-eig + 0.9 eps |w|^2 across probes; maximality of
    the inside part demands it stay nonpositive.
    """

    directions: int
    worst_margin: float
    epsilon: float
    passed: bool


def maximality_falsifier(
    op,
    v: Subspace,
    tol: ToleranceConfig = DEFAULT_TOL,
    *,
    directions: int = 50,
    seed: int = 0,
) -> FalsifierResult:
    arr, _, scale = certify_psd(op, tol)
    if v.ambient_dim != arr.shape[0]:
        raise DimensionMismatch(
            f"operator dimension {arr.shape[0]} vs subspace ambient {v.ambient_dim}"
        )
    if v.dim == 0 or scale <= 0.0:
        return FalsifierResult(0, float("-inf"), 0.0, True)
    dec = decompose(arr, v, tol)
    eps = 1e-6 * scale
    out_proj = dec.outside_range.projector() if dec.outside_range.dim else None
    rng = np.random.default_rng([seed, 202])
    worst = float("-inf")
    for _ in range(directions):
        g = rng.normal(size=v.dim) + 1j * rng.normal(size=v.dim)
        u = v.basis @ (g / np.linalg.norm(g))
        w = u if out_proj is None else u - out_proj @ u
        w2 = float(np.vdot(w, w).real)
        perturbed = hermitize(dec.outside - eps * np.outer(u, u.conj()))
        low = float(np.linalg.eigvalsh(perturbed).min())
        worst = max(worst, low + 0.9 * eps * w2)
    return FalsifierResult(directions, worst, eps, worst <= 0.0)


# ---------------------------------------------------------------------------
# suite machinery


@dataclasses.dataclass
class CheckStats:
    passes: int = 0
    failures: int = 0
    worst: float = float("-inf")
    limit: float = 0.0


@dataclasses.dataclass
class SuiteReport:
    suite: str
    trials: int
    seed: int
    checks: dict[str, CheckStats]
    counterexamples: list[dict]
    elapsed: float

    @property
    def passed(self) -> bool:
        return all(stats.failures == 0 for stats in self.checks.values())

    def payload(self) -> dict:
        return {
            "suite": self.suite,
            "trials": self.trials,
            "seed": self.seed,
            "passed": self.passed,
            "elapsed_seconds": self.elapsed,
            "checks": {
                name: {
                    "passes": stats.passes,
                    "failures": stats.failures,
                    "worst_residual": None if stats.worst == float("-inf") else stats.worst,
                    "limit": stats.limit,
                }
                for name, stats in self.checks.items()
            },
            "counterexamples": self.counterexamples,
        }

    def summary_lines(self) -> list[str]:
        lines = [
            f"suite {self.suite}: {'PASS' if self.passed else 'FAIL'} "
            f"({self.trials} trials, seed {self.seed}, {self.elapsed:.2f}s)"
        ]
        for name, stats in self.checks.items():
            worst = "n/a" if stats.worst == float("-inf") else f"{stats.worst:.3e}"
            lines.append(
                f"  {name}: {stats.passes} pass, {stats.failures} fail, "
                f"worst {worst} (limit {stats.limit:.3e})"
            )
        return lines


def _payload(value):
    if isinstance(value, Subspace):
        return subspace_payload(value)
    if isinstance(value, np.ndarray):
        if value.ndim == 2:
            return matrix_payload(value)
        return vector_payload(value)
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, (np.integer, int)):
        return int(value)
    return value


class _Recorder:
    """Accumulates per-check statistics and replayable counterexamples."""

    def __init__(self, suite: str, max_examples: int = 6) -> None:
        self.suite = suite
        self.checks: dict[str, CheckStats] = {}
        self.counterexamples: list[dict] = []
        self._max_examples = max_examples

    def check(self, name: str, residual: float, limit: float, context: dict | None = None) -> bool:
        stats = self.checks.setdefault(name, CheckStats(limit=float(limit)))
        stats.limit = float(limit)
        residual = float(residual)
        if residual > stats.worst:
            stats.worst = residual
        ok = residual <= limit
        if ok:
            stats.passes += 1
        else:
            stats.failures += 1
            if len(self.counterexamples) < self._max_examples:
                entry = {"check": name, "residual": residual, "limit": float(limit)}
                for key, value in (context or {}).items():
                    entry[key] = _payload(value)
                self.counterexamples.append(entry)
        return ok

    def ok(self, name: str, condition: bool, context: dict | None = None) -> bool:
        return self.check(name, 0.0 if condition else 1.0, 0.0, context)

    def expect(self, name: str, exc_type, fn, context: dict | None = None) -> bool:
        try:
            fn()
        except exc_type:
            return self.check(name, 0.0, 0.0, context)
        except Exception:  # wrong error type is still a failure
            return self.check(name, 1.0, 0.0, context)
        return self.check(name, 1.0, 0.0, context)


def _mixed_rank(t: int, dim: int) -> int:
    if dim == 1:
        return 1
    phase = t % 4
    if phase == 1:
        return dim - 1
    if phase == 3:
        return max(1, dim - 2)
    return dim


def _frob(arr: np.ndarray) -> float:
    return float(np.linalg.norm(arr))


def _neg_part(arr: np.ndarray) -> float:
    return max(0.0, -float(np.linalg.eigvalsh(hermitize(arr)).min()))


# ---------------------------------------------------------------------------
# suites


def _suite_route_agreement(rec: _Recorder, trials: int, seed: int, tol: ToleranceConfig) -> None:
    dims = (2, 3, 4, 5, 6, 7, 8)
    for t in range(trials):
        dim = dims[t % len(dims)]
        sdim = 0 if t % 11 == 10 else 1 + (t % dim)
        spec = InstanceSpec(dim, _mixed_rank(t, dim), sdim, seed + 7919 * t)
        arr = random_psd(spec)
        sub = random_subspace(spec)
        ctx = {"operator": arr, "subspace": sub, "seed": spec.seed}
        ref = max(1.0, _frob(arr))
        d0 = decompose(arr, sub, tol)
        d1 = decompose_via_projection(arr, sub, tol)
        d2 = decompose_via_inverse(arr, sub, tol)
        rec.check("schur-vs-projection", _frob(d0.inside - d1.inside) / ref, tol.agree_tol, ctx)
        rec.check("schur-vs-inverse", _frob(d0.inside - d2.inside) / ref, tol.agree_tol, ctx)
        rec.check("additivity", _frob(arr - d0.inside - d0.outside) / ref, tol.agree_tol, ctx)
        rec.check("inside-psd", _neg_part(d0.inside) / ref, tol.psd_tol, ctx)
        rec.check("outside-psd", _neg_part(d0.outside) / ref, tol.psd_tol, ctx)
        if sub.dim:
            off = np.eye(dim) - sub.projector()
            rec.check("inside-support", _frob(off @ d0.inside) / ref, tol.agree_tol, ctx)
        rec.ok("outside-disjoint", intersect(d0.outside_range, sub, tol).dim == 0, ctx)


def _suite_maximality(rec: _Recorder, trials: int, seed: int, tol: ToleranceConfig) -> None:
    dims = (2, 3, 4)
    for t in range(trials):
        dim = dims[t % len(dims)]
        sdim = 1 + (t % dim)
        spec = InstanceSpec(dim, _mixed_rank(t, dim), sdim, seed + 7919 * t)
        arr = random_psd(spec)
        sub = random_subspace(spec)
        ctx = {"operator": arr, "subspace": sub, "seed": spec.seed}
        inside_trace = decompose(arr, sub, tol).inside_trace
        result = feasible_trace_ascent(arr, sub, tol, seed=spec.seed + 1)
        rec.ok("ascent-converged", result.converged, ctx)
        rec.check("oracle-close", abs(inside_trace - result.value), 1e-4, ctx)
        rec.check("oracle-never-exceeds", result.value - inside_trace, 1e-9, ctx)
        probe = maximality_falsifier(arr, sub, tol, directions=10, seed=spec.seed + 2)
        rec.check("falsifier-margin", probe.worst_margin, 0.0, ctx)


def _suite_probability_bounds(rec: _Recorder, trials: int, seed: int, tol: ToleranceConfig) -> None:
    dims = (2, 3, 4, 5, 6)
    for t in range(trials):
        dim = dims[t % len(dims)]
        spec = InstanceSpec(dim, max(1, _mixed_rank(t, dim)), 1 + (t % dim), seed + 7919 * t)
        rho = random_density(spec)
        sub = random_subspace(spec)
        ctx = {"state": rho, "subspace": sub, "seed": spec.seed}
        table = probability_table(rho, sub, tol)
        overlap = trace_overlap(rho, sub, tol)
        slack = tol.psd_tol
        rec.check("weight-le-overlap", table.weight - table.overlap, slack, ctx)
        rec.check("overlap-le-one", table.overlap - 1.0, slack, ctx)
        rec.check("pair-sum-le-one", table.weight + table.weight_perp - 1.0, slack, ctx)
        rec.check("deficiency-nonneg", -table.deficiency, slack, ctx)
        joints = (
            table.joint_v_inside,
            table.joint_perp_inside,
            table.joint_v_outside,
            table.joint_perp_outside,
        )
        rec.check("joints-nonneg", -min(joints), slack, ctx)
        consistency = max(
            abs(table.overlap - overlap),
            abs(table.joint_v_inside - table.weight),
            abs(table.joint_perp_inside),
            abs(table.joint_v_inside + table.joint_v_outside - table.overlap),
            abs(sum(joints) - 1.0),
        )
        rec.check("table-consistent", consistency, tol.agree_tol, ctx)


def _suite_trace_bounds(rec: _Recorder, trials: int, seed: int, tol: ToleranceConfig) -> None:
    dims = (2, 3, 4, 5, 6)
    for t in range(trials):
        dim = dims[t % len(dims)]
        sdim = 0 if t % 13 == 12 else 1 + (t % dim)
        spec = InstanceSpec(dim, _mixed_rank(t, dim), sdim, seed + 7919 * t)
        arr = random_psd(spec)
        sub = random_subspace(spec)
        ctx = {"operator": arr, "subspace": sub, "seed": spec.seed}
        dec = decompose(arr, sub, tol)
        lo, hi = trace_bounds(arr, sub, tol)
        slack = tol.psd_tol * (1.0 + dim)
        rec.check("lower-bound", lo - dec.inside_trace, slack, ctx)
        rec.check("upper-bound", dec.inside_trace - hi, slack, ctx)
        compression = float(np.trace(sub.projector() @ arr).real)
        rec.check("inside-le-compression", dec.inside_trace - compression, slack, ctx)
        total = float(np.trace(arr).real)
        rec.check(
            "trace-additivity",
            abs(total - dec.inside_trace - dec.outside_trace),
            tol.agree_tol * (1.0 + abs(total)),
            ctx,
        )


def _suite_split_inequalities(rec: _Recorder, trials: int, seed: int, tol: ToleranceConfig) -> None:
    dims = (3, 4, 5, 6)
    for t in range(trials):
        dim = dims[t % len(dims)]
        sdim = 2 + (t % (dim - 1))
        spec = InstanceSpec(dim, max(1, _mixed_rank(t, dim)), sdim, seed + 7919 * t)
        rho = random_density(spec)
        sub = random_subspace(spec)
        inner = Subspace(sub.basis[:, : sub.dim - 1])
        ctx = {"state": rho, "subspace": sub, "seed": spec.seed}
        big = decompose(rho, sub, tol)
        small = decompose(rho, inner, tol)
        slack = tol.psd_tol
        rec.check("scalar-monotone", small.inside_trace - big.inside_trace, slack, ctx)
        rec.check("operator-monotone", _neg_part(big.inside - small.inside), slack, ctx)
        perp_weight = decompose(rho, complement(sub), tol).inside_trace
        rec.check("complement-pair", big.inside_trace + perp_weight - 1.0, slack, ctx)
        overlap = trace_overlap(rho, sub, tol)
        rec.check("weight-le-overlap", big.inside_trace - overlap, slack, ctx)


def _suite_superadditivity(rec: _Recorder, trials: int, seed: int, tol: ToleranceConfig) -> None:
    dims = (3, 4, 5, 6)
    for t in range(trials):
        dim = dims[t % len(dims)]
        frame_spec = InstanceSpec(dim, dim, dim, seed + 7919 * t)
        frame = random_subspace(frame_spec).basis
        k1 = 1 + (t % (dim - 1))
        k2 = 1 + ((t // 2) % (dim - k1))
        first = Subspace(frame[:, :k1])
        second = Subspace(frame[:, k1 : k1 + k2])
        joined = Subspace(frame[:, : k1 + k2])
        rho = random_density(
            InstanceSpec(dim, max(1, _mixed_rank(t, dim)), k1, seed + 7919 * t)
        )
        ctx = {"state": rho, "first": first, "second": second, "seed": seed + 7919 * t}
        w1 = decompose(rho, first, tol).inside_trace
        w2 = decompose(rho, second, tol).inside_trace
        w12 = decompose(rho, joined, tol).inside_trace
        rec.check("superadditive", w1 + w2 - w12, tol.psd_tol, ctx)


def _suite_tensor(rec: _Recorder, trials: int, seed: int, tol: ToleranceConfig) -> None:
    shapes = ((2, 2), (2, 3), (3, 2), (3, 3))
    for t in range(trials):
        d1, d2 = shapes[t % len(shapes)]
        s1 = InstanceSpec(d1, _mixed_rank(t, d1), 1 + (t % d1), seed + 7919 * t)
        s2 = InstanceSpec(d2, _mixed_rank(t + 1, d2), 1 + ((t // 2) % d2), seed + 7919 * t + 1)
        a1, a2 = random_psd(s1), random_psd(s2)
        v1, v2 = random_subspace(s1), random_subspace(s2)
        ctx = {"left": a1, "right": a2, "left_subspace": v1, "right_subspace": v2}
        big = decompose(tensor(a1, a2), tensor_subspace(v1, v2), tol)
        b1 = decompose(a1, v1, tol).inside
        b2 = decompose(a2, v2, tol).inside
        ref = max(1.0, _frob(tensor(a1, a2)))
        rec.check("inside-multiplicative", _frob(big.inside - tensor(b1, b2)) / ref, tol.agree_tol, ctx)
        rho1 = random_density(s1)
        rho2 = random_density(s2)
        wj = decompose(tensor(rho1, rho2), tensor_subspace(v1, v2), tol).inside_trace
        w1 = decompose(rho1, v1, tol).inside_trace
        w2 = decompose(rho2, v2, tol).inside_trace
        rec.check("weight-multiplicative", abs(wj - w1 * w2), tol.agree_tol, ctx)


def _suite_deficiency(rec: _Recorder, trials: int, seed: int, tol: ToleranceConfig) -> None:
    dims = (2, 3, 4, 5, 6)
    for t in range(trials):
        dim = dims[t % len(dims)]
        sdim = 1 + (t % (dim - 1)) if dim > 1 else 1
        spec = InstanceSpec(dim, _mixed_rank(t, dim), sdim, seed + 7919 * t)
        arr = random_psd(spec)
        sub = random_subspace(spec)
        ctx = {"operator": arr, "subspace": sub, "seed": spec.seed}
        gap = deficiency_operator(arr, sub, tol)
        rec.check("hermitian", _frob(gap - gap.conj().T), tol.agree_tol, ctx)
        rec.check("trace-nonneg", -float(np.trace(gap).real), tol.psd_tol * (1 + dim), ctx)
        proj = sub.projector()
        reduced = hermitize(proj @ arr @ proj + (np.eye(dim) - proj) @ arr @ (np.eye(dim) - proj))
        commuting_gap = deficiency_operator(reduced, sub, tol)
        rec.check(
            "vanishes-when-reducing",
            _frob(commuting_gap) / max(1.0, _frob(reduced)),
            tol.agree_tol,
            ctx,
        )
        rho = random_density(spec)
        table = probability_table(rho, sub, tol)
        state_gap = deficiency_operator(rho, sub, tol)
        rec.check(
            "matches-table-deficiency",
            abs(float(np.trace(state_gap).real) - table.deficiency),
            tol.agree_tol,
            ctx,
        )


def _suite_projection_identities(rec: _Recorder, trials: int, seed: int, tol: ToleranceConfig) -> None:
    dims = (2, 3, 4, 5)
    for t in range(trials):
        dim = dims[t % len(dims)]
        spec = InstanceSpec(dim, _mixed_rank(t, dim), 1 + (t % dim), seed + 7919 * t)
        arr = random_psd(spec)
        sub = random_subspace(spec)
        ctx = {"operator": arr, "subspace": sub, "seed": spec.seed}
        ref = max(1.0, _frob(arr))
        root = pseudo_power(arr, 0.5, tol)
        range_proj = pseudo_power(arr, 0.0, tol)
        rec.check("root-squares-back", _frob(root @ root - arr) / ref, tol.agree_tol, ctx)
        rec.check(
            "pinv-gives-range-projector",
            _frob(arr @ pseudo_power(arr, -1, tol) - range_proj) / max(1.0, _frob(range_proj)),
            tol.agree_tol,
            ctx,
        )
        reachable = intersect(range_of(arr, tol), sub, tol)
        if reachable.dim:
            warped = pseudo_power(arr, -0.5, tol) @ reachable.basis
            q = Subspace.span(warped, tol).projector()
        else:
            q = np.zeros_like(arr)
        rec.check("q-idempotent", _frob(q @ q - q), tol.agree_tol, ctx)
        rec.check("q-under-range", _frob(q - range_proj @ q @ range_proj), tol.agree_tol, ctx)
        inside = decompose(arr, sub, tol).inside
        rec.check("sandwich-identity", _frob(root @ q @ root - inside) / ref, tol.agree_tol, ctx)
        pd_spec = InstanceSpec(dim, dim, spec.subspace_dim, spec.seed, positivity="pd")
        pd = random_psd(pd_spec)
        skew = oblique_projector(pd, sub, tol)
        pd_inside = decompose(pd, sub, tol).inside
        rec.check("oblique-idempotent", _frob(skew @ skew - skew) / max(1.0, _frob(skew)), tol.agree_tol, ctx)
        rec.check("oblique-recovers-inside", _frob(skew @ pd - pd_inside) / max(1.0, _frob(pd)), tol.agree_tol, ctx)
        rho = random_density(InstanceSpec(dim, dim, spec.subspace_dim, spec.seed, positivity="pd"))
        meas = measurement_projector(rho, sub, tol)
        weight = state_decompose(rho, sub, tol).weight
        rec.check(
            "projector-expectation-is-weight",
            abs(float(np.trace(meas @ rho).real) - weight),
            tol.agree_tol,
            ctx,
        )


def _suite_equality_characterization(rec: _Recorder, trials: int, seed: int, tol: ToleranceConfig) -> None:
    dims = (2, 3, 4, 5)
    for t in range(trials):
        dim = dims[t % len(dims)]
        sdim = 1 + (t % (dim - 1)) if dim > 1 else 1
        spec = InstanceSpec(dim, dim, sdim, seed + 7919 * t)
        sub = random_subspace(spec)
        proj = sub.projector()
        eye = np.eye(dim)
        if t % 2 == 0:
            rho = random_density(spec)
            reduced = hermitize(proj @ rho @ proj + (eye - proj) @ rho @ (eye - proj))
            ctx = {"state": reduced, "subspace": sub, "seed": spec.seed}
            table = probability_table(reduced, sub, tol)
            rec.check("commuting-weight-is-overlap", abs(table.weight - table.overlap), tol.agree_tol, ctx)
            inside = decompose(reduced, sub, tol).inside
            rec.check(
                "commuting-inside-is-compression",
                _frob(inside - proj @ reduced @ proj),
                tol.agree_tol,
                ctx,
            )
            rec.check("commuting-no-deficiency", abs(table.deficiency), tol.agree_tol, ctx)
        else:
            rho = None
            for attempt in range(25):
                candidate = random_density(
                    InstanceSpec(dim, dim, sdim, spec.seed + 1000003 * attempt)
                )
                if _frob(proj @ candidate - candidate @ proj) >= 0.05:
                    rho = candidate
                    break
            rec.ok("noncommuting-instance-found", rho is not None)
            if rho is None:
                continue
            ctx = {"state": rho, "subspace": sub, "seed": spec.seed}
            table = probability_table(rho, sub, tol)
            rec.check("strict-weight-gap", 1e-6 - (table.overlap - table.weight), 0.0, ctx)


def _suite_reconstruction(rec: _Recorder, trials: int, seed: int, tol: ToleranceConfig) -> None:
    dims = (2, 3, 4)
    for t in range(trials):
        dim = dims[t % len(dims)]
        spec = InstanceSpec(dim, dim, 1, seed + 7919 * t, positivity="pd")
        rho = random_density(spec)
        rng = np.random.default_rng([spec.seed, STREAM_VECTOR])
        probes = []
        for _ in range(dim * dim + 10):
            vec = rng.normal(size=dim) + 1j * rng.normal(size=dim)
            vec = vec / np.linalg.norm(vec)
            probes.append((vec, line_weight(rho, vec, tol)))
        ctx = {"state": rho, "seed": spec.seed}
        rebuilt = reconstruct(probes, tol)
        rec.check("roundtrip", _frob(rebuilt - rho) / _frob(rho), 1e-6, ctx)
        psi = probes[0][0]
        direct = 1.0 / float(warped_inner(rho, psi, psi, tol).real)
        rec.check("weight-matches-warped-inner", abs(direct - probes[0][1]), tol.agree_tol, ctx)
        rec.expect(
            "underdetermined-detected",
            UnderdeterminedSystem,
            lambda: reconstruct(probes[: dim * dim - 1], tol),
            ctx,
        )


def _suite_masking(rec: _Recorder, trials: int, seed: int, tol: ToleranceConfig) -> None:
    dims = (3, 4, 5, 6)
    for t in range(trials):
        dim = dims[t % len(dims)]
        sdim = 1 + (t % (dim - 2))
        spec = InstanceSpec(dim, dim, sdim, seed + 7919 * t)
        sub = random_subspace(spec)
        away = complement(sub)
        rng = np.random.default_rng([spec.seed, STREAM_DENSITY])
        inner_rank = 1 + (t % sdim)
        outer_rank = 1 + ((t // 3) % away.dim)
        g_in = (rng.normal(size=(sdim, inner_rank)) + 1j * rng.normal(size=(sdim, inner_rank)))
        g_out = (rng.normal(size=(away.dim, outer_rank)) + 1j * rng.normal(size=(away.dim, outer_rank)))
        small_in = g_in @ g_in.conj().T
        small_out = g_out @ g_out.conj().T
        rho_in = sub.basis @ (small_in / np.trace(small_in).real) @ sub.basis.conj().T
        rho_out = away.basis @ (small_out / np.trace(small_out).real) @ away.basis.conj().T
        weight = float(rng.uniform(0.05, 0.95))
        ctx = {"inside_state": rho_in, "outside_state": rho_out, "weight": weight, "subspace": sub}
        blended = mask(rho_in, rho_out, weight, sub, tol)
        got_weight, got_in, got_out = unmask(blended, sub, tol)
        rec.check("weight-recovered", abs(got_weight - weight), 1e-9, ctx)
        rec.check("inside-recovered", _frob(got_in - rho_in), 1e-8, ctx)
        rec.check("outside-recovered", _frob(got_out - rho_out), 1e-8, ctx)
        leaky = 0.5 * rho_in + 0.5 * rho_out
        rec.expect(
            "leak-detected",
            SupportViolation,
            lambda: mask(leaky, rho_out, weight, sub, tol),
            ctx,
        )


def _suite_rank2_identity(rec: _Recorder, trials: int, seed: int, tol: ToleranceConfig) -> None:
    dims = (2, 3, 4, 5)
    worst_violation = 0.0
    violation_ctx: dict = {}
    for t in range(trials):
        dim = dims[t % len(dims)]
        spec = InstanceSpec(dim, min(2, dim), 2, seed + 7919 * t)
        qubit = random_density(InstanceSpec(2, 2, 1, spec.seed))
        qubit = hermitize(0.85 * qubit + 0.15 * np.eye(2) / 2.0)
        frame = random_subspace(InstanceSpec(dim, dim, min(2, dim), spec.seed)).basis
        rho = frame @ qubit @ frame.conj().T
        rng = np.random.default_rng([spec.seed, STREAM_VECTOR])
        mix = rng.normal(size=2) + 1j * rng.normal(size=2)
        psi = frame @ (mix / np.linalg.norm(mix))
        line = Subspace.span([psi], tol)
        ctx = {"state": rho, "vector": psi, "seed": spec.seed}
        table = probability_table(rho, line, tol)
        overlap = table.overlap
        ratio = table.weight / (table.weight + table.weight_perp)
        rec.check("overlap-from-weights", abs(overlap - ratio), 1e-9, ctx)
        if dim >= 3:
            full = random_density(InstanceSpec(dim, dim, 1, spec.seed + 5, positivity="pd"))
            probe = random_unit_vector(InstanceSpec(dim, dim, 1, spec.seed + 6))
            full_table = probability_table(full, Subspace.span([probe], tol), tol)
            denom = full_table.weight + full_table.weight_perp
            if denom > tol.rank_tol:
                violation = abs(full_table.overlap - full_table.weight / denom)
                if violation > worst_violation:
                    worst_violation = violation
                    violation_ctx = {"state": full, "vector": probe, "violation": violation}
    rec.ok("full-rank-escapes-identity", worst_violation > 1e-3, violation_ctx)


def _suite_smoothness(rec: _Recorder, trials: int, seed: int, tol: ToleranceConfig) -> None:
    dims = (2, 3, 4)
    deltas = (1e-2, 1e-3, 1e-4)
    for t in range(trials):
        dim = dims[t % len(dims)]
        sdim = 1 + (t % (dim - 1)) if dim > 1 else 1
        spec = InstanceSpec(dim, dim, sdim, seed + 7919 * t, positivity="pd")
        rho = random_density(spec)
        sub = random_subspace(spec)
        base = state_decompose(rho, sub, tol).weight
        rng = np.random.default_rng([spec.seed, STREAM_VECTOR])
        rates = None
        for _ in range(25):
            g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
            direction = hermitize(g)
            direction = direction / spectral_norm(direction)
            moved = []
            for delta in deltas:
                rotation = expm(-1j * delta * direction)
                shifted = hermitize(rotation @ rho @ rotation.conj().T)
                moved.append(state_decompose(shifted, sub, tol).weight)
            if abs(moved[0] - base) >= 1e-5:
                rates = [abs(w - base) / d for w, d in zip(moved, deltas)]
                break
        ctx = {"state": rho, "subspace": sub, "seed": spec.seed}
        rec.ok("generic-direction-found", rates is not None, ctx)
        if rates is None:
            continue
        for name, (ra, rb) in (
            ("rate-ratio-coarse-mid", (rates[0], rates[1])),
            ("rate-ratio-mid-fine", (rates[1], rates[2])),
        ):
            ratio = ra / rb if rb > 0 else float("inf")
            spread = max(ratio, 1.0 / ratio) if ratio > 0 else float("inf")
            rec.check(name, spread - 2.0, 0.0, ctx)


def _suite_support_mixture(rec: _Recorder, trials: int, seed: int, tol: ToleranceConfig) -> None:
    dims = (2, 3, 4, 5)
    for t in range(trials):
        dim = dims[t % len(dims)]
        rank = max(1, _mixed_rank(t, dim))
        spec = InstanceSpec(dim, rank, 1, seed + 7919 * t)
        rho = random_density(spec)
        rng = np.random.default_rng([spec.seed, STREAM_VECTOR])
        if t % 2 == 0:
            raw = rho @ (rng.normal(size=dim) + 1j * rng.normal(size=dim))
            if np.linalg.norm(raw) <= tol.rank_tol:
                continue
            psi = raw / np.linalg.norm(raw)
            ctx = {"state": rho, "vector": psi, "seed": spec.seed}
            mixture = mixture_including(rho, [psi], tol)
            rec.ok("floor-positive", mixture.floor > 0.0, ctx)
            rec.check(
                "target-appears-first",
                abs(abs(np.vdot(mixture.vectors[0], psi)) - 1.0),
                1e-9,
                ctx,
            )
            rec.check("target-weight-ge-floor", mixture.floor - mixture.weights[0], 1e-12, ctx)
            rebuilt = sum(
                w * np.outer(v, v.conj()) for w, v in zip(mixture.weights, mixture.vectors)
            )
            rec.check("rebuilds-state", _frob(rebuilt - rho), tol.agree_tol * 2.0, ctx)
            rec.check("weights-sum-to-one", abs(sum(mixture.weights) - 1.0), tol.agree_tol, ctx)
            span = support(mixture.vectors, mixture.weights, tol)
            rec.ok("support-matches-range", same_subspace(span, range_of(rho, tol), tol), ctx)
        else:
            if rank == dim:
                rho = random_density(InstanceSpec(dim, max(1, dim - 1), 1, spec.seed))
            missing = complement(range_of(rho, tol))
            if missing.dim == 0:
                continue
            inside_part = range_of(rho, tol).basis @ rng.normal(size=range_of(rho, tol).dim)
            stray = missing.basis[:, 0]
            bad = inside_part + 0.7 * np.linalg.norm(inside_part) * stray if np.linalg.norm(inside_part) else stray
            bad = bad / np.linalg.norm(bad)
            ctx = {"state": rho, "vector": bad, "seed": spec.seed}
            rec.expect("infeasible-detected", Infeasible, lambda: mixture_including(rho, [bad], tol), ctx)


def _suite_qubit_closed_forms(rec: _Recorder, trials: int, seed: int, tol: ToleranceConfig) -> None:
    line = Subspace.line(np.array([1.0, 0.0]))
    rng = np.random.default_rng([seed, 11])
    for t in range(trials):
        radius = 0.0 if t % 10 == 9 else float(rng.uniform(0.02, 0.95))
        angle = float(rng.uniform(0.05, np.pi - 0.05))
        closed = qubit_weights(radius, angle)
        rho = qubit_state(radius, angle)
        table = probability_table(rho, line, tol)
        ctx = {"a": radius, "theta": angle, "state": rho}
        rec.check("weight", abs(table.weight - closed.weight), 1e-9, ctx)
        rec.check("weight-perp", abs(table.weight_perp - closed.weight_perp), 1e-9, ctx)
        rec.check("deficiency", abs(table.deficiency - closed.deficiency), 1e-9, ctx)
        rec.check(
            "overlap",
            abs(table.overlap - 0.5 * (1.0 + radius * np.cos(angle))),
            1e-9,
            ctx,
        )
        if closed.leftover_bloch is not None and closed.deficiency > 1e-12:
            gap = deficiency_operator(rho, line, tol)
            leftover = gap / float(np.trace(gap).real)
            numeric = bloch_vector(leftover)
            scale = 1.0 + abs(closed.leftover_bloch.x)
            rec.check(
                "leftover-bloch",
                max(
                    abs(numeric.x - closed.leftover_bloch.x),
                    abs(numeric.y - closed.leftover_bloch.y),
                    abs(numeric.z - closed.leftover_bloch.z),
                )
                / scale,
                1e-9,
                ctx,
            )


def _suite_covariance(rec: _Recorder, trials: int, seed: int, tol: ToleranceConfig) -> None:
    dims = (2, 3, 4, 5)
    for t in range(trials):
        dim = dims[t % len(dims)]
        spec = InstanceSpec(dim, _mixed_rank(t, dim), 1 + (t % dim), seed + 7919 * t)
        arr = random_psd(spec)
        sub = random_subspace(spec)
        inside = decompose(arr, sub, tol).inside
        ref = max(1.0, _frob(arr))
        ctx = {"operator": arr, "subspace": sub, "seed": spec.seed}
        unitary = random_subspace(InstanceSpec(dim, dim, dim, spec.seed + 3)).basis
        rotated = decompose(
            hermitize(unitary @ arr @ unitary.conj().T), Subspace(unitary @ sub.basis), tol
        ).inside
        rec.check(
            "unitary-covariance",
            _frob(rotated - unitary @ inside @ unitary.conj().T) / ref,
            tol.agree_tol,
            ctx,
        )
        factor = 0.25 + 1.5 * ((t * 2654435761) % 1000) / 1000.0
        scaled = decompose(factor * arr, sub, tol).inside
        rec.check("scaling-covariance", _frob(scaled - factor * inside) / (factor * ref), tol.agree_tol, ctx)
        other_spec = InstanceSpec(dim, _mixed_rank(t + 2, dim), 1 + ((t + 1) % dim), spec.seed + 7)
        arr2 = random_psd(other_spec)
        sub2 = random_subspace(other_spec)
        inside2 = decompose(arr2, sub2, tol).inside
        both = np.zeros((2 * dim, 2 * dim), dtype=np.complex128)
        both[:dim, :dim] = arr
        both[dim:, dim:] = arr2
        stacked = np.zeros((2 * dim, sub.dim + sub2.dim), dtype=np.complex128)
        stacked[:dim, : sub.dim] = sub.basis
        stacked[dim:, sub.dim :] = sub2.basis
        merged = decompose(both, Subspace(stacked) if stacked.shape[1] else Subspace.zero(2 * dim), tol).inside
        expected = np.zeros_like(both)
        expected[:dim, :dim] = inside
        expected[dim:, dim:] = inside2
        rec.check("direct-sum", _frob(merged - expected) / max(1.0, _frob(both)), tol.agree_tol, ctx)
        embed = np.eye(dim + 2, dim, dtype=np.complex128)
        lifted = decompose(
            embed @ arr @ embed.conj().T,
            Subspace(embed @ sub.basis) if sub.dim else Subspace.zero(dim + 2),
            tol,
        ).inside
        rec.check(
            "restriction-invariance",
            _frob(lifted - embed @ inside @ embed.conj().T) / ref,
            tol.agree_tol,
            ctx,
        )


def _suite_chain(rec: _Recorder, trials: int, seed: int, tol: ToleranceConfig) -> None:
    dims = (3, 4, 5, 6)
    for t in range(trials):
        dim = dims[t % len(dims)]
        spec = InstanceSpec(dim, dim, dim, seed + 7919 * t, positivity="pd")
        frame = random_subspace(spec).basis
        depth = 1 + (t % (dim - 1))
        chain = [Subspace(frame[:, : dim - 1 - level]) for level in range(depth)]
        chain.append(Subspace.zero(dim))
        rho = random_density(spec)
        ctx = {"state": rho, "seed": spec.seed}
        table = multi_probability_table(rho, chain, tol)
        weights = [cell.weight for cell in table.components]
        overlaps = [cell.overlap for cell in table.components]
        rec.check("weights-sum-to-one", abs(sum(weights) - 1.0), tol.psd_tol, ctx)
        rec.check("overlaps-cover", 1.0 - sum(overlaps), tol.psd_tol, ctx)
        column_gap = 0.0
        diag_gap = 0.0
        joint_floor = 0.0
        for j in range(len(table.components)):
            column = sum(cell.joints[j] for cell in table.components)
            column_gap = max(column_gap, abs(column - overlaps[j]))
            diag_gap = max(diag_gap, abs(table.components[j].joints[j] - weights[j]))
            joint_floor = min(joint_floor, min(cell.joints[j] for cell in table.components))
        rec.check("joint-columns-sum-to-overlaps", column_gap, tol.agree_tol, ctx)
        rec.check("joint-diagonal-is-weight", diag_gap, tol.agree_tol, ctx)
        rec.check("joints-nonneg", -joint_floor, tol.psd_tol, ctx)
        pieces = chain_decompose(rho, chain, tol)
        total = sum(pieces.components)
        rec.check("components-sum-back", _frob(total - rho), tol.agree_tol * (1 + _frob(rho)), ctx)
        worst_neg = max((_neg_part(c) for c in pieces.components), default=0.0)
        rec.check("components-psd", worst_neg, tol.psd_tol, ctx)
        disjoint = all(
            intersect(a, b, tol).dim == 0
            for i, a in enumerate(pieces.supports)
            for b in pieces.supports[i + 1 :]
        )
        rec.ok("supports-disjoint", disjoint, ctx)


def _suite_structure(rec: _Recorder, trials: int, seed: int, tol: ToleranceConfig) -> None:
    dims = (2, 3, 4, 5, 6)
    for t in range(trials):
        dim = dims[t % len(dims)]
        sdim = 1 + (t % (dim - 1)) if dim > 1 else 1
        spec = InstanceSpec(dim, _mixed_rank(t, dim), sdim, seed + 7919 * t)
        arr = random_psd(spec)
        sub = random_subspace(spec)
        ctx = {"operator": arr, "subspace": sub, "seed": spec.seed}
        form = block_form(arr, sub, tol)
        frame = np.hstack([form.subspace.basis, form.active.basis, form.kernel.basis])
        rec.check("adapted-frame-unitary", _frob(frame.conj().T @ frame - np.eye(dim)), 1e-8, ctx)
        k, a = form.subspace.dim, form.active.dim
        transformed = frame.conj().T @ arr @ frame
        expected = np.zeros_like(transformed)
        expected[:k, :k] = form.head
        expected[k : k + a, :k] = form.coupling
        expected[:k, k : k + a] = form.coupling.conj().T
        expected[k : k + a, k : k + a] = form.core
        allowance = 4.0 * (tol.psd_tol * (1.0 + _frob(arr)) + tol.rank_tol * dim)
        rec.check("block-reassembly", _frob(transformed - expected), allowance, ctx)
        if a:
            core_floor = float(np.linalg.eigvalsh(form.core).min())
            rec.ok("core-positive-definite", core_floor > 0.0, ctx)
            schur = form.head - form.coupling.conj().T @ np.linalg.solve(form.core, form.coupling)
            rec.check("schur-psd", _neg_part(schur), tol.psd_tol * (1.0 + _frob(arr)), ctx)
        projectors = [form.subspace.projector(), form.active.projector(), form.kernel.projector()]
        rec.ok("adapted-projectors-pvm", is_pvm(projectors, tol), ctx)
        dec = decompose(arr, sub, tol)
        rec.ok(
            "outside-range-disjoint-from-subspace",
            intersect(dec.outside_range, sub, tol).dim == 0,
            ctx,
        )
        inside_rank = np.linalg.matrix_rank(dec.inside, tol=1e-8)
        rec.ok("inside-rank-bounded", inside_rank <= sub.dim, ctx)


SUITES: dict[str, tuple[Callable[[_Recorder, int, int, ToleranceConfig], None], int]] = {
    "route-agreement": (_suite_route_agreement, 200),
    "maximality": (_suite_maximality, 30),
    "probability-bounds": (_suite_probability_bounds, 200),
    "trace-bounds": (_suite_trace_bounds, 200),
    "split-inequalities": (_suite_split_inequalities, 200),
    "superadditivity": (_suite_superadditivity, 200),
    "tensor": (_suite_tensor, 100),
    "deficiency": (_suite_deficiency, 200),
    "projection-identities": (_suite_projection_identities, 150),
    "equality-characterization": (_suite_equality_characterization, 100),
    "reconstruction": (_suite_reconstruction, 40),
    "masking": (_suite_masking, 100),
    "rank2-identity": (_suite_rank2_identity, 100),
    "smoothness": (_suite_smoothness, 20),
    "support-mixture": (_suite_support_mixture, 200),
    "qubit-closed-forms": (_suite_qubit_closed_forms, 100),
    "covariance": (_suite_covariance, 120),
    "chain": (_suite_chain, 100),
    "structure": (_suite_structure, 150),
}


def list_suites() -> list[str]:
    return list(SUITES)


def run_suite(
    name: str,
    trials: int | None = None,
    seed: int = 0,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> SuiteReport:
    """Run one named suite and report per-check statistics."""
    if name not in SUITES:
        known = ", ".join(sorted(SUITES))
        raise UnknownSuite(f"unknown suite {name!r}; known suites: {known}")
    func, default_trials = SUITES[name]
    count = default_trials if trials is None else int(trials)
    if count < 1:
        raise DomainError(f"trials must be positive, got {count}")
    recorder = _Recorder(name)
    started = time.perf_counter()
    func(recorder, count, seed, tol)
    elapsed = time.perf_counter() - started
    return SuiteReport(
        suite=name,
        trials=count,
        seed=seed,
        checks=recorder.checks,
        counterexamples=recorder.counterexamples,
        elapsed=elapsed,
    )


def run_all(
    trials: int | None = None,
    seed: int = 0,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> list[SuiteReport]:
    """Run every registered suite; ``trials`` overrides each suite's default."""
    return [run_suite(name, trials, seed, tol) for name in SUITES]
