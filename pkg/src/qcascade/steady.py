"""Steady states of cascaded generators and derived single-mode observables.

The steady state solves M vec(rho) = 0 with Tr(rho) = 1.  Because the
generator preserves the trace, one diagonal row of M is linearly dependent
on the others and can be replaced by the trace condition, turning the kernel
problem into a single bordered linear solve.  Failures are reported, never
papered over: a residual above tolerance triggers an explicit kernel
analysis, and unphysical results (negative eigenvalues beyond tolerance,
trace or hermiticity violations) abort instead of being clipped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np
import scipy.linalg
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .lindblad import GradedLiouvillian, SuperOperator, SystemGraph, build_chain, is_graded, unvec, vec

TRACE_TOL = 1e-10
HERM_TOL = 1e-10
EIG_TOL = 1e-9
RESIDUAL_TOL = 1e-10
BLOCH_TOL = 1e-9


class NoSteadyStateError(RuntimeError):
    """The generator has no normalizable steady state."""


class DegenerateSteadyStateError(RuntimeError):
    """The generator kernel has dimension > 1; the basis is attached."""

    def __init__(self, message, basis):
        super().__init__(message)
        self.basis = basis


class InvalidStateError(RuntimeError):
    """A density matrix failed its physicality checks."""


class TruncationLimitError(RuntimeError):
    """Truncation growth hit the hard cap before converging."""


# ---------------------------------------------------------------------------
# density matrices


@dataclass(frozen=True)
class DensityMatrix:
    """A validated density matrix on a labelled product space."""

    entries: np.ndarray
    signature: tuple

    def __post_init__(self):
        ent = np.asarray(self.entries, dtype=complex)
        dim = math.prod(d for _, d in self.signature)
        if ent.shape != (dim, dim):
            raise InvalidStateError(
                f"entries shape {ent.shape} does not match signature dimension {dim}"
            )
        tr = np.trace(ent)
        if abs(tr - 1.0) > TRACE_TOL:
            raise InvalidStateError(f"trace deviates from one by {abs(tr - 1.0):.3e}")
        herm = np.max(np.abs(ent - ent.conj().T))
        if herm > HERM_TOL:
            raise InvalidStateError(f"hermiticity violated by {herm:.3e}")
        lo = float(np.min(scipy.linalg.eigvalsh(ent)))
        if lo < -EIG_TOL:
            raise InvalidStateError(
                f"negative eigenvalue {lo:.3e} beyond tolerance; refusing to clip"
            )
        ent = ent.copy()
        ent.setflags(write=False)
        object.__setattr__(self, "entries", ent)
        object.__setattr__(self, "signature", tuple((str(l), int(d)) for l, d in self.signature))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def purity(self) -> float:
        return float(np.real(np.trace(self.entries @ self.entries)))


@dataclass(frozen=True)
class BlochPoint:
    """Bloch coordinates x = 2 Re<s>, y = -2 Im<s>, z = 1 - 2n of a two-level mode."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        r2 = self.x**2 + self.y**2 + self.z**2
        if r2 > 1.0 + BLOCH_TOL:
            raise InvalidStateError(f"Bloch point leaves the unit ball: |r|^2 = {r2:.12f}")

    @property
    def radius(self) -> float:
        return math.sqrt(self.x**2 + self.y**2 + self.z**2)


# ---------------------------------------------------------------------------
# embedded single-mode operators (reconstructed from the signature alone;
# a dim-2 ladder is the two-level lowering operator)


def _ladder(dim: int) -> np.ndarray:
    out = np.zeros((dim, dim), dtype=complex)
    for k in range(1, dim):
        out[k - 1, k] = math.sqrt(k)
    return out


def embedded_lowering(signature, label) -> np.ndarray:
    """Dense lowering operator of one labelled factor on the product space."""
    labels = [l for l, _ in signature]
    if label not in labels:
        raise KeyError(f"no mode labelled {label!r} in {labels}")
    out = np.eye(1, dtype=complex)
    for l, d in signature:
        block = _ladder(d) if l == label else np.eye(d, dtype=complex)
        out = np.kron(out, block)
    return out


def expectation(rho: DensityMatrix, operator) -> complex:
    """Tr(operator rho)."""
    op = operator.entries if hasattr(operator, "entries") else operator
    if sp.issparse(op):
        return complex((op @ rho.entries).diagonal().sum())
    return complex(np.trace(np.asarray(op) @ rho.entries))


def population(rho: DensityMatrix, label) -> float:
    """<c^dag c> of the labelled mode."""
    c = embedded_lowering(rho.signature, label)
    return float(np.real(np.trace(c.conj().T @ c @ rho.entries)))


def coherence(rho: DensityMatrix, label) -> complex:
    """<c> of the labelled mode (for a two-level mode, the lower-left entry)."""
    c = embedded_lowering(rho.signature, label)
    return complex(np.trace(c @ rho.entries))


def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix:
    """Reduced state over the listed labels (order preserved)."""
    keep = [keep] if isinstance(keep, str) else list(keep)
    labels = [l for l, _ in rho.signature]
    dims = [d for _, d in rho.signature]
    missing = [l for l in keep if l not in labels]
    if missing:
        raise KeyError(f"labels {missing} not in signature {labels}")
    n = len(dims)
    tensor = rho.entries.reshape(dims + dims)
    # trace out the complement, highest axis first so indices stay valid
    for idx in sorted((i for i, l in enumerate(labels) if l not in keep), reverse=True):
        tensor = np.trace(tensor, axis1=idx, axis2=idx + n)
        n -= 1
    kept = [(l, d) for l, d in rho.signature if l in keep]
    # reorder kept axes to the requested order
    order = [next(i for i, (l, _) in enumerate(kept) if l == k) for k in keep]
    tensor = np.transpose(tensor, order + [i + len(kept) for i in order])
    dim = math.prod(d for _, d in kept)
    out = tensor.reshape(dim, dim)
    sig = tuple((k, dict(kept)[k]) for k in keep)
    return DensityMatrix(out, sig)


def bloch_point(rho: DensityMatrix, label) -> BlochPoint:
    """Bloch-ball coordinates of a two-level mode."""
    sub = partial_trace(rho, label) if len(rho.signature) > 1 else rho
    if sub.dim != 2:
        raise ValueError(f"mode {label!r} is not two-dimensional")
    n = float(np.real(sub.entries[1, 1]))
    coh = complex(sub.entries[1, 0])
    return BlochPoint(x=2.0 * coh.real, y=-2.0 * coh.imag, z=1.0 - 2.0 * n)


# ---------------------------------------------------------------------------
# steady-state solvers


def _check_pumped_oscillators(graph: SystemGraph | None):
    if graph is None:
        return
    for m in graph.modes:
        pump = m.pump
        drive = graph.drives.get(m.label)
        if drive is not None and drive.kind == "incoherent":
            pump = pump + drive.rate
        if m.kind == "bosonic" and pump > 0 and pump >= m.decay:
            raise NoSteadyStateError(
                f"pumped oscillator {m.label!r} at or above threshold "
                f"(pump {pump:g} >= decay {m.decay:g}) has no steady state"
            )


def _matrix_norm(M) -> float:
    if sp.issparse(M):
        return math.sqrt(float(np.sum(np.abs(M.data) ** 2)))
    return float(np.linalg.norm(M))


def _kernel_analysis(M_dense, norm):
    """SVD kernel extraction for the failure path of the bordered solve."""
    _, s, vh = np.linalg.svd(M_dense)
    tol = max(norm, 1.0) * 1e-12
    null = [vh[i].conj() for i in range(len(s)) if s[i] <= tol]
    if not null:
        raise NoSteadyStateError(
            "no steady state: generator kernel is empty at tolerance "
            f"{tol:.3e} (smallest singular value {s[-1]:.3e})"
        )
    if len(null) > 1:
        basis = [unvec(v) for v in null]
        raise DegenerateSteadyStateError(
            f"steady state is not unique: kernel dimension {len(null)}", basis
        )
    v = unvec(null[0])
    return v / np.trace(v)


def _bordered_solve(op: SuperOperator) -> np.ndarray:
    """Trace-normalised kernel element of M as a square matrix, unvalidated.

    Solves the bordered system (M with one diagonal row replaced by the trace
    condition) and verifies || M vec(rho) || <= RESIDUAL_TOL * ||M||.  If the
    bordered solve fails, the kernel is analysed explicitly: an empty kernel
    raises :class:`NoSteadyStateError`, a multi-dimensional one raises
    :class:`DegenerateSteadyStateError` carrying the kernel basis.
    """
    _check_pumped_oscillators(op.graph)
    d = op.dim
    norm = _matrix_norm(op.matrix)
    trace_idx = np.arange(d) * (d + 1)
    rhs = np.zeros(d * d, dtype=complex)
    rhs[0] = 1.0  # row 0 is the (0,0) diagonal equation, replaced by the trace row
    try:
        if op.is_sparse:
            A = op.matrix.tolil(copy=True)
            A.rows[0] = list(trace_idx)
            A.data[0] = [1.0 + 0.0j] * d
            x = spla.splu(A.tocsc()).solve(rhs)
        else:
            A = np.array(op.matrix)
            A[0, :] = 0.0
            A[0, trace_idx] = 1.0
            x = np.linalg.solve(A, rhs)
        residual = np.linalg.norm(op.matrix @ x)
        if not np.isfinite(residual) or residual > RESIDUAL_TOL * max(norm, 1.0):
            raise np.linalg.LinAlgError(f"steady-state residual {residual:.3e} too large")
        return unvec(x)
    except (np.linalg.LinAlgError, RuntimeError):
        return _kernel_analysis(op.dense_matrix(), norm)


def steady_state(op: SuperOperator) -> DensityMatrix:
    """Unique steady state of an assembled generator, validated."""
    return DensityMatrix(_bordered_solve(op), op.signature)


def steady_raw(op: SuperOperator) -> np.ndarray:
    """Hermitised steady solution without physicality validation.

    Some correlation constructions (a sensor tapping a dipole whose output
    stream already feeds further systems) are deliberately not completely
    positive: they are devices for reading off correlation functions, and
    their fixed point can carry a small negative eigenvalue of the order of
    the tapped coupling.  This entry point returns that fixed point, trace
    normalised and hermitised, leaving the strict checks of
    :class:`DensityMatrix` to callers that model physical states.
    """
    v = _bordered_solve(op)
    return (v + v.conj().T) / 2


def steady_state_graded(gl: GradedLiouvillian) -> DensityMatrix:
    """Steady state from the grade-0 sector of a grading-conserving generator."""
    _check_pumped_oscillators(gl.graph)
    M0 = gl.sector_matrix(0)
    ket, bra = gl.sector_pairs(0)
    diag = np.nonzero(ket == bra)[0]
    norm = float(np.linalg.norm(M0))
    A = np.array(M0)
    row = diag[0]
    A[row, :] = 0.0
    A[row, diag] = 1.0
    rhs = np.zeros(A.shape[0], dtype=complex)
    rhs[row] = 1.0
    try:
        x = np.linalg.solve(A, rhs)
        residual = np.linalg.norm(M0 @ x)
        if not np.isfinite(residual) or residual > RESIDUAL_TOL * max(norm, 1.0):
            raise np.linalg.LinAlgError(f"steady-state residual {residual:.3e} too large")
    except np.linalg.LinAlgError:
        # fall back to an explicit kernel analysis of the sector block
        _, s, vh = np.linalg.svd(M0)
        tol = max(norm, 1.0) * 1e-12
        null = [vh[i].conj() for i in range(len(s)) if s[i] <= tol]
        if not null:
            raise NoSteadyStateError(
                "no steady state: grade-0 sector kernel is empty"
            ) from None
        if len(null) > 1:
            basis = [gl.embed(0, v) for v in null]
            raise DegenerateSteadyStateError(
                f"steady state is not unique: kernel dimension {len(null)}", basis
            ) from None
        x = null[0]
        x = x / np.sum(x[diag])
    return DensityMatrix(gl.embed(0, x), gl.signature)


def solve_steady(graph: SystemGraph) -> DensityMatrix:
    """Build and solve, using the graded sector solver whenever it applies."""
    if is_graded(graph):
        return steady_state_graded(GradedLiouvillian(graph))
    return steady_state(build_chain(graph))


# ---------------------------------------------------------------------------
# truncation growth


def _fock_populations(rho: DensityMatrix, label) -> np.ndarray:
    sub = partial_trace(rho, label)
    return np.real(np.diag(sub.entries))


def grow_truncation(
    graph: SystemGraph,
    tail_tol: float = 1e-6,
    observable_tol: float = 1e-8,
    hard_cap: int = 512,
    growth: float = 1.3,
):
    """Grow bosonic truncations until the steady state stops changing.

    Convergence requires, for every bosonic mode, the top two Fock
    populations to sum below ``tail_tol`` and every mode population to move
    by less than ``observable_tol`` (relative to max(1, n)) between
    successive truncations.  ``tail_tol >= 1`` disables growth and returns
    the input truncation's solution.  Returns ``(graph, steady_state)``.
    """
    bosonic = [m.label for m in graph.modes if m.kind == "bosonic"]
    rho = solve_steady(graph)
    if not bosonic or tail_tol >= 1.0:
        return graph, rho
    previous = {m.label: population(rho, m.label) for m in graph.modes}
    while True:
        needs_growth = []
        for label in bosonic:
            p = _fock_populations(rho, label)
            tail = float(p[-1] + (p[-2] if p.size > 1 else 0.0))
            if tail >= tail_tol:
                needs_growth.append(label)
        if not needs_growth:
            # tails are converged; confirm observables are stationary too
            bigger = graph.with_truncations(
                {l: graph.mode(l).truncation + 2 for l in bosonic}
            )
            rho_check = solve_steady(bigger)
            moved = [
                m.label
                for m in graph.modes
                if abs(population(rho_check, m.label) - previous[m.label])
                > observable_tol * max(1.0, abs(previous[m.label]))
            ]
            if not moved:
                return graph, rho
            needs_growth = bosonic
        new_truncs = {}
        for label in needs_growth:
            n = graph.mode(label).truncation
            n_new = max(n + 2, int(math.ceil(n * growth)))
            if n_new > hard_cap:
                raise TruncationLimitError(
                    f"mode {label!r} needs more than {hard_cap} levels to converge"
                )
            new_truncs[label] = n_new
        graph = graph.with_truncations(new_truncs)
        rho = solve_steady(graph)
        previous = {m.label: population(rho, m.label) for m in graph.modes}
