"""Emission resonances: eigenmodes of the generator weighted by the steady state.

The emission spectrum of a mode c with steady population n is a sum over
eigenvalues D_p of M (with d vec(rho)/dt = -M vec(rho)):

    S(omega) = (1/pi) sum_p [ L_p Re(D_p) + K_p (Im(D_p) - omega) ]
                           / [ Re(D_p)^2 + (Im(D_p) - omega)^2 ],

where L_p + i K_p = Tr( c . unvec(c_p E[:, p]) ) / n with
c_p = (E^{-1} vec(rho c^dag))_p.  The L_p sum to one and the K_p to zero.
Eigenvalues with vanishing real part carry the coherent (delta-line)
emission; they are kept in the sum rules but excluded from sampled curves.

The dispersive sign convention used here (+K_p (Im D_p - omega)) is the one
reproduced by direct integration of the two-time correlator; the opposite
sign, found in some derivations, is available as ``printed_sign=True`` for
comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .lindblad import GradedLiouvillian, SuperOperator, unvec, vec
from .steady import DensityMatrix, embedded_lowering, population

RESIDUAL_TOL = 1e-8
COND_LIMIT = 1e12
CLUSTER_TOL = 1e-7
PRUNE_TOL = 1e-10
DELTA_TOL = 1e-10
DENSE_LIOUVILLE_LIMIT = 4096


class DefectiveGeneratorError(RuntimeError):
    """Eigendecomposition failed: the generator is (numerically) defective."""

    def __init__(self, message, cond):
        super().__init__(message)
        self.cond = cond


@dataclass(frozen=True)
class Resonance:
    """One emission mode: position D = gamma/2 + i omega and weights L, K."""

    position: complex
    weight_l: float
    weight_k: float
    multiplicity: int = 1

    @property
    def rate(self) -> float:
        """Full width gamma_p = 2 Re D_p."""
        return 2.0 * self.position.real

    @property
    def frequency(self) -> float:
        return self.position.imag


@dataclass
class ResonanceSet:
    """All resonances of one emitter, with sum rules and truncation metadata."""

    emitter: str
    resonances: list
    population: float
    sum_l: float
    sum_k: float
    truncations: dict = field(default_factory=dict)
    cluster_tol: float = CLUSTER_TOL
    prune_tol: float = PRUNE_TOL

    def __iter__(self):
        return iter(self.resonances)

    def __len__(self):
        return len(self.resonances)

    @property
    def rate_scale(self) -> float:
        """Largest decay rate among the resonances (for delta-line detection)."""
        if not self.resonances:
            return 1.0
        return max(max(r.position.real for r in self.resonances), 0.0) * 2.0

    def delta_lines(self, delta_tol=DELTA_TOL):
        scale = max(self.rate_scale, 1e-300)
        return [r for r in self.resonances if r.position.real < delta_tol * scale]

    def continuous_lines(self, delta_tol=DELTA_TOL):
        scale = max(self.rate_scale, 1e-300)
        return [r for r in self.resonances if r.position.real >= delta_tol * scale]

    def split_lines(self, im_tol=1e-9):
        """Resonances displaced from the carrier (|Im D| beyond tolerance)."""
        scale = max(self.rate_scale, 1e-300)
        return [r for r in self.resonances if abs(r.position.imag) > im_tol * scale]


# ---------------------------------------------------------------------------
# eigendecomposition


def eigendecompose(matrix, residual_tol=RESIDUAL_TOL, cond_limit=COND_LIMIT):
    """Eigenvalues and right eigenvectors of a generator block.

    Raises :class:`DefectiveGeneratorError` when the eigenvector matrix is
    numerically singular (non-diagonalizable generator) or the reconstruction
    residual exceeds ``residual_tol * ||M||``.
    """
    M = np.asarray(matrix)
    if M.shape[0] > DENSE_LIOUVILLE_LIMIT:
        raise ValueError(
            f"dense eigendecomposition capped at {DENSE_LIOUVILLE_LIMIT}; "
            "use a graded sector or reduce the truncation"
        )
    w, E = np.linalg.eig(M)
    cond = np.linalg.cond(E)
    if not np.isfinite(cond) or cond > cond_limit:
        raise DefectiveGeneratorError(
            f"generator is defective within working precision (cond(E) = {cond:.3e})",
            cond,
        )
    norm = np.linalg.norm(M)
    residual = np.linalg.norm(M @ E - E * w[None, :])
    if residual > residual_tol * max(norm, 1.0):
        raise DefectiveGeneratorError(
            f"eigendecomposition residual {residual:.3e} exceeds tolerance", cond
        )
    return w, E


def _cluster(values, tol):
    """Group indices of near-coincident complex values; returns list of lists."""
    order = np.lexsort((values.imag, values.real))
    clusters = []
    for idx in order:
        placed = False
        for cl in clusters:
            if abs(values[idx] - cl["mean"]) <= tol:
                cl["members"].append(idx)
                cl["mean"] = np.mean(values[cl["members"]])
                placed = True
                break
        if placed:
            continue
        clusters.append({"members": [idx], "mean": values[idx]})
    return clusters


def _weights_from_eig(w, E, v, trace_row, n, cluster_tol, prune_tol, truncations, emitter):
    """Shared weight extraction: contributions t.E . (E^{-1} v) / n, clustered."""
    coef = np.linalg.solve(E, v)
    contrib = (trace_row @ E) * coef / n
    sum_l = float(np.sum(contrib).real)
    sum_k = float(np.sum(contrib).imag)
    scale = max(1.0, float(np.max(np.abs(w))))
    resonances = []
    for cl in _cluster(w, cluster_tol * scale):
        members = cl["members"]
        weight = np.sum(contrib[members])
        if abs(weight) < prune_tol:
            continue
        resonances.append(
            Resonance(
                position=complex(np.mean(w[members])),
                weight_l=float(weight.real),
                weight_k=float(weight.imag),
                multiplicity=len(members),
            )
        )
    resonances.sort(key=lambda r: (r.position.imag, r.position.real))
    return ResonanceSet(
        emitter=emitter,
        resonances=resonances,
        population=n,
        sum_l=sum_l,
        sum_k=sum_k,
        truncations=dict(truncations),
        cluster_tol=cluster_tol,
        prune_tol=prune_tol,
    )


def emission_resonances(
    op,
    rho: DensityMatrix,
    emitter: str,
    cluster_tol=CLUSTER_TOL,
    prune_tol=PRUNE_TOL,
):
    """Resonance set of the emitter mode.

    ``op`` may be a :class:`SuperOperator` (full matrix path) or a
    :class:`GradedLiouvillian` (grade +1 sector path); both give identical
    weights for grading-conserving generators.
    """
    c = embedded_lowering(rho.signature, emitter)
    n = population(rho, emitter)
    if n <= 0:
        raise ValueError(f"emitter {emitter!r} has no excited population to emit")
    truncations = {l: d for l, d in rho.signature if d > 2}
    if isinstance(op, GradedLiouvillian):
        ket, bra = op.sector_pairs(1)
        v = (rho.entries @ c.conj().T)[ket, bra]
        trace_row = c[bra, ket]
        w, E = eigendecompose(op.sector_matrix(1))
        return _weights_from_eig(
            w, E, v, trace_row, n, cluster_tol, prune_tol, truncations, emitter
        )
    if not isinstance(op, SuperOperator):
        raise TypeError("op must be a SuperOperator or GradedLiouvillian")
    v = vec(rho.entries @ c.conj().T)
    trace_row = vec(c.T)  # Tr(c unvec(u)) = vec(c^T) . u under column stacking
    w, E = eigendecompose(op.dense_matrix())
    return _weights_from_eig(
        w, E, v, trace_row, n, cluster_tol, prune_tol, truncations, emitter
    )


# ---------------------------------------------------------------------------
# sampled spectra


@dataclass
class SpectrumCurve:
    """A sampled emission spectrum plus its analytic window integrals.

    ``values`` hold the continuous part only; delta lines (zero-width
    resonances) are reported through ``delta_weight`` and included in
    integrals when the window covers their frequency.
    """

    omegas: np.ndarray
    values: np.ndarray
    delta_weight: float
    resonances: ResonanceSet
    printed_sign: bool = False

    def integral(self, lo=None, hi=None, delta_tol=DELTA_TOL) -> float:
        """Exact integral of the spectrum over [lo, hi] (default: whole axis)."""
        sgn = -1.0 if self.printed_sign else 1.0
        total = 0.0
        unbounded = lo is None and hi is None
        if (lo is None) != (hi is None):
            raise ValueError("window must be fully bounded or fully unbounded")
        for r in self.resonances.continuous_lines(delta_tol):
            a, w0 = r.position.real, r.position.imag
            if unbounded:
                total += r.weight_l
                continue
            total += (r.weight_l / math.pi) * (
                math.atan((hi - w0) / a) - math.atan((lo - w0) / a)
            )
            total -= (sgn * r.weight_k / (2.0 * math.pi)) * math.log(
                (a * a + (hi - w0) ** 2) / (a * a + (lo - w0) ** 2)
            )
        for r in self.resonances.delta_lines(delta_tol):
            if unbounded or lo <= r.position.imag <= hi:
                total += r.weight_l
        return total

    def trapezoid(self) -> float:
        return float(np.trapezoid(self.values, self.omegas))


def default_grid(rset: ResonanceSet, points: int = 2001, span_factor: float = 8.0):
    """Symmetric grid spanning span_factor times the largest rate/offset."""
    scale = 0.0
    for r in rset.resonances:
        scale = max(scale, abs(r.position.imag), 2.0 * r.position.real)
    scale = scale or 1.0
    return np.linspace(-span_factor * scale, span_factor * scale, points)


def spectrum(
    rset: ResonanceSet,
    omegas=None,
    printed_sign: bool = False,
    delta_tol: float = DELTA_TOL,
) -> SpectrumCurve:
    """Sample the emission spectrum of a resonance set.

    ``printed_sign=True`` flips the dispersive (K) term to the opposite
    convention for comparison purposes.
    """
    if omegas is None:
        omegas = default_grid(rset)
    omegas = np.asarray(omegas, dtype=float)
    sgn = -1.0 if printed_sign else 1.0
    values = np.zeros_like(omegas)
    for r in rset.continuous_lines(delta_tol):
        a, w0 = r.position.real, r.position.imag
        det = w0 - omegas
        values += (r.weight_l * a + sgn * r.weight_k * det) / (a * a + det * det)
    values /= math.pi
    delta_weight = sum(r.weight_l for r in rset.delta_lines(delta_tol))
    return SpectrumCurve(
        omegas=omegas,
        values=values,
        delta_weight=delta_weight,
        resonances=rset,
        printed_sign=printed_sign,
    )


# ---------------------------------------------------------------------------
# splitting thresholds


def splitting_threshold(
    family,
    lo: float,
    hi: float,
    criterion: str = "imaginary_onset",
    rel_tol: float = 1e-6,
    prune_tol: float = 1e-8,
    im_tol: float = 1e-9,
) -> float:
    """Locate the onset of line splitting along a one-parameter family.

    ``family`` maps the control parameter to a :class:`ResonanceSet`.
    ``criterion="imaginary_onset"`` bisects the first appearance of
    weighted resonances displaced from the carrier; ``"weight_sign_flip"``
    bisects the Lorentzian weight of the displaced lines turning positive.
    The predicate must differ between ``lo`` and ``hi``.
    """

    if criterion == "imaginary_onset":

        def predicate(rset):
            lines = [r for r in rset.split_lines(im_tol) if abs(complex(r.weight_l, r.weight_k)) > prune_tol]
            return bool(lines)

    elif criterion == "weight_sign_flip":

        def predicate(rset):
            lines = [r for r in rset.split_lines(im_tol) if abs(complex(r.weight_l, r.weight_k)) > prune_tol]
            return bool(lines) and max(r.weight_l for r in lines) > 0.0

    else:
        raise ValueError(f"unknown splitting criterion {criterion!r}")

    p_lo = predicate(family(lo))
    p_hi = predicate(family(hi))
    if p_lo == p_hi:
        raise ValueError(
            f"criterion {criterion!r} does not change between {lo:g} and {hi:g}"
        )
    while hi - lo > rel_tol * max(abs(hi), abs(lo), 1e-300):
        mid = 0.5 * (lo + hi)
        if predicate(family(mid)) == p_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def resonance_rows(rset: ResonanceSet):
    """CSV-ready rows (Re D, Im D, L, K), sorted by Im then Re."""
    rows = [
        (r.position.real, r.position.imag, r.weight_l, r.weight_k)
        for r in sorted(rset.resonances, key=lambda r: (r.position.imag, r.position.real))
    ]
    return rows
