"""Closed-form steady states, lineshapes and filtered photon statistics.

All expressions use the conventions of :mod:`qcascade.lindblad`: ``gamma``
is the full decay rate entering the dissipator as (gamma/2) L_c, a resonant
coherent drive of Rabi frequency ``Omega`` enters the Hamiltonian as
-sqrt(eps1)*Omega*(c^dag + c) (so a drive specification with amplitude E
corresponds to Omega = sqrt(gamma)*E), and an incoherent pump of rate ``P``
enters as (P/2) L_{c^dag}.  Emission spectra are normalised to unit area
when the elastic (delta) component is counted; the continuous part alone
integrates to one minus the elastic weight.

Rates are best supplied in units of the source decay rate (``gamma = 1``);
every formula is homogeneous in the rates, so any consistent unit works,
but the strong-coupling boundary (:func:`sps_strong_coupling`) is only
offered in dimensionless form because its order-8 polynomial is poorly
conditioned otherwise.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

__all__ = [
    "RateShorthand",
    "MollowParams",
    "pop_incoherent",
    "target_pop_incoherent",
    "source_coherent",
    "target_coherent",
    "source_mixed",
    "source_plus_state",
    "mollow_eigenvalues",
    "mollow_rayleigh_weight",
    "mollow_weights",
    "mollow_spectrum_low",
    "mollow_spectrum_full",
    "mollow_spectrum_window",
    "heitler_incoherent",
    "sps_strong_coupling",
    "filtered_intensity",
    "g2_filtered",
    "g2_filtered_plateau",
    "cascade_spectrum_stage1",
]

# Half-width of the branch-point neighbourhood |64 Omega^2 - gamma^2| (in
# units of gamma^2) inside which the triplet eigenvalues are treated as
# degenerate and the spectrum is evaluated by its regular series instead of
# the cancellation-prone weight formulas.
BRANCH_WINDOW = 1e-12


@dataclass(frozen=True)
class RateShorthand:
    """Compact rate combinations (n*first + m*second)**k.

    Several closed forms below are polynomials in two rates; writing them
    through ``rs = RateShorthand(a, b); rs(n, m, k)`` keeps the code close
    to the algebra they come from.
    """

    first: float
    second: float

    def __call__(self, n: float, m: float, k: float = 1) -> float:
        return (n * self.first + m * self.second) ** k


@dataclass(frozen=True)
class MollowParams:
    """Decay rate and Rabi frequency of a resonantly driven two-level system."""

    gamma: float = 1.0
    rabi: float = 0.0

    def __post_init__(self) -> None:
        if self.gamma <= 0:
            raise ValueError("gamma must be positive")
        if self.rabi < 0:
            raise ValueError("rabi must be nonnegative")

    @property
    def discriminant(self) -> float:
        """gamma^2 - 64 Omega^2; negative once the triplet is split."""
        return self.gamma**2 - 64.0 * self.rabi**2

    @property
    def beta(self) -> float:
        """sqrt(gamma^2 - 64 Omega^2) for the unsplit (real) regime."""
        if self.discriminant < 0:
            raise ValueError("beta is real only for rabi <= gamma/8")
        return math.sqrt(self.discriminant)

    @property
    def chi(self) -> float:
        """sqrt(64 Omega^2 - gamma^2) for the split regime."""
        if self.discriminant > 0:
            raise ValueError("chi is real only for rabi >= gamma/8")
        return math.sqrt(-self.discriminant)

    @property
    def near_branch(self) -> bool:
        return abs(self.discriminant) < BRANCH_WINDOW * self.gamma**2


# ---------------------------------------------------------------------------
# steady-state populations and coherences
# ---------------------------------------------------------------------------

def pop_incoherent(pump: float, gamma: float = 1.0) -> float:
    """Excited-state population of a two-level system pumped at rate P."""
    if pump == 0.0:
        return 0.0
    return pump / (pump + gamma)


def target_pop_incoherent(pump: float, gamma_s: float = 1.0,
                          gamma_t: float = 1.0, detuning: float = 0.0) -> float:
    """Population of a two-level target fed by an incoherently pumped one.

    The source (decay gamma_s, pump P) drives the target (decay gamma_t)
    through a unidirectional coupling at full collection; ``detuning`` is
    the frequency offset between the two transitions.
    """
    n_s = pop_incoherent(pump, gamma_s)
    den = (pump**2 + (gamma_s + gamma_t) ** 2 + 4.0 * detuning**2
           + 2.0 * pump * (gamma_t + 5.0 * gamma_s))
    return 4.0 * n_s * gamma_s * (pump + gamma_s + gamma_t) / den


def source_coherent(rabi: float, fraction: float = 1.0, detuning: float = 0.0,
                    gamma: float = 1.0) -> tuple[float, complex]:
    """Population and coherence of a coherently driven two-level system.

    ``fraction`` is the share eps1 of the driving beam actually entering the
    emitter; the effective Rabi frequency is sqrt(eps1)*rabi.  Returns
    (n, <sigma>) with the coherence in the drive phase convention of
    :mod:`qcascade.lindblad` (drive Hamiltonian -sqrt(eps1)*rabi*(c^dag+c)).
    """
    den = gamma**2 + 4.0 * detuning**2 + 8.0 * fraction * rabi**2
    n = 4.0 * fraction * rabi**2 / den
    coh = 2.0 * math.sqrt(fraction) * rabi * (2.0 * detuning + 1j * gamma) / den
    return n, coh


def target_coherent(rabi: float, fraction: float, gamma_s: float = 1.0,
                    gamma_t: float = 1.0) -> tuple[float, float]:
    """Steady state of a two-level target driven by a coherently driven source.

    A laser of Rabi frequency ``rabi`` is split: a share eps1 = ``fraction``
    pumps the source two-level system (decay gamma_s) and the remainder is
    forwarded, together with the source emission, into the target (decay
    gamma_t) through the unidirectional channel.  Resonant case only.
    Returns (n_t, |<xi>|); the coherence is reported as its modulus since
    its phase tracks the drive phase convention.
    """
    if not 0.0 <= fraction <= 1.0:
        raise ValueError("fraction must lie in [0, 1]")
    g = RateShorthand(gamma_s, gamma_t)
    e, o2 = fraction, rabi**2
    norm = (
        g(0, 1) * g(1, 0, 2) * g(1, 1, 3) * g(2, 1) * g(1, 2)
        + 8.0 * g(1, 1, 2) * e * o2 * (
            2.0 * g(0, 1, 4) + 7.0 * g(0, 1, 3) * g(1, 0)
            + 12.0 * g(0, 1, 2) * g(1, 0, 2)
            + 2.0 * g(0, 1) * g(1, 0, 3) * (13.0 - 10.0 * e)
            + 8.0 * g(1, 0, 4) * (1.0 - e))
        + 64.0 * e**2 * o2**2 * (
            5.0 * g(0, 1, 4)
            + 2.0 * g(0, 1) * g(1, 0, 3) * (23.0 - 20.0 * e)
            + 3.0 * g(0, 1, 2) * g(1, 0, 2) * (21.0 - 16.0 * e)
            + 2.0 * g(0, 1, 3) * g(1, 0) * (17.0 - 10.0 * e)
            + 8.0 * g(1, 0, 4) * (1.0 - e))
        + 1024.0 * e**3 * o2**3 * (
            g(0, 1, 2) + g(0, 1) * g(1, 0) * (3.0 - 2.0 * e))
    )
    n = (16.0 * e * o2 * (1.0 - e) * g(1, 0) * (
        g(1, 1, 3) * g(2, 1) * g(1, 2)
        + 8.0 * e * o2 * (2.0 * g(1, 0, 3) + 6.0 * g(1, 0, 2) * g(0, 1)
                          + g(1, 0) * g(0, 1, 2) * (11.0 - 4.0 * e)
                          + 3.0 * g(0, 1, 3))
        + 64.0 * g(0, 1) * e**2 * o2**2) / norm)
    coh = (4.0 * math.sqrt(g(1, 0) * g(0, 1) * e * (1.0 - e)) * rabi * g(1, 0) * (
        g(1, 1, 3) * g(1, 2) * g(2, 1)
        + 8.0 * g(1, 1, 2) * e * o2 * (4.0 * g(1, 0) + g(0, 1) * (8.0 * e - 3.0))
        + 128.0 * e**2 * o2**2 * (g(1, 0) + g(0, 1) * (2.0 * e - 1.0))) / norm)
    return n, coh


def source_mixed(pump: float, rabi: float, fraction: float = 1.0,
                 detuning: float = 0.0, gamma: float = 1.0) -> tuple[float, complex]:
    """Two-level system under simultaneous coherent drive and incoherent pump.

    Returns (n, <sigma>).  The coherence carries the prefactor
    (gamma - P): pumping at the decay rate erases it, and stronger pumping
    flips its sign.
    """
    gp = pump + gamma
    den = gp * (gp**2 + 4.0 * detuning**2 + 8.0 * fraction * rabi**2)
    n = (pump * (gp**2 + 4.0 * detuning**2)
         + 4.0 * fraction * rabi**2 * gp) / den
    coh = (2.0 * math.sqrt(fraction) * rabi * (gamma - pump)
           * (2.0 * detuning + 1j * gp) / den)
    return n, coh


def source_plus_state(pump: float, gamma: float = 1.0, phase: float = 0.0):
    """Two-level system pumped through the jump operator |+>_phi <0|.

    The jump drives the vacuum into (|0> + e^{i*phase}|1>)/sqrt(2) at rate
    ``pump``.  Returns (n, <sigma>).  The expressions are validated against
    the full master equation for phase in {0, pi}; other phases make the
    population formula complex-valued and are returned as-is with a warning.
    """
    if pump == 0.0:
        return 0.0, 0.0 + 0.0j
    on_axis = math.isclose(math.cos(phase), 1.0, abs_tol=1e-12) or \
        math.isclose(math.cos(phase), -1.0, abs_tol=1e-12)
    if not on_axis:
        warnings.warn(
            "source_plus_state is validated only for phase in {0, pi}; "
            "returning the unvalidated analytic continuation",
            stacklevel=2)
    ephi = complex(math.cos(phase), math.sin(phase))
    n = (pump * (pump + 2.0 * gamma * ephi)
         / (pump**2 + 4.0 * gamma**2 + 4.0 * pump * gamma * math.cos(2.0 * phase)))
    coh = 2.0 * pump * gamma / ((pump + gamma) * (pump * ephi**2 + 2.0 * gamma))
    if abs(n.imag) < 1e-14 * max(1.0, abs(n)):
        n = n.real
    return n, coh


# ---------------------------------------------------------------------------
# Mollow triplet of the classically driven two-level system
# ---------------------------------------------------------------------------

def mollow_eigenvalues(params: MollowParams) -> tuple[complex, ...]:
    """The four emission eigenvalues {0, gamma/2, (3*gamma +- beta)/4}.

    beta = sqrt(gamma^2 - 64 Omega^2) is real below the splitting point
    Omega = gamma/8 and imaginary above it, where the satellite lines
    acquire the frequencies +-chi/4.
    """
    gam = params.gamma
    beta = np.sqrt(complex(params.discriminant))
    return (0.0 + 0.0j, gam / 2.0 + 0.0j,
            (3.0 * gam - beta) / 4.0, (3.0 * gam + beta) / 4.0)


def mollow_rayleigh_weight(params: MollowParams) -> float:
    """Weight of the elastic (delta) line: gamma^2/(gamma^2 + 8 Omega^2)."""
    gam2 = params.gamma**2
    return gam2 / (gam2 + 8.0 * params.rabi**2)


def mollow_weights(params: MollowParams) -> list[tuple[complex, float, float]]:
    """Per-line (position D, L, K) of the inelastic emission triplet.

    Positions follow the half-width convention D = gamma_p/2 + i*omega_p.
    Together with the elastic weight the Lorentzian weights sum to one and
    the dispersive weights sum to zero.  Raises within the branch-point
    window, where the two satellite lines are defective and only their
    combination (see the spectrum functions) is well defined.
    """
    gam, omr = params.gamma, params.rabi
    if params.near_branch:
        raise ValueError("weights are singular at the branch point rabi = gamma/8")
    s = 8.0 * omr**2 + gam**2
    lines = [(gam / 2.0 + 0.0j, 0.5, 0.0)]
    if params.discriminant > 0:
        beta = params.beta
        lm = (8.0 * (beta + 5.0 * gam) * omr**2 - gam**2 * (gam + beta)) / (4.0 * beta * s)
        lp = (8.0 * (beta - 5.0 * gam) * omr**2 + gam**2 * (gam - beta)) / (4.0 * beta * s)
        lines.append(((3.0 * gam - beta) / 4.0 + 0.0j, lm, 0.0))
        lines.append(((3.0 * gam + beta) / 4.0 + 0.0j, lp, 0.0))
    else:
        chi = params.chi
        lw = (8.0 * omr**2 - gam**2) / (4.0 * s)
        kw = gam * (40.0 * omr**2 - gam**2) / (4.0 * chi * s)
        lines.append((3.0 * gam / 4.0 - 1j * chi / 4.0, lw, -kw))
        lines.append((3.0 * gam / 4.0 + 1j * chi / 4.0, lw, kw))
    return lines


def _lorentzian_mix(omega, position: complex, lw: float, kw: float):
    """(1/pi) * [L*a + K*(b - omega)] / (a^2 + (b - omega)^2) for D = a + i b."""
    a, b = position.real, position.imag
    return (lw * a + kw * (b - omega)) / (a**2 + (b - omega) ** 2) / math.pi


def _branch_series(omega, params: MollowParams):
    """Inelastic spectrum at (or arbitrarily near) the branch point.

    The satellite pair merges into a defective eigenvalue at a = 3*gamma/4;
    the limit of their summed contribution is regular:

        2*L0*a/(a^2+w^2)/pi + kap*(a^2-w^2)/(a^2+w^2)^2/(2*pi),

    with L0 the common Lorentzian weight and kap the chi-scaled dispersive
    weight, both smooth through the branch point.
    """
    gam, omr = params.gamma, params.rabi
    s = 8.0 * omr**2 + gam**2
    a = 3.0 * gam / 4.0
    l0 = (8.0 * omr**2 - gam**2) / (4.0 * s)
    kap = gam * (40.0 * omr**2 - gam**2) / (4.0 * s)
    den = a**2 + omega**2
    central = _lorentzian_mix(omega, gam / 2.0 + 0.0j, 0.5, 0.0)
    return central + (2.0 * l0 * a / den + kap * (a**2 - omega**2) / (2.0 * den**2)) / math.pi


def _mollow_curve(omega, params: MollowParams):
    if params.near_branch:
        return _branch_series(omega, params)
    out = 0.0
    for pos, lw, kw in mollow_weights(params):
        out = out + _lorentzian_mix(omega, pos, lw, kw)
    return out


def mollow_spectrum_low(omega, params: MollowParams):
    """Inelastic emission spectrum below the splitting point (rabi <= gamma/8).

    All three lines sit at zero frequency with half-widths gamma/2 and
    (3*gamma -+ beta)/4; the outer pair carries weights of opposite sign
    whose near-cancellation produces the squared-Lorentzian (fat-tail-free)
    profile of weak driving.  The elastic line is not included; its weight
    is :func:`mollow_rayleigh_weight`.
    """
    if params.discriminant < 0 and not params.near_branch:
        raise ValueError("rabi exceeds gamma/8; use mollow_spectrum_full")
    omega = np.asarray(omega, dtype=float)
    out = _mollow_curve(omega, params)
    return out if out.ndim else float(out)


def mollow_spectrum_full(omega, params: MollowParams):
    """Inelastic emission triplet above the splitting point (rabi >= gamma/8).

    Central line of half-width gamma/2 at zero frequency plus two satellites
    at -+chi/4 of half-width 3*gamma/4, each satellite carrying a Lorentzian
    and a dispersive component.  The elastic line is not included; its
    weight is :func:`mollow_rayleigh_weight`.
    """
    if params.discriminant > 0 and not params.near_branch:
        raise ValueError("rabi below gamma/8; use mollow_spectrum_low")
    omega = np.asarray(omega, dtype=float)
    out = _mollow_curve(omega, params)
    return out if out.ndim else float(out)


def _line_window(position: complex, lw: float, kw: float,
                 lo: float, hi: float) -> float:
    """Exact integral of one spectral line over the window [lo, hi]."""
    a, b = position.real, position.imag
    u1, u2 = lo - b, hi - b
    lpart = lw * (math.atan2(u2, a) - math.atan2(u1, a)) / math.pi
    kpart = -kw * math.log((a**2 + u2**2) / (a**2 + u1**2)) / (2.0 * math.pi)
    return lpart + kpart


def mollow_spectrum_window(params: MollowParams, lo: float, hi: float) -> float:
    """Fraction of the total emission within the frequency window [lo, hi].

    Counts the elastic line when the window contains zero; the unbounded
    window therefore returns one.
    """
    if hi < lo:
        raise ValueError("empty window")
    total = mollow_rayleigh_weight(params) if lo <= 0.0 <= hi else 0.0
    if params.near_branch:
        gam, omr = params.gamma, params.rabi
        s = 8.0 * omr**2 + gam**2
        a = 3.0 * gam / 4.0
        l0 = (8.0 * omr**2 - gam**2) / (4.0 * s)
        kap = gam * (40.0 * omr**2 - gam**2) / (4.0 * s)
        total += _line_window(gam / 2.0 + 0.0j, 0.5, 0.0, lo, hi)
        total += 2.0 * l0 * (math.atan2(hi, a) - math.atan2(lo, a)) / math.pi
        total += kap * (hi / (a**2 + hi**2) - lo / (a**2 + lo**2)) / (2.0 * math.pi)
        return total
    for pos, lw, kw in mollow_weights(params):
        total += _line_window(pos, lw, kw, lo, hi)
    return total


def heitler_incoherent(omega, gamma: float = 1.0, rabi: float = 0.0):
    """Weak-driving inelastic spectrum 32*gamma*Omega^2/(pi*(gamma^2+4w^2)^2).

    Leading term of the triplet as rabi -> 0: a squared Lorentzian of
    half-width gamma/2 (total weight 8*Omega^2/gamma^2) whose tails fall as
    omega^-4, qualitatively sharper than any single Lorentzian line.
    """
    omega = np.asarray(omega, dtype=float)
    out = 32.0 * gamma * rabi**2 / (gamma**2 + 4.0 * omega**2) ** 2 / math.pi
    return out if out.ndim else float(out)


# ---------------------------------------------------------------------------
# dressing condition for the incoherently pumped source-target pair
# ---------------------------------------------------------------------------

def sps_strong_coupling(pump: float, variant: str = "corrected"):
    """Minimal gamma_t/gamma_s for line splitting of a pumped source-target pair.

    Both rates in units of gamma_s; ``pump`` is the source pump rate.  The
    boundary solves a quadratic in (gamma_t/gamma_s)^2 whose discriminant is
    proportional to -2*P*(P^2-16P+1)^3; outside the real-valued band of that
    square root (P between 8-sqrt(63) and 8+sqrt(63)) no finite threshold
    exists and None is returned.

    ``variant="corrected"`` (default) uses the full quartic coefficient
    A = P^4 - 68P^3 + 726P^2 - 68P + 1 and is the form that matches the
    numerically bisected splitting boundary; ``variant="printed"`` drops the
    -68P term, which narrows the real-valued band to pump rates whose source
    population spans roughly [0.88, 0.93].
    """
    if pump <= 0:
        raise ValueError("pump must be positive")
    if variant not in ("corrected", "printed"):
        raise ValueError(f"unknown variant {variant!r}")
    inner = -2.0 * pump * (pump**2 - 16.0 * pump + 1.0) ** 3
    if inner < 0:
        return None
    quartic = pump**4 - 68.0 * pump**3 + 726.0 * pump**2 + 1.0
    if variant == "corrected":
        quartic -= 68.0 * pump
    den = pump**2 - 14.0 * pump + 1.0
    val = (quartic - 8.0 * math.sqrt(inner)) / den
    if val < 0 or not math.isfinite(val):
        return None
    return math.sqrt(val)


# ---------------------------------------------------------------------------
# frequency-filtered intensity and antibunching of a single emitter
# ---------------------------------------------------------------------------

def filtered_intensity(kind: str, drive: float, gamma: float = 1.0,
                       width: float = 0.0) -> float:
    """Emission rate collected through a sharp frequency window of size Gamma.

    ``kind`` selects the pumping scheme: "incoherent" (``drive`` = pump rate
    P) integrates the single Lorentzian of half-width (gamma+P)/2, while
    "coherent" (``drive`` = Rabi frequency Omega) integrates the full
    triplet including its elastic line.  The window is [-Gamma/2, Gamma/2]
    around the emitter frequency.
    """
    if width <= 0:
        raise ValueError("filter width must be positive")
    if kind == "incoherent":
        pump = drive
        return (gamma * pump / (gamma + pump)
                * 2.0 / math.pi * math.atan(width / (gamma + pump)))
    if kind == "coherent":
        params = MollowParams(gamma=gamma, rabi=drive)
        n = 4.0 * drive**2 / (gamma**2 + 8.0 * drive**2)
        return gamma * n * mollow_spectrum_window(params, -width / 2.0, width / 2.0)
    raise ValueError(f"unknown pumping kind {kind!r}")


def g2_filtered(kind: str, drive: float, gamma: float = 1.0,
                width: float = 0.0) -> float:
    """Zero-delay autocorrelation of the emission within a bandwidth Gamma.

    The incoherent branch is the window form
    2/(1 + 3*tan(pi*(gamma+P)*I/(2*gamma*P))), which for the window
    intensity I of :func:`filtered_intensity` collapses to the rational
    expression 2*(gamma+P)/(gamma+P+3*Gamma) evaluated here; it is valid as
    long as I does not exceed the total rate gamma*P/(gamma+P).  The
    coherent branch is the exact rational function of Gamma, gamma and
    Omega below.  Both tend to the unfiltered value 0 as Gamma -> infinity
    and to the thermal-like plateaus of :func:`g2_filtered_plateau` at
    vanishing drive.
    """
    if width <= 0:
        raise ValueError("filter width must be positive")
    if kind == "incoherent":
        pump = drive
        if pump <= 0:
            raise ValueError("incoherent g2 needs a positive pump rate")
        total = gamma * pump / (gamma + pump)
        if filtered_intensity(kind, drive, gamma, width) > total * (1.0 + 1e-12):
            raise ValueError("window intensity exceeds the validity bound")
        return 2.0 * (gamma + pump) / (gamma + pump + 3.0 * width)
    if kind == "coherent":
        g = RateShorthand(width, gamma)
        o2 = drive**2
        num = (2.0 * g(1, 1) * (g(0, 1, 2) + 8.0 * o2) * (g(1, 1) * g(1, 2) + 16.0 * o2) * (
            g(1, 1, 2) * g(2, 1) * g(3, 1) * g(1, 2) * g(3, 2)
            * (9.0 * g(1, 0, 2) + 7.0 * g(1, 0) * g(0, 1) + g(0, 1, 2))
            + 4.0 * g(1, 1) * g(3, 2) * (
                84.0 * g(1, 0, 4) + 16.0 * g(1, 0, 3) * g(0, 1)
                + 118.0 * g(1, 0, 2) * g(0, 1, 2)
                + 31.0 * g(1, 0) * g(0, 1, 3) + 2.0 * g(0, 1, 4)) * o2
            + 32.0 * g(1, 0) * (51.0 * g(1, 0, 3) + 75.0 * g(1, 0, 2) * g(0, 1)
                                + 38.0 * g(1, 0) * g(0, 1, 2)
                                + 8.0 * g(0, 1, 3)) * o2**2
            + 768.0 * g(1, 0, 2) * o2**3))
        den = (3.0 * g(3, 1) * (g(1, 1) * g(2, 1) + 4.0 * o2)
               * (g(1, 1) * g(2, 1) + 8.0 * o2) * (g(3, 1) * g(3, 2) + 16.0 * o2)
               * (g(1, 1, 2) * g(1, 2) + 8.0 * g(1, 0) * o2) ** 2)
        return num / den
    raise ValueError(f"unknown pumping kind {kind!r}")


def g2_filtered_plateau(kind: str, gamma: float = 1.0, width: float = 0.0) -> float:
    """Vanishing-drive limit of :func:`g2_filtered`.

    Incoherent: 2*gamma/(3*Gamma + gamma).  Coherent:
    2*gamma^2*(9*Gamma^2 + 7*Gamma*gamma + gamma^2) /
    (3*(Gamma+gamma)^2*(2*Gamma+gamma)*(3*Gamma+gamma)).  At Gamma = 4*gamma
    these evaluate to 2/13 and 346/8775.
    """
    if width <= 0:
        raise ValueError("filter width must be positive")
    g = RateShorthand(width, gamma)
    if kind == "incoherent":
        return 2.0 * g(0, 1) / g(3, 1)
    if kind == "coherent":
        return (2.0 * g(0, 1, 2)
                * (9.0 * g(1, 0, 2) + 7.0 * g(0, 1) * g(1, 0) + g(0, 1, 2))
                / (3.0 * g(1, 1, 2) * g(2, 1) * g(3, 1)))
    raise ValueError(f"unknown pumping kind {kind!r}")


# ---------------------------------------------------------------------------
# cascaded-emission lineshape
# ---------------------------------------------------------------------------

def cascade_spectrum_stage1(omega, gamma_s: float = 1.0, gamma_t: float = 1.0):
    """Emission spectrum of a target fed by a weakly pumped source.

    Difference of the source and target Lorentzians, evaluated through the
    equivalent product form

        S(omega) = (2/pi) * gs*gt*(gs+gt) / ((gs^2+4w^2)*(gt^2+4w^2)),

    which is regular at gs = gt (where it reduces to the squared Lorentzian
    4*g^3/(pi*(g^2+4w^2)^2)) and integrates to one exactly.  A variant
    normalisation smaller by a factor of four circulates for this lineshape;
    this implementation keeps the unit-area form.  Tails fall as omega^-4.
    """
    if gamma_s <= 0 or gamma_t <= 0:
        raise ValueError("decay rates must be positive")
    omega = np.asarray(omega, dtype=float)
    out = (2.0 / math.pi * gamma_s * gamma_t * (gamma_s + gamma_t)
           / ((gamma_s**2 + 4.0 * omega**2) * (gamma_t**2 + 4.0 * omega**2)))
    return out if out.ndim else float(out)
