"""Cascaded master-equation generators.

Assembles the Liouvillian of a network of two-level systems and bosonic
modes connected by unidirectional (cascaded) channels,

    d rho/dt = i[rho, H] + sum_m (gamma_m/2) L[c_m] rho
             + sum_m (P_m/2) L[c_m^dag] rho
             + sum_links sqrt(eps gamma_s gamma_t) ( [s rho, t^dag] + [t, rho s^dag] ),

with L[c] rho = 2 c rho c^dag - rho c^dag c - c^dag c rho and s = e^{i theta} c_s.
The cascade bracket feeds the source output into the target without any
back-action, which is what makes the coupling unidirectional.

Coherent driving of a mode through a fraction eps_1 of its input channel
enters as H_drive = -sqrt(eps_1 gamma) (E c^dag + conj(E) c) + detuning c^dag c.
With this sign convention the driven two-level steady state has coherence
2 sqrt(eps_1) Omega (2 detuning + i gamma) / (gamma^2 + 4 detuning^2
+ 8 eps_1 Omega^2), Omega = sqrt(gamma) E.

Vectorization is column stacking: vec(rho)[row + dim*col] = rho[row, col],
so vec(A rho B) = (B^T kron A) vec(rho).  Generators are returned negated,
M = -Liouvillian, hence d vec(rho)/dt = -M vec(rho) and emission resonances
sit at eigenvalues D_p of M with Re D_p >= 0.

For generators that conserve the total excitation grade k = (excitations of
the ket index) - (excitations of the bra index) -- incoherent pumping, decay,
cascade terms and excitation-conserving Hamiltonians all do --
:class:`GradedLiouvillian` exposes the sector blocks directly, avoiding the
full dim^2 x dim^2 matrix.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from .hilbert import (
    DENSE_LIMIT,
    ModeSpec,
    OperatorMatrix,
    lowering_operator,
    signature_of,
)

_BUDGET_TOL = 1e-9


# ---------------------------------------------------------------------------
# vectorization


def vec(rho) -> np.ndarray:
    """Column-stack a density matrix: vec(rho)[row + d*col] = rho[row, col]."""
    return np.asarray(rho, dtype=complex).reshape(-1, order="F")


def unvec(v) -> np.ndarray:
    """Inverse of :func:`vec`."""
    v = np.asarray(v, dtype=complex)
    d = math.isqrt(v.size)
    if d * d != v.size:
        raise ValueError(f"vector of length {v.size} is not a square matrix")
    return v.reshape((d, d), order="F")


# ---------------------------------------------------------------------------
# specification records


@dataclass(frozen=True)
class DriveSpec:
    """Excitation of a single mode.

    ``kind`` is ``"coherent"`` (amplitude ``E``, entering through a fraction
    ``channel_fraction`` of the mode's input channel, optionally detuned from
    the frame by ``detuning``) or ``"incoherent"`` (pump rate ``rate``, which
    does not occupy the radiative channel).
    """

    kind: str = "coherent"
    amplitude: complex = 0.0
    rate: float = 0.0
    channel_fraction: float = 1.0
    detuning: float = 0.0

    def __post_init__(self):
        if self.kind not in ("coherent", "incoherent"):
            raise ValueError(f"unknown drive kind {self.kind!r}")
        if not 0.0 <= self.channel_fraction <= 1.0:
            raise ValueError("channel_fraction must lie in [0, 1]")
        if self.kind == "incoherent":
            if self.rate < 0:
                raise ValueError("incoherent pump rate must be non-negative")
            if self.amplitude != 0:
                raise ValueError("incoherent drives carry a rate, not an amplitude")
        if abs(float(np.imag(self.detuning))) != 0.0:
            raise ValueError("detuning must be real")


@dataclass(frozen=True)
class CascadeLink:
    """A unidirectional channel segment from ``source`` to ``target``.

    ``source_fraction`` is the share of the source's radiative output carried
    by this channel, ``phase`` the propagation phase applied to the source
    operator.  Links sharing a ``channel`` tag reuse the *same* propagating
    field (a serial chain: each downstream system sees the full field without
    depleting it), so the channel budget of the source counts the group once,
    by its largest fraction.  Links without a tag are independent taps and
    count individually.
    """

    source: str
    target: str
    source_fraction: float = 1.0
    phase: float = 0.0
    channel: str | None = None

    def __post_init__(self):
        if self.source == self.target:
            raise ValueError("cascade link cannot feed a mode into itself")
        if not 0.0 <= self.source_fraction <= 1.0:
            raise ValueError("source_fraction must lie in [0, 1]")
        if abs(float(np.imag(self.phase))) != 0.0:
            raise ValueError("link phase must be real")


@dataclass(frozen=True)
class JumpSpec:
    """An extra Lindblad dissipator (rate/2) L[operator]."""

    operator: OperatorMatrix
    rate: float

    def __post_init__(self):
        rate = self.rate
        if isinstance(rate, complex) or (np.iscomplexobj(rate) and np.imag(rate) != 0):
            raise ValueError("Lindblad rates must be real; complex coefficients are rejected")
        if float(rate) < 0:
            raise ValueError("Lindblad rates must be non-negative")
        object.__setattr__(self, "rate", float(rate))


@dataclass
class SystemGraph:
    """The full network: modes, couplings, drives, cascade links, extra jumps.

    Modes are listed in propagation order.  Links must form a directed acyclic
    graph; per source, the coherent-input fraction plus the channel-grouped
    link fractions may not exceed one.
    """

    modes: list
    hamiltonian_couplings: list = field(default_factory=list)
    drives: dict = field(default_factory=dict)
    links: list = field(default_factory=list)
    extra_jumps: list = field(default_factory=list)

    def __post_init__(self):
        self.modes = list(self.modes)
        self.hamiltonian_couplings = [
            (str(a), str(b), float(g)) for a, b, g in self.hamiltonian_couplings
        ]
        self.drives = dict(self.drives)
        self.links = list(self.links)
        self.extra_jumps = list(self.extra_jumps)
        self.validate()

    # -- validation ---------------------------------------------------------

    def validate(self):
        labels = [m.label for m in self.modes]
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate mode labels: {labels}")
        known = set(labels)
        for a, b, g in self.hamiltonian_couplings:
            if a not in known or b not in known:
                raise ValueError(f"coupling ({a!r}, {b!r}) references unknown modes")
            if a == b:
                raise ValueError("Hamiltonian couplings connect two distinct modes")
        for label, drive in self.drives.items():
            if label not in known:
                raise ValueError(f"drive on unknown mode {label!r}")
            if not isinstance(drive, DriveSpec):
                raise TypeError("drives must be DriveSpec instances")
        for link in self.links:
            if link.source not in known or link.target not in known:
                raise ValueError(f"link {link.source!r} -> {link.target!r} references unknown modes")
        self._check_acyclic()
        for m in self.modes:
            self._check_budget(m.label)
        for j in self.extra_jumps:
            if not isinstance(j, JumpSpec):
                raise TypeError("extra_jumps must be JumpSpec instances")
            sig = signature_of(self.modes)
            if j.operator.space_signature != sig:
                raise ValueError("extra jump operator lives on a different space signature")

    def _check_acyclic(self):
        edges = {}
        for link in self.links:
            edges.setdefault(link.source, []).append(link.target)
        seen, stack = set(), set()

        def visit(node):
            if node in stack:
                raise ValueError("cascade links must form a directed acyclic graph")
            if node in seen:
                return
            stack.add(node)
            for nxt in edges.get(node, ()):
                visit(nxt)
            stack.discard(node)
            seen.add(node)

        for label in edges:
            visit(label)

    def _check_budget(self, label):
        drive = self.drives.get(label)
        total = 0.0
        if drive is not None and drive.kind == "coherent":
            total += drive.channel_fraction
        groups = {}
        for idx, link in enumerate(self.links):
            if link.source != label:
                continue
            key = link.channel if link.channel is not None else ("__untagged__", idx)
            groups[key] = max(groups.get(key, 0.0), link.source_fraction)
        total += sum(groups.values())
        if total > 1.0 + _BUDGET_TOL:
            raise ValueError(
                f"channel budget of mode {label!r} exceeded: input fraction plus "
                f"grouped output fractions sum to {total:.6g} > 1"
            )

    # -- convenience --------------------------------------------------------

    def mode(self, label) -> ModeSpec:
        for m in self.modes:
            if m.label == label:
                return m
        raise KeyError(label)

    def with_truncations(self, truncations: dict) -> "SystemGraph":
        """A copy of the graph with bosonic truncations replaced."""
        if self.extra_jumps and any(
            m.kind == "bosonic" and truncations.get(m.label, m.truncation) != m.truncation
            for m in self.modes
        ):
            raise ValueError("cannot retruncate a graph carrying explicit jump operators")
        modes = [
            replace(m, truncation=truncations.get(m.label, m.truncation))
            if m.kind == "bosonic"
            else m
            for m in self.modes
        ]
        return SystemGraph(
            modes,
            hamiltonian_couplings=self.hamiltonian_couplings,
            drives=self.drives,
            links=self.links,
            extra_jumps=self.extra_jumps,
        )

    @property
    def dim(self) -> int:
        return math.prod(m.dim for m in self.modes)


# ---------------------------------------------------------------------------
# generator terms
#
# The Liouvillian is kept as a list of elementary terms coeff * A rho B
# (A or B may be the identity, stored as None).  The same list feeds the
# dense matrix assembly and the graded sector assembly.


def _terms_hamiltonian(H):
    return [(-1j, H, None), (1j, None, H)]


def _terms_jump(rate, c, cdag=None):
    c = np.asarray(c) if not sp.issparse(c) else c
    cd = cdag if cdag is not None else c.conj().T
    cdc = cd @ c
    return [(rate, c, cd), (-rate / 2.0, cdc, None), (-rate / 2.0, None, cdc)]


def _terms_cascade(coupling, s, t, phase=0.0):
    """sqrt-rate ``coupling`` times ([s rho, t^dag] + [t, rho s^dag]), s -> e^{i phase} s."""
    ph = cmath.exp(1j * phase)
    sd = s.conj().T
    td = t.conj().T
    return [
        (coupling * ph, s, td),
        (-coupling * ph, td @ s, None),
        (coupling * np.conj(ph), t, sd),
        (-coupling * np.conj(ph), None, sd @ t),
    ]


def _entries(op):
    if isinstance(op, OperatorMatrix):
        return op.entries
    return op


def _graph_terms(graph: SystemGraph):
    """Elementary generator terms of the graph's master equation."""
    modes = graph.modes
    lower = {m.label: lowering_operator(modes, m.label).entries for m in modes}
    dim = graph.dim
    terms = []

    # free + coupling + drive Hamiltonian
    if dim > DENSE_LIMIT:
        H = sp.csr_matrix((dim, dim), dtype=complex)
    else:
        H = np.zeros((dim, dim), dtype=complex)
    have_H = False
    for m in modes:
        freq = m.frequency
        drive = graph.drives.get(m.label)
        if drive is not None and drive.kind == "coherent":
            freq = freq + drive.detuning
        if freq != 0.0:
            c = lower[m.label]
            H = H + freq * (c.conj().T @ c)
            have_H = True
    for a, b, g in graph.hamiltonian_couplings:
        if g != 0.0:
            ca, cb = lower[a], lower[b]
            H = H + g * (ca.conj().T @ cb + cb.conj().T @ ca)
            have_H = True
    for label, drive in graph.drives.items():
        if drive.kind != "coherent" or drive.amplitude == 0:
            continue
        mode = graph.mode(label)
        amp = complex(drive.amplitude)
        coupling = math.sqrt(drive.channel_fraction * mode.decay)
        c = lower[label]
        H = H - coupling * (amp * c.conj().T + np.conj(amp) * c)
        have_H = True
    if have_H:
        terms.extend(_terms_hamiltonian(H))

    # local dissipators
    for m in modes:
        c = lower[m.label]
        if m.decay > 0:
            terms.extend(_terms_jump(m.decay, c))
        pump = m.pump
        drive = graph.drives.get(m.label)
        if drive is not None and drive.kind == "incoherent":
            pump = pump + drive.rate
        if pump > 0:
            terms.extend(_terms_jump(pump, c.conj().T))

    # cascade channels
    for link in graph.links:
        gs = graph.mode(link.source).decay
        gt = graph.mode(link.target).decay
        coupling = math.sqrt(link.source_fraction * gs * gt)
        if coupling == 0.0:
            continue
        terms.extend(
            _terms_cascade(coupling, lower[link.source], lower[link.target], link.phase)
        )

    # extra jumps
    for j in graph.extra_jumps:
        if j.rate > 0:
            terms.extend(_terms_jump(j.rate, _entries(j.operator)))

    return terms


# ---------------------------------------------------------------------------
# dense assembly


def _term_matrix(coeff, A, B, dim, use_sparse):
    if use_sparse:
        eye = sp.identity(dim, dtype=complex, format="csr")
        a = sp.csr_matrix(A) if A is not None else eye
        b = sp.csr_matrix(B) if B is not None else eye
        return coeff * sp.kron(b.T, a, format="csr")
    eye = np.eye(dim, dtype=complex)
    a = np.asarray(A.todense()) if sp.issparse(A) else (A if A is not None else eye)
    b = np.asarray(B.todense()) if sp.issparse(B) else (B if B is not None else eye)
    return coeff * np.kron(b.T, a)


def _assemble_matrix(terms, dim):
    """M = -sum(terms); dense below DENSE_LIMIT Hilbert dimensions, CSR above."""
    use_sparse = dim > DENSE_LIMIT
    if use_sparse:
        M = sp.csr_matrix((dim * dim, dim * dim), dtype=complex)
    else:
        M = np.zeros((dim * dim, dim * dim), dtype=complex)
    for coeff, A, B in terms:
        M = M - _term_matrix(coeff, A, B, dim, use_sparse)
    return M


@dataclass
class SuperOperator:
    """The matrix form of a master-equation generator.

    ``matrix`` acts on column-stacked density matrices,
    d vec(rho)/dt = -matrix @ vec(rho); index = row + dim*col.
    """

    dim: int
    matrix: object
    signature: tuple
    graph: SystemGraph | None = None

    @property
    def is_sparse(self) -> bool:
        return sp.issparse(self.matrix)

    def dense_matrix(self) -> np.ndarray:
        if self.is_sparse:
            return np.asarray(self.matrix.todense())
        return self.matrix

    def apply(self, rho) -> np.ndarray:
        """Time derivative of rho (as a matrix) under the generator."""
        return -unvec(self.matrix @ vec(rho))


def build_chain(graph: SystemGraph) -> SuperOperator:
    """Assemble the generator of an explicit cascade network."""
    terms = _graph_terms(graph)
    M = _assemble_matrix(terms, graph.dim)
    return SuperOperator(graph.dim, M, signature_of(graph.modes), graph=graph)


def build_pair(
    source: ModeSpec,
    target: ModeSpec,
    link: CascadeLink | None = None,
    drive: DriveSpec | None = None,
    extra_jumps: Sequence[JumpSpec] = (),
) -> SuperOperator:
    """Source cascaded into target; the two-node special case of build_chain."""
    if link is None:
        link = CascadeLink(source.label, target.label)
    graph = SystemGraph(
        [source, target],
        drives={source.label: drive} if drive is not None else {},
        links=[link],
        extra_jumps=list(extra_jumps),
    )
    return build_chain(graph)


def add_jump(op: SuperOperator, jump: JumpSpec) -> SuperOperator:
    """Add a dissipator (rate/2) L[c] to an assembled generator.

    A zero rate returns the input unchanged, bit for bit.
    """
    if jump.rate == 0.0:
        return op
    if jump.operator.space_signature != op.signature:
        raise ValueError("jump operator lives on a different space signature")
    terms = _terms_jump(jump.rate, _entries(jump.operator))
    delta = _assemble_matrix(terms, op.dim)
    return SuperOperator(op.dim, op.matrix + delta, op.signature, graph=op.graph)


# ---------------------------------------------------------------------------
# chain-link helpers


def full_chain_links(labels: Sequence[str], source_fraction=1.0) -> list:
    """Cascade links between all ordered pairs, one shared channel per source.

    Every mode's output field propagates through all downstream modes in
    series, which is why the links leaving one source share a channel tag.
    """
    labels = list(labels)
    out = []
    for i, src in enumerate(labels):
        for tgt in labels[i + 1 :]:
            out.append(
                CascadeLink(src, tgt, source_fraction=source_fraction, channel=f"{src}.out")
            )
    return out


def nearest_neighbour_links(labels: Sequence[str], source_fraction=1.0) -> list:
    """Cascade links between consecutive modes only (stage-isolated chain)."""
    labels = list(labels)
    return [
        CascadeLink(a, b, source_fraction=source_fraction, channel=f"{a}.out")
        for a, b in zip(labels[:-1], labels[1:])
    ]


# ---------------------------------------------------------------------------
# graded sectors


def _excitations(modes: Sequence[ModeSpec]) -> np.ndarray:
    """Total excitation number of every product basis state."""
    dims = [m.dim for m in modes]
    exc = np.zeros(1, dtype=np.int64)
    for d in dims:
        exc = (exc[:, None] + np.arange(d)[None, :]).reshape(-1)
    return exc


def _operator_grade(A, exc):
    """Uniform excitation shift of a matrix, or None if it has none."""
    if A is None:
        return 0
    if sp.issparse(A):
        coo = A.tocoo()
        rows, cols, data = coo.row, coo.col, coo.data
        mask = np.abs(data) > 0
        rows, cols = rows[mask], cols[mask]
    else:
        rows, cols = np.nonzero(np.abs(np.asarray(A)) > 0)
    if rows.size == 0:
        return 0
    shifts = np.unique(exc[rows] - exc[cols])
    if shifts.size != 1:
        return None
    return int(shifts[0])


def _submatrix(A, rows, cols):
    if A is None:
        return None
    if sp.issparse(A):
        return np.asarray(A[rows][:, cols].todense())
    return np.asarray(A)[np.ix_(rows, cols)]


class GradedLiouvillian:
    """Sector blocks of a generator that conserves the excitation grade.

    The grade of a density-matrix element rho[i, j] is
    k = excitations(i) - excitations(j).  Pumping, decay, cascade terms and
    excitation-conserving Hamiltonians leave k invariant, so the generator is
    block diagonal over k: the steady state lives in the k = 0 sector and the
    emission correlator rho c^dag evolves in k = +1.  Sector dimensions scale
    linearly with the Hilbert dimension instead of quadratically.
    """

    def __init__(self, graph: SystemGraph):
        self.graph = graph
        self.signature = signature_of(graph.modes)
        self.dim = graph.dim
        self._terms = _graph_terms(graph)
        self._exc = _excitations(graph.modes)
        for coeff, A, B in self._terms:
            ga = _operator_grade(A, self._exc)
            gb = _operator_grade(B, self._exc)
            if ga is None or gb is None or ga + gb != 0:
                raise ValueError(
                    "generator does not conserve the excitation grade "
                    "(coherent drives and anharmonic terms break it); "
                    "use the full matrix assembly instead"
                )
        self._sectors = {}

    def sector_pairs(self, k: int):
        """(ket indices, bra indices) of the density-matrix elements of grade k."""
        diff = self._exc[:, None] - self._exc[None, :]
        ket, bra = np.nonzero(diff == k)
        return ket, bra

    def sector_matrix(self, k: int) -> np.ndarray:
        """The block of M = -generator acting on the grade-k elements."""
        if k in self._sectors:
            return self._sectors[k]
        ket, bra = self.sector_pairs(k)
        n = ket.size
        # identity factors restrict the coupling to equal ket (or bra) indices
        ket_delta = ket[:, None] == ket[None, :]
        bra_delta = bra[:, None] == bra[None, :]
        M = np.zeros((n, n), dtype=complex)
        for coeff, A, B in self._terms:
            a = _submatrix(A, ket, ket)
            b = _submatrix(B, bra, bra)
            if a is None and b is None:
                M -= coeff * np.eye(n)
            elif a is None:
                M -= coeff * (b.T * ket_delta)
            elif b is None:
                M -= coeff * (a * bra_delta)
            else:
                M -= coeff * (a * b.T)
        self._sectors[k] = M
        return M

    def embed(self, k: int, values) -> np.ndarray:
        """Scatter a grade-k coefficient vector back into a full matrix."""
        ket, bra = self.sector_pairs(k)
        out = np.zeros((self.dim, self.dim), dtype=complex)
        out[ket, bra] = values
        return out

    def restrict(self, k: int, matrix) -> np.ndarray:
        """Gather the grade-k elements of a full matrix into a vector."""
        ket, bra = self.sector_pairs(k)
        return np.asarray(matrix, dtype=complex)[ket, bra]


def is_graded(graph: SystemGraph) -> bool:
    """Whether the graph's generator conserves the excitation grade."""
    try:
        GradedLiouvillian(graph)
    except ValueError:
        return False
    return True
