"""Hilbert-space bookkeeping: labelled modes, operators, tensor products.

A composite system is an ordered list of :class:`ModeSpec`.  Operators carry
a ``space_signature`` recording which product space they act on, so that
mismatched algebra fails loudly instead of silently broadcasting.  Matrices
are dense below :data:`DENSE_LIMIT` Hilbert dimensions and CSR-sparse above.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.sparse as sp

#: Hilbert dimension up to which operator matrices are stored dense.
DENSE_LIMIT = 64

_MODE_KINDS = ("two_level", "bosonic")


@dataclass(frozen=True)
class ModeSpec:
    """One mode of the composite system.

    ``kind`` is ``"two_level"`` (lowering operator squares to zero) or
    ``"bosonic"`` (harmonic oscillator truncated to number states
    ``0 … truncation-1``).  ``frequency`` is the free rotation in the chosen
    frame, ``decay`` the radiative rate into the cascade channel, ``pump``
    an incoherent excitation rate.  A pumped bosonic mode only reaches a
    steady state for ``pump < decay``; that condition is checked when a
    steady state is requested, not here, so above-threshold generators can
    still be built and inspected.
    """

    label: str
    kind: str = "two_level"
    truncation: int = 2
    frequency: float = 0.0
    decay: float = 0.0
    pump: float = 0.0

    def __post_init__(self):
        if not self.label or not isinstance(self.label, str):
            raise ValueError("mode label must be a non-empty string")
        if self.kind not in _MODE_KINDS:
            raise ValueError(f"unknown mode kind {self.kind!r}; expected one of {_MODE_KINDS}")
        if self.kind == "two_level" and self.truncation != 2:
            raise ValueError("a two-level mode has exactly two states")
        if self.kind == "bosonic" and self.truncation < 1:
            raise ValueError("bosonic truncation must keep at least the vacuum")
        if self.decay < 0 or self.pump < 0:
            raise ValueError("decay and pump rates must be non-negative")

    @property
    def dim(self) -> int:
        return 2 if self.kind == "two_level" else self.truncation


def _signature_dim(signature) -> int:
    return math.prod(d for _, d in signature)


def _coerce(entries, dim):
    """Apply the storage policy: dense up to DENSE_LIMIT, CSR above."""
    if sp.issparse(entries):
        if dim <= DENSE_LIMIT:
            out = np.asarray(entries.todense(), dtype=complex)
            out.setflags(write=False)
            return out
        return entries.tocsr().astype(complex)
    out = np.array(entries, dtype=complex)
    if dim > DENSE_LIMIT:
        return sp.csr_matrix(out)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class OperatorMatrix:
    """A linear operator on a labelled tensor-product space.

    ``space_signature`` is a tuple of ``(label, dim)`` pairs in tensor order.
    Instances are immutable; algebra returns new objects and requires both
    operands to live on the same signature.
    """

    entries: object
    space_signature: tuple

    def __post_init__(self):
        sig = tuple((str(l), int(d)) for l, d in self.space_signature)
        object.__setattr__(self, "space_signature", sig)
        dim = _signature_dim(sig)
        ent = _coerce(self.entries, dim)
        if ent.shape != (dim, dim):
            raise ValueError(
                f"entries shape {ent.shape} does not match signature dimension {dim}"
            )
        object.__setattr__(self, "entries", ent)

    @property
    def dim(self) -> int:
        return _signature_dim(self.space_signature)

    @property
    def is_sparse(self) -> bool:
        return sp.issparse(self.entries)

    def dense(self) -> np.ndarray:
        """Entries as a writable dense array (always a copy)."""
        if self.is_sparse:
            return np.asarray(self.entries.todense(), dtype=complex)
        return np.array(self.entries, dtype=complex)

    def dagger(self) -> "OperatorMatrix":
        return OperatorMatrix(self.entries.conj().T, self.space_signature)

    def _check_signature(self, other):
        if self.space_signature != other.space_signature:
            raise ValueError(
                f"operator signatures differ: {self.space_signature} vs {other.space_signature}"
            )

    def __matmul__(self, other):
        self._check_signature(other)
        return OperatorMatrix(self.entries @ other.entries, self.space_signature)

    def __add__(self, other):
        self._check_signature(other)
        return OperatorMatrix(self.entries + other.entries, self.space_signature)

    def __sub__(self, other):
        self._check_signature(other)
        return OperatorMatrix(self.entries - other.entries, self.space_signature)

    def __mul__(self, scalar):
        return OperatorMatrix(self.entries * complex(scalar), self.space_signature)

    __rmul__ = __mul__

    def __neg__(self):
        return self * (-1.0)


def signature_of(modes: Sequence[ModeSpec]) -> tuple:
    labels = [m.label for m in modes]
    if len(set(labels)) != len(labels):
        raise ValueError(f"duplicate mode labels in {labels}")
    return tuple((m.label, m.dim) for m in modes)


def _single_mode_lowering(mode: ModeSpec) -> np.ndarray:
    if mode.kind == "two_level":
        out = np.zeros((2, 2), dtype=complex)
        out[0, 1] = 1.0  # sigma = |0><1|
        return out
    n = mode.truncation
    out = np.zeros((n, n), dtype=complex)
    for k in range(1, n):
        out[k - 1, k] = math.sqrt(k)
    return out


def identity_operator(modes: Sequence[ModeSpec]) -> OperatorMatrix:
    sig = signature_of(modes)
    dim = _signature_dim(sig)
    if dim > DENSE_LIMIT:
        return OperatorMatrix(sp.identity(dim, dtype=complex, format="csr"), sig)
    return OperatorMatrix(np.eye(dim, dtype=complex), sig)


def lowering_operator(modes: Sequence[ModeSpec], label: str) -> OperatorMatrix:
    """Lowering operator of the labelled mode, embedded in the product space."""
    sig = signature_of(modes)
    dims = [m.label for m in modes]
    if label not in dims:
        raise KeyError(f"no mode labelled {label!r} in {dims}")
    dim = _signature_dim(sig)
    use_sparse = dim > DENSE_LIMIT
    blocks = []
    for m in modes:
        if m.label == label:
            blocks.append(_single_mode_lowering(m))
        else:
            blocks.append(np.eye(m.dim, dtype=complex))
    out = blocks[0]
    if use_sparse:
        out = sp.csr_matrix(out)
        for b in blocks[1:]:
            out = sp.kron(out, sp.csr_matrix(b), format="csr")
    else:
        for b in blocks[1:]:
            out = np.kron(out, b)
    return OperatorMatrix(out, sig)


def number_operator(modes: Sequence[ModeSpec], label: str) -> OperatorMatrix:
    c = lowering_operator(modes, label)
    return c.dagger() @ c


def tensor(a: OperatorMatrix, b: OperatorMatrix) -> OperatorMatrix:
    """Tensor product of operators on disjoint label sets."""
    labels_a = {l for l, _ in a.space_signature}
    labels_b = {l for l, _ in b.space_signature}
    if labels_a & labels_b:
        raise ValueError(f"tensor factors share labels {labels_a & labels_b}")
    sig = a.space_signature + b.space_signature
    if a.is_sparse or b.is_sparse or _signature_dim(sig) > DENSE_LIMIT:
        ent = sp.kron(sp.csr_matrix(a.entries), sp.csr_matrix(b.entries), format="csr")
    else:
        ent = np.kron(a.entries, b.entries)
    return OperatorMatrix(ent, sig)


def dagger(a: OperatorMatrix) -> OperatorMatrix:
    return a.dagger()
