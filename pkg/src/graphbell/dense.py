"""Small-n dense backend: state vectors, expectations, spectra and PSD checks.

Basis index bit ``k`` is the computational-basis value of qubit ``k + 1``.
Expectations apply each Pauli term to the state directly; only
:func:`spectrum` and :func:`psd_check` build the full ``2**n`` matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DimensionError, GraphBellError, ResourceError
from .graph import Graph
from .pauli import PauliString, PauliSum

MAX_STATE_QUBITS = 14
MAX_MATRIX_QUBITS = 10
EIG_TOL = 1e-8
PSD_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class StateVector:
    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (1 << self.n,):
            raise DimensionError(f"expected {1 << self.n} amplitudes, got {amps.shape}")
        norm = np.linalg.norm(amps)
        if abs(norm - 1) > 1e-12:
            raise GraphBellError(f"state norm {norm} differs from 1")
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def normalized(cls, n: int, amplitudes) -> "StateVector":
        amps = np.asarray(amplitudes, dtype=complex)
        return cls(n, amps / np.linalg.norm(amps))

    def overlap(self, other: "StateVector") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def fidelity(self, other: "StateVector") -> float:
        return abs(self.overlap(other)) ** 2


@dataclass(frozen=True, eq=False)
class SpectrumSummary:
    max_eigenvalue: float
    multiplicity: int
    min_eigenvalue: float
    top_eigenvectors: np.ndarray  # columns span the top eigenspace


def _basis(n: int) -> np.ndarray:
    return np.arange(1 << n, dtype=np.int64)


def graph_state_signs(g: Graph, max_qubits: int = MAX_STATE_QUBITS) -> np.ndarray:
    """Unnormalised graph state as an int64 vector of +-1 amplitudes."""
    if g.n > max_qubits:
        raise ResourceError(f"{g.n} qubits exceed the state-vector cap of {max_qubits}")
    idx = _basis(g.n)
    parity = np.zeros(1 << g.n, dtype=np.int64)
    for a, b in g.edges():
        parity ^= (idx >> (a - 1)) & (idx >> (b - 1)) & 1
    return 1 - 2 * parity


def graph_state_vector(g: Graph, max_qubits: int = MAX_STATE_QUBITS) -> StateVector:
    """Uniform superposition with a controlled-Z on every edge."""
    signs = graph_state_signs(g, max_qubits)
    return StateVector(g.n, signs / np.sqrt(1 << g.n))


def exact_graph_expectation(g: Graph, b: PauliSum) -> Fraction:
    """``<G|b|G>`` in exact rational arithmetic for integer-coefficient ``b``.

    Works on the +-1 amplitude vector, so every overlap is an integer, and
    divides by ``2**n`` once at the end.
    """
    if b.n != g.n:
        raise DimensionError(f"sum on {b.n} qubits, graph on {g.n} vertices")
    if not b.is_integral():
        raise GraphBellError("exact expectation needs integer coefficients")
    signs = graph_state_signs(g)
    idx = _basis(g.n)
    total = 0
    for c, p in b:
        k = (p.phase + (p.x_mask & p.z_mask).bit_count()) % 4
        z_signs = 1 - 2 * (np.bitwise_count(idx & p.z_mask).astype(np.int64) & 1)
        # <G| i^k X^x Z^z |G> = i^k sum_b G[b ^ x] (-1)^{b.z} G[b]
        overlap = int(np.dot(signs[idx ^ p.x_mask], z_signs * signs))
        if k % 2:
            # real amplitudes and a real result force the overlap to vanish
            assert overlap == 0
            continue
        total += int(c) * (1 if k == 0 else -1) * overlap
    return Fraction(total, 1 << g.n)


def apply_pauli(p: PauliString, psi: np.ndarray) -> np.ndarray:
    """``p |psi>`` without building a matrix.

    ``p = i**(phase + |x & z|) X**x Z**z``, and ``X**x Z**z |b> = (-1)**|b & z| |b ^ x>``.
    """
    idx = _basis(p.n)
    factor = 1j ** ((p.phase + (p.x_mask & p.z_mask).bit_count()) % 4)
    signs = 1 - 2 * (np.bitwise_count(idx & p.z_mask).astype(np.int64) & 1)
    out = np.empty_like(psi)
    out[idx ^ p.x_mask] = factor * signs * psi
    return out


def pauli_expectation(s: StateVector, p: PauliString) -> float:
    if p.n != s.n:
        raise DimensionError(f"string on {p.n} qubits, state on {s.n}")
    val = np.vdot(s.amplitudes, apply_pauli(p, s.amplitudes))
    return float(val.real)


def expectation(s: StateVector, b: PauliSum) -> float:
    """``<s|b|s>``; terms are summed in canonical term order."""
    if b.n != s.n:
        raise DimensionError(f"sum on {b.n} qubits, state on {s.n}")
    total = 0j
    for c, p in b:
        total += c * np.vdot(s.amplitudes, apply_pauli(p, s.amplitudes))
    if abs(total.imag) > 1e-10:
        raise GraphBellError(f"expectation has imaginary part {total.imag}")
    return float(total.real)


def pauli_matrix(p: PauliString) -> np.ndarray:
    idx = _basis(p.n)
    factor = 1j ** ((p.phase + (p.x_mask & p.z_mask).bit_count()) % 4)
    signs = 1 - 2 * (np.bitwise_count(idx & p.z_mask).astype(np.int64) & 1)
    m = np.zeros((1 << p.n, 1 << p.n), dtype=complex)
    m[idx ^ p.x_mask, idx] = factor * signs
    return m


def sum_matrix(b: PauliSum, max_qubits: int = MAX_MATRIX_QUBITS) -> np.ndarray:
    if b.n > max_qubits:
        raise ResourceError(f"{b.n} qubits exceed the dense-matrix cap of {max_qubits}")
    m = np.zeros((1 << b.n, 1 << b.n), dtype=complex)
    for c, p in b:
        m += c * pauli_matrix(p)
    return m


def _summarize(evals, evecs) -> SpectrumSummary:
    top = evals[-1]
    mult = int(np.count_nonzero(evals >= top - EIG_TOL))
    return SpectrumSummary(float(top), mult, float(evals[0]), evecs[:, -mult:])


def spectrum(b: PauliSum, max_qubits: int = MAX_MATRIX_QUBITS) -> SpectrumSummary:
    """Extremal eigenvalues; multiplicity counts eigenvalues within 1e-8 of the maximum."""
    evals, evecs = np.linalg.eigh(sum_matrix(b, max_qubits))
    return _summarize(evals, evecs)


def top_state(summary: SpectrumSummary) -> StateVector:
    """The top eigenvector of a non-degenerate spectrum, phase fixed by its largest entry."""
    if summary.multiplicity != 1:
        raise GraphBellError(f"top eigenspace has dimension {summary.multiplicity}")
    v = summary.top_eigenvectors[:, 0]
    k = int(np.argmax(np.abs(v)))
    v = v * (abs(v[k]) / v[k])
    return StateVector.normalized(int(np.log2(v.shape[0])), v)


def psd_check(b: PauliSum, projector_scale: float, s: StateVector, max_qubits: int = MAX_MATRIX_QUBITS):
    """Minimum eigenvalue of ``scale * |s><s| - b`` and whether it is >= -1e-9."""
    if b.n != s.n:
        raise DimensionError(f"sum on {b.n} qubits, state on {s.n}")
    m = projector_scale * np.outer(s.amplitudes, s.amplitudes.conj()) - sum_matrix(b, max_qubits)
    lo = float(np.linalg.eigvalsh(m)[0])
    return lo, lo >= -PSD_TOL


def fidelity_bound(expectation_sum: float) -> float:
    """Lower bound on the fidelity with |LC_4> from the summed four-operator expectation."""
    return expectation_sum / 16


def project_z(s: StateVector, outcomes: dict[int, int]) -> StateVector:
    """Post-measurement state after observing Z = outcome (+-1) on 1-based qubits."""
    idx = _basis(s.n)
    keep = np.ones(1 << s.n, dtype=bool)
    for q, r in outcomes.items():
        bit = (idx >> (q - 1)) & 1
        keep &= bit == (0 if r == 1 else 1)
    amps = np.where(keep, s.amplitudes, 0)
    if np.linalg.norm(amps) < 1e-12:
        raise GraphBellError("outcome has zero probability")
    return StateVector.normalized(s.n, amps)
