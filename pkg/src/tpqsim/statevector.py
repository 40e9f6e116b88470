"""Dense statevector simulation: gate kernels, expectations, post-selection.

Qubit 0 is the least significant index bit.  All kernels also accept a
(2^n, m) batch whose columns are independent states, which is how circuits are
reconstructed as dense unitaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, Gate
from .errors import ZeroProbability
from .pauli import PauliSum, pauli_string_action

_SQ2 = 1.0 / math.sqrt(2.0)
_H = np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_T = np.array([[1, 0], [0, np.exp(1j * math.pi / 4)]], dtype=complex)


def _rx(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def _ry(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def _rz(theta: float) -> np.ndarray:
    return np.array([[np.exp(-1j * theta / 2), 0], [0, np.exp(1j * theta / 2)]],
                    dtype=complex)


def gate_matrix(g: Gate) -> np.ndarray:
    """2x2 matrix of a single-qubit gate."""
    if g.kind == "h":
        return _H
    if g.kind == "x":
        return _X
    if g.kind == "t":
        return _T
    if g.kind == "rx":
        return _rx(g.angle)
    if g.kind == "ry":
        return _ry(g.angle)
    if g.kind == "rz":
        return _rz(g.angle)
    raise ValueError(f"not a single-qubit gate: {g.kind}")


@dataclass
class StateVector:
    n: int
    amps: np.ndarray

    def __post_init__(self):
        self.amps = np.asarray(self.amps, dtype=complex)
        if self.amps.shape != (1 << self.n,):
            raise ValueError(f"expected {1 << self.n} amplitudes")

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def normalized(self) -> "StateVector":
        nrm = self.norm
        if nrm < 1e-14:
            raise ZeroProbability("cannot normalize a (numerically) zero vector")
        return StateVector(self.n, self.amps / nrm)

    def copy(self) -> "StateVector":
        return StateVector(self.n, self.amps.copy())

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2

    def overlap(self, other: "StateVector") -> complex:
        return complex(np.vdot(self.amps, other.amps))

    def fidelity(self, other: "StateVector") -> float:
        """|<self|other>| for normalized states."""
        return float(abs(self.overlap(other)))


def zero_state(n: int) -> StateVector:
    amps = np.zeros(1 << n, dtype=complex)
    amps[0] = 1.0
    return StateVector(n, amps)


def _apply_1q(amps: np.ndarray, n: int, mat: np.ndarray, q: int) -> np.ndarray:
    shape = amps.shape
    a = amps.reshape([2] * n + ([-1] if amps.ndim == 2 else []))
    axis = n - 1 - q
    a = np.moveaxis(a, axis, 0)
    moved = a.shape
    a = (mat @ a.reshape(2, -1)).reshape(moved)
    return np.moveaxis(a, 0, axis).reshape(shape)


def _apply_gate(amps: np.ndarray, n: int, g: Gate) -> np.ndarray:
    if g.kind in ("cz", "cnot", "swap"):
        dim = 1 << n
        idx = np.arange(dim)
        q0, q1 = g.qubits
        if g.kind == "cz":
            sel = ((idx >> q0) & 1) & ((idx >> q1) & 1)
            out = amps.copy()
            out[sel == 1] = -out[sel == 1]
            return out
        if g.kind == "cnot":
            perm = idx ^ (((idx >> q0) & 1) << q1)
        else:  # swap
            b0, b1 = (idx >> q0) & 1, (idx >> q1) & 1
            perm = idx ^ (((b0 ^ b1) << q0) | ((b0 ^ b1) << q1))
        return amps[perm]
    return _apply_1q(amps, n, gate_matrix(g), g.qubits[0])


def apply_circuit(psi: StateVector, c: Circuit) -> StateVector:
    """Run all gates in order; the input state is not modified."""
    if c.width > psi.n:
        raise IndexError(f"circuit width {c.width} exceeds state size {psi.n}")
    amps = psi.amps.copy()
    for g in c.gates:
        amps = _apply_gate(amps, psi.n, g)
    return StateVector(psi.n, amps)


def circuit_unitary(c: Circuit) -> np.ndarray:
    """Dense unitary of a circuit, built by propagating the identity matrix."""
    dim = 1 << c.width
    u = np.eye(dim, dtype=complex)
    for g in c.gates:
        u = _apply_gate(u, c.width, g)
    return u


def expectation(psi: StateVector, a: PauliSum) -> float:
    """Exact <psi|A|psi>; the tiny imaginary residue is discarded."""
    val = 0.0 + 0.0j
    for term in a:
        target, phase = pauli_string_action(term, psi.n)
        shifted = np.empty_like(psi.amps)
        shifted[target] = phase * psi.amps
        val += term.coefficient * np.vdot(psi.amps, shifted)
    return float(val.real)


def postselect(psi: StateVector, ancilla_qubits, outcome_bits) -> tuple[StateVector, float]:
    """Project onto the given ancilla outcome and trace the ancillas out.

    Returns the renormalized remaining-register state and the outcome
    probability.  Raises ZeroProbability when the projected norm underflows.
    """
    ancilla_qubits = tuple(int(q) for q in ancilla_qubits)
    outcome_bits = tuple(int(b) for b in outcome_bits)
    if len(set(ancilla_qubits)) != len(ancilla_qubits):
        raise ValueError("ancilla indices must be distinct")
    if len(ancilla_qubits) != len(outcome_bits):
        raise ValueError("one outcome bit per ancilla")
    keep = [q for q in range(psi.n) if q not in ancilla_qubits]
    fixed = 0
    for q, b in zip(ancilla_qubits, outcome_bits):
        fixed |= b << q
    sub = np.arange(1 << len(keep))
    flat = np.full(1 << len(keep), fixed)
    for j, q in enumerate(keep):
        flat |= ((sub >> j) & 1) << q
    picked = psi.amps[flat]
    p = float(np.sum(np.abs(picked) ** 2))
    if p < 1e-14:
        raise ZeroProbability(f"outcome probability {p:.3e} underflows")
    return StateVector(len(keep), picked / math.sqrt(p)), p


def sample_expectation(psi: StateVector, a: PauliSum, shots: int,
                       seed: int) -> tuple[float, float]:
    """Finite-shot estimate of <A>, one independent shot budget per term.

    Each Pauli string is a +-1-valued measurement whose outcome distribution
    is Bernoulli with p = (1 + <P>)/2; sampling that distribution is
    equivalent to measuring in the rotated basis.  Identity terms are exact.
    """
    if shots < 1:
        raise ValueError("shots must be >= 1")
    rng = np.random.default_rng(seed)
    mean = 0.0
    var = 0.0
    for term in a:
        if term.weight == 0:
            mean += term.coefficient
            continue
        target, phase = pauli_string_action(term, psi.n)
        shifted = np.empty_like(psi.amps)
        shifted[target] = phase * psi.amps
        p_plus = (1.0 + float(np.vdot(psi.amps, shifted).real)) / 2.0
        p_plus = min(max(p_plus, 0.0), 1.0)
        hits = rng.binomial(shots, p_plus)
        m = 2.0 * hits / shots - 1.0
        mean += term.coefficient * m
        var += term.coefficient**2 * (1.0 - m * m) / shots
    return mean, math.sqrt(var)
