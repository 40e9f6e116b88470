"""FABLE-style block encoding of the scaled thermal operator.

Layout on 2N+1 qubits: system register = qubits 0..N-1, index ancilla
register = qubits N..2N-1, rotation ancilla = qubit 2N.  With ancillas in the
high bits, the all-ancillas-zero sector is the leading principal 2^N block of
the circuit unitary, which equals (Q/s) / 2^N.

Synthesis: Hadamards on the index register, one uniformly-controlled RY over
all 2N control bits decomposed into a Gray-code walk of RY/CNOT pairs
(rotation angles via a scaled Walsh-Hadamard transform), a register swap, and
closing Hadamards.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .circuit import Circuit
from .errors import EntryOutOfRange
from .nonunitary import ThermalOperator
from .statevector import StateVector, apply_circuit, postselect


def _sfwht(a: np.ndarray) -> np.ndarray:
    """Walsh-Hadamard transform scaled by 1/2 per stage (in place)."""
    a = a.copy()
    h = 1
    while h < len(a):
        for i in range(0, len(a), 2 * h):
            x = a[i:i + h].copy()
            y = a[i + h:i + 2 * h].copy()
            a[i:i + h] = (x + y) / 2.0
            a[i + h:i + 2 * h] = (x - y) / 2.0
        h *= 2
    return a


def _gray_permute(a: np.ndarray) -> np.ndarray:
    idx = np.arange(len(a))
    return a[idx ^ (idx >> 1)]


def _gray_walk_controls(m: int) -> list[int]:
    """Control-bit index for each of the 2^m CNOTs of the Gray-code walk."""
    controls = []
    for k in range(1, 1 << m):
        controls.append((k & -k).bit_length() - 1)
    controls.append(m - 1)
    return controls


@dataclass
class BlockEncoding:
    n_system: int
    circuit: Circuit
    alpha: float
    generation_seconds: float

    @property
    def ancilla_count(self) -> int:
        return self.n_system + 1

    @property
    def width(self) -> int:
        return 2 * self.n_system + 1

    @property
    def cnot_count(self) -> int:
        return self.circuit.cnot_count


def fable_encode(op: ThermalOperator, compression_tol: float = 0.0) -> BlockEncoding:
    """Synthesize the block-encoding circuit of Q/s with subnormalization 2^N.

    `compression_tol` > 0 prunes rotations with compiled angle at or below the
    tolerance, merging the adjacent CNOTs by control parity (approximate
    encoding); the default keeps the circuit exact with 4^N CNOTs.
    """
    t0 = time.perf_counter()
    a = np.asarray(op.scaled, dtype=float)
    n = op.n_qubits
    if np.max(np.abs(a)) > 1.0 + 1e-12:
        raise EntryOutOfRange("matrix entries must lie in [-1, 1]")
    a = np.clip(a, -1.0, 1.0)

    # theta_c = 2 arccos(a_ij) with c = (i << n) | j; compiled angles via the
    # scaled Walsh-Hadamard transform in Gray-code order
    theta = 2.0 * np.arccos(a.flatten(order="C"))
    phi = _gray_permute(_sfwht(theta))

    m = 2 * n
    rot_q = 2 * n
    circuit = Circuit(2 * n + 1)
    for q in range(n, 2 * n):
        circuit.append("h", q)
    pending = 0  # parity mask of CNOT controls deferred by pruning
    for k, ctrl_bit in enumerate(_gray_walk_controls(m)):
        if abs(phi[k]) > compression_tol:
            bit = 0
            while pending:
                if pending & 1:
                    circuit.append("cnot", bit, rot_q)
                pending >>= 1
                bit += 1
            circuit.append("ry", rot_q, angle=float(phi[k]))
            circuit.append("cnot", ctrl_bit, rot_q)
        else:
            pending ^= 1 << ctrl_bit
    bit = 0
    while pending:
        if pending & 1:
            circuit.append("cnot", bit, rot_q)
        pending >>= 1
        bit += 1
    for q in range(n):
        circuit.append("swap", q, n + q)
    for q in range(n, 2 * n):
        circuit.append("h", q)
    return BlockEncoding(n, circuit, float(2**n), time.perf_counter() - t0)


def apply_fable(be: BlockEncoding, psi: StateVector) -> tuple[StateVector, float]:
    """Run the encoding circuit with ancillas in |0>, post-select all zeros.

    Returns the filtered system state (equal to apply_exact's output up to
    synthesis round-off) and the success probability ||(Q/s) psi||^2 / 4^N.
    """
    n = be.n_system
    if psi.n != n:
        raise ValueError(f"state has {psi.n} qubits, encoding expects {n}")
    full = np.zeros(1 << be.width, dtype=complex)
    full[: 1 << n] = psi.amps
    out = apply_circuit(StateVector(be.width, full), be.circuit)
    return postselect(out, range(n, be.width), [0] * be.ancilla_count)
