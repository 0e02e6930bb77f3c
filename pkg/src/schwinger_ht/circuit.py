"""Gate synthesis of one first-order Trotter step and OpenQASM 2.0 emission.

Each Pauli exponential exp(-i alpha P dt) becomes basis-change gates (H for X,
RX(+-pi/2) for Y), a CNOT parity ladder onto the last active qubit, RZ(2 alpha
dt) there, then the ladder and basis changes undone. An all-identity word
carries no gates and is tracked as a global phase. Gate angles follow the
rotation convention RZ(l) = exp(-i l Z / 2), RX(l) = exp(-i l X / 2); in
OpenQASM 2.0 terms rz differs from that by a global phase only, which
measurement statistics cannot see.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .pauli import PauliTerm

HALF_PI = math.pi / 2.0

GATE_KINDS = ("h", "rx", "rz", "cx")


@dataclass(frozen=True)
class GateOp:
    """One gate: kind "h" | "rx" | "rz" | "cx", target qubits, rotation angle."""

    kind: str
    qubits: tuple[int, ...]
    angle: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if self.kind == "cx" and len(self.qubits) != 2:
            raise ValueError(f"cx needs (control, target), got {self.qubits}")
        if self.kind != "cx" and len(self.qubits) != 1:
            raise ValueError(f"{self.kind} acts on one qubit, got {self.qubits}")
        if self.kind in ("rx", "rz") and self.angle is None:
            raise ValueError(f"{self.kind} needs an angle")


def pauli_exp_circuit(word: str, angle: float) -> list[GateOp]:
    """Gate list realising exp(-i * angle * P_word) exactly (incl. phase).

    The word must be non-identity on at least one qubit.
    """
    active = [(q, letter) for q, letter in enumerate(word) if letter != "I"]
    if not active:
        raise ValueError("all-identity word has no circuit; handle it as a phase")
    for _, letter in active:
        if letter not in "XYZ":
            raise ValueError(f"invalid Pauli letter {letter!r} in word {word!r}")

    pre: list[GateOp] = []
    post: list[GateOp] = []
    for q, letter in active:
        if letter == "X":
            pre.append(GateOp("h", (q,)))
            post.append(GateOp("h", (q,)))
        elif letter == "Y":
            pre.append(GateOp("rx", (q,), HALF_PI))
            post.append(GateOp("rx", (q,), -HALF_PI))

    qubits = [q for q, _ in active]
    ladder = [GateOp("cx", (qubits[i], qubits[i + 1])) for i in range(len(qubits) - 1)]
    rotation = GateOp("rz", (qubits[-1],), 2.0 * angle)
    return pre + ladder + [rotation] + ladder[::-1] + post[::-1]


@dataclass(frozen=True)
class TrotterCircuit:
    """One Trotter step as a gate list, plus repetition and resource metadata.

    global_phase is the angle phi per step with the step unitary carrying an
    overall factor e^{-i phi} from identity words (not emitted as gates).
    """

    n_q: int
    gates: tuple[GateOp, ...]
    dt: float
    n_steps: int
    term_count: int
    two_qubit_gates: int
    rotations: int
    global_phase: float

    @property
    def depth(self) -> int:
        """Serial depth of one step (gates are emitted sequentially)."""
        return len(self.gates)

    def resource_report(self) -> dict:
        return {
            "n_q": self.n_q,
            "terms": self.term_count,
            "two_qubit_gates": self.two_qubit_gates,
            "rotations": self.rotations,
            "steps": self.n_steps,
        }


def build_trotter_circuit(terms: list[PauliTerm], dt: float, n_steps: int = 1) -> TrotterCircuit:
    """Synthesise one first-order step from terms already in canonical order."""
    if not terms:
        raise ValueError("no Pauli terms to exponentiate")
    n_q = len(terms[0].word)
    if n_steps < 1:
        raise ValueError(f"n_steps must be >= 1, got {n_steps}")
    gates: list[GateOp] = []
    phase = 0.0
    two_qubit = 0
    rotations = 0
    for term in terms:
        if len(term.word) != n_q:
            raise ValueError(f"word {term.word!r} length differs from n_q={n_q}")
        if set(term.word) <= {"I"}:
            phase += term.coeff * dt
            continue
        ops = pauli_exp_circuit(term.word, term.coeff * dt)
        gates.extend(ops)
        active = sum(1 for letter in term.word if letter != "I")
        two_qubit += 2 * (active - 1)
        rotations += 1
    return TrotterCircuit(n_q=n_q, gates=tuple(gates), dt=dt, n_steps=n_steps,
                          term_count=len(terms), two_qubit_gates=two_qubit,
                          rotations=rotations, global_phase=phase)


def apply_gate(psi: np.ndarray, gate: GateOp, n_q: int) -> np.ndarray:
    """Apply one gate to a statevector (qubit 0 = most significant bit)."""
    psi = np.asarray(psi, dtype=complex)
    dim = psi.shape[0]
    out = psi.copy()
    if gate.kind == "cx":
        control, target = gate.qubits
        cbit = 1 << (n_q - 1 - control)
        tbit = 1 << (n_q - 1 - target)
        j = np.arange(dim)
        sel = (j & cbit).astype(bool) & ~(j & tbit).astype(bool)
        j0 = j[sel]
        out[j0], out[j0 | tbit] = psi[j0 | tbit], psi[j0]
        return out
    (q,) = gate.qubits
    bit = 1 << (n_q - 1 - q)
    j = np.arange(dim)
    j0 = j[(j & bit) == 0]
    j1 = j0 | bit
    a, b = psi[j0], psi[j1]
    if gate.kind == "h":
        inv = 1.0 / math.sqrt(2.0)
        out[j0] = (a + b) * inv
        out[j1] = (a - b) * inv
    elif gate.kind == "rx":
        c = math.cos(gate.angle / 2.0)
        s = math.sin(gate.angle / 2.0)
        out[j0] = c * a - 1j * s * b
        out[j1] = c * b - 1j * s * a
    elif gate.kind == "rz":
        half = complex(math.cos(gate.angle / 2.0), -math.sin(gate.angle / 2.0))
        out[j0] = a * half
        out[j1] = b * half.conjugate()
    return out


def simulate_step(circuit: TrotterCircuit, psi: np.ndarray,
                  include_global_phase: bool = True) -> np.ndarray:
    """Run one step's gate list on a statevector."""
    out = np.asarray(psi, dtype=complex)
    for gate in circuit.gates:
        out = apply_gate(out, gate, circuit.n_q)
    if include_global_phase and circuit.global_phase != 0.0:
        out = out * complex(math.cos(circuit.global_phase), -math.sin(circuit.global_phase))
    return out


def emit_qasm(circuit: TrotterCircuit) -> str:
    """OpenQASM 2.0 text: header, one step's gates repeated n_steps times,
    then a terminal measurement of every qubit into a classical register."""
    lines = [
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        f"qreg q[{circuit.n_q}];",
        f"creg c[{circuit.n_q}];",
    ]
    for _ in range(circuit.n_steps):
        for gate in circuit.gates:
            if gate.kind == "h":
                lines.append(f"h q[{gate.qubits[0]}];")
            elif gate.kind == "rx":
                lines.append(f"rx({gate.angle!r}) q[{gate.qubits[0]}];")
            elif gate.kind == "rz":
                lines.append(f"rz({gate.angle!r}) q[{gate.qubits[0]}];")
            else:
                lines.append(f"cx q[{gate.qubits[0]}],q[{gate.qubits[1]}];")
    lines.append("measure q -> c;")
    return "\n".join(lines) + "\n"


def write_qasm(circuit: TrotterCircuit, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(emit_qasm(circuit))
