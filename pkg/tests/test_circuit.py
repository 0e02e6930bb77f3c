import math
import os

import numpy as np
import pytest

from schwinger_ht.circuit import (
    GateOp,
    apply_gate,
    build_trotter_circuit,
    emit_qasm,
    pauli_exp_circuit,
    simulate_step,
    write_qasm,
)
from schwinger_ht.evolve import trotter_step
from schwinger_ht.fock import basis_for_qubits
from schwinger_ht.matelem import assemble
from schwinger_ht.model import ModelParams
from schwinger_ht.pauli import PauliTerm, decompose, word_matrix

P = ModelParams.from_ratios(0.2, 8.0)
DATA = os.path.join(os.path.dirname(__file__), "data")


def gates_to_unitary(gates, n_q):
    dim = 2 ** n_q
    u = np.eye(dim, dtype=complex)
    for k in range(dim):
        psi = np.zeros(dim, dtype=complex)
        psi[k] = 1.0
        for gate in gates:
            psi = apply_gate(psi, gate, n_q)
        u[:, k] = psi
    return u


def test_gate_op_validation():
    with pytest.raises(ValueError):
        GateOp("swap", (0, 1))
    with pytest.raises(ValueError):
        GateOp("cx", (0,))
    with pytest.raises(ValueError):
        GateOp("h", (0, 1))
    with pytest.raises(ValueError):
        GateOp("rz", (0,))
    GateOp("rz", (0,), 0.4)  # fine


def test_apply_gate_unitarity():
    rng = np.random.default_rng(1)
    n_q = 3
    psi = rng.normal(size=2 ** n_q) + 1j * rng.normal(size=2 ** n_q)
    psi /= np.linalg.norm(psi)
    for gate in (GateOp("h", (1,)), GateOp("rx", (0,), 0.8),
                 GateOp("rz", (2,), -1.3), GateOp("cx", (0, 2))):
        out = apply_gate(psi, gate, n_q)
        assert abs(np.linalg.norm(out) - 1.0) < 1e-12


def test_apply_gate_cx_truth_table():
    # qubit 0 is the most significant bit: cx(0,1) on |10> gives |11>
    psi = np.zeros(4, dtype=complex)
    psi[0b10] = 1.0
    out = apply_gate(psi, GateOp("cx", (0, 1)), 2)
    assert out[0b11] == 1.0 and np.sum(np.abs(out)) == 1.0
    psi = np.zeros(4, dtype=complex)
    psi[0b01] = 1.0  # control clear, nothing moves
    out = apply_gate(psi, GateOp("cx", (0, 1)), 2)
    assert out[0b01] == 1.0


def test_pauli_exp_circuit_is_exact():
    """Gate synthesis reproduces exp(-i angle P) including the global phase."""
    rng = np.random.default_rng(4)
    for word in ("Z", "X", "Y", "ZZ", "XY", "YIZ", "XZY"):
        n_q = len(word)
        angle = float(rng.uniform(-1.5, 1.5))
        gates = pauli_exp_circuit(word, angle)
        u = gates_to_unitary(gates, n_q)
        pw = word_matrix(word)
        want = math.cos(angle) * np.eye(2 ** n_q) - 1j * math.sin(angle) * pw
        assert np.max(np.abs(u - want)) < 1e-13, word
    with pytest.raises(ValueError):
        pauli_exp_circuit("II", 0.3)
    with pytest.raises(ValueError):
        pauli_exp_circuit("XQ", 0.3)


def test_build_trotter_circuit_resources():
    terms = [PauliTerm("II", 0.5), PauliTerm("XZ", 0.2), PauliTerm("IY", -0.1)]
    circ = build_trotter_circuit(terms, dt=0.3, n_steps=4)
    assert circ.n_q == 2 and circ.n_steps == 4
    assert circ.term_count == 3
    assert circ.rotations == 2            # identity word is phase only
    assert circ.two_qubit_gates == 2      # one two-letter word
    assert abs(circ.global_phase - 0.5 * 0.3) < 1e-15
    assert circ.depth == len(circ.gates)
    report = circ.resource_report()
    assert report == {"n_q": 2, "terms": 3, "two_qubit_gates": 2,
                      "rotations": 2, "steps": 4}
    with pytest.raises(ValueError):
        build_trotter_circuit([], 0.3)
    with pytest.raises(ValueError):
        build_trotter_circuit(terms, 0.3, n_steps=0)
    with pytest.raises(ValueError):
        build_trotter_circuit([PauliTerm("X", 1.0), PauliTerm("XX", 1.0)], 0.3)


def test_identity_only_circuit_is_a_phase():
    circ = build_trotter_circuit([PauliTerm("II", 0.7)], dt=0.5)
    assert circ.gates == ()
    psi = np.array([1.0, 0.0, 0.0, 0.0], dtype=complex)
    out = simulate_step(circ, psi)
    phase = complex(math.cos(0.35), -math.sin(0.35))
    assert np.max(np.abs(out - phase * psi)) < 1e-15


def test_simulated_step_matches_pauli_stepper():
    basis = basis_for_qubits(P, 2, "even")
    h = assemble(basis, P)
    terms = decompose(h)
    circ = build_trotter_circuit(terms, dt=0.3)
    rng = np.random.default_rng(8)
    psi = rng.normal(size=4) + 1j * rng.normal(size=4)
    psi /= np.linalg.norm(psi)
    got = simulate_step(circ, psi)
    want = trotter_step(terms, 0.3, psi)
    assert np.max(np.abs(got - want)) < 1e-13
    # without the global phase only the magnitudes are guaranteed
    bare = simulate_step(circ, psi, include_global_phase=False)
    assert np.max(np.abs(np.abs(bare) - np.abs(want))) < 1e-13


def test_qasm_text_shape():
    terms = decompose(assemble(basis_for_qubits(P, 2, "even"), P))
    circ = build_trotter_circuit(terms, dt=0.3, n_steps=3)
    text = emit_qasm(circ)
    lines = text.strip().split("\n")
    assert lines[0] == "OPENQASM 2.0;"
    assert lines[1] == 'include "qelib1.inc";'
    assert lines[2] == "qreg q[2];"
    assert lines[3] == "creg c[2];"
    assert lines[-1] == "measure q -> c;"
    assert len(lines) == 4 + 3 * len(circ.gates) + 1
    body = lines[4:-1]
    one_step = body[:len(circ.gates)]
    assert body == one_step * 3


def parse_qasm_gates(text):
    """Tiny reader for the emitted subset: h, rx, rz, cx lines."""
    gates = []
    for line in text.strip().split("\n"):
        if line.startswith("h "):
            gates.append(GateOp("h", (int(line.split("q[")[1].split("]")[0]),)))
        elif line.startswith(("rx(", "rz(")):
            kind = line[:2]
            angle = float(line.split("(")[1].split(")")[0])
            q = int(line.split("q[")[1].split("]")[0])
            gates.append(GateOp(kind, (q,), angle))
        elif line.startswith("cx "):
            a, b = line.split()[1].rstrip(";").split(",")
            gates.append(GateOp("cx", (int(a[2:-1]), int(b[2:-1]))))
    return gates


def test_qasm_parses_back_to_the_same_circuit():
    terms = decompose(assemble(basis_for_qubits(P, 2, "even"), P))
    circ = build_trotter_circuit(terms, dt=0.3)
    gates = parse_qasm_gates(emit_qasm(circ))
    assert gates == list(circ.gates)  # repr angles survive the round trip
    psi = np.zeros(4, dtype=complex)
    psi[0] = 1.0
    via_qasm = psi
    for gate in gates:
        via_qasm = apply_gate(via_qasm, gate, 2)
    direct = simulate_step(circ, psi, include_global_phase=False)
    assert np.max(np.abs(via_qasm - direct)) == 0.0


def test_qasm_golden_file(tmp_path):
    terms = decompose(assemble(basis_for_qubits(P, 2, "even"), P))
    circ = build_trotter_circuit(terms, dt=0.3)
    path = tmp_path / "step.qasm"
    write_qasm(circ, str(path))
    golden = os.path.join(DATA, "trotter_nq2_dt0.3.qasm")
    with open(golden) as fh:
        assert path.read_text() == fh.read()
