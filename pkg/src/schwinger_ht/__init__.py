"""Hamiltonian truncation of the bosonised massive Schwinger model on a circle.

Library surface: model parameters and mode tables (model), the truncated
zero-momentum Fock basis (fock), interaction matrix elements (matelem),
spectra and the vector mass (spectrum), Pauli decomposition (pauli), exact
and Trotterised quench dynamics (evolve), gate synthesis with OpenQASM
emission (circuit), and the command-line driver (cli).
"""
from .model import EULER_GAMMA, ModelParams, ModeTable, build_mode_table, mode_energy
from .fock import (FockState, TruncatedBasis, basis_for_qubits, enumerate_basis,
                   h0_energy, make_fock_state, momentum_number, parity,
                   truncate_to_qubits)
from .matelem import HMatrix, assemble, interaction_matrix, mode_factor, v_element
from .spectrum import (SpectrumResult, converged_vector_mass, eigensystem,
                       vector_mass, vector_mass_info)
from .pauli import PauliTerm, decompose, parse_terms, reconstruct, terms_text
from .evolve import (ExactEvolver, QuenchSeries, apply_pauli, evolve_exact,
                     quench_series, trotter_step)
from .circuit import (GateOp, TrotterCircuit, build_trotter_circuit, emit_qasm,
                      pauli_exp_circuit, simulate_step)

__version__ = "0.1.0"

__all__ = [
    "EULER_GAMMA", "ModelParams", "ModeTable", "build_mode_table", "mode_energy",
    "FockState", "TruncatedBasis", "basis_for_qubits", "enumerate_basis",
    "h0_energy", "make_fock_state", "momentum_number", "parity", "truncate_to_qubits",
    "HMatrix", "assemble", "interaction_matrix", "mode_factor", "v_element",
    "SpectrumResult", "converged_vector_mass", "eigensystem", "vector_mass",
    "vector_mass_info",
    "PauliTerm", "decompose", "parse_terms", "reconstruct", "terms_text",
    "ExactEvolver", "QuenchSeries", "apply_pauli", "evolve_exact", "quench_series",
    "trotter_step",
    "GateOp", "TrotterCircuit", "build_trotter_circuit", "emit_qasm",
    "pauli_exp_circuit", "simulate_step",
]
