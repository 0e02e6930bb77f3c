"""Spectra of the truncated Hamiltonian and the vector-meson mass.

The vector mass is the gap between the lowest states of the Z2-odd and
Z2-even sectors, each diagonalised in its own truncated basis.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fock import TruncatedBasis, basis_for_qubits, enumerate_basis
from .matelem import HMatrix, assemble
from .model import ModelParams

HERMITICITY_TOL = 1e-12
RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class SpectrumResult:
    """Ascending eigenvalues and the normalised ground-state vector."""

    eigenvalues: np.ndarray
    ground_state: np.ndarray
    basis: TruncatedBasis

    @property
    def e0(self) -> float:
        return float(self.eigenvalues[0])


def eigensystem(h: HMatrix | np.ndarray) -> SpectrumResult:
    """Diagonalise a truncated Hamiltonian.

    Rejects input whose Hermiticity defect exceeds 1e-12 * max|H| and checks
    the ground-state residual ||H v - e0 v|| <= 1e-10 * ||H||.
    """
    basis = h.basis if isinstance(h, HMatrix) else None
    mat = h.entries if isinstance(h, HMatrix) else np.asarray(h)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {mat.shape}")
    scale = float(np.abs(mat).max()) if mat.size else 0.0
    defect = float(np.abs(mat - mat.conj().T).max()) if mat.size else 0.0
    if defect > HERMITICITY_TOL * max(scale, 1e-300):
        raise ValueError(
            f"matrix is not Hermitian: defect {defect:.3e} > {HERMITICITY_TOL} * {scale:.3e}")

    vals, vecs = np.linalg.eigh(mat)
    ground = vecs[:, 0]
    norm = scale * np.sqrt(mat.shape[0])  # cheap upper bound on ||H||_2
    residual = float(np.linalg.norm(mat @ ground - vals[0] * ground))
    if residual > RESIDUAL_TOL * max(norm, 1e-300):
        raise RuntimeError(
            f"ground-state residual {residual:.3e} exceeds {RESIDUAL_TOL} * ||H||")
    return SpectrumResult(eigenvalues=vals, ground_state=ground, basis=basis)


@dataclass(frozen=True)
class VectorMassResult:
    """Sector ground energies and bases behind one vector-mass value."""

    mass: float
    e0_even: float
    e0_odd: float
    basis_even: TruncatedBasis
    basis_odd: TruncatedBasis


def vector_mass_info(params: ModelParams, n_q: int | None = None,
                     e_max: float | None = None,
                     zero_mode_delta: bool = False) -> VectorMassResult:
    """Vector mass M_V = E0(odd) - E0(even) with per-sector truncations.

    Exactly one of n_q (first 2^{n_q} states of each sector, cutoff grown
    automatically) or e_max (all sector states below the cutoff) selects the
    truncation.
    """
    if (n_q is None) == (e_max is None):
        raise ValueError("specify exactly one of n_q or e_max")
    results = {}
    for sector in ("even", "odd"):
        if n_q is not None:
            basis = basis_for_qubits(params, n_q, sector)
        else:
            basis = enumerate_basis(params, e_max, sector)
        if basis.dim == 0:
            raise ValueError(f"sector {sector!r} holds no states at e_max={e_max}")
        results[sector] = (eigensystem(assemble(basis, params, zero_mode_delta)), basis)
    e0_even = results["even"][0].e0
    e0_odd = results["odd"][0].e0
    return VectorMassResult(mass=e0_odd - e0_even, e0_even=e0_even, e0_odd=e0_odd,
                            basis_even=results["even"][1], basis_odd=results["odd"][1])


def vector_mass(params: ModelParams, n_q: int | None = None,
                e_max: float | None = None, zero_mode_delta: bool = False) -> float:
    return vector_mass_info(params, n_q=n_q, e_max=e_max,
                            zero_mode_delta=zero_mode_delta).mass


def converged_vector_mass(params: ModelParams, rel_tol: float = 1e-3,
                          e_start: float = 4.0, growth: float = 1.3,
                          dim_cap: int = 4000) -> tuple[float, float]:
    """Raise e_max geometrically until the vector mass moves by < rel_tol.

    Returns (mass, e_max at which the plateau was declared). This is the
    high-cutoff reference against which small-n_q truncations are judged.
    """
    e_max = e_start
    prev = None
    while True:
        dim = enumerate_basis(params, e_max, "even").dim
        if dim > dim_cap:
            raise RuntimeError(
                f"no {rel_tol:.0e} plateau below dim cap {dim_cap} (e_max={e_max:.3f})")
        mass = vector_mass(params, e_max=e_max)
        if prev is not None and abs(mass - prev) < rel_tol * abs(mass):
            return mass, e_max
        prev = mass
        e_max *= growth


def spectrum_rows(m_over_g_values: list[float], n_q_values: list[int], gl: float,
                  theta: float = 0.0,
                  zero_mode_delta: bool = False) -> list[tuple[float, int, float]]:
    """(m_over_g, n_q, vector_mass_over_g) rows, sorted by the sweep keys."""
    rows = []
    for m_over_g in sorted(m_over_g_values):
        params = ModelParams.from_ratios(m_over_g, gl, theta)
        for n_q in sorted(n_q_values):
            mv = vector_mass(params, n_q=n_q, zero_mode_delta=zero_mode_delta)
            rows.append((m_over_g, n_q, mv / params.g))
    return rows


def write_spectrum_csv(rows: list[tuple[float, int, float]], path: str) -> None:
    """CSV with columns m_over_g, n_q, vector_mass_over_g."""
    lines = ["m_over_g,n_q,vector_mass_over_g"]
    for m_over_g, n_q, mv in rows:
        lines.append(f"{m_over_g!r},{n_q},{mv!r}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
