"""Post-quench dynamics of the vacuum persistence amplitude G(t) = <vac|e^{-iHt}|vac>.

State vectors are plain complex numpy arrays over the truncated basis; the
vacuum is the computational zero state e_0. Exact evolution exponentiates via
the eigendecomposition; the Trotter route applies first-order product-formula
factors exp(-i alpha_w P_w dt) term by term, each as cos(alpha dt) psi
- i sin(alpha dt) P_w psi using the Pauli involution (no matrices are built).
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .fock import basis_for_qubits
from .matelem import HMatrix, assemble
from .model import ModelParams
from .pauli import PauliTerm, decompose, word_masks, popcount_table

METHODS = ("exp", "trotter", "trotter-h0v")


def _as_matrix(h: HMatrix | np.ndarray) -> np.ndarray:
    return h.entries if isinstance(h, HMatrix) else np.asarray(h)


class ExactEvolver:
    """Caches one eigendecomposition and evaluates psi(t) at arbitrary t."""

    def __init__(self, h: HMatrix | np.ndarray):
        mat = _as_matrix(h)
        self.eigenvalues, self.vectors = np.linalg.eigh(mat)

    def at(self, psi0: np.ndarray, t: float) -> np.ndarray:
        if t == 0.0:
            return np.asarray(psi0, dtype=complex).copy()
        coeff = self.vectors.conj().T @ psi0
        return self.vectors @ (np.exp(-1j * self.eigenvalues * t) * coeff)

    def overlaps(self, psi0: np.ndarray, times: np.ndarray) -> np.ndarray:
        """G(t) = <psi0| psi(t)> on a whole time grid at once."""
        psi0 = np.asarray(psi0, dtype=complex)
        coeff = self.vectors.conj().T @ psi0
        weights = np.abs(coeff) ** 2
        g = np.exp(-1j * np.outer(times, self.eigenvalues)) @ weights
        # e^{0} is the identity: pin t = 0 to <psi0|psi0> free of basis-change roundoff
        g[np.asarray(times) == 0.0] = np.vdot(psi0, psi0)
        return g


def evolve_exact(h: HMatrix | np.ndarray, psi0: np.ndarray, t: float) -> np.ndarray:
    """psi(t) = e^{-iHt} psi0; t = 0 returns psi0 unchanged."""
    return ExactEvolver(h).at(psi0, t)


def apply_pauli(word: str, psi: np.ndarray) -> np.ndarray:
    """P_word |psi> through index xor and phase flips, O(2^{n_q})."""
    dim = psi.shape[0]
    if dim != 2 ** len(word):
        raise ValueError(f"state of dim {dim} does not match word {word!r}")
    flip, phase, n_y = word_masks(word)
    j = np.arange(dim)
    pop = popcount_table(dim)
    phases = (1j) ** (n_y % 4) * (1.0 - 2.0 * (pop[j & phase] & 1))
    out = np.empty(dim, dtype=complex)
    out[j ^ flip] = phases * psi
    return out


def trotter_step(terms: list[PauliTerm], dt: float, psi: np.ndarray) -> np.ndarray:
    """One first-order factor product prod_w exp(-i alpha_w P_w dt) applied to psi.

    Terms are applied in the given (canonical) order; an identity word only
    contributes the global phase e^{-i alpha dt}.
    """
    out = np.asarray(psi, dtype=complex)
    for term in terms:
        angle = term.coeff * dt
        if set(term.word) <= {"I"}:
            out = out * complex(math.cos(angle), -math.sin(angle))
            continue
        c, s = math.cos(angle), math.sin(angle)
        out = c * out - 1j * s * apply_pauli(term.word, out)
    return out


def h0v_step_factory(h: HMatrix, dt: float):
    """Two-factor splitting e^{-iH0 dt} e^{-iV dt} as a cross-check stepper.

    H0 is diagonal on the basis; V is exponentiated once through its own
    eigendecomposition and reused every step.
    """
    energies = np.array([s.energy for s in h.basis.states])
    phase0 = np.exp(-1j * energies * dt)
    vals, vecs = np.linalg.eigh(h.v_entries)
    u_v = (vecs * np.exp(-1j * vals * dt)) @ vecs.conj().T

    def step(psi: np.ndarray) -> np.ndarray:
        return phase0 * (u_v @ psi)

    return step


@dataclass(frozen=True)
class QuenchSeries:
    """G(t) samples after the mass quench m: 0 -> m at t = 0."""

    times: np.ndarray
    g_values: np.ndarray
    method: str
    params: ModelParams
    n_q: int
    sector: str
    dt: float | None = None
    sample_dt: float | None = None

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.g_values) ** 2

    def csv_text(self) -> str:
        """'# {json params}' line, then t,re_G,im_G,prob rows."""
        header = {
            "m_over_g": self.params.m / self.params.g,
            "gL": self.params.g * self.params.L,
            "theta": self.params.theta,
            "n_q": self.n_q,
            "sector": self.sector,
            "method": self.method,
            "dt": self.dt,
            "sample_dt": self.sample_dt,
        }
        lines = ["# " + json.dumps(header, sort_keys=True), "t,re_G,im_G,prob"]
        for t, g in zip(self.times, self.g_values):
            g = complex(g)
            prob = abs(g) ** 2
            lines.append(f"{float(t)!r},{g.real!r},{g.imag!r},{prob!r}")
        return "\n".join(lines) + "\n"


def _time_grid(t_max: float, step: float) -> np.ndarray:
    n = int(math.floor(t_max / step + 1e-9))
    return np.arange(n + 1) * step


def quench_series(params: ModelParams, n_q: int, t_max: float,
                  sample_dt: float = 0.1, method: str = "exp",
                  dt: float | None = None, sector: str = "even",
                  zero_mode_delta: bool = False) -> QuenchSeries:
    """Simulate G(t) on the first-2^{n_q} basis of the chosen sector.

    method "exp" samples the exact evolution every sample_dt; the Trotter
    methods record one sample per step, so their grid is the multiples of dt.
    The odd sector (no vacuum) is rejected.
    """
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}, got {method!r}")
    if sector == "odd":
        raise ValueError("quench starts from the vacuum, which the odd sector lacks")
    if n_q < 1:
        raise ValueError(f"n_q must be >= 1 for quench dynamics, got {n_q}")
    if t_max <= 0.0:
        raise ValueError(f"t_max must be positive, got {t_max}")
    if sample_dt <= 0.0:
        raise ValueError(f"sample_dt must be positive, got {sample_dt}")

    basis = basis_for_qubits(params, n_q, sector)
    h = assemble(basis, params, zero_mode_delta)
    psi0 = np.zeros(basis.dim, dtype=complex)
    psi0[0] = 1.0

    if method == "exp":
        times = _time_grid(t_max, sample_dt)
        g = ExactEvolver(h).overlaps(psi0, times)
        return QuenchSeries(times=times, g_values=g, method=method, params=params,
                            n_q=n_q, sector=sector, sample_dt=sample_dt)

    if dt is None or dt <= 0.0:
        raise ValueError(f"method {method!r} needs a positive Trotter step dt, got {dt}")
    times = _time_grid(t_max, dt)
    g = np.empty(len(times), dtype=complex)
    g[0] = psi0[0]
    if method == "trotter":
        terms = decompose(h)
        psi = psi0
        for k in range(1, len(times)):
            psi = trotter_step(terms, dt, psi)
            g[k] = psi[0]
    else:
        step = h0v_step_factory(h, dt)
        psi = psi0
        for k in range(1, len(times)):
            psi = step(psi)
            g[k] = psi[0]
    return QuenchSeries(times=times, g_values=g, method=method, params=params,
                        n_q=n_q, sector=sector, dt=dt)


def write_quench_csv(series: QuenchSeries, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(series.csv_text())
