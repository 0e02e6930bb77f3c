"""Couplings and single-mode data for the bosonised massive Schwinger model.

The model lives on a circle of circumference L. Bosonisation maps the gauge
coupling g to a free scalar of mass M = g/sqrt(pi); the fermion mass term
becomes a normal-ordered cosine whose strength carries the coefficient
c = e^gamma / (4 pi) fixed by the normal-ordering prescription.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

# Euler-Mascheroni constant to 17 significant digits. Stored literally so the
# package has no special-function dependency.
EULER_GAMMA = 0.5772156649015329


@dataclass(frozen=True)
class ModelParams:
    """Model couplings in units where everything is measured against g.

    Parameters
    ----------
    g : gauge coupling (sets the scale; the CLI always works at g = 1)
    m : fermion mass
    L : circumference of the spatial circle
    theta : vacuum angle, entering only through the phases e^{+-i theta}
    """

    g: float = 1.0
    m: float = 0.2
    L: float = 8.0
    theta: float = 0.0

    def __post_init__(self) -> None:
        if self.g <= 0.0:
            raise ValueError(f"coupling g must be positive, got {self.g}")
        if self.L <= 0.0:
            raise ValueError(f"circumference L must be positive, got {self.L}")
        if self.m < 0.0:
            raise ValueError(f"fermion mass m must be non-negative, got {self.m}")

    @property
    def M(self) -> float:
        """Scalar mass of the bosonised theory, M = g / sqrt(pi)."""
        return self.g / math.sqrt(math.pi)

    @property
    def c(self) -> float:
        """Normal-ordering coefficient e^gamma / (4 pi) of the cosine term."""
        return math.exp(EULER_GAMMA) / (4.0 * math.pi)

    @classmethod
    def from_ratios(cls, m_over_g: float, gl: float, theta: float = 0.0) -> "ModelParams":
        """Build parameters at g = 1 from the dimensionless inputs m/g and g*L."""
        return cls(g=1.0, m=m_over_g, L=gl, theta=theta)


def mode_momentum(params: ModelParams, n: int) -> float:
    """Momentum k_n = 2 pi n / L of the n-th circle mode."""
    return 2.0 * math.pi * n / params.L


def mode_energy(params: ModelParams, n: int) -> float:
    """Relativistic energy E_n = sqrt(k_n^2 + M^2) of mode n.

    E_0 = M is returned exactly rather than through the square root, so the
    zero-mode energy carries no roundoff.
    """
    if n == 0:
        return params.M
    k = mode_momentum(params, n)
    return math.sqrt(k * k + params.M * params.M)


def mode_sort_key(n: int) -> tuple[int, bool]:
    """Sort key giving the canonical mode order 0, 1, -1, 2, -2, ..."""
    return (abs(n), n < 0)


def canonical_modes(n_max: int) -> list[int]:
    """Mode numbers |n| <= n_max in canonical order 0, 1, -1, 2, -2, ..."""
    out = [0]
    for n in range(1, n_max + 1):
        out.append(n)
        out.append(-n)
    return out


@dataclass(frozen=True)
class ModeTable:
    """Precomputed momenta, energies and vertex factors for |n| <= n_max.

    Energies and vertex factors depend on n only through |n|, and are stored
    per |n| so that E_n == E_{-n} holds bit-exactly.
    """

    params: ModelParams
    n_max: int
    energies: tuple[float, ...]  # indexed by |n|
    xis: tuple[float, ...]       # indexed by |n|

    def _check(self, n: int) -> None:
        if abs(n) > self.n_max:
            raise ValueError(f"mode {n} outside table range |n| <= {self.n_max}")

    def energy(self, n: int) -> float:
        self._check(n)
        return self.energies[abs(n)]

    def xi(self, n: int) -> float:
        """Vertex factor xi_n = sqrt(2 pi / (L E_n)) of the normal-ordered exponential."""
        self._check(n)
        return self.xis[abs(n)]

    def momentum(self, n: int) -> float:
        self._check(n)
        return mode_momentum(self.params, n)

    @property
    def modes(self) -> list[int]:
        """All table modes in canonical order 0, 1, -1, 2, -2, ..."""
        return canonical_modes(self.n_max)


def build_mode_table(params: ModelParams, n_max: int) -> ModeTable:
    """Tabulate E_n and xi_n for |n| <= n_max.

    Parameters
    ----------
    params : model couplings
    n_max : largest |n| to include; must be >= 0
    """
    if n_max < 0:
        raise ValueError(f"n_max must be non-negative, got {n_max}")
    energies = tuple(mode_energy(params, n) for n in range(n_max + 1))
    xis = tuple(math.sqrt(2.0 * math.pi / (params.L * e)) for e in energies)
    return ModeTable(params=params, n_max=n_max, energies=energies, xis=xis)
