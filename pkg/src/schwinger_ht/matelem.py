"""Matrix elements of the normal-ordered cosine interaction.

The interaction is V = -c m M \\int dx :exp(i sqrt(4 pi) phi + i theta): + h.c.
Between occupation-number states it factorises over modes. With d = r' - r,
the per-mode factor is

    F(r', r) = (r'! r!)^{-1/2} sum_j (i xi)^{2j+d} C(r', j+d) C(r, j) (r-j)!

which equals i^d times a real number. The x integral enforces total momentum
conservation and contributes a factor L. The Hermitian-conjugate term is the
complex conjugate of the first term with bra and ket swapped, which this
module arranges to hold bit-exactly, so assembled matrices are Hermitian by
construction and the Z2 parity selection rule at theta = 0 is an exact zero
rather than a cancellation to roundoff.
"""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass

import numpy as np

from .model import ModelParams, ModeTable
from .fock import FockState, TruncatedBasis

_I_POW = (1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j)  # i^k for k mod 4


def _mode_factor_real(xi: float, hi: int, lo: int) -> float:
    """Real magnitude of the per-mode factor for occupations hi >= lo.

    Evaluates sum_{j=0}^{lo} t_j with t_0 = xi^delta sqrt(hi!/lo!) / delta!
    and the stable ratio recurrence
    t_{j+1} = t_j * (-xi^2) (lo - j) / ((j + 1 + delta)(j + 1)), delta = hi - lo.
    """
    delta = hi - lo
    t = xi ** delta * math.sqrt(math.prod(range(lo + 1, hi + 1))) / math.factorial(delta)
    acc = t
    for j in range(lo):
        t *= -xi * xi * (lo - j) / ((j + 1 + delta) * (j + 1))
        acc += t
    return acc


def mode_factor(xi: float, r_out: int, r_in: int) -> complex:
    """Single-mode factor <r_out| ... |r_in> of the normal-ordered exponential.

    The value is i^{r_out - r_in} times a real number; the real part is always
    evaluated for (max, min) so that the pair (r_out, r_in) and its swap share
    every float operation.
    """
    if r_out < 0 or r_in < 0:
        raise ValueError("occupations must be non-negative")
    d = r_out - r_in
    if d >= 0:
        s = _mode_factor_real(xi, r_out, r_in)
    else:
        s = _mode_factor_real(xi, r_in, r_out)
        if d % 2:
            s = -s
    return _I_POW[d % 4] * s


def v_element(bra: FockState, ket: FockState, params: ModelParams, modes: ModeTable,
              zero_mode_delta: bool = False) -> complex:
    """Interaction element <bra| V |ket>.

    Returns an exact complex zero when total momentum differs. The fermion
    mass multiplies last, so the element is exactly linear in m.

    Parameters
    ----------
    bra, ket : occupation-number states
    params : model couplings (theta enters through e^{+-i theta} only)
    modes : table covering every occupied mode of bra and ket
    zero_mode_delta : if True, additionally require r'_0 == r_0 (the literal
        printed selection rule, kept for comparison; off by default because it
        contradicts the zero mode's presence in the field expansion)
    """
    if bra.momentum != ket.momentum:
        return 0.0j
    if zero_mode_delta and bra.occupation(0) != ket.occupation(0):
        return 0.0j

    support = sorted(set(bra.as_dict()) | set(ket.as_dict()),
                     key=lambda n: (abs(n), n < 0))
    prod = 1.0
    big_d = 0
    flip = False  # parity of sum over modes of |d_n| restricted to d_n < 0
    for n in support:
        if abs(n) > modes.n_max:
            raise ValueError(f"mode {n} outside table range |n| <= {modes.n_max}")
        r_out = bra.occupation(n)
        r_in = ket.occupation(n)
        d = r_out - r_in
        big_d += d
        if d >= 0:
            prod *= _mode_factor_real(modes.xi(n), r_out, r_in)
        else:
            prod *= _mode_factor_real(modes.xi(n), r_in, r_out)
            if d % 2:
                flip = not flip
    if flip:
        prod = -prod

    # e^{i theta} A + e^{-i theta} conj(A with bra/ket swapped)
    # = i^D prod (e^{i theta} + (-1)^D e^{-i theta})
    ephase = complex(math.cos(params.theta), math.sin(params.theta))
    if big_d % 2 == 0:
        combo = ephase + ephase.conjugate()
    else:
        combo = ephase - ephase.conjugate()
    base = (-params.c * params.M * params.L) * prod * _I_POW[big_d % 4] * combo
    return base * params.m


@dataclass(frozen=True)
class HMatrix:
    """Dense truncated Hamiltonian H = H0 + V on a given basis.

    entries is real float64 at theta = 0 (the matrix is real symmetric there)
    and complex128 otherwise. v_entries holds the interaction alone, so that
    H - V reproduces the H0 energies exactly.
    """

    entries: np.ndarray
    v_entries: np.ndarray
    basis: TruncatedBasis
    params: ModelParams
    zero_mode_delta: bool = False

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def theta(self) -> float:
        return self.params.theta

    def dump(self) -> str:
        """JSON header line, then row-major re,im pairs, one row per line."""
        header = {
            "dim": self.dim,
            "g": self.params.g,
            "m": self.params.m,
            "L": self.params.L,
            "theta": self.params.theta,
            "sector": self.basis.sector,
            "e_max": self.basis.e_max,
            "zero_mode_delta": self.zero_mode_delta,
            "basis_sha256": hashlib.sha256(self.basis.dump().encode()).hexdigest(),
        }
        mat = np.asarray(self.entries, dtype=complex)
        lines = [json.dumps(header, sort_keys=True)]
        for row in mat:
            lines.append(",".join(f"{float(z.real)!r},{float(z.imag)!r}" for z in row))
        return "\n".join(lines) + "\n"


def _factor_table(modes: ModeTable, occ_max: int) -> np.ndarray:
    """Real per-mode factors T[|n|, hi, lo] for hi >= lo (mirrored below)."""
    table = np.zeros((modes.n_max + 1, occ_max + 1, occ_max + 1))
    for a in range(modes.n_max + 1):
        xi = modes.xis[a]
        for hi in range(occ_max + 1):
            for lo in range(hi + 1):
                f = _mode_factor_real(xi, hi, lo)
                table[a, hi, lo] = f
                table[a, lo, hi] = f
    return table


def interaction_matrix(basis: TruncatedBasis, params: ModelParams,
                       zero_mode_delta: bool = False) -> np.ndarray:
    """Dense V on the basis; real float64 at theta = 0, complex128 otherwise.

    Row blocks are evaluated with per-mode factors gathered from a
    precomputed table, which keeps the float operations of an element and of
    its transpose identical: the result is Hermitian bit-exactly.
    """
    dim = basis.dim
    modes = basis.modes
    order = modes.modes
    occ = np.zeros((dim, len(order)), dtype=np.int64)
    col_of = {n: i for i, n in enumerate(order)}
    for i, s in enumerate(basis.states):
        for n, r in s.occupations:
            occ[i, col_of[n]] = r
    abs_idx = np.array([abs(n) for n in order])

    occ_max = int(occ.max(initial=0))
    table = _factor_table(modes, occ_max)

    real_case = params.theta == 0.0
    out = np.zeros((dim, dim), dtype=np.float64 if real_case else np.complex128)
    pref = -params.c * params.M * params.L
    cos_t, sin_t = math.cos(params.theta), math.sin(params.theta)
    # i^D (e^{i theta} + (-1)^D e^{-i theta}) is real for every D:
    # D mod 4 -> 2 cos, -2 sin, -2 cos, 2 sin.
    combo = np.array([2.0 * cos_t, -2.0 * sin_t, -2.0 * cos_t, 2.0 * sin_t])

    # keep the (block, dim, n_modes) temporaries around a few tens of MB
    block = max(1, min(dim, 2 ** 22 // max(1, dim * len(order))))
    for lo in range(0, dim, block):
        hi_row = min(dim, lo + block)
        ra = occ[lo:hi_row, None, :]          # bra occupations
        rb = occ[None, :, :]                  # ket occupations
        d = ra - rb
        f = table[abs_idx[None, None, :], np.maximum(ra, rb), np.minimum(ra, rb)]
        prod = f.prod(axis=2)
        big_d = d.sum(axis=2)
        neg = np.where(d < 0, -d, 0).sum(axis=2)
        sign = 1.0 - 2.0 * (neg & 1)
        vals = pref * prod * sign * combo[big_d % 4]
        if zero_mode_delta:
            vals = np.where(ra[:, :, 0] == rb[:, :, 0], vals, 0.0)
        out[lo:hi_row, :] = vals * params.m
    return out


def assemble(basis: TruncatedBasis, params: ModelParams,
             zero_mode_delta: bool = False) -> HMatrix:
    """Assemble H = diag(H0 energies) + V on the basis."""
    v = interaction_matrix(basis, params, zero_mode_delta)
    h = v.copy()
    idx = np.arange(basis.dim)
    h[idx, idx] = h[idx, idx] + np.array([s.energy for s in basis.states])
    return HMatrix(entries=h, v_entries=v, basis=basis, params=params,
                   zero_mode_delta=zero_mode_delta)
