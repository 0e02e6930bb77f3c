"""Brute-force oracles used by the tests.

Everything here is deliberately slow and structure-free: matrix elements come
from explicit ladder-operator algebra (dense matrices, nested power series)
and basis sets from raw occupation products. None of it shares code with the
package, so agreement is meaningful.
"""
import math
from functools import lru_cache
from itertools import product

import numpy as np

from schwinger_ht.fock import make_fock_state
from schwinger_ht.model import canonical_modes, mode_energy


@lru_cache(maxsize=None)
def ladder(dim):
    """Annihilation matrix a with a|r> = sqrt(r)|r-1> on dim levels."""
    a = np.zeros((dim, dim))
    for k in range(1, dim):
        a[k - 1, k] = math.sqrt(k)
    return a


def vev4(r_out, jp, j, r_in):
    """<0| a^r_out (a+)^jp a^j (a+)^r_in |0> by dense matrix products."""
    dim = max(r_in + jp, r_out + j) + 2
    a = ladder(dim)
    ad = a.T
    m = (np.linalg.matrix_power(a, r_out) @ np.linalg.matrix_power(ad, jp)
         @ np.linalg.matrix_power(a, j) @ np.linalg.matrix_power(ad, r_in))
    return m[0, 0]


def brute_mode_factor(xi, r_out, r_in):
    """<r_out| :exp(i xi (a + a+)): |r_in> from the double power series."""
    tot = 0j
    for j in range(r_in + 3):
        for jp in range(r_out + 3):
            v = vev4(r_out, jp, j, r_in)
            if v != 0.0:
                tot += (1j * xi) ** (j + jp) / (math.factorial(jp) * math.factorial(j)) * v
    return tot / math.sqrt(math.factorial(r_out) * math.factorial(r_in))


def brute_v_element(bra, ket, params, modes, zero_mode_delta=False):
    """Interaction element assembled term by term from brute_mode_factor."""
    if sum(n * r for n, r in bra.occupations) != sum(n * r for n, r in ket.occupations):
        return 0j
    if zero_mode_delta and bra.occupation(0) != ket.occupation(0):
        return 0j
    support = sorted(set(bra.as_dict()) | set(ket.as_dict()),
                     key=lambda n: (abs(n), n < 0))
    amp = 1.0 + 0j
    amp_sw = 1.0 + 0j
    for n in support:
        amp *= brute_mode_factor(modes.xi(n), bra.occupation(n), ket.occupation(n))
        amp_sw *= brute_mode_factor(modes.xi(n), ket.occupation(n), bra.occupation(n))
    pref = -params.c * params.m * params.M * params.L
    ephase = complex(math.cos(params.theta), math.sin(params.theta))
    # second vertex term is the conjugate of the first with bra and ket swapped
    return pref * (ephase * amp + ephase.conjugate() * amp_sw.conjugate())


def brute_matrix(basis, params, zero_mode_delta=False):
    dim = basis.dim
    h = np.zeros((dim, dim), dtype=complex)
    for i, si in enumerate(basis.states):
        for k, sk in enumerate(basis.states):
            h[i, k] = brute_v_element(si, sk, params, basis.modes,
                                      zero_mode_delta=zero_mode_delta)
        h[i, i] += si.energy
    return h


def brute_zero_momentum_occupations(params, e_max):
    """All zero-momentum occupation dicts with H0 energy <= e_max.

    Scans the full product of per-mode occupation ranges 0..floor(e_max/E_n),
    so it is exponential in the mode count and only usable for small cutoffs.
    """
    n_max = 0
    while mode_energy(params, n_max + 1) <= e_max:
        n_max += 1
    order = canonical_modes(n_max)
    caps = [int(math.floor(e_max / mode_energy(params, n) + 1e-12)) for n in order]
    found = []
    for occ in product(*(range(c + 1) for c in caps)):
        energy = sum(r * mode_energy(params, n) for n, r in zip(order, occ))
        if energy > e_max:
            continue
        if sum(n * r for n, r in zip(order, occ)) != 0:
            continue
        found.append({n: r for n, r in zip(order, occ) if r})
    return found


def random_state(rng, modes, occ_max=3):
    """A random occupation state over the table modes (momentum unconstrained)."""
    occ = {}
    for n in modes.modes:
        r = int(rng.integers(0, occ_max + 1))
        if r and rng.random() < 0.5:
            occ[n] = r
    return make_fock_state(occ, modes)
