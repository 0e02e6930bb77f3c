import json
import math

import numpy as np
import pytest

from helpers import brute_matrix, brute_mode_factor, brute_v_element, random_state
from schwinger_ht.fock import basis_for_qubits, enumerate_basis, make_fock_state
from schwinger_ht.matelem import (
    assemble,
    interaction_matrix,
    mode_factor,
    v_element,
)
from schwinger_ht.model import ModelParams, build_mode_table

P = ModelParams.from_ratios(0.2, 8.0)

# pinned reference values at m/g = 0.2, gL = 8, theta = 0
F20_REF = -0.9843506216076513     # <2| vertex |0> on the zero mode
VAC_REF = -0.25588613587469716    # <vac| V |vac>


def test_mode_factor_reference_points():
    tab = build_mode_table(P, 1)
    assert mode_factor(tab.xi(0), 0, 0) == 1.0 + 0.0j
    f20 = mode_factor(tab.xi(0), 2, 0)
    assert f20.imag == 0.0
    assert abs(f20.real - F20_REF) < 1e-15


def test_mode_factor_against_series_oracle():
    for xi in (0.3, 0.9012046862660403, 1.1798652462073485, 1.7):
        for r_out in range(6):
            for r_in in range(6):
                got = mode_factor(xi, r_out, r_in)
                want = brute_mode_factor(xi, r_out, r_in)
                assert abs(got - want) < 1e-12, (xi, r_out, r_in)


def test_mode_factor_phase_structure():
    """F(r', r) is i^{r'-r} times a real number and symmetric under swap.

    The vertex factor is a symmetric (not Hermitian) matrix in the occupation
    indices; Hermiticity of the full interaction only appears once the two
    e^{+-i theta} terms are combined.
    """
    xi = 1.1
    minus_i_pow = (1.0 + 0.0j, -1.0j, -1.0 + 0.0j, 1.0j)
    for r_out in range(5):
        for r_in in range(5):
            f = mode_factor(xi, r_out, r_in)
            real_part = f * minus_i_pow[(r_out - r_in) % 4]
            assert real_part.imag == 0.0
            assert mode_factor(xi, r_in, r_out) == f  # bit-exact symmetry


def test_v_element_momentum_selection_is_exact_zero():
    tab = build_mode_table(P, 3)
    rng = np.random.default_rng(11)
    checked = 0
    while checked < 300:
        a = random_state(rng, tab)
        b = random_state(rng, tab)
        if a.momentum == b.momentum:
            continue
        assert v_element(a, b, P, tab) == 0.0j
        checked += 1


def test_v_element_parity_selection_at_theta_zero():
    basis = enumerate_basis(P, 5.0, "both")
    pairs = 0
    for i, a in enumerate(basis.states):
        for b in basis.states[i:]:
            if a.parity * b.parity == -1:
                assert v_element(a, b, P, basis.modes) == 0.0j
                pairs += 1
    assert pairs > 100


def test_v_element_hermiticity_is_bit_exact():
    basis = enumerate_basis(P, 4.5, "both")
    pt = ModelParams.from_ratios(0.2, 8.0, theta=0.4)
    for a in basis.states:
        for b in basis.states:
            assert v_element(a, b, P, basis.modes) == \
                v_element(b, a, P, basis.modes).conjugate()
            assert v_element(a, b, pt, basis.modes) == \
                v_element(b, a, pt, basis.modes).conjugate()


def test_v_element_linear_in_mass():
    basis = enumerate_basis(P, 4.0, "both")
    p2 = ModelParams.from_ratios(0.4, 8.0)
    for a in basis.states[:12]:
        for b in basis.states[:12]:
            assert v_element(a, b, p2, basis.modes) == \
                2.0 * v_element(a, b, P, basis.modes)
    p0 = ModelParams.from_ratios(0.0, 8.0)
    assert v_element(basis.states[1], basis.states[3], p0, basis.modes) == 0.0j


def test_v_element_vacuum_reference():
    basis = enumerate_basis(P, 1.0, "both")
    vac = basis.states[0]
    val = v_element(vac, vac, P, basis.modes)
    assert val.imag == 0.0
    assert abs(val.real - VAC_REF) < 1e-15
    # prefactor form: -2 c M L m for the empty state at theta = 0
    assert abs(val.real - (-2.0 * P.c * P.M * P.L * P.m)) == 0.0


def test_v_element_against_brute_force():
    for theta in (0.0, 0.4):
        p = ModelParams.from_ratios(0.2, 8.0, theta=theta)
        basis = enumerate_basis(p, 3.0, "both")
        assert basis.dim == 8
        for a in basis.states:
            for b in basis.states:
                got = v_element(a, b, p, basis.modes)
                want = brute_v_element(a, b, p, basis.modes)
                assert abs(got - want) < 1e-12


def test_zero_mode_delta_flag():
    tab = build_mode_table(P, 2)
    a = make_fock_state({0: 2}, tab)
    b = make_fock_state({1: 1, -1: 1}, tab)
    assert v_element(a, b, P, tab) != 0.0j
    assert v_element(a, b, P, tab, zero_mode_delta=True) == 0.0j
    # elements diagonal in the zero mode are unaffected
    c = make_fock_state({1: 2, -1: 2}, tab)
    assert v_element(c, b, P, tab, zero_mode_delta=True) == v_element(c, b, P, tab)


def test_interaction_matrix_matches_scalar_route():
    for theta in (0.0, 0.7):
        p = ModelParams.from_ratios(0.2, 8.0, theta=theta)
        basis = enumerate_basis(p, 4.0, "both")
        v = interaction_matrix(basis, p)
        for i, a in enumerate(basis.states):
            for k, b in enumerate(basis.states):
                assert complex(v[i, k]) == v_element(a, b, p, basis.modes)


def test_interaction_matrix_dtype_and_hermiticity():
    basis = enumerate_basis(P, 5.5, "even")
    v = interaction_matrix(basis, P)
    assert v.dtype == np.float64
    assert np.array_equal(v, v.T)  # bit-exact symmetry
    pt = ModelParams.from_ratios(0.2, 8.0, theta=1.1)
    vt = interaction_matrix(enumerate_basis(pt, 5.5, "even"), pt)
    assert vt.dtype == np.complex128
    assert np.all(vt.imag == 0.0)  # the combination i^D (e^{i t} +- e^{-i t}) is real
    assert np.array_equal(vt, vt.conj().T)


def test_assemble_splits_h0_and_v():
    basis = basis_for_qubits(P, 3, "even")
    h = assemble(basis, P)
    assert h.dim == 8
    energies = np.array([s.energy for s in basis.states])
    diff = h.entries - h.v_entries
    assert np.array_equal(np.diag(diff), energies)
    off = diff - np.diag(np.diag(diff))
    assert np.all(off == 0.0)


def test_zero_mode_delta_matrix_route():
    basis = enumerate_basis(P, 4.0, "both")
    v = interaction_matrix(basis, P, zero_mode_delta=True)
    for i, a in enumerate(basis.states):
        for k, b in enumerate(basis.states):
            assert complex(v[i, k]) == v_element(a, b, P, basis.modes,
                                                 zero_mode_delta=True)


def test_brute_force_full_matrix():
    basis = enumerate_basis(P, 3.0, "even")
    h = assemble(basis, P)
    want = brute_matrix(basis, P)
    assert np.max(np.abs(np.asarray(h.entries, dtype=complex) - want)) < 1e-12


def test_dump_round_trip():
    basis = basis_for_qubits(P, 2, "even")
    h = assemble(basis, P)
    text = h.dump()
    assert text == assemble(basis, P).dump()
    lines = text.strip().split("\n")
    header = json.loads(lines[0])
    assert header["dim"] == 4 and header["m"] == 0.2 and header["theta"] == 0.0
    assert len(header["basis_sha256"]) == 64
    assert len(lines) == 1 + 4
    rows = []
    for line in lines[1:]:
        vals = [float(x) for x in line.split(",")]
        rows.append([complex(re, im) for re, im in zip(vals[::2], vals[1::2])])
    assert np.array_equal(np.array(rows), np.asarray(h.entries, dtype=complex))


def test_out_of_table_mode_rejected():
    tab_small = build_mode_table(P, 1)
    tab_big = build_mode_table(P, 2)
    s = make_fock_state({2: 1, -2: 1}, tab_big)
    vac = make_fock_state({}, tab_big)
    with pytest.raises(ValueError):
        v_element(s, vac, P, tab_small)
