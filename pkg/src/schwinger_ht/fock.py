"""Zero-momentum Fock basis of the free scalar, truncated by H0 energy.

States are occupation-number configurations {n: r_n} of the circle modes.
The basis keeps every zero-momentum state with H0 energy <= e_max, ordered by
energy (ties broken lexicographically on the occupation list read over modes
in canonical order 0, 1, -1, 2, -2, ...), optionally restricted to a Z2
parity sector and cut to the first 2^{n_q} states.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterator, Mapping

from .model import ModelParams, ModeTable, build_mode_table, canonical_modes, mode_energy

OccTuple = tuple[tuple[int, int], ...]

SECTORS = ("even", "odd", "both")


@dataclass(frozen=True)
class FockState:
    """One occupation-number state with cached H0 energy, momentum and parity.

    occupations holds (mode, count) pairs with count > 0 in canonical mode
    order; the vacuum is the empty tuple. parity is (-1)^{total occupation}.
    """

    occupations: OccTuple
    energy: float
    momentum: int
    parity: int

    def occupation(self, n: int) -> int:
        for mode, r in self.occupations:
            if mode == n:
                return r
        return 0

    def as_dict(self) -> dict[int, int]:
        return dict(self.occupations)

    @property
    def total_occupation(self) -> int:
        return sum(r for _, r in self.occupations)

    def label(self) -> str:
        """Compact text form "{n:r,...}" in canonical mode order."""
        inner = ",".join(f"{n}:{r}" for n, r in self.occupations)
        return "{" + inner + "}"


def make_fock_state(occ: Mapping[int, int], modes: ModeTable) -> FockState:
    """Build a FockState from a mode -> occupation mapping.

    Zero counts are dropped; negative counts or modes outside the table are
    rejected. Cached values are computed here once, in canonical mode order.
    """
    items: list[tuple[int, int]] = []
    for n in sorted(occ, key=lambda n: (abs(n), n < 0)):
        r = occ[n]
        if r < 0:
            raise ValueError(f"occupation of mode {n} must be non-negative, got {r}")
        if r == 0:
            continue
        if abs(n) > modes.n_max:
            raise ValueError(f"mode {n} outside table range |n| <= {modes.n_max}")
        items.append((n, r))
    occupations = tuple(items)
    energy = 0.0
    momentum = 0
    total = 0
    for n, r in occupations:
        energy += r * modes.energy(n)
        momentum += n * r
        total += r
    parity = -1 if total % 2 else 1
    return FockState(occupations=occupations, energy=energy, momentum=momentum, parity=parity)


def h0_energy(state: FockState, modes: ModeTable) -> float:
    """Recompute sum_n r_n E_n from scratch (cache cross-check)."""
    energy = 0.0
    for n, r in state.occupations:
        if abs(n) > modes.n_max:
            raise ValueError(f"mode {n} outside table range |n| <= {modes.n_max}")
        energy += r * modes.energy(n)
    return energy


def momentum_number(state: FockState) -> int:
    """Total momentum sum_n n r_n in units of 2 pi / L."""
    return sum(n * r for n, r in state.occupations)


def parity(state: FockState) -> int:
    """Z2 parity (-1)^{sum_n r_n}."""
    return -1 if state.total_occupation % 2 else 1


def _lex_key(state: FockState, order: list[int]) -> tuple[int, ...]:
    occ = state.as_dict()
    return tuple(occ.get(n, 0) for n in order)


def _sector_match(state_parity: int, sector: str) -> bool:
    if sector == "both":
        return True
    return state_parity == (1 if sector == "even" else -1)


def _check_sector(sector: str) -> None:
    if sector not in SECTORS:
        raise ValueError(f"sector must be one of {SECTORS}, got {sector!r}")


@dataclass(frozen=True)
class TruncatedBasis:
    """Energy-ordered zero-momentum basis below e_max, optionally cut to 2^{n_q}."""

    states: tuple[FockState, ...]
    index_of: Mapping[OccTuple, int]
    e_max: float
    sector: str
    modes: ModeTable
    n_q: int | None = None

    @property
    def dim(self) -> int:
        return len(self.states)

    def index(self, state: FockState) -> int:
        return self.index_of[state.occupations]

    def __iter__(self) -> Iterator[FockState]:
        return iter(self.states)

    def dump(self) -> str:
        """One state per line: index,energy,parity,"{n:r,...}" (CSV-compatible)."""
        lines = []
        for i, s in enumerate(self.states):
            lines.append(f'{i},{s.energy!r},{s.parity},"{s.label()}"')
        return "\n".join(lines) + "\n"


def enumerate_basis(params: ModelParams, e_max: float, sector: str = "both") -> TruncatedBasis:
    """Enumerate all zero-momentum states with H0 energy <= e_max.

    Depth-first over modes in canonical order (which is ascending in E_n),
    pruning on the remaining energy budget and on the largest momentum the
    remaining modes could still compensate.

    Parameters
    ----------
    params : model couplings
    e_max : H0 energy cutoff (> 0)
    sector : "even", "odd" or "both" Z2 parity restriction
    """
    _check_sector(sector)
    if e_max <= 0.0:
        raise ValueError(f"e_max must be positive, got {e_max}")

    n_max = 0
    while mode_energy(params, n_max + 1) <= e_max:
        n_max += 1
    modes = build_mode_table(params, n_max)
    order = canonical_modes(n_max)
    energies = [modes.energy(n) for n in order]

    # suffix_ratio[i] bounds |momentum| reachable per unit of remaining energy
    # using modes order[i:].
    suffix_ratio = [0.0] * (len(order) + 1)
    for i in range(len(order) - 1, -1, -1):
        suffix_ratio[i] = max(suffix_ratio[i + 1], abs(order[i]) / energies[i])

    found: list[FockState] = []
    occ: dict[int, int] = {}

    def rec(idx: int, used: float, mom: int) -> None:
        if idx == len(order):
            if mom == 0:
                state = make_fock_state(occ, modes)
                if _sector_match(state.parity, sector):
                    found.append(state)
            return
        n = order[idx]
        e_n = energies[idx]
        r = 0
        while True:
            cost = used + r * e_n if r else used
            if cost > e_max:
                break
            p = mom + n * r
            if abs(p) <= (e_max - cost) * suffix_ratio[idx + 1]:
                if r:
                    occ[n] = r
                rec(idx + 1, cost, p)
                if r:
                    del occ[n]
            r += 1

    rec(0, 0.0, 0)
    found.sort(key=lambda s: (s.energy, _lex_key(s, order)))
    index_of = {s.occupations: i for i, s in enumerate(found)}
    return TruncatedBasis(states=tuple(found), index_of=index_of,
                          e_max=e_max, sector=sector, modes=modes)


def truncate_to_qubits(basis: TruncatedBasis, n_q: int) -> TruncatedBasis:
    """Keep the first 2^{n_q} energy-ordered states of the basis.

    Warns when the cut splits a degenerate multiplet, since which member
    survives is then fixed only by the lexicographic tie-break.
    """
    if n_q < 0:
        raise ValueError(f"n_q must be non-negative, got {n_q}")
    size = 2 ** n_q
    if basis.dim < size:
        raise ValueError(
            f"basis holds {basis.dim} states in sector {basis.sector!r} at "
            f"e_max={basis.e_max}, need {size} for n_q={n_q}")
    if basis.dim > size:
        e_in, e_out = basis.states[size - 1].energy, basis.states[size].energy
        if abs(e_out - e_in) <= 1e-12 * max(1.0, abs(e_in)):
            warnings.warn(
                f"2^{n_q}-state cut splits a degenerate multiplet at energy {e_in!r}",
                stacklevel=2)
    states = basis.states[:size]
    index_of = {s.occupations: i for i, s in enumerate(states)}
    return TruncatedBasis(states=states, index_of=index_of, e_max=basis.e_max,
                          sector=basis.sector, modes=basis.modes, n_q=n_q)


def basis_for_qubits(params: ModelParams, n_q: int, sector: str = "even",
                     e_start: float = 1.0, growth: float = 1.5) -> TruncatedBasis:
    """Grow e_max geometrically until the sector holds >= 2^{n_q} states, then cut.

    The cutoff only controls which states are available; the kept set is the
    energy-ordered prefix, so any e_max large enough yields the same basis.
    """
    _check_sector(sector)
    if n_q < 0:
        raise ValueError(f"n_q must be non-negative, got {n_q}")
    target = 2 ** n_q
    e_max = e_start
    for _ in range(80):
        basis = enumerate_basis(params, e_max, sector)
        if basis.dim >= target:
            return truncate_to_qubits(basis, n_q)
        e_max *= growth
    raise RuntimeError(
        f"could not reach {target} states in sector {sector!r} below e_max={e_max}")
