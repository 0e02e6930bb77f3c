"""Pauli-string decomposition H = sum_w alpha_w P_w of the truncated Hamiltonian.

Qubit 0 is the leftmost letter of a word, i.e. the most significant bit of a
computational-basis index. Every Pauli word acts as a signed permutation
P |j> = phase(j) |j xor mask>, so one coefficient alpha_w = Tr(P_w H) / 2^{n_q}
costs O(2^{n_q}) rather than a dense trace.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .matelem import HMatrix

LETTERS = "IXYZ"

_SINGLE = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


@dataclass(frozen=True)
class PauliTerm:
    """One decomposition term: word over {I,X,Y,Z} and its real coefficient."""

    word: str
    coeff: float


def word_masks(word: str) -> tuple[int, int, int]:
    """(flip_mask, phase_mask, n_y) of a word.

    flip_mask has a bit for each X or Y (the letters that flip a qubit);
    phase_mask has a bit for each Y or Z (the letters whose phase depends on
    the qubit value); n_y counts Y letters. The action on a basis index is
    P |j> = i^{n_y} (-1)^{popcount(j & phase_mask)} |j xor flip_mask>.
    """
    n_q = len(word)
    flip = 0
    phase = 0
    n_y = 0
    for q, letter in enumerate(word):
        bit = 1 << (n_q - 1 - q)
        if letter == "X":
            flip |= bit
        elif letter == "Y":
            flip |= bit
            phase |= bit
            n_y += 1
        elif letter == "Z":
            phase |= bit
        elif letter != "I":
            raise ValueError(f"invalid Pauli letter {letter!r} in word {word!r}")
    return flip, phase, n_y


def popcount_table(dim: int) -> np.ndarray:
    return np.array([int(j).bit_count() for j in range(dim)], dtype=np.int64)


def _as_matrix(h: HMatrix | np.ndarray) -> np.ndarray:
    return h.entries if isinstance(h, HMatrix) else np.asarray(h)


def decompose(h: HMatrix | np.ndarray, drop_tol: float = 1e-14) -> list[PauliTerm]:
    """All Pauli terms of a Hermitian matrix, in canonical word order I < X < Y < Z.

    Terms with |alpha| below drop_tol * max|alpha| are omitted.
    """
    mat = _as_matrix(h)
    dim = mat.shape[0]
    if mat.ndim != 2 or mat.shape[1] != dim:
        raise ValueError(f"expected a square matrix, got shape {mat.shape}")
    n_q = dim.bit_length() - 1
    if dim != 2 ** n_q or dim < 1:
        raise ValueError(f"dimension {dim} is not a power of two")
    scale = float(np.abs(mat).max()) if mat.size else 0.0
    defect = float(np.abs(mat - mat.conj().T).max())
    if defect > 1e-12 * max(scale, 1e-300):
        raise ValueError(f"matrix is not Hermitian (defect {defect:.3e})")

    j = np.arange(dim)
    pop = popcount_table(dim)
    minus_i_pow = (1.0 + 0.0j, -1.0j, -1.0 + 0.0j, 1.0j)  # (-i)^k

    raw: list[tuple[str, float]] = []
    max_abs = 0.0
    for letters in product(LETTERS, repeat=n_q):
        word = "".join(letters)
        flip, phase, n_y = word_masks(word)
        signs = 1.0 - 2.0 * (pop[j & phase] & 1)
        # alpha = 2^{-n} sum_j conj(phase(j)) H[j xor flip, j]
        alpha = minus_i_pow[n_y % 4] * (signs * mat[j ^ flip, j]).sum() / dim
        if abs(alpha.imag) > 1e-12 * max(abs(alpha), 1.0):
            raise ValueError(f"coefficient of {word} is not real: {alpha}")
        raw.append((word, float(alpha.real)))
        max_abs = max(max_abs, abs(alpha.real))

    return [PauliTerm(word, a) for word, a in raw
            if abs(a) > 0.0 and abs(a) >= drop_tol * max_abs]


def word_matrix(word: str) -> np.ndarray:
    """Dense matrix of a Pauli word via Kronecker products (test oracle route)."""
    out = np.array([[1.0 + 0.0j]])
    for letter in word:
        if letter not in _SINGLE:
            raise ValueError(f"invalid Pauli letter {letter!r} in word {word!r}")
        out = np.kron(out, _SINGLE[letter])
    return out


def reconstruct(terms: list[PauliTerm], n_q: int) -> np.ndarray:
    """Dense sum alpha_w P_w, built independently of decompose via np.kron."""
    out = np.zeros((2 ** n_q, 2 ** n_q), dtype=complex)
    for term in terms:
        if len(term.word) != n_q:
            raise ValueError(
                f"word {term.word!r} has length {len(term.word)}, expected {n_q}")
        out += term.coeff * word_matrix(term.word)
    return out


def write_terms(terms: list[PauliTerm], path: str) -> None:
    """Term list as text, one "word coefficient" pair per line."""
    with open(path, "w") as fh:
        fh.write(terms_text(terms))


def terms_text(terms: list[PauliTerm]) -> str:
    return "".join(f"{t.word} {t.coeff!r}\n" for t in terms)


def parse_terms(text: str) -> list[PauliTerm]:
    """Inverse of terms_text."""
    terms = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        word, coeff = line.split()
        terms.append(PauliTerm(word, float(coeff)))
    return terms
