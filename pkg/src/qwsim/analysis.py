"""Reduced density matrices and single-/two-qubit statistics.

The partial trace here avoids the textbook construction entirely.  For a
density matrix it walks the traced-subsystem basis once, using a lookup
table of rearranged kept-bit indices, and accumulates
``out[r, c] += rho[row(r), row(c)]``, costing O(2**T * 4**K) for T traced and K
kept qubits.  For a pure state it never forms the big density matrix at
all: the needed entries are products ``psi[row(r)] * conj(psi[row(c)])``,
so memory stays O(2**n + 4**K).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractError, DimensionError, ResourceError
from .gates import gate_matrix
from .engine import qubit_wise_multiply
from .linalg import (
    EIGEN_ATOL,
    STATE_ATOL,
    hermitian_eig,
    hermitian_eigenvalues,
    is_normalized,
)

# Bloch vectors shorter than this are treated as the maximally mixed point,
# where polar/azimuthal angles are reported as 0 by convention.
BLOCH_DEGENERATE_EPS = 1e-12

STABILIZER_ENTROPY_MAX_QUBITS = 10


def rearrange_bits(i: int, positions) -> int:
    """Scatter the low bits of ``i`` to new positions.

    Bit ``k`` of ``i`` moves to bit ``positions[k]`` of the result; a
    negative entry drops that bit.  Bits of ``i`` beyond ``len(positions)``
    are dropped as well.  E.g. ``rearrange_bits(0b01, [1, 0]) == 0b10``.
    """
    out = 0
    for k, pos in enumerate(positions):
        if pos < 0:
            continue
        out |= ((i >> k) & 1) << int(pos)
    return out


def _validate_qubits(n: int, qubits) -> list[int]:
    qs = [int(q) for q in qubits]
    if any(not 0 <= q < n for q in qs):
        raise ContractError(f"qubit list {qs} out of range for {n} qubits")
    if sorted(set(qs)) != qs:
        raise ContractError(f"qubit list {qs} must be strictly ascending, no duplicates")
    return qs


def _split_kept(n: int, qubits, keep: bool) -> tuple[list[int], list[int]]:
    qs = _validate_qubits(n, qubits)
    rest = [q for q in range(n) if q not in set(qs)]
    return (rest, qs) if keep else (qs, rest)


def _kept_index_table(kept: list[int]) -> np.ndarray:
    """Lookup table: reduced index -> full index with kept bits placed."""
    return np.fromiter(
        (rearrange_bits(r, kept) for r in range(1 << len(kept))),
        dtype=np.int64,
        count=1 << len(kept),
    )


def partial_trace_matrix(n: int, rho, qubits, *, keep: bool = False) -> np.ndarray:
    """Trace qubits out of a density matrix.

    ``qubits`` lists the wires to trace out, or, with ``keep=True``, the
    wires to keep (the complement is traced).  The list must be strictly
    ascending.  Bit ``k`` of the reduced index addresses the ``k``-th
    smallest kept qubit.

    When the input is Hermitian (every density matrix is), only the lower
    triangle is accumulated and the upper triangle is mirrored with a
    conjugation at the end; non-Hermitian inputs are handled with the full
    accumulation so the operation stays a plain linear map.
    """
    traced, kept = _split_kept(n, qubits, keep)
    dim = 1 << n
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (dim, dim):
        raise DimensionError(f"density matrix must be {dim}x{dim}, got {rho.shape}")

    rd = 1 << len(kept)
    table = _kept_index_table(kept)
    out = np.zeros((rd, rd), dtype=complex)
    hermitian_input = bool(
        np.allclose(rho, rho.conj().T, rtol=0.0, atol=STATE_ATOL)
    )
    for shared in range(1 << len(traced)):
        base = rearrange_bits(shared, traced)
        rows = base | table
        sub = rho[np.ix_(rows, rows)]
        if hermitian_input:
            out += np.tril(sub)
        else:
            out += sub
    if hermitian_input:
        upper = np.triu_indices(rd, 1)
        out[upper] = out.T[upper].conj()
    return out


def partial_trace_state(n: int, psi, qubits, *, keep: bool = False) -> np.ndarray:
    """Reduced density matrix straight from a pure state.

    Same qubit-list conventions as :func:`partial_trace_matrix`, but the
    full ``2**n x 2**n`` density matrix is never materialized: for each
    traced-basis setting the kept-amplitude slice contributes one outer
    product to the reduced matrix.
    """
    traced, kept = _split_kept(n, qubits, keep)
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (1 << n,):
        raise DimensionError(
            f"state must have length {1 << n} for {n} qubits, got shape {psi.shape}"
        )
    rd = 1 << len(kept)
    table = _kept_index_table(kept)
    out = np.zeros((rd, rd), dtype=complex)
    for shared in range(1 << len(traced)):
        slice_ = psi[rearrange_bits(shared, traced) | table]
        out += np.outer(slice_, slice_.conj())
    return out


def probability_of_one(psi, qubit: int) -> float:
    """Probability that measuring ``qubit`` yields 1."""
    psi = np.asarray(psi, dtype=complex)
    size = psi.shape[0] if psi.ndim == 1 else 0
    if size == 0 or size & (size - 1):
        raise DimensionError("state length must be a power of two")
    n = size.bit_length() - 1
    qubit = int(qubit)
    if not 0 <= qubit < n:
        raise ContractError(f"qubit {qubit} out of range for {n} qubits")
    probs = np.abs(psi) ** 2
    return float(probs.reshape(-1, 2, 1 << qubit)[:, 1, :].sum())


# ---------------------------------------------------------------------------
# density-matrix validation and statistics


def check_density_matrix(
    rho,
    *,
    atol: float = STATE_ATOL,
    eigen_atol: float = EIGEN_ATOL,
) -> int:
    """Validate Hermiticity, unit trace and positive semidefiniteness.

    Returns the qubit count of the matrix.  Raises ``ContractError`` on
    any violation; intended as the gate in front of the statistics below.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ContractError(f"density matrix must be square, got shape {rho.shape}")
    dim = rho.shape[0]
    if dim == 0 or dim & (dim - 1):
        raise ContractError(f"density matrix dimension {dim} is not a power of two")
    if np.max(np.abs(rho - rho.conj().T)) > atol:
        raise ContractError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > atol or abs(np.trace(rho).imag) > atol:
        raise ContractError("density matrix trace is not 1")
    if float(hermitian_eigenvalues(rho).min()) < -eigen_atol:
        raise ContractError("density matrix has a negative eigenvalue")
    return dim.bit_length() - 1


def purity(rho) -> float:
    """``Tr(rho^2)`` as a real number; 1 for pure states, 1/2**k at minimum."""
    rho = np.asarray(rho, dtype=complex)
    return float(np.trace(rho @ rho).real)


def von_neumann_entropy(rho) -> float:
    """Entropy ``-sum(lam * log2(lam))`` over the spectrum, in bits.

    Eigenvalues are clamped to [0, 1] before the logarithm so the tiny
    negative values a finite eigensolver produces for rank-deficient
    matrices do not turn into NaNs; ``0 * log(0)`` counts as 0.
    """
    lams = np.clip(hermitian_eigenvalues(rho), 0.0, 1.0)
    positive = lams[lams > 0.0]
    return float(-np.sum(positive * np.log2(positive)))


@dataclass(frozen=True)
class QubitStats:
    """Everything reported about one reduced qubit.

    ``(x, y, z)`` is the Bloch vector, ``r`` its length, ``theta``/``phi``
    the polar/azimuthal angles (both 0 at the degenerate center).
    """

    prob1: float
    x: float
    y: float
    z: float
    r: float
    theta: float
    phi: float
    purity: float
    linear_entropy: float


def qubit_stats(rho) -> QubitStats:
    """Bloch vector, angles, purity and linear entropy of a 1-qubit state.

    The Bloch components are read off the matrix entries (for
    ``rho = [[a, b+ic], [b-ic, 1-a]]`` they are ``x=2b, y=-2c, z=2a-1``)
    and cross-checked against the trace form ``<P> = Tr(rho P)`` for each
    Pauli ``P``, so a disagreement (impossible for a valid input) fails
    loudly instead of reporting garbage.
    """
    rho = np.asarray(rho, dtype=complex)
    if check_density_matrix(rho) != 1:
        raise ContractError(f"expected a 2x2 density matrix, got {rho.shape}")
    a = rho[0, 0].real
    b = rho[0, 1].real
    c = rho[0, 1].imag
    x = 2.0 * b
    y = -2.0 * c
    z = 2.0 * a - 1.0
    for value, pauli in ((x, "X"), (y, "Y"), (z, "Z")):
        expect = float(np.trace(rho @ gate_matrix(pauli)).real)
        if abs(value - expect) > STATE_ATOL:
            raise ContractError(
                f"Bloch component {pauli} disagrees with Tr(rho {pauli})"
            )
    r = float(np.sqrt(x * x + y * y + z * z))
    if r < BLOCH_DEGENERATE_EPS:
        theta = 0.0
        phi = 0.0
    else:
        theta = float(np.arccos(np.clip(z / r, -1.0, 1.0)))
        phi = float(np.arctan2(y, x))
    p = purity(rho)
    return QubitStats(
        prob1=float(rho[1, 1].real),
        x=x,
        y=y,
        z=z,
        r=r,
        theta=theta,
        phi=phi,
        purity=p,
        linear_entropy=1.0 - p,
    )


def concurrence(rho) -> float:
    """Two-qubit entanglement monotone (0 separable, 1 maximally entangled).

    Uses the spin-flipped matrix ``rho~ = (Y(x)Y) conj(rho) (Y(x)Y)`` and
    the square roots of the eigenvalues of ``sqrt(rho) rho~ sqrt(rho)``
    (a Hermitian PSD product, so the Jacobi solver applies), sorted
    descending: ``C = max(0, l1 - l2 - l3 - l4)``.

    Eigenvalues of the triple product below the solver's noise floor are
    zeroed before the square root: ``sqrt`` turns O(1e-15) roundoff on an
    exactly singular product into O(1e-8) phantom contributions otherwise.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ContractError(f"concurrence needs a 4x4 density matrix, got {rho.shape}")
    y = gate_matrix("Y")
    yy = np.kron(y, y)
    flipped = yy @ rho.conj() @ yy
    w, v = hermitian_eig(rho)
    sqrt_rho = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    product = sqrt_rho @ flipped @ sqrt_rho
    # product is PSD up to roundoff but only approximately Hermitian in
    # floating point; symmetrizing keeps the eigensolver contract honest.
    product = (product + product.conj().T) / 2.0
    mus = np.clip(hermitian_eigenvalues(product), 0.0, None)
    floor = 1e-13 * max(1.0, float(mus.max()))
    mus[mus < floor] = 0.0
    lams = np.sort(np.sqrt(mus))[::-1]
    return float(max(0.0, lams[0] - lams[1] - lams[2] - lams[3]))


@dataclass(frozen=True)
class PairStats:
    """Purity, linear entropy, concurrence and entropy of a 2-qubit state."""

    purity: float
    linear_entropy: float
    concurrence: float
    von_neumann_entropy: float


def pair_stats(rho) -> PairStats:
    rho = np.asarray(rho, dtype=complex)
    if check_density_matrix(rho) != 2:
        raise ContractError(f"expected a 4x4 density matrix, got {rho.shape}")
    p = purity(rho)
    return PairStats(
        purity=p,
        linear_entropy=1.0 - p,
        concurrence=concurrence(rho),
        von_neumann_entropy=von_neumann_entropy(rho),
    )


def stabilizer_renyi_entropy(psi, n: int) -> float:
    """Order-2 stabilizer Renyi entropy ("magic") of a pure state.

    ``M2 = -log2( sum_P <psi|P|psi>**4 / 2**n )`` over all ``4**n`` Pauli
    strings ``P``.  Zero (within tolerance) exactly for stabilizer states;
    positive otherwise.  Strings are enumerated depth-first wire by wire so
    each partial application of a Pauli prefix is computed once and shared
    by its 4 extensions; states are applied with the single-qubit kernel,
    never as dense matrices.  Exponential in ``n``, hence the cap.
    """
    n = int(n)
    if n < 1:
        raise ContractError(f"qubit count must be at least 1, got {n}")
    if n > STABILIZER_ENTROPY_MAX_QUBITS:
        raise ResourceError(
            f"stabilizer entropy refuses {n} qubits "
            f"(cap is {STABILIZER_ENTROPY_MAX_QUBITS})"
        )
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (1 << n,):
        raise DimensionError(
            f"state must have length {1 << n} for {n} qubits, got shape {psi.shape}"
        )
    if not is_normalized(psi):
        raise ContractError("state is not normalized")

    paulis = tuple(gate_matrix(name) for name in ("X", "Y", "Z"))
    total = 0.0

    def walk(state: np.ndarray, wire: int) -> None:
        nonlocal total
        if wire == n:
            expectation = float(np.vdot(psi, state).real)
            total += expectation**4
            return
        walk(state, wire + 1)  # identity on this wire
        for mat in paulis:
            walk(qubit_wise_multiply(n, mat, wire, state), wire + 1)

    walk(psi, 0)
    return float(-np.log2(total / float(1 << n)))
