"""State-vector gate kernels driven by bitmask index arithmetic.

A gate on wire ``t`` of an ``n``-qubit register pairs every amplitude
index with bit ``t`` clear against the index with bit ``t`` set and mixes
each pair through the 2x2 gate matrix.  That touches each amplitude once,
so a gate costs O(2**n) work and no operator matrix is ever built.  The
pair enumeration, control handling and swap tricks below all operate on
index arrays, which keeps the per-amplitude work inside numpy.

Controls never enlarge the gate matrix: a control (or anticontrol) wire
contributes a bit to an inclusion mask, and a pair is mixed only when its
index carries the desired value on every masked bit.

Kernels return a fresh vector by default; pass ``in_place=True`` to mutate
the input (it must then be a writeable, contiguous complex128 array).
Results are identical either way.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ContractError, DimensionError
from .gates import MEASURE, gate_def
from .linalg import STATE_ATOL, check_qubit_count, is_unitary


@dataclass(frozen=True)
class ControlSpec:
    """Control and anticontrol wires compiled to a pair of bitmasks.

    ``entries`` holds ``(wire, is_control)`` pairs; ``is_control=False``
    marks an anticontrol (wire must read 0).  An amplitude index ``k``
    passes the spec iff ``(k & inclusion_mask) == desired_value_mask``.
    """

    entries: tuple[tuple[int, bool], ...] = ()
    inclusion_mask: int = field(init=False, default=0)
    desired_value_mask: int = field(init=False, default=0)

    def __post_init__(self):
        entries = tuple((int(w), bool(f)) for w, f in self.entries)
        object.__setattr__(self, "entries", entries)
        inclusion = 0
        desired = 0
        for wire, is_control in entries:
            if wire < 0:
                raise ContractError(f"control wire {wire} is negative")
            bit = 1 << wire
            if inclusion & bit:
                raise ContractError(
                    f"wire {wire} appears more than once in the control spec"
                )
            inclusion |= bit
            if is_control:
                desired |= bit
        object.__setattr__(self, "inclusion_mask", inclusion)
        object.__setattr__(self, "desired_value_mask", desired)

    @property
    def wires(self) -> tuple[int, ...]:
        return tuple(w for w, _ in self.entries)

    def passes(self, k: int) -> bool:
        return (k & self.inclusion_mask) == self.desired_value_mask


NO_CONTROLS = ControlSpec()


def coerce_controls(controls) -> ControlSpec:
    """Accept a ControlSpec, None, or an iterable of (wire, is_control)."""
    if controls is None:
        return NO_CONTROLS
    if isinstance(controls, ControlSpec):
        return controls
    return ControlSpec(tuple((w, f) for w, f in controls))


def _check_wires(n: int, targets, spec: ControlSpec) -> None:
    for t in targets:
        if not 0 <= t < n:
            raise ContractError(f"target wire {t} out of range for {n} qubits")
    tset = set(targets)
    for w in spec.wires:
        if not 0 <= w < n:
            raise ContractError(f"control wire {w} out of range for {n} qubits")
        if w in tset:
            raise ContractError(f"wire {w} is both a control and a target")


def _working_copy(a, n: int, in_place: bool) -> np.ndarray:
    size = 1 << n
    if in_place:
        if not isinstance(a, np.ndarray) or a.dtype != np.complex128:
            raise ContractError("in_place requires a complex128 ndarray")
        if not (a.flags.writeable and a.flags.c_contiguous):
            raise ContractError("in_place requires a writeable contiguous array")
        out = a
    else:
        out = np.array(a, dtype=np.complex128)
    if out.ndim != 1 or out.shape[0] != size:
        raise DimensionError(
            f"state must have length {size} for {n} qubits, got shape {out.shape}"
        )
    return out


def _paired_indices(n: int, wire: int) -> np.ndarray:
    """All indices with bit ``wire`` clear, ascending.

    Index ``b`` of the half-sized range maps to
    ``((b >> wire) << (wire + 1)) | (b & (2**wire - 1))``: the low bits of
    ``b`` stay put and the rest shift up one position to leave a zero at
    ``wire``.  OR-ing ``1 << wire`` back in yields the partner index.
    """
    idx = np.arange(1 << (n - 1), dtype=np.int64)
    low = (1 << wire) - 1
    return ((idx >> wire) << (wire + 1)) | (idx & low)


def qubit_wise_multiply(
    n: int,
    u,
    target: int,
    a,
    controls=None,
    *,
    in_place: bool = False,
) -> np.ndarray:
    """Apply a 2x2 matrix ``u`` to wire ``target`` of state ``a``.

    For each index pair ``(i1, i2 = i1 | 1 << target)`` that passes the
    control masks::

        out[i1] = u[0,0]*a[i1] + u[0,1]*a[i2]
        out[i2] = u[1,0]*a[i1] + u[1,1]*a[i2]

    Amplitudes failing the control masks are left untouched.  ``u`` is not
    required to be unitary here; higher layers enforce that where the
    contract demands it.
    """
    n = check_qubit_count(n)
    spec = coerce_controls(controls)
    _check_wires(n, (target,), spec)
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2):
        raise DimensionError(f"single-qubit gate must be 2x2, got {u.shape}")
    out = _working_copy(a, n, in_place)

    i1 = _paired_indices(n, target)
    if spec.inclusion_mask:
        i1 = i1[(i1 & spec.inclusion_mask) == spec.desired_value_mask]
    i2 = i1 | (1 << target)
    lo = out[i1]  # fancy indexing copies, so gathering before writing is safe
    hi = out[i2]
    out[i1] = u[0, 0] * lo + u[0, 1] * hi
    out[i2] = u[1, 0] * lo + u[1, 1] * hi
    return out


def swap_bits(k: int, i: int, j: int) -> int:
    """Return ``k`` with bits ``i`` and ``j`` exchanged."""
    if i < 0 or j < 0:
        raise ContractError("bit positions must be non-negative")
    bi = (k >> i) & 1
    bj = (k >> j) & 1
    if bi != bj:
        k ^= (1 << i) | (1 << j)
    return k


def apply_swap(
    n: int,
    wire_i: int,
    wire_j: int,
    a,
    controls=None,
    *,
    in_place: bool = False,
    reference: bool = False,
) -> np.ndarray:
    """Exchange wires ``wire_i`` and ``wire_j`` by permuting amplitudes.

    A swap only moves amplitudes whose two wire bits differ, and each such
    index pairs with its bit-swapped partner.  The fast path enumerates
    exactly the indices with bit ``i`` set and bit ``j`` clear (a quarter
    of the register) and exchanges each with its partner, obtained by
    clearing bit ``i`` and setting bit ``j``.  ``reference=True`` selects
    a per-index loop that walks every index and swaps when the partner is
    larger; it exists as a differential test target and is slow.
    """
    n = check_qubit_count(n)
    spec = coerce_controls(controls)
    _check_wires(n, (wire_i, wire_j), spec)
    out = _working_copy(a, n, in_place)
    if wire_i == wire_j:
        return out

    if reference:
        for k in range(1 << n):
            if not spec.passes(k):
                continue
            k2 = swap_bits(k, wire_i, wire_j)
            if k2 > k:
                out[k], out[k2] = out[k2], out[k]
        return out

    lo, hi = sorted((wire_i, wire_j))
    quarter = np.arange(1 << (n - 2), dtype=np.int64)
    x = ((quarter >> lo) << (lo + 1)) | (quarter & ((1 << lo) - 1))
    x = ((x >> hi) << (hi + 1)) | (x & ((1 << hi) - 1))
    k = x | (1 << wire_i)  # bit i set, bit j clear
    if spec.inclusion_mask:
        # The control masks are symmetric between each pair (k, k2) only
        # when controls do not touch the swapped wires, which _check_wires
        # guarantees; filtering on k therefore filters the pair.
        k = k[(k & spec.inclusion_mask) == spec.desired_value_mask]
    k2 = (k & ~(1 << wire_i)) | (1 << wire_j)
    vk = out[k]
    vk2 = out[k2]
    out[k] = vk2
    out[k2] = vk
    return out


def apply_multi_qubit_gate(
    n: int,
    u,
    targets,
    a,
    controls=None,
    *,
    in_place: bool = False,
    strict_unitary: bool = True,
) -> np.ndarray:
    """Apply a ``2**m x 2**m`` unitary ``u`` to ``m`` target wires.

    Bit ``k`` of a row/column index of ``u`` addresses the ``k``-th
    smallest target wire.  Targets need not be adjacent: the wires are
    first moved onto positions ``0..m-1`` (ascending) with compensating
    swaps, the gate is applied blockwise there, and the swaps are undone
    in reverse order.  Control wires are remapped through the same
    rewiring, so controls keep acting on their original wires.

    With ``strict_unitary=True`` (the default) a non-unitary ``u`` raises
    ``ContractError``; pass ``False`` to apply it anyway (useful for
    building non-unitary probes on top of the same kernel).
    """
    n = check_qubit_count(n)
    spec = coerce_controls(controls)
    targets = tuple(int(t) for t in targets)
    if len(set(targets)) != len(targets):
        raise ContractError(f"duplicate target wires in {targets}")
    _check_wires(n, targets, spec)
    m = len(targets)
    if m == 0:
        raise ContractError("multi-qubit gate needs at least one target")
    dim = 1 << m
    u = np.asarray(u, dtype=complex)
    if u.shape != (dim, dim):
        raise DimensionError(
            f"gate on {m} wires must be {dim}x{dim}, got {u.shape}"
        )
    if strict_unitary and not is_unitary(u):
        raise ContractError("gate matrix is not unitary")
    out = _working_copy(a, n, in_place)

    # Move the sorted targets onto wires 0..m-1.  wire_at[p] is the
    # original wire currently sitting at position p; pos_of inverts it.
    wire_at = list(range(n))
    pos_of = list(range(n))
    swaps: list[tuple[int, int]] = []
    for k, t in enumerate(sorted(targets)):
        p = pos_of[t]
        if p != k:
            swaps.append((k, p))
            w = wire_at[k]
            wire_at[k], wire_at[p] = t, w
            pos_of[t], pos_of[w] = k, p
    for i, j in swaps:
        out = apply_swap(n, i, j, out, in_place=True)

    mapped = ControlSpec(tuple((pos_of[w], f) for w, f in spec.entries))
    blocks = out.reshape(-1, dim)
    if mapped.inclusion_mask:
        base = np.arange(blocks.shape[0], dtype=np.int64) << m
        sel = (base & mapped.inclusion_mask) == mapped.desired_value_mask
        blocks[sel] = blocks[sel] @ u.T
    else:
        blocks[:] = blocks @ u.T

    for i, j in reversed(swaps):
        out = apply_swap(n, i, j, out, in_place=True)
    return out


def apply_op(n: int, op, a, *, in_place: bool = False) -> np.ndarray:
    """Apply one circuit operation (anything except a measurement)."""
    if op.gate == MEASURE:
        raise ContractError(
            "measurement ops are handled by the measurement module, not the engine"
        )
    g = gate_def(op.gate)
    if g.arity == 1:
        return qubit_wise_multiply(
            n, g.matrix, op.targets[0], a, op.controls, in_place=in_place
        )
    if op.gate == "SWAP":
        return apply_swap(
            n, op.targets[0], op.targets[1], a, op.controls, in_place=in_place
        )
    return apply_multi_qubit_gate(
        n, g.matrix, op.targets, a, op.controls, in_place=in_place
    )


def run_circuit(circuit, psi0=None, *, in_place: bool = False) -> np.ndarray:
    """Run every gate of a measurement-free circuit over ``psi0``.

    ``psi0`` defaults to |00...0>.  The returned vector stays normalized;
    a drift beyond ``STATE_ATOL`` would indicate a kernel bug and raises.
    """
    n = circuit.n
    if psi0 is None:
        state = np.zeros(1 << n, dtype=complex)
        state[0] = 1.0
    else:
        # _working_copy copies unless in_place, so the loop below may mutate.
        state = _working_copy(psi0, n, in_place)
        # written so a NaN norm fails the check instead of slipping past it
        if not abs(np.vdot(state, state).real - 1.0) <= STATE_ATOL:
            raise ContractError("initial state is not normalized")
    for op in circuit.ops:
        state = apply_op(n, op, state, in_place=True)
    drift = abs(np.vdot(state, state).real - 1.0)
    if not drift <= STATE_ATOL:
        raise ContractError(f"norm drifted by {drift:.3e} during simulation")
    return state
