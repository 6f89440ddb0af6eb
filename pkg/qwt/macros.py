"""Exact unitaries behind the PREP, UNPREP and LINPREP macro gates."""

from functools import lru_cache

import numpy as np

from .circuit import Gate, GateKind, ry_gate, x_gate
from .filters import WaveletFilter, extract_rotation_angles
from .reference import shift_matrix


def register_width(order):
    return max(1, (order - 1).bit_length())


def prep_state(coeffs, signed=False):
    """(1/sqrt(h)) sum_l sqrt|h_l| |l>, optionally carrying sign(h_l)."""
    h = np.asarray(coeffs, dtype=float)
    m = register_width(h.size)
    state = np.zeros(2 ** m)
    state[:h.size] = np.sqrt(np.abs(h) / np.abs(h).sum())
    if signed:
        state[:h.size] *= np.where(h < 0, -1.0, 1.0)
    return state


def householder(target):
    """Real symmetric reflection taking |0> to ``target``."""
    size = target.size
    e0 = np.zeros(size)
    e0[0] = 1.0
    v = e0 - target
    norm2 = float(v @ v)
    if norm2 < 1e-30:
        return np.eye(size)
    return np.eye(size) - 2.0 * np.outer(v, v) / norm2


@lru_cache(maxsize=256)
def prep_matrix(coeffs):
    return householder(prep_state(coeffs))


@lru_cache(maxsize=256)
def unprep_matrix(coeffs):
    """Symmetric, so UNPREP^dagger |0> is the signed square-root state."""
    return householder(prep_state(coeffs, signed=True))


def linprep_gates(coeffs, register):
    """
    Gate sequence loading sum_l h_l |l> onto ``register`` from |0...0>.

    Layers whose rotation pairs start on an odd index are conjugated by an
    increment; the closing decrements remove the zero padding.
    """
    f = WaveletFilter(name="linprep", coeffs=coeffs)
    cascade = extract_rotation_angles(f)
    register = tuple(register)
    if len(register) != cascade.padded_width:
        raise ValueError(f"LINPREP needs {cascade.padded_width} qubits, got {len(register)}")
    gates = [x_gate(register[-1])]
    for layer, theta in enumerate(cascade.angles):
        rotation = ry_gate(register[0], -2.0 * theta)
        if cascade.layer_offset(layer):
            gates += [Gate(GateKind.INC, register), rotation, Gate(GateKind.DEC, register)]
        else:
            gates.append(rotation)
    gates += [Gate(GateKind.DEC, register)] * cascade.pad
    return gates


def _ry(angle):
    c, s = np.cos(angle / 2), np.sin(angle / 2)
    return np.array([[c, -s], [s, c]])


@lru_cache(maxsize=256)
def linprep_matrix(coeffs):
    m = register_width(len(coeffs))
    size = 2 ** m
    up = shift_matrix(m, "down", 1)
    result = np.eye(size)
    for gate in linprep_gates(coeffs, range(m)):
        if gate.kind is GateKind.NOT:
            step = np.eye(size)[np.arange(size) ^ (1 << (m - 1))]
        elif gate.kind is GateKind.RY:
            step = np.kron(np.eye(size // 2), _ry(gate.angle))
        elif gate.kind is GateKind.INC:
            step = up
        else:
            step = up.T
        result = step @ result
    return result
