"""
Dense statevector simulation of macro and elementary circuits.

Amplitudes are a flat array over the global qubit order; extra trailing
axes are carried along untouched, which is how ``unitary_of`` and the batch
checks push many inputs through a circuit in one sweep.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .circuit import GateKind, X_KINDS, Z_KINDS
from .conf import qwt_setting
from .exceptions import DegenerateProjectionError, WidthError
from .macros import linprep_matrix, prep_matrix, unprep_matrix

logger = logging.getLogger(__name__)

_HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)


def ry_matrix(angle):
    c, s = np.cos(angle / 2), np.sin(angle / 2)
    return np.array([[c, -s], [s, c]])


@dataclass
class StateVector:
    amplitudes: np.ndarray

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex)
        size = self.amplitudes.shape[0]
        if size < 1 or size & (size - 1):
            raise WidthError(f"state length {size} is not a power of two")

    @classmethod
    def zero(cls, num_qubits):
        return cls.basis(num_qubits, 0)

    @classmethod
    def basis(cls, num_qubits, index):
        amplitudes = np.zeros(2 ** num_qubits, dtype=complex)
        amplitudes[index] = 1.0
        return cls(amplitudes)

    @classmethod
    def embed(cls, layout, values):
        """
        Product state with ``values[name]`` loaded into each named register.

        Registers not mentioned start in |0>; a value is a basis index or an
        amplitude vector.
        """
        state = np.ones(1, dtype=complex)
        for register in layout.registers:
            value = values.get(register.name, 0)
            if np.isscalar(value):
                local = np.zeros(2 ** register.size, dtype=complex)
                local[int(value)] = 1.0
            else:
                local = np.asarray(value, dtype=complex)
                if local.shape != (2 ** register.size,):
                    raise WidthError(
                        f"register {register.name} holds {register.size} qubits, got {local.shape[0]} amplitudes"
                    )
            # Higher registers vary slowest.
            state = np.kron(local, state)
        return cls(state)

    @property
    def num_qubits(self):
        return self.amplitudes.shape[0].bit_length() - 1

    def copy(self):
        return StateVector(self.amplitudes.copy())

    def norm(self):
        return np.linalg.norm(self.amplitudes, axis=0)


@lru_cache(maxsize=2048)
def _base_indices(width, support, controls, polarity):
    indices = np.arange(2 ** width)
    mask = np.ones(indices.shape, dtype=bool)
    for q in support:
        mask &= ((indices >> q) & 1) == 0
    for q, p in zip(controls, polarity):
        mask &= ((indices >> q) & 1) == p
    return indices[mask]


@lru_cache(maxsize=2048)
def _offsets(support):
    local = np.arange(2 ** len(support))
    offsets = np.zeros_like(local)
    for bit, q in enumerate(support):
        offsets |= ((local >> bit) & 1) << q
    return offsets


def _add_permutation(size, addend_width, sign):
    local = np.arange(2 ** size)
    mask = (1 << addend_width) - 1
    a, b = local & mask, local >> addend_width
    target = 2 ** (size - addend_width)
    return a | (((b + sign * a) % target) << addend_width)


def _ucry_matrix(angles):
    blocks = [ry_matrix(a) for a in angles]
    size = 2 * len(blocks)
    out = np.zeros((size, size))
    for v, block in enumerate(blocks):
        out[2 * v:2 * v + 2, 2 * v:2 * v + 2] = block
    return out


@lru_cache(maxsize=1024)
def local_operation(kind, size, params, dagger):
    """
    Action of a gate on its own targets as ("perm", p), ("diag", d) or
    ("dense", u). A permutation sends local index j to p[j].
    """
    if kind in X_KINDS:
        return "perm", np.array([1, 0])
    if kind in Z_KINDS:
        return "diag", np.array([1.0, -1.0])
    if kind is GateKind.H:
        return "dense", _HADAMARD
    if kind is GateKind.RY:
        return "dense", ry_matrix(params[0])
    if kind is GateKind.SWAP:
        return "perm", np.array([0, 2, 1, 3])
    if kind in (GateKind.ADD, GateKind.SUB):
        return "perm", _add_permutation(size, int(params[0]), 1 if kind is GateKind.ADD else -1)
    local = np.arange(2 ** size)
    if kind is GateKind.SHUFFLE:
        perm = (local >> 1) | ((local & 1) << (size - 1))
        return "perm", np.argsort(perm) if dagger else perm
    if kind is GateKind.INC:
        return "perm", (local + 1) % 2 ** size
    if kind is GateKind.DEC:
        return "perm", (local - 1) % 2 ** size
    if kind is GateKind.CONST_ADD:
        return "perm", (local + int(params[0])) % 2 ** size
    if kind is GateKind.REFLECT:
        diag = np.ones(2 ** size)
        diag[0] = -1.0
        return "diag", diag
    if kind is GateKind.UCRY:
        return "dense", _ucry_matrix(params)
    if kind in (GateKind.PREP, GateKind.UNPREP, GateKind.LINPREP):
        builder = {
            GateKind.PREP: prep_matrix,
            GateKind.UNPREP: unprep_matrix,
            GateKind.LINPREP: linprep_matrix,
        }[kind]
        matrix = builder(tuple(params))
        if matrix.shape[0] != 2 ** size:
            raise WidthError(f"{kind} over {len(params)} coefficients needs {matrix.shape[0].bit_length() - 1} qubits")
        return "dense", matrix.conj().T if dagger else matrix
    raise ValueError(f"no simulation rule for {kind}")


def apply_gate(amplitudes, gate, width):
    """Apply one gate in place."""
    support = gate.targets
    op, data = local_operation(gate.kind, len(support), gate.params, gate.dagger)
    base = _base_indices(width, support, gate.controls, gate.polarity)
    idx = base[:, None] + _offsets(support)[None, :]
    block = amplitudes[idx]
    if op == "perm":
        out = np.empty_like(block)
        out[:, data] = block
    elif op == "diag":
        out = block * data.reshape((1, -1) + (1,) * (block.ndim - 2))
    else:
        out = np.einsum("ij,bj...->bi...", data, block)
    amplitudes[idx] = out


def apply(circuit, state):
    """Return a new state; ``state`` is left untouched."""
    if isinstance(state, StateVector):
        amplitudes = state.amplitudes.copy()
    else:
        amplitudes = np.array(state, dtype=complex)
    width = amplitudes.shape[0].bit_length() - 1
    if width != circuit.width:
        raise WidthError(f"circuit spans {circuit.width} qubits, state has {width}")
    for gate in circuit.gates:
        apply_gate(amplitudes, gate, width)
    return StateVector(amplitudes)


def zero_indices(width, qubits):
    """Basis indices with every qubit in ``qubits`` at 0, in increasing order."""
    return _base_indices(width, tuple(sorted(qubits)), (), ())


def project_zero(state, qubits):
    """
    Probability that ``qubits`` read all zeros and the renormalized state.

    Works on batches too, in which case the probability is per column.
    """
    amplitudes = state.amplitudes if isinstance(state, StateVector) else np.asarray(state)
    width = amplitudes.shape[0].bit_length() - 1
    keep = zero_indices(width, qubits)
    projected = np.zeros_like(amplitudes)
    projected[keep] = amplitudes[keep]
    probability = np.sum(np.abs(projected) ** 2, axis=0)
    if np.any(probability < 1e-300):
        raise DegenerateProjectionError(f"projection onto |0> of qubits {list(qubits)} has zero probability")
    return probability, StateVector(projected / np.sqrt(probability))


def register_amplitudes(state, layout, name):
    """Amplitudes of register ``name`` with every other qubit at |0>."""
    amplitudes = state.amplitudes if isinstance(state, StateVector) else np.asarray(state)
    others = [q for q in range(layout.width) if q not in set(layout[name])]
    keep = zero_indices(layout.width, others)
    return amplitudes[keep]


def lift(layout, name, values):
    """
    Place ``values`` (one state or a batch along axis 1) in register ``name``
    with every other qubit at |0>.
    """
    values = np.asarray(values, dtype=complex)
    others = [q for q in range(layout.width) if q not in set(layout[name])]
    keep = zero_indices(layout.width, others)
    if values.shape[0] != keep.size:
        raise WidthError(f"register {name} holds {keep.size} amplitudes, got {values.shape[0]}")
    amplitudes = np.zeros((2 ** layout.width,) + values.shape[1:], dtype=complex)
    amplitudes[keep] = values
    return StateVector(amplitudes)


def fidelity_up_to_phase(a, b):
    a = a.amplitudes if isinstance(a, StateVector) else np.asarray(a)
    b = b.amplitudes if isinstance(b, StateVector) else np.asarray(b)
    if a.shape != b.shape:
        raise WidthError(f"cannot compare states of shape {a.shape} and {b.shape}")
    overlap = np.abs(np.sum(np.conj(a) * b, axis=0))
    return np.clip(overlap, 0.0, 1.0)


def unitary_of(circuit):
    cap = qwt_setting("MAX_UNITARY_QUBITS")
    if circuit.width > cap:
        raise WidthError(f"unitary extraction is capped at {cap} qubits, circuit has {circuit.width}")
    return apply(circuit, np.eye(2 ** circuit.width, dtype=complex)).amplitudes


def format_state(state):
    """One "real imag" pair per line at 17 significant digits."""
    amplitudes = state.amplitudes if isinstance(state, StateVector) else np.asarray(state)
    return "".join(f"{v.real:.17g} {v.imag:.17g}\n" for v in np.asarray(amplitudes, dtype=complex))
