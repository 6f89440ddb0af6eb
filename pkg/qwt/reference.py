"""
Dense classical matrices for every operator the circuits implement.

These are the oracles the verification suites compare circuits against, so
they are written for clarity rather than speed.
"""

import logging
from pathlib import Path

import numpy as np
from scipy.linalg import block_diag

from .conf import qwt_setting
from .exceptions import DepthError, DimensionError, IndexRangeError, SignalError

logger = logging.getLogger(__name__)

DOWN = "down"
UP = "up"


def shift_matrix(n, direction=DOWN, power=1):
    """(S_down)^power maps |j> to |j+power mod 2^n>; S_up is its inverse."""
    if n < 1:
        raise DimensionError(f"shift needs at least one qubit, got n={n}")
    if direction not in (DOWN, UP):
        raise ValueError(f"direction must be '{DOWN}' or '{UP}', got '{direction}'")
    step = power if direction == DOWN else -power
    return np.roll(np.eye(2 ** n), step, axis=0)


def check_dimension(f, n):
    if n > qwt_setting("MAX_REFERENCE_QUBITS"):
        raise DimensionError(
            f"Reference matrices are capped at {qwt_setting('MAX_REFERENCE_QUBITS')} qubits, got n={n}"
        )
    if n < 1 or 2 ** n < f.order:
        raise DimensionError(f"2^n = {2 ** max(n, 0)} is smaller than the filter order {f.order}")


def check_depth(f, n, d):
    if d < 1:
        raise DepthError(f"level count must be >= 1, got d={d}")
    if n - d + 1 < 1 or 2 ** (n - d + 1) < f.order:
        raise DepthError(
            f"level {d} acts on {n - d + 1} qubits, too few for a filter of order {f.order}"
        )
    check_dimension(f, n)


def _circulant_rows(taps, n):
    size = 2 ** n
    rows = np.arange(size // 2)[:, None]
    cols = np.arange(size)[None, :]
    k = (cols - 2 * rows) % size
    out = np.zeros((size // 2, size))
    mask = k < len(taps)
    out[mask] = np.asarray(taps)[k[mask]]
    return out


def lowpass_rows(f, n):
    return _circulant_rows(f.as_array(), n)


def highpass_rows(f, n):
    return _circulant_rows(f.highpass(), n)


def build_kernel(f, n):
    """Single-level wavelet kernel W = [H; G]."""
    check_dimension(f, n)
    return np.vstack([lowpass_rows(f, n), highpass_rows(f, n)])


def build_modified_kernel(f, n):
    """U = [H; G'] with the rows of G shifted down K-1 places."""
    check_dimension(f, n)
    shifted = np.roll(highpass_rows(f, n), f.index - 1, axis=0)
    return np.vstack([lowpass_rows(f, n), shifted])


def ushift_matrix(f, n):
    """Shift the lower half back up by K-1 rows, controlled by the top qubit."""
    check_dimension(f, n)
    half = 2 ** (n - 1)
    if n == 1:
        return np.eye(2)
    return block_diag(np.eye(half), shift_matrix(n - 1, UP, f.index - 1))


def build_P(index, n):
    """
    Permutation picking out coefficient ``index`` of U.

    Column c goes to row (c - l)/2 when c and l share parity, otherwise to
    2^(n-1) + (c + l - 1)/2, all modulo 2^n.
    """
    if n < 1:
        raise DimensionError(f"n must be >= 1, got {n}")
    size = 2 ** n
    if not 0 <= index < size:
        raise IndexRangeError(f"coefficient index {index} outside 0..{size - 1}")
    cols = np.arange(size)
    same = (cols - index) % 2 == 0
    rows = np.where(
        same,
        ((cols - index) % size) // 2,
        size // 2 + ((cols + index - 1) % size) // 2,
    )
    perm = np.zeros((size, size))
    perm[rows, cols] = 1.0
    return perm


def msb_phase(n):
    """Z on the most significant qubit."""
    half = 2 ** (n - 1)
    return np.diag(np.concatenate([np.ones(half), -np.ones(half)]))


def lcu_term(index, n):
    """U_l = P_l for odd l and (Z x I) P_l for even l."""
    perm = build_P(index, n)
    if index % 2 == 0:
        return msb_phase(n) @ perm
    return perm


def lcu_reconstruct(f, n):
    check_dimension(f, n)
    total = np.zeros((2 ** n, 2 ** n))
    for index, coeff in enumerate(f.coeffs):
        total += coeff * lcu_term(index, n)
    return total


def select_matrix(m, n):
    """Block-diagonal sum over l of |l><l| x U_l with anc above sys."""
    return block_diag(*[lcu_term(index, n) for index in range(2 ** m)])


def multilevel_matrix(f, n, d):
    """W^(d)_n: each further level transforms only the low-frequency block."""
    check_depth(f, n, d)
    size = 2 ** n
    result = build_kernel(f, n)
    for s in range(1, d):
        inner = build_kernel(f, n - s)
        result = block_diag(inner, np.eye(size - inner.shape[0])) @ result
    return result


def packet_matrix(f, n, d):
    """P^(d)_n: each further level transforms every block."""
    check_depth(f, n, d)
    result = build_kernel(f, n)
    for s in range(1, d):
        result = np.kron(np.eye(2 ** s), build_kernel(f, n - s)) @ result
    return result


def classical_dwt(f, signal, d):
    """
    Periodic pyramid algorithm.

    Output layout is (a_d, d_d, d_{d-1}, ..., d_1).
    """
    signal = np.asarray(signal)
    size = signal.shape[0]
    n = int(size).bit_length() - 1
    if 2 ** n != size:
        raise DimensionError(f"signal length {size} is not a power of two")
    check_depth(f, n, d)

    h, g = f.as_array(), f.highpass()
    approx = signal.astype(complex if np.iscomplexobj(signal) else float)
    details = []
    for _ in range(d):
        length = approx.shape[0]
        idx = (2 * np.arange(length // 2)[:, None] + np.arange(f.order)[None, :]) % length
        windows = approx[idx]
        details.append(windows @ g)
        approx = windows @ h
    return np.concatenate([approx] + details[::-1])


def format_value(value):
    return f"{value:.17g}"


def format_matrix(matrix):
    """One row per line, entries at 17 significant digits."""
    matrix = np.asarray(matrix)
    if np.iscomplexobj(matrix) and np.any(matrix.imag):
        cell = lambda v: f"{v.real:.17g}{v.imag:+.17g}j"
    else:
        matrix = np.real(matrix)
        cell = format_value
    return "\n".join(" ".join(cell(v) for v in row) for row in matrix) + "\n"


def load_signal(path):
    """One value per line; ``#`` comments and blank lines are skipped."""
    values = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            values.append(float(line))
        except ValueError:
            try:
                values.append(complex(line.replace(" ", "")))
            except ValueError as exc:
                raise SignalError(f"{path}:{lineno}: '{line}' is not a number") from exc
    if not values:
        raise SignalError(f"{path} contains no samples")
    return np.asarray(values)
