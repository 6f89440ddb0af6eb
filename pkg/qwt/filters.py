"""
Orthogonal wavelet filters: the built-in Daubechies registry, validation,
one-norm arithmetic and the rotation-cascade factorization used by LINPREP.
"""

import logging
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .conf import qwt_setting
from .exceptions import (
    DepthError,
    FactorizationError,
    FilterValidationError,
    UnknownFilterError,
)

logger = logging.getLogger(__name__)

# Daubechies low-pass coefficients h_0..h_{M-1}, orders M = 2..20.
DAUBECHIES = {
    "db1": (0.70710678118654757, 0.70710678118654757),
    "db2": (
        0.48296291314453416, 0.83651630373780794, 0.22414386804201339,
        -0.12940952255126037,
    ),
    "db3": (
        0.33267055295008263, 0.80689150931109255, 0.45987750211849154,
        -0.13501102001025458, -0.085441273882026658, 0.035226291885709533,
    ),
    "db4": (
        0.23037781330889651, 0.71484657055291567, 0.63088076792985892,
        -0.027983769416859854, -0.18703481171909309, 0.030841381835560764,
        0.032883011666885197, -0.010597401785069032,
    ),
    "db5": (
        0.16010239797419293, 0.60382926979718965, 0.72430852843777294,
        0.13842814590132074, -0.24229488706638203, -0.032244869584638375,
        0.077571493840045719, -0.0062414902127982744, -0.012580751999081999,
        0.0033357252854737712,
    ),
    "db6": (
        0.11154074335010947, 0.49462389039845306, 0.75113390802109536,
        0.31525035170919763, -0.22626469396543983, -0.12976686756726194,
        0.097501605587323043, 0.027522865530305727, -0.03158203931748603,
        0.00055384220116149613, 0.0047772575109455108, -0.0010773010853084796,
    ),
    "db7": (
        0.077852054085009184, 0.39653931948191729, 0.72913209084623509,
        0.46978228740519312, -0.14390600392856498, -0.22403618499387498,
        0.071309219266830259, 0.080612609151083078, -0.038029936935014413,
        -0.016574541630666881, 0.01255099855609984, 0.00042957797292136651,
        -0.0018016407040474908, 0.00035371379997452024,
    ),
    "db8": (
        0.054415842243104008, 0.31287159091429995, 0.67563073629728976,
        0.58535468365420673, -0.015829105256349306, -0.28401554296154691,
        0.00047248457391328279, 0.12874742662047847, -0.017369301001807547,
        -0.044088253930794755, 0.013981027917398282, 0.0087460940474057766,
        -0.0048703529934515741, -0.00039174037337694705, 0.00067544940645056933,
        -0.00011747678412476953,
    ),
    "db9": (
        0.038077947363878345, 0.24383467461259034, 0.60482312369011115,
        0.65728807805130052, 0.13319738582500756, -0.29327378327917492,
        -0.096840783222976456, 0.14854074933810638, 0.03072568147933338,
        -0.067632829061329974, 0.00025094711483145197, 0.022361662123679096,
        -0.0047232047577513972, -0.0042815036824634303, 0.0018476468830562265,
        0.00023038576352319597, -0.00025196318894271012, 3.9347320316271603e-05,
    ),
    "db10": (
        0.026670057900555554, 0.1881768000776915, 0.52720118893172563,
        0.68845903945360354, 0.28117234366057747, -0.24984642432731538,
        -0.19594627437737705, 0.12736934033579325, 0.093057364603572348,
        -0.071394147166397082, -0.029457536821875813, 0.033212674059341002,
        0.0036065535669561697, -0.010733175483330575, 0.0013953517470529011,
        0.0019924052951850561, -0.00068585669495971162, -0.00011646685512928545,
        9.3588670320069592e-05, -1.3264202894521244e-05,
    ),
}

ALIASES = {"haar": "db1"}

BUILTIN_NAMES = ("haar",) + tuple(DAUBECHIES)


@dataclass(frozen=True)
class WaveletFilter:
    """A real low-pass filter h_0..h_{M-1} of even order M."""

    name: str
    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coeffs)
        if len(coeffs) < 2 or len(coeffs) % 2:
            raise ValueError(
                f"Filter '{self.name}' must have an even number (>= 2) of coefficients, got {len(coeffs)}"
            )
        object.__setattr__(self, "coeffs", coeffs)

    def __str__(self):
        return f"{self.name} (M={self.order})"

    @property
    def order(self):
        return len(self.coeffs)

    @property
    def index(self):
        return self.order // 2

    @property
    def ancilla_width(self):
        """m = ceil(log2 M), the width of the coefficient-index register."""
        return max(1, (self.order - 1).bit_length())

    def as_array(self):
        return np.asarray(self.coeffs, dtype=float)

    def highpass(self):
        """g_l = (-1)^l h_{M-1-l}."""
        h = self.as_array()
        return h[::-1] * (-1.0) ** np.arange(self.order)


@dataclass(frozen=True)
class FilterReport:
    passed: bool
    sum_residual: float
    energy_residual: float
    orthogonality_residual: float
    tolerance: float
    reason: str = ""

    @property
    def max_residual(self):
        return max(self.sum_residual, self.energy_residual, self.orthogonality_residual)

    def summary(self):
        text = (
            f"sum residual {self.sum_residual:.3e}, "
            f"energy residual {self.energy_residual:.3e}, "
            f"shift-orthogonality residual {self.orthogonality_residual:.3e}"
        )
        if self.reason:
            text = f"{self.reason}; {text}"
        return text


def validate_filter(coeffs):
    """
    Check the orthogonal wavelet conditions on a coefficient sequence.

    Failures are reported, never raised.
    """
    tol = qwt_setting("VALIDATION_TOL")
    h = np.asarray(list(coeffs), dtype=float)
    if h.size == 0:
        return FilterReport(False, math.inf, math.inf, math.inf, tol, "empty coefficient sequence")

    sum_residual = abs(h.sum() - math.sqrt(2.0))
    energy_residual = abs(np.dot(h, h) - 1.0)
    orthogonality_residual = 0.0
    for shift in range(2, h.size, 2):
        orthogonality_residual = max(
            orthogonality_residual, abs(np.dot(h[:-shift], h[shift:]))
        )

    reasons = []
    if h.size % 2:
        reasons.append(f"odd length {h.size}")
    if sum_residual > tol:
        reasons.append(f"sum of coefficients {h.sum():.17g} != sqrt(2)")
    if energy_residual > tol:
        reasons.append(f"sum of squares {np.dot(h, h):.17g} != 1")
    if orthogonality_residual > tol:
        reasons.append("double-shift orthogonality violated")
    return FilterReport(
        passed=not reasons,
        sum_residual=float(sum_residual),
        energy_residual=float(energy_residual),
        orthogonality_residual=float(orthogonality_residual),
        tolerance=tol,
        reason="; ".join(reasons),
    )


def builtin_filter(name):
    key = ALIASES.get(name, name)
    if key not in DAUBECHIES:
        raise UnknownFilterError(name, available_filters())
    return WaveletFilter(name=name, coeffs=DAUBECHIES[key])


def parse_coefficients(text):
    values = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            values.append(float(line))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: '{line}' is not a real number") from exc
    return values


def load_filter_file(path, name=None):
    """Load one coefficient per line and reject sequences that fail validation."""
    path = Path(path)
    values = parse_coefficients(path.read_text())
    report = validate_filter(values)
    if not report.passed:
        logger.error(f"Rejected filter file {path}: {report.summary()}")
        raise FilterValidationError(report, source=str(path))
    return WaveletFilter(name=name or path.stem, coeffs=values)


def registry_filters():
    """Extra filters from ``QWT_REGISTRY_PATH`` (one ``<name>.txt`` per filter)."""
    root = qwt_setting("REGISTRY_PATH")
    if not root:
        return {}
    directory = Path(root)
    if not directory.is_dir():
        logger.warning(f"QWT registry path {directory} is not a directory, ignoring it")
        return {}
    found = {}
    for path in sorted(directory.glob("*.txt")):
        found[path.stem] = path
    return found


def available_filters():
    return BUILTIN_NAMES + tuple(n for n in registry_filters() if n not in BUILTIN_NAMES)


def get_filter(name):
    """Resolve a built-in name first, then a registry file."""
    if ALIASES.get(name, name) in DAUBECHIES:
        return builtin_filter(name)
    extra = registry_filters()
    if name in extra:
        return load_filter_file(extra[name], name=name)
    raise UnknownFilterError(name, available_filters())


def one_norm(f):
    return float(np.abs(f.as_array()).sum())


def success_amplitude(f, prep_style="sqrt"):
    """sin(alpha) of the probabilistic transform for the given preparation style."""
    if prep_style == "sqrt":
        return 1.0 / one_norm(f)
    if prep_style == "linear":
        return 2.0 ** (-f.ancilla_width / 2.0)
    raise ValueError(f"Unknown preparation style '{prep_style}'")


@dataclass(frozen=True)
class Schedule:
    alpha: float
    rounds: int
    theta: float

    @property
    def diluted_amplitude(self):
        return math.sin(self.alpha) * math.cos(self.theta)


def amplification_schedule(sin_alpha, rounds=None):
    """
    Round count and dilution angle for exact amplitude amplification.

    The dilution rotation lowers the success amplitude to sin(pi / (2(2t+1)))
    so that t rounds land on probability one. ``rounds`` pins t instead of
    taking the smallest sufficient count.
    """
    if not 0.0 < sin_alpha <= 1.0:
        raise ValueError(f"success amplitude must lie in (0, 1], got {sin_alpha}")
    alpha = math.asin(sin_alpha)
    if rounds is None:
        rounds = max(0, math.ceil((math.pi / (2 * alpha) - 1) / 2 - 1e-9))
    elif rounds < 0:
        raise DepthError(f"round count must be non-negative, got {rounds}")
    target = math.sin(math.pi / (2 * (2 * rounds + 1)))
    if target > sin_alpha * (1 + 1e-12):
        raise DepthError(
            f"{rounds} rounds need success amplitude >= {target:.6f}, have {sin_alpha:.6f}"
        )
    cos_theta = min(1.0, max(0.0, target / sin_alpha))
    return Schedule(alpha=alpha, rounds=rounds, theta=math.acos(cos_theta))


@dataclass(frozen=True)
class RotationCascade:
    angles: tuple
    padded_width: int
    pad: int

    @property
    def length(self):
        return 2 ** self.padded_width

    def layer_offset(self, layer):
        """Parity of the first index paired by a rotation layer."""
        return (self.length // 2 - 1 - layer) % 2

    def layer_pairs(self, layer):
        size = self.length
        start = self.layer_offset(layer)
        return [((start + 2 * i) % size, (start + 2 * i + 1) % size) for i in range(size // 2)]


def _apply_layer(vector, pairs, theta, inverse=False):
    c, s = math.cos(theta), math.sin(theta)
    if inverse:
        s = -s
    a = np.array([p[0] for p in pairs])
    b = np.array([p[1] for p in pairs])
    xa, xb = vector[a].copy(), vector[b].copy()
    vector[a] = c * xa + s * xb
    vector[b] = -s * xa + c * xb


def reconstruct_from_angles(cascade):
    """Apply the rotation layers to e_{L/2}; returns (0^pad, h, 0^pad)."""
    vector = np.zeros(cascade.length)
    vector[cascade.length // 2] = 1.0
    for layer, theta in enumerate(cascade.angles):
        _apply_layer(vector, cascade.layer_pairs(layer), theta)
    return vector


def padded_coefficients(f):
    m = f.ancilla_width
    pad = (2 ** m - f.order) // 2
    vector = np.zeros(2 ** m)
    vector[pad:pad + f.order] = f.as_array()
    return vector


def extract_rotation_angles(f):
    """
    Factor a filter into K rotation layers by peeling them off outermost first.

    Each inverse layer must zero the outermost nonzero pair; a residual left
    after the last layer means the filter is outside the factorizable family.
    """
    m = f.ancilla_width
    size = 2 ** m
    half = size // 2
    cascade = RotationCascade(angles=(), padded_width=m, pad=(size - f.order) // 2)
    vector = padded_coefficients(f)
    tol = qwt_setting("FACTORIZATION_TOL")

    angles = [0.0] * f.index
    for layer in range(f.index - 1, -1, -1):
        a = half - 1 - layer
        b = a + 1
        if math.hypot(vector[a], vector[b]) > tol:
            theta = math.atan2(vector[a], vector[b])
        else:
            a2, b2 = half + layer - 1, half + layer
            theta = math.atan2(-vector[b2], vector[a2])
        if layer >= 1 and math.cos(theta) < 0:
            theta = theta - math.pi if theta > 0 else theta + math.pi
        if theta <= -math.pi:
            theta += 2 * math.pi
        angles[layer] = theta
        _apply_layer(vector, cascade.layer_pairs(layer), theta, inverse=True)

    target = np.zeros(size)
    target[half] = 1.0
    residual = float(np.max(np.abs(vector - target)))
    if residual > tol:
        raise FactorizationError(
            f"Filter '{f.name}' does not factor into rotation layers (residual {residual:.3e})"
        )
    logger.debug(f"Factorized {f.name} into {f.index} rotation layers")
    return RotationCascade(angles=tuple(angles), padded_width=m, pad=cascade.pad)
