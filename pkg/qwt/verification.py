"""
Verification suites comparing built circuits with the dense reference
operators. Every suite returns a list of ``CheckResult`` and never raises
for a numerical mismatch; failures are reported, not thrown.
"""

import logging
import math
from dataclasses import asdict, dataclass

import numpy as np

from .builders import (
    build_controlled_single_qwt,
    build_linprep,
    build_multilevel_qwt,
    build_packet_qwt,
    build_pqwt,
    build_prep,
    build_select,
    build_single_qwt,
    build_unprep,
    plan,
)
from .circuit import Circuit, Gate, GateKind, RegisterLayout, add_gate, inverse, x_gate
from .conf import qwt_setting
from .exceptions import FactorizationError, QwtError
from .filters import (
    available_filters,
    extract_rotation_angles,
    get_filter,
    padded_coefficients,
    reconstruct_from_angles,
)
from .lowering import count_gates, lower_circuit, lower_reflection
from .macros import prep_state
from .reference import (
    build_kernel,
    build_modified_kernel,
    classical_dwt,
    lcu_reconstruct,
    multilevel_matrix,
    packet_matrix,
    select_matrix,
    ushift_matrix,
)
from .simulator import (
    StateVector,
    apply,
    fidelity_up_to_phase,
    lift,
    register_amplitudes,
    unitary_of,
    zero_indices,
)

logger = logging.getLogger(__name__)

KERNEL_FILTERS = ("haar", "db2", "db3", "db4", "db5")
SELECT_GRID = (("haar", (3, 4, 5)), ("db2", (3, 4, 5)))
SINGLE_GRID = (("haar", (3, 4, 5, 6)), ("db2", (4, 5, 6)))
LEVEL_FILTERS = ("haar", "db2")
MAX_LEVEL_QUBITS = 6


@dataclass(frozen=True)
class CheckResult:
    name: str
    residual: float
    tolerance: float
    passed: bool

    @classmethod
    def measure(cls, name, residual, tolerance):
        residual = float(residual)
        return cls(name, residual, float(tolerance), bool(residual <= tolerance))

    def __str__(self):
        status = "ok" if self.passed else "FAIL"
        return f"{status:4} {self.name}: residual {self.residual:.3e} (tol {self.tolerance:.1e})"

    def as_dict(self):
        return asdict(self)


def _tol(key, override=None):
    return qwt_setting(key) if override is None else override


def random_states(n, count=None, seed=None):
    """Columns of Haar-like random complex unit vectors, reproducible from RANDOM_SEED."""
    rng = np.random.default_rng(qwt_setting("RANDOM_SEED") if seed is None else seed)
    count = count or qwt_setting("RANDOM_STATES")
    psi = rng.normal(size=(2 ** n, count)) + 1j * rng.normal(size=(2 ** n, count))
    return psi / np.linalg.norm(psi, axis=0)


def _filters(f, names):
    return [f] if f is not None else [get_filter(name) for name in names]


def _styles(prep_style):
    return (prep_style,) if prep_style else ("sqrt", "linear")


def _flip(state, qubit):
    amplitudes = state.amplitudes
    index = np.arange(amplitudes.shape[0])
    flipped = np.empty_like(amplitudes)
    flipped[index ^ (1 << qubit)] = amplitudes[index]
    return StateVector(flipped)


def unitarity_suite(f=None, n=None, tolerance=None, **options):
    tol = _tol("UNITARY_TOL", tolerance)
    results = []
    for g in _filters(f, KERNEL_FILTERS):
        for k in [n] if n else range(g.ancilla_width + 1, 9):
            w = build_kernel(g, k)
            residual = np.max(np.abs(w.T @ w - np.eye(2 ** k)))
            results.append(CheckResult.measure(f"kernel-unitarity {g.name} n={k}", residual, tol))
    return results


def lcu_suite(f=None, n=None, tolerance=None, **options):
    """Sum of h_l U_l against U, and the controlled shift taking U to W bit for bit."""
    tol = _tol("UNITARY_TOL", tolerance)
    results = []
    for g in _filters(f, KERNEL_FILTERS):
        for k in [n] if n else range(g.ancilla_width + 1, 9):
            u = build_modified_kernel(g, k)
            residual = np.max(np.abs(u - lcu_reconstruct(g, k)))
            results.append(CheckResult.measure(f"lcu {g.name} n={k}", residual, tol))
            exact = np.max(np.abs(ushift_matrix(g, k) @ u - build_kernel(g, k)))
            results.append(CheckResult.measure(f"ushift {g.name} n={k}", exact, 0.0))
    return results


def select_suite(f=None, n=None, tolerance=None, **options):
    tol = _tol("UNITARY_TOL", tolerance)
    grid = [(f, [n] if n else (3, 4, 5))] if f else [(get_filter(name), ns) for name, ns in SELECT_GRID]
    results = []
    for g, ns in grid:
        for k in ns:
            circuit = build_select(g, k)
            full = unitary_of(circuit)
            half = full.shape[0] // 2
            block = full[:half, :half]
            expected = select_matrix(g.ancilla_width, k)
            results.append(CheckResult.measure(
                f"select {g.name} n={k}", np.max(np.abs(block - expected)), tol
            ))
            # Rows with par = 1 reached from par = 0 inputs.
            leak = np.max(np.abs(full[half:, :half]))
            results.append(CheckResult.measure(f"select-parity {g.name} n={k}", leak, tol))
    return results


def _single_checks(p, tolerance):
    results = []
    label = f"{p.filter.name} n={p.n} {p.prep_style}"
    unitary_tol = _tol("UNITARY_TOL", tolerance)
    fidelity_tol = _tol("FIDELITY_TOL", tolerance)
    layout = p.layout()
    psi = random_states(p.n)
    state = lift(layout, "sys", psi)
    expected = build_kernel(p.filter, p.n) @ psi

    projected = register_amplitudes(apply(build_pqwt(p), state), layout, "sys")
    results.append(CheckResult.measure(
        f"pqwt-amplitude {label}", np.max(np.abs(np.linalg.norm(projected, axis=0) - p.sin_alpha)), unitary_tol
    ))
    results.append(CheckResult.measure(
        f"pqwt-direction {label}", np.max(np.abs(projected - p.sin_alpha * expected)), unitary_tol
    ))
    target = math.sin(math.pi / (2 * (2 * p.rounds + 1)))
    results.append(CheckResult.measure(
        f"dilution {label}", abs(p.diluted_amplitude - target), unitary_tol
    ))

    circuit = build_single_qwt(p)
    out = apply(circuit, state)
    sys_out = register_amplitudes(out, layout, "sys")
    probability = np.sum(np.abs(sys_out) ** 2, axis=0)
    results.append(CheckResult.measure(f"oaa-probability {label} t={p.rounds}", np.max(1 - probability), fidelity_tol))
    fidelity = fidelity_up_to_phase(sys_out, expected)
    results.append(CheckResult.measure(f"oaa-fidelity {label}", np.max(1 - fidelity), fidelity_tol))

    if p.rounds >= 1:
        short = register_amplitudes(apply(build_single_qwt(p, rounds=p.rounds - 1), state), layout, "sys")
        short_probability = np.max(np.sum(np.abs(short) ** 2, axis=0))
        results.append(CheckResult.measure(f"oaa-short {label} t={p.rounds - 1}", short_probability, 1 - 1e-6))

    back = apply(inverse(circuit), out)
    results.append(CheckResult.measure(
        f"inverse-roundtrip {label}", np.max(np.abs(back.amplitudes - state.amplitudes)), fidelity_tol
    ))

    controlled = build_controlled_single_qwt(p)
    wide = controlled.layout
    aux = wide["aux"][0]
    idle = lift(wide, "sys", psi)
    unchanged = apply(controlled, idle)
    results.append(CheckResult.measure(
        f"controlled-off {label}", np.max(np.abs(unchanged.amplitudes - idle.amplitudes)), fidelity_tol
    ))
    active = _flip(apply(controlled, _flip(idle, aux)), aux)
    results.append(CheckResult.measure(
        f"controlled-on {label}", np.max(np.abs(register_amplitudes(active, wide, "sys") - expected)), fidelity_tol
    ))
    return results


def single_suite(f=None, n=None, prep_style=None, rounds=None, hoist_shift=False, tolerance=None, **options):
    grid = [(f, [n] if n else range(max(3, f.ancilla_width + 1), 7))] if f else [
        (get_filter(name), ns) for name, ns in SINGLE_GRID
    ]
    results = []
    for g, ns in grid:
        for k in ns:
            for style in _styles(prep_style):
                p = plan(g, k, prep_style=style, rounds=rounds, hoist_shift=hoist_shift)
                results.extend(_single_checks(p, tolerance))
    return results


def _level_grid(f, n, d):
    for g in _filters(f, LEVEL_FILTERS):
        ns = [n] if n else range(1, MAX_LEVEL_QUBITS + 1)
        for k in ns:
            if 2 ** k < g.order:
                continue
            depths = [d] if d else [
                level for level in range(1, k + 1) if 2 ** (k - level + 1) >= g.order
            ]
            for level in depths:
                yield g, k, level


def _level_checks(p, reference, tolerance):
    tol = _tol("LEVEL_TOL", tolerance)
    label = f"{p.filter.name} n={p.n} d={p.d}"
    layout = p.layout()
    psi = random_states(p.n, count=max(1, qwt_setting("RANDOM_STATES") // 2))
    state = lift(layout, "sys", psi)
    circuit = build_multilevel_qwt(p) if p.variant == "multilevel" else build_packet_qwt(p)
    out = apply(circuit, state)
    sys_out = register_amplitudes(out, layout, "sys")
    expected = reference(p.filter, p.n, p.d) @ psi
    results = [
        CheckResult.measure(f"{p.variant} {label}", np.max(np.abs(sys_out - expected)), tol),
        CheckResult.measure(
            f"{p.variant}-ancilla {label}", np.max(1 - np.sum(np.abs(sys_out) ** 2, axis=0)), tol
        ),
    ]
    if p.variant == "multilevel":
        pyramid = np.stack([classical_dwt(p.filter, psi[:, i], p.d) for i in range(psi.shape[1])], axis=1)
        results.append(CheckResult.measure(f"pyramid {label}", np.max(np.abs(sys_out - pyramid)), tol))
    back = apply(inverse(circuit), out)
    results.append(CheckResult.measure(
        f"{p.variant}-inverse {label}", np.max(np.abs(back.amplitudes - state.amplitudes)), tol
    ))
    return results


def multilevel_suite(f=None, n=None, d=None, prep_style=None, tolerance=None, **options):
    results = []
    for g, k, level in _level_grid(f, n, d):
        p = plan(g, k, level, variant="multilevel", prep_style=prep_style or "sqrt")
        results.extend(_level_checks(p, multilevel_matrix, tolerance))
    return results


def packet_suite(f=None, n=None, d=None, prep_style=None, tolerance=None, **options):
    results = []
    for g, k, level in _level_grid(f, n, d):
        p = plan(g, k, level, variant="packet", prep_style=prep_style or "sqrt")
        results.extend(_level_checks(p, packet_matrix, tolerance))
    return results


def cascade_suite(f=None, tolerance=None, **options):
    """Rotation-cascade factorization and the three state preparations."""
    tol = _tol("RECONSTRUCTION_TOL", tolerance)
    results = []
    names = [f.name] if f else available_filters()
    for name in names:
        g = f if f else get_filter(name)
        try:
            cascade = extract_rotation_angles(g)
        except FactorizationError as e:
            logger.error(f"Cascade check failed for {g.name}: {e}")
            results.append(CheckResult.measure(f"cascade {g.name}", math.inf, tol))
            continue
        padded = padded_coefficients(g)
        results.append(CheckResult.measure(
            f"cascade {g.name}", np.max(np.abs(reconstruct_from_angles(cascade) - padded)), tol
        ))
        m = g.ancilla_width
        zero = StateVector.zero(m)
        target = np.zeros(2 ** m)
        target[:g.order] = g.as_array()
        linprep = apply(build_linprep(g, expanded=True), zero).amplitudes
        results.append(CheckResult.measure(f"linprep {g.name}", np.max(np.abs(linprep - target)), tol))
        prep = apply(build_prep(g), zero).amplitudes
        results.append(CheckResult.measure(f"prep {g.name}", np.max(np.abs(prep - prep_state(g.coeffs))), tol))
        unprep = apply(inverse(build_unprep(g)), zero).amplitudes
        results.append(CheckResult.measure(
            f"unprep {g.name}", np.max(np.abs(unprep - prep_state(g.coeffs, signed=True))), tol
        ))
    return results


def lowering_residual(circuit, strategy="I"):
    """
    Largest entry of lowered minus macro unitary over inputs with the work
    register clear. Borrowed qubits sit in the base layout, so every one of
    their basis states is covered.
    """
    lowered = lower_circuit(circuit, strategy)
    macro = circuit.on(lowered.layout)
    work = lowered.layout["work"] if "work" in lowered.layout else ()
    keep = zero_indices(lowered.width, work)
    return float(np.max(np.abs(unitary_of(lowered)[:, keep] - unitary_of(macro)[:, keep])))


def lowered_transform_error(p, count=None, strategy="I"):
    """Largest deviation of the lowered single-level QWT from W on random sys states."""
    lowered = lower_circuit(build_single_qwt(p), strategy)
    psi = random_states(p.n, count=count)
    out = register_amplitudes(apply(lowered, lift(lowered.layout, "sys", psi)), lowered.layout, "sys")
    return float(np.max(np.abs(out - build_kernel(p.filter, p.n) @ psi)))


def _lowering_cases():
    q = lambda k, spare=0: RegisterLayout.single("q", k + spare)
    for strategy in ("I", "II"):
        for k in (3, 4, 5):
            layout = q(k + 1, k - 2 if strategy == "I" else 1)
            yield f"mcx k={k} strategy {strategy}", Circuit(layout, (x_gate(k, range(k)),)), strategy
    for width in (2, 3, 4):
        layout = q(width, width)
        yield f"reflect m={width}", Circuit(layout, (Gate(GateKind.REFLECT, range(width)),)), "I"
    for n in (2, 3, 4):
        for m in sorted({1, n}):
            layout = q(n + m)
            addend, target = range(n, n + m), range(n)
            yield f"add n={n} m={m}", Circuit(layout, (add_gate(addend, target),)), "I"
            yield f"sub n={n} m={m}", Circuit(layout, (add_gate(addend, target, subtract=True),)), "I"
            yield f"controlled-add n={n} m={m}", Circuit(
                q(n + m + 1), (add_gate(addend, target, controls=(n + m,)),)
            ), "I"
    for n, c in ((3, 1), (3, 6), (4, 5)):
        yield f"const-add c={c} n={n}", Circuit(q(n), (Gate(GateKind.CONST_ADD, range(n), params=(c,)),)), "I"
    for n in (2, 3, 4):
        yield f"shuffle n={n}", Circuit(q(n), (Gate(GateKind.SHUFFLE, range(n)),)), "I"
    for m in (1, 2, 3, 4):
        for kind in (GateKind.INC, GateKind.DEC):
            yield f"{kind.value.lower()} m={m}", Circuit(q(m, m), (Gate(kind, range(m)),)), "I"


def lowering_suite(f=None, tolerance=None, **options):
    tol = _tol("UNITARY_TOL", tolerance)
    fidelity_tol = _tol("FIDELITY_TOL", tolerance)
    results = []
    for name, circuit, strategy in _lowering_cases():
        results.append(CheckResult.measure(f"lowered {name}", lowering_residual(circuit, strategy), tol))

    for m in range(2, 7):
        report = count_gates(lower_reflection(m))
        miss = abs(report.h - 2) + abs(report.not_gates - (2 * m + 2))
        results.append(CheckResult.measure(f"reflect-counts m={m}", miss, 0))

    for g in _filters(f, ("haar", "db2", "db3")):
        residual = lowering_residual(build_linprep(g), "I")
        results.append(CheckResult.measure(f"lowered linprep {g.name}", residual, tol))
        for builder, signed in ((build_prep, False), (build_unprep, True)):
            circuit = builder(g) if not signed else inverse(builder(g))
            lowered = lower_circuit(circuit)
            prepared = register_amplitudes(apply(lowered, StateVector.zero(lowered.width)), lowered.layout, "anc")
            fidelity = fidelity_up_to_phase(prepared, prep_state(g.coeffs, signed=signed))
            results.append(CheckResult.measure(
                f"lowered {'unprep' if signed else 'prep'} {g.name}", 1 - float(fidelity), fidelity_tol
            ))

    # Both preparation styles lower exactly end to end.
    if f:
        cases = [(f, k) for k in (2, 3)]
    else:
        cases = [(get_filter(name), k) for name, k in (("haar", 2), ("haar", 3), ("db2", 3), ("db3", 3))]
    for g, k in cases:
        if 2 ** k < g.order:
            continue
        for style in ("sqrt", "linear"):
            results.append(CheckResult.measure(
                f"lowered single {g.name} n={k} {style}",
                lowered_transform_error(plan(g, k, prep_style=style), count=4),
                fidelity_tol,
            ))
    return results


SUITES = {
    "unitarity": unitarity_suite,
    "lcu": lcu_suite,
    "select": select_suite,
    "single": single_suite,
    "multilevel": multilevel_suite,
    "packet": packet_suite,
    "cascade": cascade_suite,
    "lowering": lowering_suite,
}
ALL = "all"


def run_suite(name, **options):
    if name == ALL:
        results = []
        for suite in SUITES:
            results.extend(run_suite(suite, **options))
        return results
    if name not in SUITES:
        raise QwtError(f"Unknown suite '{name}'. Choose from {', '.join(list(SUITES) + [ALL])}")
    results = SUITES[name](**options)
    failed = [r for r in results if not r.passed]
    logger.info(f"Suite {name}: {len(results) - len(failed)}/{len(results)} checks passed")
    return results


def summarize(results):
    failed = next((r for r in results if not r.passed), None)
    return {
        "passed": failed is None,
        "max_residual": max((r.residual for r in results if math.isfinite(r.residual)), default=0.0),
        "failing_check": failed.name if failed else "",
        "checks": len(results),
    }
