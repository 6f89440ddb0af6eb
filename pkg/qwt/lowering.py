"""
Lowering passes: rewrite macro and multi-controlled gates into NOT, CNOT,
TOFFOLI, H, Z, CZ, RY and SWAP.

Clean scratch qubits live in a ``work`` register added above the layout and
are returned to |0> after every expansion. Borrowed qubits are taken from
outside the gate being expanded and are restored whatever their state.
"""

import logging
import math
from contextlib import contextmanager
from dataclasses import replace

from .circuit import (
    BorrowRecord,
    Circuit,
    Gate,
    GateCostReport,
    GateKind,
    KIND_TO_FIELD,
    RegisterLayout,
    Register,
    X_KINDS,
    Z_KINDS,
    add_gate,
    h_gate,
    ry_gate,
    swap_gate,
    ucry_gate,
    x_gate,
    z_gate,
)
from .conf import qwt_setting
from .exceptions import (
    ConstantRangeError,
    InsufficientQubitsError,
    LoweringError,
    WidthError,
)
from .filters import amplification_schedule
from .macros import linprep_gates, prep_state, register_width

logger = logging.getLogger(__name__)

STRATEGIES = ("I", "II")
WORK = "work"


def toffoli(a, b, target):
    return x_gate(target, (a, b))


def cnot(control, target):
    return x_gate(target, (control,))


def gray(i):
    return i ^ (i >> 1)


def mcx_strategy_one(controls, target, borrowed):
    """
    k-control X from 4(k-2) Toffolis using k-2 borrowed qubits.
    """
    c, a, t = list(controls), list(borrowed), target
    k = len(c)
    if k <= 2:
        return [x_gate(t, c)]
    if len(a) < k - 2:
        raise InsufficientQubitsError(f"MCX({k}) strategy I needs {k - 2} borrowed qubits, got {len(a)}")
    down = [toffoli(c[i], a[i - 2], a[i - 1]) for i in range(k - 2, 1, -1)]
    up = down[::-1]
    head = toffoli(c[k - 1], a[k - 3], t)
    base = toffoli(c[0], c[1], a[0])
    return [head] + down + [base] + up + [head] + down + [base] + up


def mcx_strategy_two(controls, target, spare):
    """Split the controls in two halves joined through one borrowed qubit."""
    c = list(controls)
    first = c[:math.ceil(len(c) / 2)]
    second = c[len(first):] + [spare]
    return [x_gate(spare, first), x_gate(target, second)] * 2


def cuccaro_adder(addend, target, carry):
    """
    |a>|b>|0> -> |a>|a + b mod 2^n>|0> with the addend already as wide as the
    target (zero-extended by the caller).
    """
    a, b, n = list(addend), list(target), len(target)

    def carry_of(i):
        return carry if i == 0 else a[i - 1]

    gates = []
    for i in range(n - 1):
        x, y, z = carry_of(i), b[i], a[i]
        gates += [cnot(z, y), cnot(z, x), toffoli(x, y, z)]
    gates += [cnot(a[n - 1], b[n - 1]), cnot(carry_of(n - 1), b[n - 1])]
    for i in range(n - 2, -1, -1):
        x, y, z = carry_of(i), b[i], a[i]
        gates += [toffoli(x, y, z), cnot(z, x), cnot(x, y)]
    return gates


def shuffle_swaps(register, dagger=False):
    register = list(register)
    swaps = [swap_gate(register[i], register[i + 1]) for i in range(len(register) - 1)]
    return swaps[::-1] if dagger else swaps


def ucry_angles(angles):
    """Rotation angles of the Gray-code CNOT ladder realizing a UCRY."""
    size = len(angles)
    return [
        sum((-1) ** bin(v & gray(i)).count("1") * angles[v] for v in range(size)) / size
        for i in range(size)
    ]


def ucry_ladder(target, selectors, angles):
    """(gate, needs_control) pairs; the CNOTs cancel when the rotations are off."""
    selectors = list(selectors)
    size = len(angles)
    thetas = ucry_angles(angles)
    steps = []
    for i, theta in enumerate(thetas):
        steps.append((ry_gate(target, theta), True))
        if selectors:
            changed = (gray(i) ^ gray((i + 1) % size)).bit_length() - 1
            steps.append((cnot(selectors[changed], target), False))
    return steps


def prep_rotation_angles(coeffs, signed=False):
    """
    UCRY angles for the flagged preparation and the amplification round count.

    The |0> branch of the flag carries kappa * p_l after the Hadamards, with
    kappa chosen so that the flagged amplitude is exactly amplifiable.
    """
    m = register_width(len(coeffs))
    schedule = amplification_schedule(2.0 ** (-m / 2.0))
    kappa = math.sin(math.pi / (2 * (2 * schedule.rounds + 1))) * 2.0 ** (m / 2.0)
    state = prep_state(coeffs, signed=signed)
    angles = [2.0 * math.acos(max(-1.0, min(1.0, kappa * p))) for p in state]
    return angles, schedule.rounds


class Lowerer:
    """Expands gates one at a time into ``self.out``."""

    def __init__(self, layout, strategy=None, allow_growth=True):
        strategy = strategy or qwt_setting("MCX_STRATEGY")
        if strategy not in STRATEGIES:
            raise LoweringError(f"unknown MCX strategy '{strategy}', choose from {', '.join(STRATEGIES)}")
        self.strategy = strategy
        self.allow_growth = allow_growth
        if WORK in layout and layout.registers[-1].name == WORK:
            self.base_layout = RegisterLayout(layout.registers[:-1])
            self.work_capacity = layout.register(WORK).size
        else:
            self.base_layout = layout
            self.work_capacity = 0
        self.work_base = self.base_layout.width
        self.work_used = set()
        self.peak = self.work_capacity
        self.prep_flags = {}
        self.out = []
        self.borrowed = []

    # qubit management

    def allocate(self, count):
        qubits = []
        q = self.work_base
        while len(qubits) < count:
            if q not in self.work_used:
                qubits.append(q)
            q += 1
        self.work_used.update(qubits)
        self.peak = max(self.peak, max(qubits, default=self.work_base - 1) - self.work_base + 1)
        return qubits

    def release(self, qubits):
        self.work_used.difference_update(qubits)

    @contextmanager
    def work(self, count):
        qubits = self.allocate(count)
        try:
            yield qubits
        finally:
            self.release(qubits)

    def reserve_prep_flags(self, gates):
        """
        One work flag per register prepared by a PREP/UNPREP gate, held for
        the whole circuit. The flag only returns to |0> on the ancilla-zero
        branch, so it joins every reflection over its register.
        """
        for gate in gates:
            if gate.kind in (GateKind.PREP, GateKind.UNPREP):
                key = frozenset(gate.targets)
                if key not in self.prep_flags:
                    self.prep_flags[key] = self.allocate(1)[0]

    def flags_for(self, register):
        held = set(register)
        return tuple(
            flag for key, flag in self.prep_flags.items() if key <= held and flag not in held
        )

    @contextmanager
    def borrowing(self, count, exclude):
        exclude = set(exclude)
        candidates = [q for q in range(self.work_base) if q not in exclude]
        candidates += sorted(q for q in self.work_used if q not in exclude)
        qubits = candidates[:count]
        clean = []
        if len(qubits) < count:
            if not self.allow_growth:
                raise InsufficientQubitsError(
                    f"need {count} borrowable qubits outside {sorted(exclude)}, layout offers {len(qubits)}"
                )
            clean = self.allocate(count - len(qubits))
            qubits = qubits + clean
        start = len(self.out)
        try:
            yield qubits
        finally:
            dirty = tuple(q for q in qubits if q not in clean)
            if dirty:
                self.borrowed.append(BorrowRecord(start, len(self.out), dirty))
            self.release(clean)

    # emission

    def emit(self, gate, strategy=None):
        if not all(gate.polarity):
            flips = [x_gate(q) for q, p in zip(gate.controls, gate.polarity) if p == 0]
            self.out.extend(flips)
            self.emit(replace(gate, polarity=(1,) * len(gate.controls)), strategy)
            self.out.extend(flips)
            return
        if gate.is_elementary:
            self.out.append(gate)
            return
        handler = getattr(self, f"lower_{gate.kind.name.lower()}", None)
        if gate.kind in X_KINDS:
            handler = self.lower_mcx
        elif gate.kind in Z_KINDS:
            handler = self.lower_z
        if handler is None:
            raise LoweringError(f"no lowering rule for {gate}")
        handler(gate, strategy)

    def emit_under(self, gate, controls, needs_control=True):
        """Emit ``gate`` conditioned on ``controls`` (all polarity 1)."""
        if not controls or not needs_control:
            self.emit(gate)
        elif gate.kind is GateKind.SWAP:
            a, b = gate.targets
            for t, extra in ((b, a), (a, b), (b, a)):
                self.emit(x_gate(t, gate.controls + tuple(controls) + (extra,)))
        else:
            self.emit(gate.with_controls(controls))

    def emit_steps(self, steps, controls):
        for step in steps:
            gate, needs_control = step if isinstance(step, tuple) else (step, True)
            self.emit_under(gate, controls, needs_control)

    # rules

    def lower_mcx(self, gate, strategy=None):
        strategy = strategy or self.strategy
        controls, target = gate.controls, gate.targets[0]
        k = len(controls)
        if strategy == "I" or k < 3:
            with self.borrowing(k - 2, gate.qubits) as borrowed:
                self.out.extend(mcx_strategy_one(controls, target, borrowed))
            return
        with self.borrowing(1, gate.qubits) as (spare,):
            for sub in mcx_strategy_two(controls, target, spare):
                self.emit(sub, strategy="I")

    def lower_z(self, gate, strategy=None):
        t = gate.targets[0]
        self.emit(h_gate(t))
        self.emit(x_gate(t, gate.controls), strategy)
        self.emit(h_gate(t))

    def lower_h(self, gate, strategy=None):
        t = gate.targets[0]
        self.emit(ry_gate(t, math.pi / 2, gate.controls))
        self.emit(x_gate(t, gate.controls))

    def lower_ry(self, gate, strategy=None):
        t, angle = gate.targets[0], gate.angle
        self.emit(x_gate(t, gate.controls))
        self.emit(ry_gate(t, -angle / 2))
        self.emit(x_gate(t, gate.controls))
        self.emit(ry_gate(t, angle / 2))

    def lower_swap(self, gate, strategy=None):
        self.emit_under(replace(gate, controls=(), polarity=()), gate.controls)

    def lower_add(self, gate, strategy=None, subtract=None):
        if subtract is None:
            subtract = gate.kind is GateKind.SUB
        m = gate.addend_width
        addend, target = gate.targets[:m], gate.targets[m:]
        if m > len(target):
            raise WidthError(f"addend register ({m} qubits) is wider than the target ({len(target)})")
        with self.work(1 + len(target) - m) as scratch:
            carry, extension = scratch[0], scratch[1:]
            steps = cuccaro_adder(list(addend) + extension, target, carry)
            if subtract:
                steps = steps[::-1]
            self.emit_steps(steps, gate.controls)

    def lower_sub(self, gate, strategy=None):
        self.lower_add(gate, strategy, subtract=True)

    def lower_const_add(self, gate, strategy=None):
        register = gate.targets
        size = 2 ** len(register)
        value = int(gate.params[0]) % size
        if value == 0:
            return
        subtract = (size - value).bit_length() < value.bit_length()
        if subtract:
            value = size - value
        with self.work(value.bit_length()) as loaded:
            loads = [x_gate(q) for bit, q in enumerate(loaded) if value >> bit & 1]
            self.out.extend(loads)
            self.emit(add_gate(loaded, register, gate.controls, subtract=subtract))
            self.out.extend(loads)

    def lower_shuffle(self, gate, strategy=None):
        self.emit_steps(shuffle_swaps(gate.targets, gate.dagger), gate.controls)

    def increment_steps(self, register, borrowed):
        register = list(register)
        if len(register) == 1:
            return [x_gate(register[0])]
        if len(register) == 2:
            return [cnot(register[0], register[1]), x_gate(register[0])]
        flips = [(x_gate(q), False) for q in borrowed]
        sub = add_gate(borrowed, register, subtract=True)
        return [sub] + flips + [sub] + flips

    def lower_inc(self, gate, strategy=None, decrement=None):
        if decrement is None:
            decrement = gate.kind is GateKind.DEC
        register = gate.targets
        need = len(register) if len(register) >= 3 else 0
        with self.borrowing(need, gate.qubits) as borrowed:
            steps = self.increment_steps(register, borrowed)
            if decrement:
                steps = [
                    (s[0].inverse(), s[1]) if isinstance(s, tuple) else s.inverse()
                    for s in reversed(steps)
                ]
            self.emit_steps(steps, gate.controls)

    def lower_dec(self, gate, strategy=None):
        self.lower_inc(gate, strategy, decrement=True)

    def lower_reflect(self, gate, strategy=None):
        register = tuple(gate.targets) + self.flags_for(gate.targets)
        with self.work(1) as (kick,):
            frame = [x_gate(q) for q in register] + [x_gate(kick), h_gate(kick)]
            self.emit_steps([(g, False) for g in frame], gate.controls)
            self.emit(x_gate(kick, tuple(register) + gate.controls), strategy)
            self.emit_steps([(g, False) for g in reversed(frame)], gate.controls)

    def lower_ucry(self, gate, strategy=None):
        target, selectors = gate.targets[0], gate.targets[1:]
        self.emit_steps(ucry_ladder(target, selectors, gate.params), gate.controls)

    def flagged_preparation(self, coeffs, register, flag, signed):
        """Gates preparing the (signed) square-root state on |0> with a clean flag."""
        angles, rounds = prep_rotation_angles(coeffs, signed)
        prepare = [h_gate(q) for q in register] + [ucry_gate(flag, register, angles)]
        unprepare = [g.inverse() for g in reversed(prepare)]
        rounds_gates = (
            [x_gate(flag), z_gate(flag), x_gate(flag)]
            + unprepare
            + [Gate(GateKind.REFLECT, (flag,) + tuple(register))]
            + prepare
            + [ry_gate(flag, 2 * math.pi)]
        )
        return prepare + rounds_gates * rounds

    def lower_prep_family(self, gate, signed, invert):
        self.reserve_prep_flags([gate])
        flag = self.prep_flags[frozenset(gate.targets)]
        steps = self.flagged_preparation(gate.params, gate.targets, flag, signed)
        if invert:
            steps = [g.inverse() for g in reversed(steps)]
        self.emit_steps(steps, gate.controls)

    def lower_prep(self, gate, strategy=None):
        self.lower_prep_family(gate, signed=False, invert=gate.dagger)

    def lower_unprep(self, gate, strategy=None):
        self.lower_prep_family(gate, signed=True, invert=not gate.dagger)

    def lower_linprep(self, gate, strategy=None):
        steps = linprep_gates(gate.params, gate.targets)
        if gate.dagger:
            steps = [g.inverse() for g in reversed(steps)]
        self.emit_steps(steps, gate.controls)

    def result(self):
        layout = self.base_layout
        if self.peak:
            layout = layout.with_register(WORK, self.peak, "work")
        return Circuit(layout, tuple(self.out), tuple(self.borrowed))


def lower_circuit(circuit, strategy=None, allow_growth=True):
    """Fully lower ``circuit``; elementary circuits come back unchanged."""
    if circuit.is_elementary:
        return circuit
    lowerer = Lowerer(circuit.layout, strategy, allow_growth)
    lowerer.reserve_prep_flags(circuit.gates)
    for gate in circuit.gates:
        lowerer.emit(gate)
    lowered = lowerer.result()
    logger.debug(
        f"Lowered {len(circuit.gates)} gates to {len(lowered.gates)} "
        f"(work qubits {lowered.layout.count('work')}, strategy {lowerer.strategy})"
    )
    return lowered


def lower_gate(gate, layout, strategy=None, allow_growth=False):
    return lower_circuit(Circuit(layout, (gate,)), strategy, allow_growth)


def lower_mcx(gate, strategy="I", layout=None):
    """
    Lower one multi-controlled X using only the qubits of ``layout``.

    Gates with at most two controls pass through unchanged.
    """
    if gate.kind not in X_KINDS:
        raise LoweringError(f"lower_mcx expects an X-type gate, got {gate.kind}")
    if layout is None:
        layout = RegisterLayout.single("q", max(gate.qubits) + 1)
    return lower_gate(gate, layout, strategy)


def lower_reflection(width, strategy="I"):
    """I - 2|0><0| on ``q`` with one clean kickback qubit and a borrowable spare register."""
    if width < 1:
        raise WidthError(f"reflection needs at least one qubit, got {width}")
    spare = max(0, width - 2) if strategy == "I" else (1 if width >= 3 else 0)
    layout = RegisterLayout((Register("q", width, "system"), Register("spare", spare, "spare")))
    return lower_gate(Gate(GateKind.REFLECT, layout["q"]), layout, strategy, allow_growth=False)


def lower_add(n, m=None, subtract=False):
    """Ripple-carry |a>|b> -> |a>|b + a mod 2^n> with ``a`` on ``m`` qubits."""
    m = n if m is None else m
    if n < 1 or m < 1:
        raise WidthError(f"adder widths must be positive, got n={n}, m={m}")
    if m > n:
        raise WidthError(f"addend register ({m} qubits) is wider than the target ({n})")
    layout = RegisterLayout((Register("b", n, "system"), Register("a", m, "system")))
    return lower_gate(add_gate(layout["a"], layout["b"], subtract=subtract), layout, allow_growth=True)


def lower_sub(n, m=None):
    return lower_add(n, m, subtract=True)


def lower_const_add(c, n):
    if n < 1:
        raise WidthError(f"register width must be positive, got {n}")
    if not 0 <= c < 2 ** n:
        raise ConstantRangeError(f"constant {c} outside 0..{2 ** n - 1}")
    layout = RegisterLayout.single("q", n)
    return lower_gate(Gate(GateKind.CONST_ADD, layout["q"], params=(c,)), layout, allow_growth=True)


def lower_shuffle(n, dagger=False):
    if n < 1:
        raise WidthError(f"shuffle needs at least one qubit, got {n}")
    layout = RegisterLayout.single("q", n)
    return lower_gate(Gate(GateKind.SHUFFLE, layout["q"], dagger=dagger), layout)


def lower_increment(m, decrement=False, spare=None):
    """+1 (or -1) mod 2^m borrowing qubits from a ``spare`` register."""
    if m < 1:
        raise WidthError(f"increment needs at least one qubit, got {m}")
    spare = (m if m >= 3 else 0) if spare is None else spare
    layout = RegisterLayout((Register("q", m, "system"), Register("spare", spare, "spare")))
    kind = GateKind.DEC if decrement else GateKind.INC
    return lower_gate(Gate(kind, layout["q"]), layout)


def lower_decrement(m, spare=None):
    return lower_increment(m, decrement=True, spare=spare)


def count_gates(circuit, strategy=None):
    """Per-kind elementary counts of the fully lowered circuit."""
    lowered = lower_circuit(circuit, strategy)
    counts = dict.fromkeys(GateCostReport.GATE_FIELDS, 0)
    for gate in lowered.gates:
        if not gate.is_elementary:
            raise LoweringError(f"gate {gate} survived lowering")
        counts[KIND_TO_FIELD[gate.kind]] += 1
    return GateCostReport(
        **counts,
        ancilla_count=lowered.layout.count("ancilla"),
        work_count=lowered.layout.count("work"),
        borrowed_count=len(lowered.borrowed_qubits),
    )
