"""
Circuit intermediate representation.

Qubit 0 is the least significant bit of the global basis index. Registers
are stacked from the LSB upwards, so a layout ``(sys, anc, par)`` puts the
data register in the low bits and the parity qubit on top.
"""

import logging
from dataclasses import dataclass, field, replace
from enum import Enum

from .exceptions import LayoutError

logger = logging.getLogger(__name__)


class GateKind(str, Enum):
    NOT = "NOT"
    H = "H"
    Z = "Z"
    CNOT = "CNOT"
    CZ = "CZ"
    TOFFOLI = "TOFFOLI"
    MCX = "MCX"
    RY = "RY"
    SWAP = "SWAP"
    ADD = "ADD"
    SUB = "SUB"
    SHUFFLE = "SHUFFLE"
    INC = "INC"
    DEC = "DEC"
    CONST_ADD = "CONST_ADD"
    PREP = "PREP_MACRO"
    UNPREP = "UNPREP_MACRO"
    LINPREP = "LINPREP_MACRO"
    UCRY = "UCRY"
    REFLECT = "REFLECT"

    def __str__(self):
        return self.value


X_KINDS = frozenset({GateKind.NOT, GateKind.CNOT, GateKind.TOFFOLI, GateKind.MCX})
Z_KINDS = frozenset({GateKind.Z, GateKind.CZ})
PREP_KINDS = frozenset({GateKind.PREP, GateKind.UNPREP, GateKind.LINPREP})

# Kind -> number of controls it may carry and still count as elementary.
ELEMENTARY = {
    GateKind.NOT: 0,
    GateKind.CNOT: 1,
    GateKind.TOFFOLI: 2,
    GateKind.H: 0,
    GateKind.Z: 0,
    GateKind.RY: 0,
    GateKind.SWAP: 0,
    GateKind.CZ: 1,
}


def x_kind(num_controls):
    return (GateKind.NOT, GateKind.CNOT, GateKind.TOFFOLI)[num_controls] if num_controls < 3 else GateKind.MCX


def z_kind(num_controls):
    return GateKind.Z if num_controls == 0 else GateKind.CZ


@dataclass(frozen=True)
class Gate:
    kind: GateKind
    targets: tuple
    controls: tuple = ()
    polarity: tuple = ()
    params: tuple = ()
    dagger: bool = False

    def __post_init__(self):
        object.__setattr__(self, "kind", GateKind(self.kind))
        object.__setattr__(self, "targets", tuple(int(q) for q in self.targets))
        object.__setattr__(self, "controls", tuple(int(q) for q in self.controls))
        polarity = tuple(int(p) for p in self.polarity) or (1,) * len(self.controls)
        object.__setattr__(self, "polarity", polarity)
        object.__setattr__(self, "params", tuple(self.params))
        if len(polarity) != len(self.controls):
            raise LayoutError(f"{self.kind}: {len(self.controls)} controls but {len(polarity)} polarity flags")
        if any(p not in (0, 1) for p in polarity):
            raise LayoutError(f"{self.kind}: polarity flags must be 0 or 1")
        qubits = self.targets + self.controls
        if len(set(qubits)) != len(qubits):
            raise LayoutError(f"{self.kind}: repeated qubit in {qubits}")
        if not self.targets:
            raise LayoutError(f"{self.kind}: gate has no targets")

    def __str__(self):
        text = f"{self.kind}{'^dg' if self.dagger else ''} t={list(self.targets)}"
        if self.controls:
            text += f" c={list(self.controls)} p={list(self.polarity)}"
        if self.params and self.kind not in PREP_KINDS:
            text += f" params={list(self.params)}"
        return text

    @property
    def qubits(self):
        return self.controls + self.targets

    @property
    def is_elementary(self):
        allowed = ELEMENTARY.get(self.kind)
        return allowed is not None and len(self.controls) == allowed and all(self.polarity)

    @property
    def angle(self):
        return float(self.params[0])

    @property
    def addend_width(self):
        return int(self.params[0])

    def inverse(self):
        kind = self.kind
        if kind is GateKind.RY:
            return replace(self, params=(-self.angle,))
        if kind is GateKind.UCRY:
            return replace(self, params=tuple(-a for a in self.params))
        if kind is GateKind.ADD:
            return replace(self, kind=GateKind.SUB)
        if kind is GateKind.SUB:
            return replace(self, kind=GateKind.ADD)
        if kind is GateKind.INC:
            return replace(self, kind=GateKind.DEC)
        if kind is GateKind.DEC:
            return replace(self, kind=GateKind.INC)
        if kind is GateKind.CONST_ADD:
            return replace(self, params=((-int(self.params[0])) % 2 ** len(self.targets),))
        if kind is GateKind.SHUFFLE or kind in PREP_KINDS:
            return replace(self, dagger=not self.dagger)
        return self

    def with_controls(self, controls, polarity=None):
        """Add controls, keeping X and Z kinds canonical for their control count."""
        controls = tuple(controls)
        polarity = tuple(polarity) if polarity is not None else (1,) * len(controls)
        all_controls = self.controls + controls
        kind = self.kind
        if kind in X_KINDS:
            kind = x_kind(len(all_controls))
        elif kind in Z_KINDS:
            kind = z_kind(len(all_controls))
        return replace(self, kind=kind, controls=all_controls, polarity=self.polarity + polarity)

    def remapped(self, mapping):
        return replace(
            self,
            targets=tuple(mapping[q] for q in self.targets),
            controls=tuple(mapping[q] for q in self.controls),
        )


def x_gate(target, controls=(), polarity=None):
    controls = tuple(controls)
    return Gate(x_kind(len(controls)), (target,), controls, polarity or ())


def h_gate(target):
    return Gate(GateKind.H, (target,))


def z_gate(target, controls=(), polarity=None):
    controls = tuple(controls)
    return Gate(z_kind(len(controls)), (target,), controls, polarity or ())


def ry_gate(target, angle, controls=(), polarity=None):
    return Gate(GateKind.RY, (target,), tuple(controls), polarity or (), (float(angle),))


def swap_gate(a, b):
    return Gate(GateKind.SWAP, (a, b))


def add_gate(addend, target, controls=(), polarity=None, subtract=False):
    """|a>|b> -> |a>|b +- a mod 2^len(target)>."""
    addend, target = tuple(addend), tuple(target)
    kind = GateKind.SUB if subtract else GateKind.ADD
    return Gate(kind, addend + target, tuple(controls), polarity or (), (len(addend),))


def const_add_gate(register, constant, controls=(), polarity=None):
    register = tuple(register)
    return Gate(
        GateKind.CONST_ADD, register, tuple(controls), polarity or (),
        (int(constant) % 2 ** len(register),),
    )


def reflect_gate(register):
    """I - 2|0><0| on ``register``."""
    return Gate(GateKind.REFLECT, tuple(register))


def ucry_gate(target, selectors, angles):
    selectors = tuple(selectors)
    if len(angles) != 2 ** len(selectors):
        raise LayoutError(f"UCRY over {len(selectors)} selectors needs {2 ** len(selectors)} angles")
    return Gate(GateKind.UCRY, (target,) + selectors, params=tuple(float(a) for a in angles))


@dataclass(frozen=True)
class Register:
    name: str
    size: int
    role: str = "ancilla"

    ROLES = ("system", "ancilla", "work", "spare")

    def __post_init__(self):
        if self.size < 0:
            raise LayoutError(f"register {self.name} has negative size")
        if self.role not in self.ROLES:
            raise LayoutError(f"register {self.name} has unknown role {self.role}")


@dataclass(frozen=True)
class RegisterLayout:
    """Named registers listed from the least significant qubit upwards."""

    registers: tuple

    def __post_init__(self):
        registers = tuple(self.registers)
        names = [r.name for r in registers]
        if len(set(names)) != len(names):
            raise LayoutError(f"duplicate register names in {names}")
        object.__setattr__(self, "registers", registers)

    @classmethod
    def qwt(cls, m, n, aux=False):
        registers = [Register("sys", n, "system")]
        if aux:
            registers.append(Register("aux", 1))
        registers += [Register("anc", m), Register("par", 1)]
        return cls(tuple(registers))

    @classmethod
    def single(cls, name, size, role="system"):
        return cls((Register(name, size, role),))

    def __str__(self):
        return " | ".join(f"{r.name}[{r.size}]" for r in reversed(self.registers))

    def __contains__(self, name):
        return any(r.name == name for r in self.registers)

    def __getitem__(self, name):
        start = self.offset(name)
        return tuple(range(start, start + self.register(name).size))

    @property
    def width(self):
        return sum(r.size for r in self.registers)

    def register(self, name):
        for r in self.registers:
            if r.name == name:
                return r
        raise LayoutError(f"layout {self} has no register '{name}'")

    def offset(self, name):
        start = 0
        for r in self.registers:
            if r.name == name:
                return start
            start += r.size
        raise LayoutError(f"layout {self} has no register '{name}'")

    def count(self, role):
        return sum(r.size for r in self.registers if r.role == role)

    def with_register(self, name, size, role="ancilla"):
        """Append a register above the current most significant qubit."""
        return RegisterLayout(self.registers + (Register(name, size, role),))

    def resized(self, name, size):
        if name not in self:
            raise LayoutError(f"layout {self} has no register '{name}'")
        if self.registers[-1].name != name:
            raise LayoutError(f"only the topmost register can be resized, not '{name}'")
        return RegisterLayout(self.registers[:-1] + (replace(self.registers[-1], size=size),))


@dataclass(frozen=True)
class BorrowRecord:
    """Gates ``start`` to ``stop`` (exclusive) borrow ``qubits`` in an arbitrary state."""

    start: int
    stop: int
    qubits: tuple


@dataclass(frozen=True)
class Circuit:
    layout: RegisterLayout
    gates: tuple = ()
    borrowed: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        object.__setattr__(self, "borrowed", tuple(self.borrowed))
        width = self.layout.width
        for gate in self.gates:
            for q in gate.qubits:
                if not 0 <= q < width:
                    raise LayoutError(f"gate {gate} touches qubit {q} outside layout {self.layout}")

    def __len__(self):
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def __str__(self):
        return f"Circuit({self.layout}, {len(self.gates)} gates)"

    @property
    def width(self):
        return self.layout.width

    @property
    def is_elementary(self):
        return all(g.is_elementary for g in self.gates)

    @property
    def borrowed_qubits(self):
        return tuple(sorted({q for record in self.borrowed for q in record.qubits}))

    def then(self, *gates):
        return replace(self, gates=self.gates + tuple(gates))

    def on(self, layout):
        """Same gates on a wider layout that keeps this one as its low registers."""
        if layout.registers[:len(self.layout.registers)] != self.layout.registers:
            raise LayoutError(f"{layout} does not extend {self.layout}")
        return replace(self, layout=layout)


def _merged_layout(a, b):
    if a == b:
        return a
    short, wide = (a, b) if len(a.registers) <= len(b.registers) else (b, a)
    if wide.registers[:len(short.registers)] == short.registers:
        return wide
    # Lowered circuits of the same layout may size their work register differently.
    if (
        len(a.registers) == len(b.registers)
        and a.registers[:-1] == b.registers[:-1]
        and a.registers[-1].name == b.registers[-1].name
    ):
        return a if a.registers[-1].size >= b.registers[-1].size else b
    raise LayoutError(f"cannot compose circuits on {a} and {b}")


def compose(a, b):
    """Run ``a`` then ``b``."""
    layout = _merged_layout(a.layout, b.layout)
    shift = len(a.gates)
    borrowed = a.borrowed + tuple(
        BorrowRecord(r.start + shift, r.stop + shift, r.qubits) for r in b.borrowed
    )
    return Circuit(layout, a.gates + b.gates, borrowed)


def inverse(c):
    total = len(c.gates)
    return Circuit(
        c.layout,
        tuple(g.inverse() for g in reversed(c.gates)),
        tuple(BorrowRecord(total - r.stop, total - r.start, r.qubits) for r in reversed(c.borrowed)),
    )


def controlled_gates(gate, control, polarity=1):
    if control in gate.qubits:
        raise LayoutError(f"control qubit {control} already used by {gate}")
    if gate.kind is GateKind.SWAP:
        a, b = gate.targets
        base = gate.controls
        pol = gate.polarity
        return [
            x_gate(b, base + (control, a), pol + (polarity, 1)),
            x_gate(a, base + (control, b), pol + (polarity, 1)),
            x_gate(b, base + (control, a), pol + (polarity, 1)),
        ]
    return [gate.with_controls((control,), (polarity,))]


def controlled(c, control, polarity=1):
    """Condition every gate of ``c`` on ``control`` being ``polarity``."""
    if not 0 <= control < c.width:
        raise LayoutError(f"control qubit {control} outside layout {c.layout}")
    gates = []
    index_map = {}
    for index, gate in enumerate(c.gates):
        index_map[index] = len(gates)
        gates.extend(controlled_gates(gate, control, polarity))
    index_map[len(c.gates)] = len(gates)
    borrowed = tuple(
        BorrowRecord(index_map[r.start], index_map[r.stop], r.qubits) for r in c.borrowed
    )
    return Circuit(c.layout, tuple(gates), borrowed)


@dataclass(frozen=True)
class GateCostReport:
    """
    Elementary gate counts of a fully lowered circuit.

    Qubit tallies are peak usage, so ``combine`` takes their maximum while
    gate counts add.
    """

    not_gates: int = 0
    cnot: int = 0
    toffoli: int = 0
    h: int = 0
    ry: int = 0
    swap: int = 0
    cz: int = 0
    z: int = 0
    ancilla_count: int = 0
    work_count: int = 0
    borrowed_count: int = 0

    GATE_FIELDS = ("not_gates", "cnot", "toffoli", "h", "ry", "swap", "cz", "z")
    QUBIT_FIELDS = ("ancilla_count", "work_count", "borrowed_count")

    @property
    def total_elementary(self):
        return sum(getattr(self, name) for name in self.GATE_FIELDS)

    def combine(self, other):
        values = {name: getattr(self, name) + getattr(other, name) for name in self.GATE_FIELDS}
        values.update({name: max(getattr(self, name), getattr(other, name)) for name in self.QUBIT_FIELDS})
        return GateCostReport(**values)

    def as_dict(self):
        data = {name: getattr(self, name) for name in self.GATE_FIELDS + self.QUBIT_FIELDS}
        data["total_elementary"] = self.total_elementary
        return data


KIND_TO_FIELD = {
    GateKind.NOT: "not_gates",
    GateKind.CNOT: "cnot",
    GateKind.TOFFOLI: "toffoli",
    GateKind.H: "h",
    GateKind.RY: "ry",
    GateKind.SWAP: "swap",
    GateKind.CZ: "cz",
    GateKind.Z: "z",
}
