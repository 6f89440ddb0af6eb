"""OpenQASM 3 text for lowered circuits, restricted to x, h, z, cx, cz, ccx, ry and swap."""

import logging

from lark import Lark
from lark.exceptions import LarkError

from .circuit import Circuit, Gate, GateKind, RegisterLayout
from .exceptions import LayoutError, LoweringError

logger = logging.getLogger(__name__)

GRAMMAR = r"""
start: header include? qubit_decl statement*

header: "OPENQASM" VERSION ";"
include: "include" ESCAPED_STRING ";"
qubit_decl: "qubit" "[" INT "]" CNAME ";"
statement: CNAME params? qarg ("," qarg)* ";"
params: "(" SIGNED_NUMBER ")"
qarg: CNAME "[" INT "]"

VERSION: /\d+(\.\d+)?/

%import common.CNAME
%import common.INT
%import common.SIGNED_NUMBER
%import common.ESCAPED_STRING
%import common.CPP_COMMENT
%import common.WS
%ignore WS
%ignore CPP_COMMENT
"""

_PARSER = Lark(GRAMMAR, parser="lalr")

# Kind -> (qasm name, number of controls).
_NAMES = {
    GateKind.NOT: ("x", 0),
    GateKind.CNOT: ("cx", 1),
    GateKind.TOFFOLI: ("ccx", 2),
    GateKind.H: ("h", 0),
    GateKind.Z: ("z", 0),
    GateKind.CZ: ("cz", 1),
    GateKind.RY: ("ry", 0),
    GateKind.SWAP: ("swap", 0),
}
_KINDS = {name: (kind, controls) for kind, (name, controls) in _NAMES.items()}


def to_qasm(circuit, register="q"):
    """Controls are listed before targets, as in stdgates.inc."""
    if not circuit.is_elementary:
        bad = next(g for g in circuit.gates if not g.is_elementary)
        raise LoweringError(f"QASM export needs a lowered circuit, found {bad}")
    lines = [
        "OPENQASM 3.0;",
        'include "stdgates.inc";',
        f"// layout: {circuit.layout}",
        f"qubit[{circuit.width}] {register};",
    ]
    for gate in circuit.gates:
        name, _ = _NAMES[gate.kind]
        args = ", ".join(f"{register}[{q}]" for q in gate.controls + gate.targets)
        if gate.kind is GateKind.RY:
            name = f"ry({gate.angle:.17g})"
        lines.append(f"{name} {args};")
    return "\n".join(lines) + "\n"


def from_qasm(text, layout=None):
    """
    Parse text written by ``to_qasm``.

    Register names are not part of the format, so the caller may pass the
    layout to restore; otherwise the qubits come back as one ``q`` register.
    """
    try:
        tree = _PARSER.parse(text)
    except LarkError as e:
        raise LayoutError(f"cannot parse QASM: {e}") from e

    decl = next(child for child in tree.children if child.data == "qubit_decl")
    width, register = int(decl.children[0]), str(decl.children[1])
    if layout is None:
        layout = RegisterLayout.single(register, width)
    elif layout.width != width:
        raise LayoutError(f"QASM declares {width} qubits, layout {layout} has {layout.width}")

    gates = []
    for statement in (child for child in tree.children if child.data == "statement"):
        name, *rest = statement.children
        if str(name) not in _KINDS:
            raise LayoutError(f"unsupported QASM gate '{name}'")
        kind, num_controls = _KINDS[str(name)]
        params = ()
        qubits = []
        for item in rest:
            if item.data == "params":
                params = (float(item.children[0]),)
                continue
            reg, index = item.children
            if str(reg) != register:
                raise LayoutError(f"unknown register '{reg}'")
            qubits.append(int(index))
        gates.append(Gate(kind, tuple(qubits[num_controls:]), tuple(qubits[:num_controls]), params=params))
    logger.debug(f"Parsed {len(gates)} QASM gates on {width} qubits")
    return Circuit(layout, tuple(gates))
