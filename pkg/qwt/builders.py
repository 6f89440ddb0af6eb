"""
Quantum wavelet transform circuits.

Every builder works on explicit qubit lists so the same gate sequences can
be placed on a sub-register, which is how the multilevel and packet
transforms reuse the single-level one.
"""

import logging
import math
from dataclasses import dataclass, replace

from .circuit import (
    Circuit,
    Gate,
    GateKind,
    RegisterLayout,
    add_gate,
    const_add_gate,
    controlled,
    h_gate,
    reflect_gate,
    ry_gate,
    x_gate,
    z_gate,
)
from .exceptions import DepthError, DimensionError
from .filters import amplification_schedule, success_amplitude
from .macros import linprep_gates

logger = logging.getLogger(__name__)

VARIANTS = ("single", "multilevel", "packet")
PREP_STYLES = ("sqrt", "linear")


@dataclass(frozen=True)
class QwtPlan:
    filter: object
    n: int
    d: int
    variant: str
    prep_style: str
    alpha: float
    rounds: int
    theta: float
    hoist_shift: bool = False

    def __str__(self):
        return (
            f"{self.variant} QWT {self.filter.name} n={self.n} d={self.d} "
            f"prep={self.prep_style} t={self.rounds}"
        )

    @property
    def m(self):
        return self.filter.ancilla_width

    @property
    def sin_alpha(self):
        return math.sin(self.alpha)

    @property
    def diluted_amplitude(self):
        return math.sin(self.alpha) * math.cos(self.theta)

    @property
    def needs_aux(self):
        return self.variant == "multilevel" and self.d >= 3

    def layout(self):
        return RegisterLayout.qwt(self.m, self.n, aux=self.needs_aux)

    def at_width(self, n):
        """Single-level plan with the same schedule on ``n`` system qubits."""
        return replace(self, n=n, d=1, variant="single")


def plan(f, n, d=1, variant="single", prep_style="sqrt", rounds=None, hoist_shift=False):
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {', '.join(VARIANTS)}, got '{variant}'")
    if prep_style not in PREP_STYLES:
        raise ValueError(f"prep style must be one of {', '.join(PREP_STYLES)}, got '{prep_style}'")
    if variant == "single" and d != 1:
        raise DepthError(f"a single-level transform has d = 1, got d={d}")
    if n < 1 or 2 ** n < f.order:
        raise DimensionError(f"2^n = {2 ** max(n, 0)} is smaller than the filter order {f.order}")
    if d < 1 or n - d + 1 < 1 or 2 ** (n - d + 1) < f.order:
        raise DepthError(
            f"level {d} acts on {n - d + 1} qubits, too few for a filter of order {f.order}"
        )
    schedule = amplification_schedule(success_amplitude(f, prep_style), rounds)
    return QwtPlan(
        filter=f,
        n=n,
        d=d,
        variant=variant,
        prep_style=prep_style,
        alpha=schedule.alpha,
        rounds=schedule.rounds,
        theta=schedule.theta,
        hoist_shift=hoist_shift,
    )


def select_gates(par, anc, sys):
    """
    Apply U_l to ``sys`` for the coefficient index l held in ``anc``.

    The parity qubit records whether j - l is odd, picks SUB or ADD, and is
    erased by the output MSB after the shuffle. The even-l sign goes last,
    on the output MSB.
    """
    anc, sys = tuple(anc), tuple(sys)
    return [
        x_gate(par, (anc[0],)),
        x_gate(par, (sys[0],)),
        add_gate(anc, sys, controls=(par,), polarity=(0,), subtract=True),
        add_gate(anc, sys, controls=(par,), polarity=(1,)),
        Gate(GateKind.SHUFFLE, sys),
        x_gate(par, (sys[-1],)),
        z_gate(sys[-1], (anc[0],), (0,)),
    ]


def ushift_gates(f, sys):
    """Move the high-pass rows back up by K-1, controlled by the sys MSB."""
    if f.index == 1 or len(sys) < 2:
        return []
    lower = tuple(sys[:-1])
    return [const_add_gate(lower, -(f.index - 1), controls=(sys[-1],))]


def prep_gates(plan, anc):
    coeffs = plan.filter.coeffs
    if plan.prep_style == "sqrt":
        return [Gate(GateKind.PREP, tuple(anc), params=coeffs)]
    return [Gate(GateKind.LINPREP, tuple(anc), params=coeffs)]


def unprep_gates(plan, anc):
    if plan.prep_style == "sqrt":
        return [Gate(GateKind.UNPREP, tuple(anc), params=plan.filter.coeffs)]
    return [h_gate(q) for q in anc]


def pqwt_gates(plan, par, anc, sys, with_shift=True):
    gates = prep_gates(plan, anc) + select_gates(par, anc, sys) + unprep_gates(plan, anc)
    if with_shift:
        gates += ushift_gates(plan.filter, sys)
    return gates


def single_qwt_gates(plan, par, anc, sys, rounds=None):
    """
    PQWT, a dilution rotation on par, then ``rounds`` oblivious amplification
    steps. Each step reflects about the ancilla-zero subspace, undoes the
    diluted PQWT, reflects again, redoes it and flips the global sign so the
    block carries no stray phase.
    """
    rounds = plan.rounds if rounds is None else rounds
    hoist = plan.hoist_shift
    forward = pqwt_gates(plan, par, anc, sys, with_shift=not hoist)
    backward = [g.inverse() for g in reversed(forward)]
    flags = (par,) + tuple(anc)
    dilute = ry_gate(par, 2 * plan.theta)
    undilute = ry_gate(par, -2 * plan.theta)

    gates = forward + [dilute]
    for _ in range(rounds):
        gates += [reflect_gate(flags), undilute] + backward
        gates += [reflect_gate(flags)] + forward + [dilute, ry_gate(par, 2 * math.pi)]
    if hoist:
        gates += ushift_gates(plan.filter, sys)
    return gates


def _registers(layout):
    return layout["par"][0], layout["anc"], layout["sys"]


def build_select(f, n):
    layout = RegisterLayout.qwt(f.ancilla_width, n)
    if 2 ** n < f.order:
        raise DimensionError(f"2^n = {2 ** n} is smaller than the filter order {f.order}")
    return Circuit(layout, tuple(select_gates(*_registers(layout))))


def build_prep(f):
    layout = RegisterLayout.single("anc", f.ancilla_width, "ancilla")
    return Circuit(layout, (Gate(GateKind.PREP, layout["anc"], params=f.coeffs),))


def build_unprep(f):
    layout = RegisterLayout.single("anc", f.ancilla_width, "ancilla")
    return Circuit(layout, (Gate(GateKind.UNPREP, layout["anc"], params=f.coeffs),))


def build_linprep(f, expanded=False):
    """LINPREP as one macro gate, or as its NOT / rotation / increment sequence."""
    layout = RegisterLayout.single("anc", f.ancilla_width, "ancilla")
    if expanded:
        return Circuit(layout, tuple(linprep_gates(f.coeffs, layout["anc"])))
    return Circuit(layout, (Gate(GateKind.LINPREP, layout["anc"], params=f.coeffs),))


def build_pqwt(plan):
    layout = RegisterLayout.qwt(plan.m, plan.n)
    return Circuit(layout, tuple(pqwt_gates(plan, *_registers(layout))))


def build_single_qwt(plan, rounds=None):
    layout = RegisterLayout.qwt(plan.m, plan.n)
    circuit = Circuit(layout, tuple(single_qwt_gates(plan, *_registers(layout), rounds=rounds)))
    logger.info(f"Built {plan}: {len(circuit)} gates on {layout}")
    return circuit


def build_controlled_single_qwt(plan, polarity=1):
    """Single-level QWT conditioned on the ``aux`` qubit."""
    layout = RegisterLayout.qwt(plan.m, plan.n, aux=True)
    body = Circuit(layout, tuple(single_qwt_gates(plan, *_registers(layout))))
    return controlled(body, layout["aux"][0], polarity)


def multilevel_gates(plan, layout):
    par, anc, sys = _registers(layout)
    n = plan.n
    gates = single_qwt_gates(plan.at_width(n), par, anc, sys)
    for s in range(1, plan.d):
        gates.append(x_gate(sys[n - s]))
        body = Circuit(layout, tuple(single_qwt_gates(plan.at_width(n - s), par, anc, sys[:n - s])))
        if s == 1:
            gates += controlled(body, sys[n - 1]).gates
            continue
        aux = layout["aux"][0]
        collapse = x_gate(aux, tuple(sys[n - 1:n - s - 1:-1]))
        gates += [collapse] + list(controlled(body, aux).gates) + [collapse]
    gates += [x_gate(sys[n - s]) for s in range(1, plan.d)]
    return gates


def build_multilevel_qwt(plan):
    """
    Level s applies W_{n-s} to the low n-s qubits when the top s sys qubits
    are all zero. Zero-controls are turned into one-controls by flipping
    each top qubit once when its level starts and once at the very end.
    """
    if plan.variant != "multilevel" and plan.d != 1:
        raise DepthError(f"plan is for a {plan.variant} transform")
    layout = plan.layout()
    circuit = Circuit(layout, tuple(multilevel_gates(plan, layout)))
    logger.info(f"Built {plan}: {len(circuit)} gates on {layout}")
    return circuit


def build_packet_qwt(plan):
    layout = RegisterLayout.qwt(plan.m, plan.n)
    par, anc, sys = _registers(layout)
    gates = []
    for s in range(plan.d):
        gates += single_qwt_gates(plan.at_width(plan.n - s), par, anc, sys[:plan.n - s])
    circuit = Circuit(layout, tuple(gates))
    logger.info(f"Built {plan}: {len(circuit)} gates on {layout}")
    return circuit


def build(plan):
    if plan.variant == "multilevel":
        return build_multilevel_qwt(plan)
    if plan.variant == "packet":
        return build_packet_qwt(plan)
    return build_single_qwt(plan)
