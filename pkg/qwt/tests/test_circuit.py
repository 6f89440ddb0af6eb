import numpy as np
from django.test import SimpleTestCase

from qwt.circuit import (
    BorrowRecord,
    Circuit,
    Gate,
    GateCostReport,
    GateKind,
    Register,
    RegisterLayout,
    add_gate,
    compose,
    const_add_gate,
    controlled,
    h_gate,
    inverse,
    ry_gate,
    swap_gate,
    x_gate,
)
from qwt.exceptions import LayoutError
from qwt.simulator import unitary_of


class GateTest(SimpleTestCase):
    def test_repeated_qubit_rejected(self):
        with self.assertRaises(LayoutError):
            Gate(GateKind.CNOT, (1,), (1,))

    def test_polarity_defaults_to_ones(self):
        self.assertEqual(x_gate(0, (1, 2)).polarity, (1, 1))

    def test_polarity_length_checked(self):
        with self.assertRaises(LayoutError):
            Gate(GateKind.CNOT, (0,), (1,), (1, 0))

    def test_adding_controls_promotes_x_kind(self):
        gate = x_gate(0)
        gate = gate.with_controls((1,))
        self.assertIs(gate.kind, GateKind.CNOT)
        gate = gate.with_controls((2,), (0,))
        self.assertIs(gate.kind, GateKind.TOFFOLI)
        self.assertEqual(gate.polarity, (1, 0))
        self.assertFalse(gate.is_elementary)
        self.assertIs(gate.with_controls((3,)).kind, GateKind.MCX)

    def test_inverses(self):
        self.assertIs(add_gate((3,), (0, 1, 2)).inverse().kind, GateKind.SUB)
        self.assertEqual(ry_gate(0, 0.25).inverse().angle, -0.25)
        self.assertEqual(const_add_gate((0, 1, 2), 1).inverse().params, (7,))
        shuffle = Gate(GateKind.SHUFFLE, (0, 1, 2))
        self.assertTrue(shuffle.inverse().dagger)
        self.assertEqual(shuffle.inverse().inverse(), shuffle)

    def test_const_add_reduced_mod_width(self):
        self.assertEqual(const_add_gate((0, 1), -1).params, (3,))


class LayoutTest(SimpleTestCase):
    def test_transform_layout(self):
        layout = RegisterLayout.qwt(2, 3)
        self.assertEqual(layout['sys'], (0, 1, 2))
        self.assertEqual(layout['anc'], (3, 4))
        self.assertEqual(layout['par'], (5,))
        self.assertEqual(layout.count('ancilla'), 3)
        self.assertEqual(str(layout), 'par[1] | anc[2] | sys[3]')

    def test_aux_sits_below_anc(self):
        layout = RegisterLayout.qwt(2, 3, aux=True)
        self.assertEqual(layout['aux'], (3,))
        self.assertEqual(layout['par'], (6,))
        self.assertEqual(layout.count('ancilla'), 4)

    def test_duplicate_register_names(self):
        with self.assertRaises(LayoutError):
            RegisterLayout((Register('q', 2), Register('q', 1)))

    def test_unknown_register(self):
        with self.assertRaises(LayoutError):
            RegisterLayout.qwt(1, 2)['work']

    def test_only_top_register_resizes(self):
        layout = RegisterLayout.qwt(1, 2)
        self.assertEqual(layout.resized('par', 3).width, 6)
        with self.assertRaises(LayoutError):
            layout.resized('sys', 4)


class CircuitTest(SimpleTestCase):
    def setUp(self):
        self.layout = RegisterLayout.single('q', 3)
        self.circuit = Circuit(self.layout, (
            h_gate(0),
            ry_gate(1, 0.3, controls=(0,)),
            Gate(GateKind.SHUFFLE, (0, 1, 2)),
            const_add_gate((1, 2), 1, controls=(0,), polarity=(0,)),
        ))

    def test_gate_outside_layout(self):
        with self.assertRaises(LayoutError):
            Circuit(self.layout, (x_gate(3),))

    def test_circuit_then_inverse_is_identity(self):
        u = unitary_of(compose(self.circuit, inverse(self.circuit)))
        np.testing.assert_allclose(u, np.eye(8), atol=1e-12)

    def test_inverse_mirrors_borrow_spans(self):
        c = Circuit(self.layout, (x_gate(0),) * 4, (BorrowRecord(1, 3, (2,)),))
        self.assertEqual(inverse(c).borrowed, (BorrowRecord(1, 3, (2,)),))
        c = Circuit(self.layout, (x_gate(0),) * 4, (BorrowRecord(0, 1, (2,)),))
        self.assertEqual(inverse(c).borrowed, (BorrowRecord(3, 4, (2,)),))

    def test_compose_on_wider_layout(self):
        wide = self.layout.with_register('work', 1, 'work')
        other = Circuit(wide, (x_gate(3),))
        self.assertEqual(compose(self.circuit, other).layout, wide)

    def test_controlled_swap_becomes_three_toffolis(self):
        c = controlled(Circuit(self.layout, (swap_gate(0, 1),)), 2)
        self.assertEqual([g.kind for g in c.gates], [GateKind.TOFFOLI] * 3)

    def test_controlled_circuit_acts_only_when_control_set(self):
        c = controlled(self.circuit.on(self.layout.with_register('c', 1)), 3)
        u = unitary_of(c)
        np.testing.assert_allclose(u[:8, :8], np.eye(8), atol=1e-12)
        np.testing.assert_allclose(u[8:, 8:], unitary_of(self.circuit), atol=1e-12)


class GateCostReportTest(SimpleTestCase):
    def test_combine_adds_gates_and_keeps_peak_qubits(self):
        a = GateCostReport(cnot=3, toffoli=1, work_count=2)
        b = GateCostReport(cnot=1, h=2, work_count=1, borrowed_count=4)
        total = a.combine(b)
        self.assertEqual(total.cnot, 4)
        self.assertEqual(total.total_elementary, 7)
        self.assertEqual(total.work_count, 2)
        self.assertEqual(total.borrowed_count, 4)
        self.assertEqual(total.as_dict()['total_elementary'], 7)
