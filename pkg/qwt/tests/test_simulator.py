import numpy as np
from django.test import SimpleTestCase, override_settings

from qwt.circuit import Circuit, Gate, GateKind, RegisterLayout, add_gate, z_gate
from qwt.exceptions import DegenerateProjectionError, WidthError
from qwt.simulator import (
    StateVector,
    apply,
    fidelity_up_to_phase,
    format_state,
    lift,
    project_zero,
    register_amplitudes,
    unitary_of,
)


class StateVectorTest(SimpleTestCase):
    def test_length_must_be_power_of_two(self):
        with self.assertRaises(WidthError):
            StateVector(np.ones(3))

    def test_embed_stacks_registers_from_lsb(self):
        layout = RegisterLayout.qwt(1, 2)
        state = StateVector.embed(layout, {'sys': 2, 'par': 1})
        self.assertEqual(np.flatnonzero(state.amplitudes).tolist(), [2 + 8])

    def test_embed_checks_register_width(self):
        with self.assertRaises(WidthError):
            StateVector.embed(RegisterLayout.qwt(1, 2), {'sys': np.ones(2)})

    def test_lift_and_read_back(self):
        layout = RegisterLayout.qwt(2, 3)
        psi = np.arange(8) / np.linalg.norm(np.arange(8))
        state = lift(layout, 'sys', psi)
        np.testing.assert_array_equal(register_amplitudes(state, layout, 'sys'), psi)


class GateActionTest(SimpleTestCase):
    def run_basis(self, layout, gates, index):
        return apply(Circuit(layout, tuple(gates)), StateVector.basis(layout.width, index))

    def test_shuffle_rotates_bits(self):
        layout = RegisterLayout.single('q', 3)
        out = self.run_basis(layout, [Gate(GateKind.SHUFFLE, (0, 1, 2))], 3)
        np.testing.assert_array_equal(out.amplitudes, StateVector.basis(3, 5).amplitudes)

    def test_adder_and_subtractor(self):
        layout = RegisterLayout.single('q', 5)
        a, b = (3, 4), (0, 1, 2)
        # a = 1, b = 5
        start = 5 | (1 << 3)
        out = self.run_basis(layout, [add_gate(a, b)], start)
        self.assertEqual(np.flatnonzero(out.amplitudes).tolist(), [6 | (1 << 3)])
        out = self.run_basis(layout, [add_gate(a, b, subtract=True)], 0 | (3 << 3))
        self.assertEqual(np.flatnonzero(out.amplitudes).tolist(), [5 | (3 << 3)])

    def test_zero_polarity_control(self):
        layout = RegisterLayout.single('q', 2)
        gate = z_gate(1, (0,), (0,))
        self.assertEqual(self.run_basis(layout, [gate], 2).amplitudes[2], -1)
        self.assertEqual(self.run_basis(layout, [gate], 3).amplitudes[3], 1)

    def test_width_mismatch(self):
        with self.assertRaises(WidthError):
            apply(Circuit(RegisterLayout.single('q', 2)), StateVector.zero(3))

    def test_batch_columns_are_independent(self):
        layout = RegisterLayout.single('q', 2)
        circuit = Circuit(layout, (Gate(GateKind.INC, (0, 1)),))
        np.testing.assert_array_equal(unitary_of(circuit), np.roll(np.eye(4), 1, axis=0))


class MeasurementTest(SimpleTestCase):
    def test_project_zero(self):
        state = StateVector(np.array([0.6, 0.8, 0, 0]))
        probability, projected = project_zero(state, [0])
        self.assertAlmostEqual(float(probability), 0.36)
        np.testing.assert_allclose(projected.amplitudes, [1, 0, 0, 0])

    def test_degenerate_projection(self):
        with self.assertRaises(DegenerateProjectionError):
            project_zero(StateVector.basis(2, 3), [0, 1])

    def test_fidelity_ignores_global_phase(self):
        psi = np.array([0.6, 0.8j])
        self.assertAlmostEqual(float(fidelity_up_to_phase(1j * psi, psi)), 1.0)

    def test_format_state(self):
        self.assertEqual(format_state(StateVector.zero(1)), '1 0\n0 0\n')

    @override_settings(QWT={'MAX_UNITARY_QUBITS': 2})
    def test_unitary_extraction_capped(self):
        with self.assertRaises(WidthError):
            unitary_of(Circuit(RegisterLayout.single('q', 3)))
