import math

import numpy as np
from django.test import SimpleTestCase

from qwt.builders import (
    build,
    build_controlled_single_qwt,
    build_linprep,
    build_multilevel_qwt,
    build_packet_qwt,
    build_pqwt,
    build_select,
    build_single_qwt,
    plan,
)
from qwt.circuit import GateKind, inverse
from qwt.exceptions import DepthError, DimensionError
from qwt.filters import get_filter
from qwt.reference import build_kernel, multilevel_matrix, packet_matrix
from qwt.simulator import StateVector, apply, lift, register_amplitudes
from qwt.verification import random_states


def basis(size, index):
    e = np.zeros(size)
    e[index] = 1.0
    return e


def transform(circuit, psi):
    out = apply(circuit, lift(circuit.layout, 'sys', psi))
    return register_amplitudes(out, circuit.layout, 'sys')


class PlanTest(SimpleTestCase):
    def test_bad_variant_and_style(self):
        haar = get_filter('haar')
        with self.assertRaises(ValueError):
            plan(haar, 3, variant='wavelet')
        with self.assertRaises(ValueError):
            plan(haar, 3, prep_style='cubic')

    def test_single_level_has_depth_one(self):
        with self.assertRaises(DepthError):
            plan(get_filter('haar'), 3, 2)

    def test_dimension_and_depth_limits(self):
        db2 = get_filter('db2')
        with self.assertRaises(DimensionError):
            plan(db2, 1)
        with self.assertRaises(DepthError):
            plan(db2, 3, 3, variant='multilevel')
        plan(db2, 3, 2, variant='multilevel')

    def test_haar_schedule(self):
        p = plan(get_filter('haar'), 3)
        self.assertEqual(p.rounds, 1)
        self.assertAlmostEqual(p.diluted_amplitude, 0.5)
        self.assertEqual(str(p), 'single QWT haar n=3 d=1 prep=sqrt t=1')

    def test_aux_only_for_deep_multilevel(self):
        haar = get_filter('haar')
        self.assertFalse(plan(haar, 3, 2, variant='multilevel').needs_aux)
        self.assertTrue(plan(haar, 3, 3, variant='multilevel').needs_aux)
        self.assertFalse(plan(haar, 3, 3, variant='packet').needs_aux)
        self.assertIn('aux', plan(haar, 3, 3, variant='multilevel').layout())


class SelectTest(SimpleTestCase):
    def select(self, index, j):
        circuit = build_select(get_filter('db2'), 3)
        out = apply(circuit, StateVector.embed(circuit.layout, {'sys': j, 'anc': index}))
        return circuit.layout, out.amplitudes

    def test_even_index_picks_up_sign(self):
        layout, out = self.select(0, 5)
        expected = StateVector.embed(layout, {'sys': 6, 'anc': 0}).amplitudes
        np.testing.assert_allclose(out, -expected)

    def test_odd_index(self):
        layout, out = self.select(1, 5)
        np.testing.assert_allclose(out, StateVector.embed(layout, {'sys': 2, 'anc': 1}).amplitudes)

    def test_gate_order(self):
        kinds = [g.kind for g in build_select(get_filter('db2'), 3).gates]
        self.assertEqual(kinds, [
            GateKind.CNOT, GateKind.CNOT, GateKind.SUB, GateKind.ADD,
            GateKind.SHUFFLE, GateKind.CNOT, GateKind.CZ,
        ])


class SingleLevelTest(SimpleTestCase):
    def test_pqwt_success_amplitude(self):
        p = plan(get_filter('db2'), 4)
        psi = random_states(4, count=4)
        out = transform(build_pqwt(p), psi)
        np.testing.assert_allclose(out, p.sin_alpha * build_kernel(p.filter, 4) @ psi, atol=1e-12)

    def test_amplified_transform_is_exact(self):
        for name, n, style in (('haar', 3, 'sqrt'), ('db2', 4, 'sqrt'), ('db2', 4, 'linear'), ('db3', 4, 'sqrt')):
            with self.subTest(name=name, n=n, style=style):
                p = plan(get_filter(name), n, prep_style=style)
                psi = random_states(n, count=6)
                out = transform(build_single_qwt(p), psi)
                np.testing.assert_allclose(out, build_kernel(p.filter, n) @ psi, atol=1e-9)

    def test_hoisted_shift_gives_same_transform(self):
        f = get_filter('db2')
        psi = random_states(4, count=4)
        plain = transform(build_single_qwt(plan(f, 4)), psi)
        hoisted = build_single_qwt(plan(f, 4, hoist_shift=True))
        self.assertEqual(sum(g.kind is GateKind.CONST_ADD for g in hoisted.gates), 1)
        np.testing.assert_allclose(transform(hoisted, psi), plain, atol=1e-9)

    def test_inverse_undoes_transform(self):
        p = plan(get_filter('db2'), 3)
        circuit = build_single_qwt(p)
        state = lift(circuit.layout, 'sys', random_states(3, count=3))
        back = apply(inverse(circuit), apply(circuit, state))
        np.testing.assert_allclose(back.amplitudes, state.amplitudes, atol=1e-9)

    def test_controlled_transform_idles_when_aux_clear(self):
        circuit = build_controlled_single_qwt(plan(get_filter('haar'), 2))
        psi = random_states(2, count=2)
        np.testing.assert_allclose(transform(circuit, psi), psi, atol=1e-12)

    def test_linprep_loads_coefficients(self):
        f = get_filter('db2')
        circuit = build_linprep(f, expanded=True)
        out = apply(circuit, StateVector.zero(circuit.width)).amplitudes
        np.testing.assert_allclose(out, f.as_array(), atol=1e-10)


class MultiLevelTest(SimpleTestCase):
    def test_full_depth_haar_on_constant(self):
        p = plan(get_filter('haar'), 3, 3, variant='multilevel')
        out = transform(build_multilevel_qwt(p), np.full(8, 1 / math.sqrt(8)))
        np.testing.assert_allclose(out, basis(8, 0), atol=1e-9)

    def test_packet_haar_on_basis_state(self):
        p = plan(get_filter('haar'), 2, 2, variant='packet')
        out = transform(build_packet_qwt(p), basis(4, 0))
        np.testing.assert_allclose(out, np.full(4, 0.5), atol=1e-9)

    def test_against_reference_matrices(self):
        cases = (
            ('multilevel', 'db2', 4, 2, multilevel_matrix),
            ('multilevel', 'haar', 4, 3, multilevel_matrix),
            ('packet', 'db2', 4, 2, packet_matrix),
            ('packet', 'haar', 3, 3, packet_matrix),
        )
        for variant, name, n, d, reference in cases:
            with self.subTest(variant=variant, name=name, n=n, d=d):
                p = plan(get_filter(name), n, d, variant=variant)
                psi = random_states(n, count=4)
                np.testing.assert_allclose(transform(build(p), psi), reference(p.filter, n, d) @ psi, atol=1e-9)

    def test_layout_width(self):
        p = plan(get_filter('db2'), 4, 3, variant='multilevel')
        self.assertEqual(build(p).width, 4 + 1 + 2 + 1)
