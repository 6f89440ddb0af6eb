import math
from pathlib import Path

import numpy as np
from django.test import SimpleTestCase, override_settings

from qwt.exceptions import DepthError, FactorizationError, FilterValidationError, UnknownFilterError
from qwt.filters import (
    BUILTIN_NAMES,
    WaveletFilter,
    amplification_schedule,
    available_filters,
    extract_rotation_angles,
    get_filter,
    load_filter_file,
    one_norm,
    padded_coefficients,
    reconstruct_from_angles,
    success_amplitude,
    validate_filter,
)

DATA = Path(__file__).resolve().parent / 'data'


class FilterRegistryTest(SimpleTestCase):
    def test_builtin_filters_are_orthogonal_wavelets(self):
        for name in BUILTIN_NAMES:
            with self.subTest(name=name):
                report = validate_filter(get_filter(name).coeffs)
                self.assertTrue(report.passed, report.summary())

    def test_haar_is_an_alias_for_db1(self):
        self.assertEqual(get_filter('haar').coeffs, get_filter('db1').coeffs)
        self.assertEqual(get_filter('haar').name, 'haar')

    def test_unknown_filter(self):
        with self.assertRaises(UnknownFilterError) as ctx:
            get_filter('sym4')
        self.assertIn('haar', ctx.exception.available)

    def test_ancilla_width(self):
        widths = {'haar': 1, 'db2': 2, 'db3': 3, 'db4': 3, 'db5': 4, 'db10': 5}
        for name, m in widths.items():
            self.assertEqual(get_filter(name).ancilla_width, m)

    def test_odd_length_rejected(self):
        with self.assertRaises(ValueError):
            WaveletFilter(name='odd', coeffs=(0.5, 0.5, 0.5))

    def test_highpass_of_haar(self):
        g = get_filter('haar').highpass()
        np.testing.assert_allclose(g, [1 / math.sqrt(2), -1 / math.sqrt(2)])


class FilterFileTest(SimpleTestCase):
    def test_load_valid_file(self):
        f = load_filter_file(DATA / 'haar.txt')
        self.assertEqual(f.name, 'haar')
        self.assertEqual(f.order, 2)

    def test_invalid_file_reports_residuals(self):
        with self.assertRaises(FilterValidationError) as ctx:
            load_filter_file(DATA / 'bad.txt')
        report = ctx.exception.report
        self.assertFalse(report.passed)
        self.assertGreater(report.sum_residual, 0.5)
        self.assertIn('sqrt(2)', str(ctx.exception))

    def test_validation_never_raises(self):
        report = validate_filter([])
        self.assertFalse(report.passed)
        self.assertEqual(report.max_residual, math.inf)

    @override_settings(QWT={'REGISTRY_PATH': str(DATA)})
    def test_registry_path_adds_filters(self):
        self.assertIn('haar', available_filters())
        self.assertIn('bad', available_filters())
        with self.assertRaises(FilterValidationError):
            get_filter('bad')


class SuccessAmplitudeTest(SimpleTestCase):
    def test_inverse_one_norm(self):
        self.assertAlmostEqual(1 / one_norm(get_filter('haar')), 0.70710678, places=8)
        self.assertAlmostEqual(1 / one_norm(get_filter('db2')), 0.5977, places=4)

    def test_every_builtin_beats_lower_bound(self):
        for name in BUILTIN_NAMES:
            self.assertGreater(success_amplitude(get_filter(name)), 0.31)

    def test_linear_style_amplitude(self):
        self.assertEqual(success_amplitude(get_filter('db2'), 'linear'), 0.5)
        self.assertAlmostEqual(success_amplitude(get_filter('db3'), 'linear'), 2 ** -1.5)

    def test_unknown_style(self):
        with self.assertRaises(ValueError):
            success_amplitude(get_filter('haar'), 'cubic')


class AmplificationScheduleTest(SimpleTestCase):
    def test_haar_needs_one_round(self):
        schedule = amplification_schedule(1 / math.sqrt(2))
        self.assertEqual(schedule.rounds, 1)
        self.assertAlmostEqual(schedule.diluted_amplitude, 0.5)

    def test_certain_success_needs_no_rounds(self):
        schedule = amplification_schedule(1.0)
        self.assertEqual(schedule.rounds, 0)
        self.assertAlmostEqual(schedule.theta, 0.0)

    def test_diluted_amplitude_hits_exact_target(self):
        for name in ('db2', 'db4', 'db8'):
            schedule = amplification_schedule(success_amplitude(get_filter(name)))
            target = math.sin(math.pi / (2 * (2 * schedule.rounds + 1)))
            self.assertAlmostEqual(schedule.diluted_amplitude, target, places=12)

    def test_too_few_rounds(self):
        with self.assertRaises(DepthError):
            amplification_schedule(0.1, rounds=0)

    def test_extra_rounds_allowed(self):
        self.assertEqual(amplification_schedule(0.6, rounds=3).rounds, 3)


class RotationCascadeTest(SimpleTestCase):
    def test_cascade_reconstructs_padded_filter(self):
        for name in ('haar', 'db2', 'db3', 'db4', 'db6'):
            with self.subTest(name=name):
                f = get_filter(name)
                cascade = extract_rotation_angles(f)
                self.assertEqual(len(cascade.angles), f.index)
                np.testing.assert_allclose(
                    reconstruct_from_angles(cascade), padded_coefficients(f), atol=1e-10
                )

    def test_haar_angle(self):
        cascade = extract_rotation_angles(get_filter('haar'))
        self.assertAlmostEqual(cascade.angles[0], math.pi / 4)

    def test_angles_stay_in_half_open_range(self):
        for name in ('haar', 'db2', 'db3', 'db4', 'db6'):
            with self.subTest(name=name):
                angles = extract_rotation_angles(get_filter(name)).angles
                self.assertTrue(all(-math.pi < theta <= math.pi for theta in angles))
        cascade = extract_rotation_angles(WaveletFilter('flipped', (-0.0, -1.0)))
        self.assertEqual(cascade.angles[0], math.pi)

    def test_generic_vectors_do_not_factor(self):
        rng = np.random.default_rng(11)
        for length in (4, 6, 8):
            with self.subTest(length=length):
                vector = rng.normal(size=length)
                f = WaveletFilter(f'random{length}', tuple(vector / np.linalg.norm(vector)))
                with self.assertRaises(FactorizationError) as ctx:
                    extract_rotation_angles(f)
                self.assertIn('does not factor', str(ctx.exception))
