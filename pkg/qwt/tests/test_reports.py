import io

import pandas as pd
from django.test import SimpleTestCase

from qwt.filters import get_filter
from qwt.reports import (
    affine_residual,
    coefficient_decay_table,
    count_sweep,
    parse_sweep,
    success_amplitude_table,
    to_csv,
    with_differences,
)


class PlotDataTest(SimpleTestCase):
    def test_success_amplitude_rows(self):
        frame = success_amplitude_table()
        self.assertNotIn('db1', set(frame['filter']))
        self.assertEqual(list(frame['M']), sorted(frame['M']))
        haar = frame[frame['filter'] == 'haar'].iloc[0]
        self.assertAlmostEqual(haar['inv_one_norm'], 0.70710678, places=8)
        self.assertEqual(haar['rounds_sqrt'], 1)
        db2 = frame[frame['filter'] == 'db2'].iloc[0]
        self.assertAlmostEqual(db2['inv_one_norm'], 0.5977, places=4)
        self.assertEqual(db2['linear_amplitude'], 0.5)
        self.assertTrue((frame['inv_one_norm'] > 0.31).all())

    def test_coefficient_decay(self):
        frame = coefficient_decay_table([get_filter('db2'), get_filter('db3')])
        self.assertEqual(len(frame), 10)
        self.assertEqual(frame.groupby('filter')['relative'].max().tolist(), [1.0, 1.0])

    def test_csv_keeps_full_precision(self):
        text = to_csv(pd.DataFrame({'x': [0.1]}))
        self.assertEqual(text.splitlines(), ['x', '0.10000000000000001'])


class SweepTest(SimpleTestCase):
    def test_parse_sweep(self):
        self.assertEqual(parse_sweep('n=4..10'), ('n', range(4, 11)))
        self.assertEqual(parse_sweep(' d = 1 .. 3 '), ('d', range(1, 4)))
        for text in ('n=4', 'k=1..2', 'n=5..3', ''):
            with self.assertRaises(ValueError):
                parse_sweep(text)

    def test_single_level_counts_are_affine_in_n(self):
        for name in ('haar', 'db2'):
            with self.subTest(name=name):
                frame = count_sweep(get_filter(name), axis='n', values=range(4, 11))
                self.assertEqual(len(frame), 7)
                for column in ('total_elementary', 'toffoli', 'cnot'):
                    self.assertLess(affine_residual(frame['n'], frame[column]), 1e-6)

    def test_differences(self):
        frame = count_sweep(get_filter('haar'), axis='n', values=range(3, 7))
        frame = with_differences(frame, 'n')
        self.assertTrue(pd.isna(frame['first_difference'].iloc[0]))
        self.assertEqual(set(frame['second_difference'].dropna()), {0.0})

    def test_depth_sweep(self):
        frame = count_sweep(get_filter('haar'), variant='packet', n=4, axis='d', values=range(1, 4))
        self.assertEqual(list(frame['d']), [1, 2, 3])
        self.assertTrue(frame['total_elementary'].is_monotonic_increasing)

    def test_packet_growth_slows_linearly_in_depth(self):
        frame = count_sweep(get_filter('haar'), variant='packet', n=8, axis='d', values=range(1, 6))
        second = with_differences(frame, 'd')['second_difference'].dropna()
        self.assertEqual(len(set(second)), 1)
        self.assertLess(second.iloc[0], 0)

    def test_multilevel_second_difference_settles(self):
        frame = count_sweep(get_filter('haar'), variant='multilevel', n=8, axis='d', values=range(3, 8))
        frame = with_differences(frame, 'd')
        settled = frame[frame['d'] >= 5]['second_difference']
        self.assertEqual(len(settled), 3)
        self.assertEqual(len(set(settled)), 1)

    def test_affine_residual(self):
        self.assertAlmostEqual(affine_residual([1, 2, 3, 4], [3, 5, 7, 9]), 0.0)
        self.assertGreater(affine_residual([1, 2, 3], [1, 4, 9]), 0.1)

    def test_csv_of_sweep(self):
        frame = count_sweep(get_filter('haar'), axis='n', values=range(2, 4))
        buffer = io.StringIO()
        to_csv(frame, buffer)
        header = buffer.getvalue().splitlines()[0].split(',')
        self.assertEqual(header[:7], ['variant', 'filter', 'n', 'd', 'prep_style', 'strategy', 'rounds'])
        self.assertEqual(header[-1], 'total_elementary')
