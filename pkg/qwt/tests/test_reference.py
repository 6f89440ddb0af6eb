from pathlib import Path
import tempfile

import numpy as np
from django.test import SimpleTestCase

from qwt.exceptions import DepthError, DimensionError, IndexRangeError, SignalError
from qwt.filters import get_filter
from qwt.reference import (
    build_kernel,
    build_modified_kernel,
    build_P,
    classical_dwt,
    format_matrix,
    lcu_reconstruct,
    lcu_term,
    load_signal,
    multilevel_matrix,
    packet_matrix,
    select_matrix,
    shift_matrix,
    ushift_matrix,
)


def basis(size, index):
    e = np.zeros(size)
    e[index] = 1.0
    return e


class KernelTest(SimpleTestCase):
    def test_haar_kernel_on_one_qubit(self):
        r = 1 / np.sqrt(2)
        np.testing.assert_allclose(build_kernel(get_filter('haar'), 1), [[r, r], [r, -r]])

    def test_kernels_are_orthogonal(self):
        for name, n in (('haar', 3), ('db2', 3), ('db3', 4), ('db4', 5)):
            w = build_kernel(get_filter(name), n)
            np.testing.assert_allclose(w.T @ w, np.eye(2 ** n), atol=1e-12)

    def test_lcu_sum_matches_modified_kernel(self):
        for name, n in (('haar', 2), ('db2', 3), ('db3', 4)):
            f = get_filter(name)
            np.testing.assert_allclose(lcu_reconstruct(f, n), build_modified_kernel(f, n), atol=1e-12)

    def test_ushift_restores_kernel_exactly(self):
        f = get_filter('db3')
        np.testing.assert_array_equal(ushift_matrix(f, 4) @ build_modified_kernel(f, 4), build_kernel(f, 4))

    def test_filter_longer_than_signal(self):
        with self.assertRaises(DimensionError):
            build_kernel(get_filter('db2'), 1)


class PermutationTest(SimpleTestCase):
    def test_shift_wraps_around(self):
        np.testing.assert_array_equal(shift_matrix(3) @ basis(8, 7), basis(8, 0))
        np.testing.assert_array_equal(shift_matrix(3, 'up') @ basis(8, 0), basis(8, 7))

    def test_lcu_terms_on_known_columns(self):
        np.testing.assert_array_equal(lcu_term(0, 3) @ basis(8, 5), -basis(8, 6))
        np.testing.assert_array_equal(lcu_term(1, 3) @ basis(8, 5), basis(8, 2))

    def test_P_is_a_permutation(self):
        perm = build_P(3, 4)
        np.testing.assert_array_equal(perm.sum(axis=0), np.ones(16))
        np.testing.assert_array_equal(perm.sum(axis=1), np.ones(16))

    def test_index_out_of_range(self):
        with self.assertRaises(IndexRangeError):
            build_P(8, 3)

    def test_select_is_block_diagonal(self):
        matrix = select_matrix(2, 3)
        self.assertEqual(matrix.shape, (32, 32))
        np.testing.assert_array_equal(matrix[8:16, 8:16], lcu_term(1, 3))
        self.assertFalse(np.any(matrix[:8, 8:]))


class MultiLevelTest(SimpleTestCase):
    def test_full_depth_haar_on_constant(self):
        constant = np.full(8, 1 / np.sqrt(8))
        np.testing.assert_allclose(multilevel_matrix(get_filter('haar'), 3, 3) @ constant, basis(8, 0), atol=1e-12)

    def test_packet_haar_spreads_basis_state(self):
        np.testing.assert_allclose(packet_matrix(get_filter('haar'), 2, 2) @ basis(4, 0), np.full(4, 0.5))

    def test_one_level_is_the_kernel(self):
        f = get_filter('db2')
        np.testing.assert_array_equal(multilevel_matrix(f, 3, 1), build_kernel(f, 3))
        np.testing.assert_array_equal(packet_matrix(f, 3, 1), build_kernel(f, 3))

    def test_pyramid_matches_matrix(self):
        f = get_filter('db2')
        signal = np.random.default_rng(7).normal(size=32)
        np.testing.assert_allclose(classical_dwt(f, signal, 3), multilevel_matrix(f, 5, 3) @ signal, atol=1e-12)

    def test_depth_too_large(self):
        with self.assertRaises(DepthError):
            multilevel_matrix(get_filter('db2'), 2, 2)
        with self.assertRaises(DepthError):
            packet_matrix(get_filter('haar'), 3, 0)


class FormattingTest(SimpleTestCase):
    def test_matrix_rows(self):
        self.assertEqual(format_matrix(np.eye(2)), '1 0\n0 1\n')
        self.assertEqual(format_matrix([[0.1]]), '0.10000000000000001\n')

    def test_load_signal(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'signal.txt'
            path.write_text('# two samples\n0.6\n\n0.8\n')
            np.testing.assert_array_equal(load_signal(path), [0.6, 0.8])
            path.write_text('0.6\nabc\n')
            with self.assertRaises(SignalError):
                load_signal(path)
