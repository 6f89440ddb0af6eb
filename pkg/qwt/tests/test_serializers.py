import json
from pathlib import Path

from django.test import SimpleTestCase

from qwt.builders import build_single_qwt, plan
from qwt.circuit import GateCostReport
from qwt.exceptions import FilterValidationError
from qwt.filters import get_filter
from qwt.lowering import lower_circuit
from qwt.serializers import CircuitSerializer, GateCostReportSerializer, RunConfigSerializer

DATA = Path(__file__).resolve().parent / 'data'


class CircuitSerializerTest(SimpleTestCase):
    def setUp(self):
        self.circuit = lower_circuit(build_single_qwt(plan(get_filter('haar'), 2, prep_style='linear')))

    def test_layout_comes_first(self):
        data = CircuitSerializer(self.circuit).data
        self.assertEqual(list(data)[0], 'layout')
        self.assertEqual([r['name'] for r in data['layout']], ['sys', 'anc', 'par', 'work'])
        self.assertEqual(data['gates'][0]['kind'], str(self.circuit.gates[0].kind))

    def test_document_reloads(self):
        document = json.loads(json.dumps(CircuitSerializer(self.circuit).data))
        serializer = CircuitSerializer(data=document)
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.save(), self.circuit)

    def test_macro_circuit_keeps_parameters(self):
        circuit = build_single_qwt(plan(get_filter('db2'), 3))
        data = CircuitSerializer(circuit).data
        prep = data['gates'][0]
        self.assertEqual(prep['kind'], 'PREP_MACRO')
        self.assertEqual(prep['params'], list(get_filter('db2').coeffs))

    def document(self, gates, layout=None):
        return {
            'layout': layout or [{'name': 'q', 'size': 2, 'role': 'system'}],
            'gates': gates,
        }

    def test_qubit_outside_layout(self):
        serializer = CircuitSerializer(data=self.document([{'kind': 'NOT', 'targets': [2]}]))
        self.assertFalse(serializer.is_valid())
        self.assertIn('non_field_errors', serializer.errors)

    def test_unknown_kind(self):
        serializer = CircuitSerializer(data=self.document([{'kind': 'RZ', 'targets': [0]}]))
        self.assertFalse(serializer.is_valid())
        self.assertIn('gates', serializer.errors)

    def test_control_equal_to_target(self):
        serializer = CircuitSerializer(data=self.document([{'kind': 'CNOT', 'targets': [0], 'controls': [0]}]))
        self.assertFalse(serializer.is_valid())

    def test_duplicate_register_names(self):
        layout = [{'name': 'q', 'size': 1}, {'name': 'q', 'size': 1}]
        serializer = CircuitSerializer(data=self.document([], layout))
        self.assertFalse(serializer.is_valid())
        self.assertIn('layout', serializer.errors)

    def test_borrow_span_checked(self):
        document = self.document([{'kind': 'NOT', 'targets': [0]}])
        document['borrowed'] = [{'start': 0, 'stop': 3, 'qubits': [1]}]
        self.assertFalse(CircuitSerializer(data=document).is_valid())


class GateCostReportSerializerTest(SimpleTestCase):
    def test_report_fields(self):
        report = GateCostReport(cnot=2, toffoli=4, work_count=1)
        data = GateCostReportSerializer(report).data
        self.assertEqual(data['total_elementary'], 6)
        serializer = GateCostReportSerializer(data=data)
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.save(), report)


class RunConfigSerializerTest(SimpleTestCase):
    def test_defaults(self):
        serializer = RunConfigSerializer(data={'filter': 'db2', 'n': 4})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        config = serializer.validated_data
        self.assertEqual(config['wavelet'].name, 'db2')
        self.assertEqual((config['d'], config['variant'], config['prep_style'], config['strategy']),
                         (1, 'single', 'sqrt', 'I'))

    def test_unknown_filter(self):
        serializer = RunConfigSerializer(data={'filter': 'sym4'})
        self.assertFalse(serializer.is_valid())
        self.assertIn('filter', serializer.errors)

    def test_one_filter_source(self):
        serializer = RunConfigSerializer(data={'filter': 'haar', 'filter_file': str(DATA / 'haar.txt')})
        self.assertFalse(serializer.is_valid())

    def test_single_level_depth(self):
        self.assertFalse(RunConfigSerializer(data={'filter': 'haar', 'n': 3, 'd': 2}).is_valid())

    def test_depth_too_large(self):
        serializer = RunConfigSerializer(data={'filter': 'db2', 'n': 3, 'd': 3, 'variant': 'multilevel'})
        self.assertFalse(serializer.is_valid())

    def test_filter_file(self):
        serializer = RunConfigSerializer(data={'filter_file': str(DATA / 'haar.txt'), 'n': 2})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.validated_data['wavelet'].order, 2)

    def test_invalid_filter_file_is_not_a_usage_error(self):
        with self.assertRaises(FilterValidationError):
            RunConfigSerializer(data={'filter_file': str(DATA / 'bad.txt')}).is_valid()
