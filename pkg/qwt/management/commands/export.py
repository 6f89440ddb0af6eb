import json
import logging

from django.core.management.base import CommandError

from qwt.builders import build, plan
from qwt.circuit import inverse
from qwt.lowering import lower_circuit
from qwt.qasm import to_qasm
from qwt.serializers import CircuitSerializer

from ._common import USAGE_ERROR, QwtCommand

logger = logging.getLogger(__name__)


class Command(QwtCommand):
    help = 'Export a transform circuit as JSON, and as OpenQASM 3 once lowered'

    def add_arguments(self, parser):
        self.add_config_arguments(parser)
        parser.add_argument('--lowered', action='store_true', help='Lower to elementary gates first')
        parser.add_argument('--inverse', action='store_true', help='Export the inverse transform')
        parser.add_argument('--output', help='JSON file (stdout when omitted)')
        parser.add_argument('--qasm', help='Also write OpenQASM 3 text here (needs --lowered)')

    def run(self, options):
        if options['qasm'] and not options['lowered']:
            raise CommandError('QASM export needs --lowered: macro gates have no QASM form', returncode=USAGE_ERROR)
        config = self.load_config(options)
        f, n = config['wavelet'], config['n']
        if f is None or n is None:
            raise CommandError('export needs --filter (or --filter-file) and --n', returncode=USAGE_ERROR)

        p = plan(
            f, n, config['d'], variant=config['variant'], prep_style=config['prep_style'],
            rounds=config['rounds'], hoist_shift=config['hoist_shift'],
        )
        circuit = build(p)
        if options['inverse']:
            circuit = inverse(circuit)
        if options['lowered']:
            circuit = lower_circuit(circuit, config['strategy'])

        document = json.dumps(CircuitSerializer(circuit).data, indent=2) + '\n'
        self.write_output(document, options['output'])
        if options['qasm']:
            self.write_output(to_qasm(circuit), options['qasm'])
        logger.info(f'Exported {p}: {len(circuit)} gates')
