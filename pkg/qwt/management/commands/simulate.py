import logging

import numpy as np

from qwt.builders import build, plan
from qwt.circuit import inverse
from qwt.conf import qwt_setting
from qwt.exceptions import SignalError
from qwt.filters import get_filter
from qwt.reference import classical_dwt, load_signal, multilevel_matrix, packet_matrix
from qwt.simulator import apply, fidelity_up_to_phase, format_state, lift, register_amplitudes

from ._common import QwtCommand

logger = logging.getLogger(__name__)

ORACLES = {
    'single': lambda f, n, d: multilevel_matrix(f, n, 1),
    'multilevel': multilevel_matrix,
    'packet': packet_matrix,
}


class Command(QwtCommand):
    help = 'Run a wavelet transform circuit on a signal and dump the output state'

    def add_arguments(self, parser):
        parser.add_argument('signal', help='Signal file, one sample per line')
        self.add_config_arguments(parser)
        parser.add_argument('--normalize', action='store_true', help='Scale the signal to unit norm')
        parser.add_argument('--compare', action='store_true', help='Also emit the classical result and the fidelity')
        parser.add_argument('--inverse', action='store_true', help='Apply the inverse transform')
        parser.add_argument('--output', help='Write the state dump here instead of stdout')

    def run(self, options):
        signal = load_signal(options['signal']).astype(complex)
        n = signal.size.bit_length() - 1
        if 2 ** n != signal.size:
            raise SignalError(f'Signal length {signal.size} is not a power of two')
        if options.get('n') not in (None, n):
            raise SignalError(f'Signal has 2^{n} samples but --n {options["n"]} was given')
        norm = np.linalg.norm(signal)
        if abs(norm - 1.0) > qwt_setting('VALIDATION_TOL'):
            if not options['normalize']:
                raise SignalError(f'Signal norm is {norm:.17g}; pass --normalize to rescale it')
            signal = signal / norm

        options['n'] = n
        config = self.load_config(options)
        f = config['wavelet'] or self.default_filter()
        p = plan(
            f, n, config['d'], variant=config['variant'], prep_style=config['prep_style'],
            rounds=config['rounds'], hoist_shift=config['hoist_shift'],
        )
        circuit = build(p)
        if options['inverse']:
            circuit = inverse(circuit)

        out = apply(circuit, lift(circuit.layout, 'sys', signal))
        result = register_amplitudes(out, circuit.layout, 'sys')
        text = format_state(result)
        logger.info(f'Simulated {p}{" inverse" if options["inverse"] else ""} on {options["signal"]}')

        if options['compare']:
            oracle = self.oracle(p, signal, options['inverse'])
            fidelity = float(fidelity_up_to_phase(result, oracle))
            text += '# oracle\n' + format_state(oracle)
            text += f'# ancilla-zero probability {float(np.sum(np.abs(result) ** 2)):.17g}\n'
            text += f'# fidelity {fidelity:.17g}\n'
        self.write_output(text, options.get('output'))

    @staticmethod
    def default_filter():
        return get_filter('haar')

    @staticmethod
    def oracle(p, signal, inverse_transform):
        if p.variant == 'multilevel' and not inverse_transform:
            return classical_dwt(p.filter, signal, p.d)
        matrix = ORACLES[p.variant](p.filter, p.n, p.d)
        return (matrix.T if inverse_transform else matrix) @ signal
