from qwt.filters import available_filters, get_filter
from qwt.reports import coefficient_decay_table, success_amplitude_table, to_csv

from ._common import QwtCommand

KINDS = ('success-amplitude', 'coeff-decay')


class Command(QwtCommand):
    help = 'Emit CSV data for success-amplitude and coefficient-decay plots'

    def add_arguments(self, parser):
        parser.add_argument('kind', choices=KINDS)
        parser.add_argument('--filter', action='append', dest='filters',
                            help='Restrict to these filters (repeatable)')
        parser.add_argument('--output', help='Write CSV here instead of stdout')

    def run(self, options):
        names = options['filters'] or [name for name in available_filters() if name != 'db1']
        filters = [get_filter(name) for name in names]
        if options['kind'] == 'success-amplitude':
            frame = success_amplitude_table(filters)
        else:
            frame = coefficient_decay_table(filters)
        self.write_output(to_csv(frame), options['output'])
