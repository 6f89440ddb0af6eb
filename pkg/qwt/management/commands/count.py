import logging

import pandas as pd

from django.core.management.base import CommandError

from qwt.builders import build, plan
from qwt.circuit import GateCostReport
from qwt.lowering import count_gates
from qwt.reports import parse_sweep, to_csv, with_differences
from qwt.serializers import GateCountRecordSerializer
from qwt.tasks import run_count_sweep

from ._common import USAGE_ERROR, QwtCommand

logger = logging.getLogger(__name__)


class Command(QwtCommand):
    help = 'Count elementary gates of the fully lowered transform'

    def add_arguments(self, parser):
        self.add_config_arguments(parser)
        parser.add_argument('--sweep', help="Emit CSV rows over a range, e.g. 'n=4..10' or 'd=1..8'")
        parser.add_argument('--differences', action='store_true', help='Add first and second differences to sweep rows')
        parser.add_argument('--csv', help='Write CSV here instead of stdout')
        parser.add_argument('--record', action='store_true', help='Store the counts in the database')

    def run(self, options):
        if options['sweep']:
            return self.sweep(options)
        config = self.load_config(options)
        f, n = config['wavelet'], config['n']
        if f is None or n is None:
            raise CommandError('count needs --filter (or --filter-file) and --n', returncode=USAGE_ERROR)
        p = plan(
            f, n, config['d'], variant=config['variant'], prep_style=config['prep_style'],
            rounds=config['rounds'], hoist_shift=config['hoist_shift'],
        )
        report = count_gates(build(p), config['strategy'])
        for field, value in report.as_dict().items():
            self.stdout.write(f'{field:>16}: {value}')
        row = {'variant': p.variant, 'filter': f.name, 'n': n, 'd': p.d,
               'prep_style': p.prep_style, 'strategy': config['strategy']}
        row.update(report.as_dict())
        if options['csv']:
            to_csv(pd.DataFrame([row]), options['csv'])
        if options['record']:
            self.record([row])
        logger.info(f'Counted {p}: {report.total_elementary} elementary gates')

    def sweep(self, options):
        axis, values = parse_sweep(options['sweep'])
        fixed = dict(options)
        fixed[axis] = values.start
        config = self.load_config(fixed)
        if config['wavelet'] is None:
            raise CommandError('count --sweep needs --filter or --filter-file', returncode=USAGE_ERROR)
        if axis == 'd' and config['n'] is None:
            raise CommandError('a d sweep needs --n', returncode=USAGE_ERROR)
        if axis == 'd' and config['variant'] == 'single':
            raise CommandError('a d sweep needs --variant multilevel or packet', returncode=USAGE_ERROR)

        rows = run_count_sweep(
            filter_name=options.get('filter'),
            filter_file=options.get('filter_file'),
            variant=config['variant'],
            n=config['n'],
            d=config['d'],
            axis=axis,
            start=values.start,
            stop=values.stop - 1,
            prep_style=config['prep_style'],
            strategy=config['strategy'],
            hoist_shift=config['hoist_shift'],
        )
        frame = pd.DataFrame(rows)
        if options['differences']:
            frame = with_differences(frame, axis)
        if options['record']:
            self.record(rows)
        self.write_output(to_csv(frame), options['csv'])

    def record(self, rows):
        serializer = GateCountRecordSerializer(data=[
            {
                'variant': row['variant'], 'filter_name': row['filter'], 'n': row['n'], 'd': row['d'],
                'prep_style': row['prep_style'], 'strategy': row['strategy'],
                'counts': {name: int(row[name]) for name in GateCostReport.GATE_FIELDS},
                'ancilla_count': row['ancilla_count'], 'work_count': row['work_count'],
                'borrowed_count': row['borrowed_count'], 'total': row['total_elementary'],
            }
            for row in rows
        ], many=True)
        serializer.is_valid(raise_exception=True)
        serializer.save()
        logger.info(f'Recorded {len(rows)} gate count rows')
