import logging

from django.core.management.base import CommandError

from qwt.models import VerificationRun
from qwt.tasks import fan_out, run_verification_suite
from qwt.verification import ALL, SUITES, CheckResult, summarize

from ._common import VERIFICATION_FAILURE, QwtCommand

logger = logging.getLogger(__name__)

LEVEL_SUITES = ('multilevel', 'packet')


class Command(QwtCommand):
    help = 'Run a verification suite and report per-check residuals'

    def add_arguments(self, parser):
        parser.add_argument('--suite', choices=list(SUITES) + [ALL], default=ALL)
        self.add_config_arguments(parser, d_default=None, prep_default=None)
        parser.add_argument('--record', action='store_true', help='Store the run in the database')

    def run(self, options):
        suite = options['suite']
        level = suite in LEVEL_SUITES
        variant = suite if level else 'single'
        config = self.load_config(options, variant=variant, d=options['d'] if level and options['d'] else 1)
        if suite != ALL and not level:
            options['d'] = None

        # Tasks take JSON, so the filter travels by name or path.
        task_options = {
            key: options[key]
            for key in ('filter', 'filter_file', 'n', 'd', 'prep_style', 'rounds', 'tolerance')
            if options.get(key) is not None
        }
        if options['hoist_shift']:
            task_options['hoist_shift'] = True

        if suite == ALL:
            by_suite = fan_out(SUITES, task_options)
        else:
            by_suite = {suite: run_verification_suite(suite, task_options)}

        results = []
        for name, rows in by_suite.items():
            self.stdout.write(f'[{name}]')
            for row in rows:
                check = CheckResult(**row)
                style = self.style.SUCCESS if check.passed else self.style.ERROR
                self.stdout.write(style(str(check)))
            results.extend(rows)

        summary = summarize([CheckResult(**row) for row in results])
        if options['record']:
            wavelet = config['wavelet']
            VerificationRun.record(
                suite,
                results,
                filter_name=wavelet.name if wavelet else '',
                n=options.get('n'),
                d=options.get('d') or 1,
                variant=variant,
                prep_style=options.get('prep_style') or 'sqrt',
            )

        self.stdout.write(
            f"{summary['checks']} checks, max residual {summary['max_residual']:.3e}"
        )
        if not summary['passed']:
            logger.error(f"Verification failed at {summary['failing_check']}")
            raise CommandError(
                f"Verification failed: {summary['failing_check']}", returncode=VERIFICATION_FAILURE
            )
        self.stdout.write(self.style.SUCCESS('All checks passed'))
