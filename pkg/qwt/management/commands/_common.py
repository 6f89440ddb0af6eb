import logging
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from qwt.builders import PREP_STYLES, VARIANTS
from qwt.exceptions import FilterValidationError, QwtError
from qwt.lowering import STRATEGIES
from qwt.serializers import RunConfigSerializer

logger = logging.getLogger(__name__)

USAGE_ERROR = 2
VERIFICATION_FAILURE = 1

CONFIG_FIELDS = (
    'filter', 'filter_file', 'n', 'd', 'variant', 'prep_style',
    'strategy', 'rounds', 'hoist_shift', 'tolerance',
)


class QwtCommand(BaseCommand):
    """
    Shared option parsing and error mapping.

    Subclasses implement ``run(options)``. Library errors become
    CommandError with exit status 2, except a filter file that fails
    validation, which counts as a failed verification (status 1).
    """

    def add_config_arguments(self, parser, d_default=1, prep_default='sqrt'):
        source = parser.add_mutually_exclusive_group()
        source.add_argument('--filter', help='Registry filter name (haar, db2, ...)')
        source.add_argument('--filter-file', dest='filter_file', help='Text file with one coefficient per line')
        parser.add_argument('--n', type=int, help='Number of system qubits')
        parser.add_argument('--d', type=int, default=d_default, help='Number of levels')
        parser.add_argument('--variant', choices=VARIANTS, default='single')
        parser.add_argument('--prep-style', dest='prep_style', choices=PREP_STYLES, default=prep_default)
        parser.add_argument('--strategy', choices=STRATEGIES, default='I', help='MCX lowering strategy')
        parser.add_argument('--rounds', type=int, help='Force the amplification round count')
        parser.add_argument('--hoist-shift', dest='hoist_shift', action='store_true',
                            help='Apply the controlled shift once after amplification')
        parser.add_argument('--tolerance', type=float, help='Override check tolerances')

    def load_config(self, options, **overrides):
        data = {key: options.get(key) for key in CONFIG_FIELDS if options.get(key) is not None}
        data.update(overrides)
        serializer = RunConfigSerializer(data=data)
        if not serializer.is_valid():
            raise CommandError(self.format_errors(serializer.errors), returncode=USAGE_ERROR)
        return serializer.validated_data

    @staticmethod
    def format_errors(errors):
        lines = []
        for field, messages in errors.items():
            label = '' if field == 'non_field_errors' else f'{field}: '
            lines.extend(f'{label}{message}' for message in messages)
        return '; '.join(lines)

    def write_output(self, text, path=None):
        if path:
            Path(path).write_text(text)
            logger.info(f'Wrote {path}')
        else:
            self.stdout.write(text, ending='')

    def handle(self, *args, **options):
        try:
            return self.run(options)
        except FilterValidationError as e:
            logger.error(str(e))
            raise CommandError(str(e), returncode=VERIFICATION_FAILURE)
        except (QwtError, ValueError, OSError) as e:
            logger.error(f'{self.__module__.rsplit(".", 1)[-1]} failed: {str(e)}')
            raise CommandError(str(e), returncode=USAGE_ERROR)

    def run(self, options):
        raise NotImplementedError
