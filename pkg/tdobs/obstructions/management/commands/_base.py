"""
Shared plumbing for the tdobs management commands.

Exit codes: 0 success, 1 usage error (bad arguments or RunConfig), 2
data-integrity error (corrupt or missing stage, malformed graph6 input).
"""

import logging
import sys
from functools import partial

from django.core.management.base import BaseCommand, CommandError

from obstructions.errors import ConfigError, DataIntegrityError, GraphError

logger = logging.getLogger(__name__)

EXIT_USAGE = 1
EXIT_DATA = 2


def _usage_error(parser, message):
    # argparse exits with 2, which is reserved for data-integrity errors here
    if parser.called_from_command_line:
        parser.print_usage(sys.stderr)
        parser.exit(EXIT_USAGE, f"{parser.prog}: error: {message}\n")
    raise CommandError(f"Error: {message}", returncode=EXIT_USAGE)


class PipelineCommand(BaseCommand):
    """Base command translating pipeline errors into exit codes"""

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)
        parser.error = partial(_usage_error, parser)
        return parser

    def add_run_arguments(self, parser, n_max=True):
        parser.add_argument('--k', type=int, required=True, help='Treedepth bound k (>= 1)')
        if n_max:
            parser.add_argument('--n-max', dest='n_max', type=int, required=True, help='Largest vertex count')
        parser.add_argument('--out', dest='out_dir', default=None, help='Output directory (default: TDOBS_OUT_DIR)')
        parser.add_argument('--workers', type=int, default=None, help='Worker processes (default: TDOBS_WORKERS)')
        parser.add_argument('--canon-cutoff', type=int, default=None, help='Exact lex-min canonization up to this order')
        parser.add_argument('--memo-cap', type=int, default=None, help='Entry cap of the treedepth memo')

    def handle(self, *args, **options):
        try:
            self.run(**options)
        except ConfigError as e:
            raise CommandError(str(e), returncode=EXIT_USAGE) from e
        except (DataIntegrityError, GraphError) as e:
            logger.error(f"{type(e).__name__}: {e}")
            raise CommandError(str(e), returncode=EXIT_DATA) from e

    def run(self, **options):
        raise NotImplementedError('subclasses of PipelineCommand must provide a run() method')

    def read_input_lines(self, options):
        stream = options.get('stdin') or sys.stdin
        for line in stream:
            line = line.strip()
            if line:
                yield line
