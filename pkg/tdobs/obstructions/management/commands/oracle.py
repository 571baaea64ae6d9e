from obstructions.graph_core import CAPACITY
from obstructions.obstruction import MEMBERSHIP_MODES
from obstructions.services import storage
from obstructions.services.pipeline import ORACLE_SCOPES, RunConfig, oracle_check

from ._base import PipelineCommand


class Command(PipelineCommand):
    help = 'Check pipeline outputs against brute-force enumeration from definitions (n <= 7)'

    def add_arguments(self, parser):
        parser.add_argument('--scope', choices=ORACLE_SCOPES, required=True)
        self.add_run_arguments(parser, n_max=False)
        parser.add_argument('--n-limit', dest='n_limit', type=int, required=True, help='Largest vertex count checked')
        parser.add_argument('--mode', choices=MEMBERSHIP_MODES, default=None)

    def run(self, **options):
        k, n_limit = options['k'], options['n_limit']
        # oracle_check sets the real n_max; this one only has to validate
        n_max = min(CAPACITY, max(k + 1, n_limit + 1))
        cfg = RunConfig.from_options(**dict(options, n_max=n_max))
        report = oracle_check(cfg, options['scope'], n_limit)
        lines = report.lines()
        storage.write_lines(storage.oracle_report_path(cfg.out_dir, cfg.k, options['scope']), lines)
        for line in lines:
            self.stdout.write(line)
