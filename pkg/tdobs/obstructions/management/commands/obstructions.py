from obstructions.obstruction import MEMBERSHIP_MODES
from obstructions.services import storage
from obstructions.services.pipeline import RunConfig, run_obstructions

from ._base import PipelineCommand


class Command(PipelineCommand):
    help = 'Compute induced-subgraph, subgraph and minor obstructions for treedepth at most k'

    def add_arguments(self, parser):
        self.add_run_arguments(parser)
        parser.add_argument('--mode', choices=MEMBERSHIP_MODES, default=None,
                            help='Check G - v by level lookup or by recomputing treedepth (default: TDOBS_MODE)')
        parser.add_argument('--resume', action='store_true', help='Skip obstruction stages that are already complete')
        parser.add_argument('--build-levels', action='store_true', help='Run the levels stage first')
        parser.add_argument('--compare-with', metavar='FILE', default=None,
                            help='graph6 list; induced obstructions absent from it go to obs_induced_novel.g6')

    def run(self, **options):
        cfg = RunConfig.from_options(**options)
        run_obstructions(cfg, compare_with=options.get('compare_with'), build_levels=options.get('build_levels'))
        for line in storage.read_lines(storage.summary_path(cfg.out_dir, cfg.k)):
            self.stdout.write(line)
