from obstructions.services.pipeline import RunConfig, run_levels

from ._base import PipelineCommand


class Command(PipelineCommand):
    help = 'Enumerate G_k^(i), the graphs on i vertices with treedepth at most k, for i = 1..n_max-1'

    def add_arguments(self, parser):
        self.add_run_arguments(parser)
        parser.add_argument('--resume', action='store_true', help='Skip levels that are already complete')

    def run(self, **options):
        cfg = RunConfig.from_options(**options)
        manifest = run_levels(cfg)
        counts = manifest.level_counts()
        digests = manifest.level_digests()
        for i in range(1, cfg.n_max):
            self.stdout.write(f"{cfg.k}\t{i}\t{counts[i]}\t{digests[i]}")
