from django.conf import settings

from obstructions.graph_core import GRAPH6_HEADER, from_graph6
from obstructions.treedepth import TreedepthSolver

from ._base import PipelineCommand


class Command(PipelineCommand):
    help = 'Read graph6 lines from stdin and print "graph6<TAB>treedepth" for each'
    stealth_options = ('stdin',)

    def add_arguments(self, parser):
        parser.add_argument('--certificate', action='store_true',
                            help='Append the elimination forest as a parent array (-1 marks a root)')

    def run(self, **options):
        solver = TreedepthSolver(
            memo_cap=settings.TDOBS['MEMO_CAP'],
            canon_cutoff=settings.TDOBS['CANON_CUTOFF'],
        )
        for line in self.read_input_lines(options):
            line = line[len(GRAPH6_HEADER):] if line.startswith(GRAPH6_HEADER) else line
            result = solver.treedepth(from_graph6(line))
            if options['certificate']:
                parents = ' '.join(str(p) for p in result.certificate.to_parent_array())
                self.stdout.write(f"{line}\t{result.value}\t{parents}")
            else:
                self.stdout.write(f"{line}\t{result.value}")
