from django.conf import settings

from obstructions.canon import canonical_form
from obstructions.graph_core import from_graph6

from ._base import PipelineCommand


class Command(PipelineCommand):
    help = 'Read graph6 lines from stdin and print the canonical graph6 line of each'
    stealth_options = ('stdin',)

    def add_arguments(self, parser):
        parser.add_argument('--canon-cutoff', type=int, default=None,
                            help='Exact lex-min canonization up to this order (default: TDOBS_CANON_CUTOFF)')
        parser.add_argument('--brute-force', action='store_true',
                            help='Minimise over all n! relabelings (small graphs only)')

    def run(self, **options):
        cutoff = options['canon_cutoff']
        if cutoff is None:
            cutoff = settings.TDOBS['CANON_CUTOFF']
        for line in self.read_input_lines(options):
            self.stdout.write(canonical_form(from_graph6(line), cutoff, brute_force=options['brute_force']))
