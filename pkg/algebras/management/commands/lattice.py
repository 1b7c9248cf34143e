from ...services.reports import lattice_dot, lattice_report
from ..base import AlgebraCommand


class Command(AlgebraCommand):
    help = 'Ideal lattice or, with --evolution, the evolution-ideal poset with evinf/evsup tables'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--evolution', action='store_true', help='Use the evolution-ideal poset')
        parser.add_argument('--dot', action='store_true', help='Emit a DOT digraph of the covering relation')

    def analyze(self, A, options, budget):
        if options['dot']:
            return lattice_dot(A, options['evolution'], budget)
        return lattice_report(A, options['evolution'], budget)
