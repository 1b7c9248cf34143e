from ...services.reports import ideals_report
from ..base import AlgebraCommand


class Command(AlgebraCommand):
    help = 'List ideals (principal by default) with minimality and evolution-ideal status'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--all', action='store_true',
                            help='Scan every subspace instead of the principal ideals')

    def analyze(self, A, options, budget):
        return ideals_report(A, 'all' if options['all'] else 'principal', budget)
