from django.core.management.base import CommandError

from ...services.exactalg import FieldSpec
from ...services.idempotents import fseani_scan
from ...services.reports import fseani_report
from ..base import EXIT_INPUT, EvolabCommand


class Command(EvolabCommand):
    help = 'Decide whether every simple evolution algebra of the given dimension has a non-zero idempotent'

    def add_arguments(self, parser):
        parser.add_argument('--field', required=True, help='GF(p)')
        parser.add_argument('--dim', type=int, required=True)
        parser.add_argument('--reverse', action='store_true', help='Scan structure matrices from the last index down')
        parser.add_argument('--start', type=int, default=0)
        parser.add_argument('--stop', type=int)
        super().add_arguments(parser)

    def run(self, options, budget):
        if options['dim'] < 1 or options['start'] < 0:
            raise CommandError("--dim must be positive and --start non-negative", returncode=EXIT_INPUT)
        field = FieldSpec.parse(options['field'])
        verdict = fseani_scan(field, options['dim'], budget, reverse=options['reverse'],
                              start=options['start'], stop=options['stop'])
        return fseani_report(verdict)
