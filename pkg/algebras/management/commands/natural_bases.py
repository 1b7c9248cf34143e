from ...services.reports import natural_bases_report
from ..base import AlgebraCommand


class Command(AlgebraCommand):
    help = 'Enumerate natural bases up to permutation and rescaling, with the naturality classification'

    def analyze(self, A, options, budget):
        return natural_bases_report(A, budget)
