from ...services.reports import socle_report
from ..base import AlgebraCommand


class Command(AlgebraCommand):
    help = 'Socle, evolution socle, natural-idempotent partitions and the socle decomposition'

    def analyze(self, A, options, budget):
        return socle_report(A, budget)
