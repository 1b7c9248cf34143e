from ...services.reports import idempotents_report
from ..base import AlgebraCommand


class Command(AlgebraCommand):
    help = 'List the idempotent system and every idempotent of an algebra over GF(p)'

    def analyze(self, A, options, budget):
        return idempotents_report(A, budget)
