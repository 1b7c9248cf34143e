from ...services.reports import analyze_report
from ..base import AlgebraCommand


class Command(AlgebraCommand):
    help = 'Report the structural predicates of an evolution algebra and a summary of its socle'

    def analyze(self, A, options, budget):
        return analyze_report(A, budget)
