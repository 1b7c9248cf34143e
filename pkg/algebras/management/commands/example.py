from pathlib import Path

from ...services.parsers import dump_algebra
from ..base import AlgebraCommand


class Command(AlgebraCommand):
    help = 'Write the definition file of a built-in example family'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--output', '-o', help='File to write (default: standard output)')

    def analyze(self, A, options, budget):
        text = dump_algebra(A, comment=A.label)
        if not options.get('output'):
            return text
        Path(options['output']).write_text(text, encoding='utf-8')
        return {'written': options['output'], 'algebra': A.label}
