from .base import ParserBase
from .algebra_file import AlgebraFileParser, dump_algebra, parse_algebra_file

__all__ = ['ParserBase', 'AlgebraFileParser', 'dump_algebra', 'parse_algebra_file']
