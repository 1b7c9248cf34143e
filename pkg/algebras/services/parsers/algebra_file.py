"""
Parser and writer for algebra definition files::

    # comment
    field GF(3)
    dim 2
    row 1 2
    row 1 1

Row ``i`` lists the coordinates of ``e_i^2``. ``#`` starts a comment and
blank lines are ignored; the ``field`` line, the ``dim`` line and exactly
``dim`` rows must appear in that order.
"""
import logging
import re
from pathlib import Path
from typing import List, Tuple

from ..algebra import EvolutionAlgebra
from ..errors import AlgebraParseError, InvalidFieldError
from ..exactalg import FieldSpec
from .base import ParserBase

logger = logging.getLogger(__name__)


class AlgebraFileParser(ParserBase):
    """Parser for the line-oriented algebra definition format."""

    _RE_FIELD = re.compile(r"^field\s+(?P<spec>\S.*)$")
    _RE_DIM = re.compile(r"^dim\s+(?P<n>\S+)$")
    _RE_ROW = re.compile(r"^row(?:\s+(?P<values>.*))?$")

    def parse_text(self, text: str, source: str = '<string>') -> EvolutionAlgebra:
        lines = self._significant_lines(text)
        if not lines:
            raise AlgebraParseError("empty definition: expected 'field GF(p)' or 'field Q'", 1)

        field = self._parse_field(*lines[0])
        if len(lines) < 2:
            raise AlgebraParseError("missing 'dim <n>' line", lines[0][0] + 1)
        n = self._parse_dim(*lines[1])

        row_lines = lines[2:]
        rows = [self._parse_row(field, n, lineno, content) for lineno, content in row_lines]
        if len(rows) != n:
            where = row_lines[n][0] if len(rows) > n else lines[-1][0]
            raise AlgebraParseError(f"row count ≠ dim ({len(rows)} rows, dim {n})", where)

        label = Path(source).stem if source != '<string>' else ''
        algebra = EvolutionAlgebra.from_rows(field, rows, label=label)
        logger.debug(f"Parsed {source}: {field}, dim {n}")
        return algebra

    def _significant_lines(self, text: str) -> List[Tuple[int, str]]:
        out = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            content = raw.split('#', 1)[0].strip()
            if content:
                out.append((lineno, content))
        return out

    def _parse_field(self, lineno: int, content: str) -> FieldSpec:
        match = self._RE_FIELD.match(content)
        if not match:
            raise AlgebraParseError(f"expected 'field GF(p)' or 'field Q', got '{content}'", lineno)
        try:
            return FieldSpec.parse(match.group('spec'))
        except InvalidFieldError as e:
            raise AlgebraParseError(str(e), lineno) from e

    def _parse_dim(self, lineno: int, content: str) -> int:
        match = self._RE_DIM.match(content)
        if not match:
            raise AlgebraParseError(f"expected 'dim <n>', got '{content}'", lineno)
        try:
            n = int(match.group('n'))
        except ValueError:
            raise AlgebraParseError(f"dimension '{match.group('n')}' is not an integer", lineno)
        if n < 1:
            raise AlgebraParseError(f"dimension must be positive, got {n}", lineno)
        return n

    def _parse_row(self, field: FieldSpec, n: int, lineno: int, content: str) -> List:
        match = self._RE_ROW.match(content)
        if not match:
            raise AlgebraParseError(f"expected 'row <s_1> ... <s_{n}>', got '{content}'", lineno)
        tokens = (match.group('values') or '').split()
        if len(tokens) != n:
            raise AlgebraParseError(f"row has {len(tokens)} entries, dim is {n}", lineno)
        try:
            return [field.parse_scalar(token) for token in tokens]
        except ValueError as e:
            raise AlgebraParseError(str(e), lineno) from e


def dump_algebra(A: EvolutionAlgebra, comment: str = '') -> str:
    """Render ``A`` in the definition format; parsing the result gives back ``A``."""
    lines = []
    if comment:
        lines.extend(f"# {line}" for line in comment.splitlines())
    lines.append(f"field {A.field}")
    lines.append(f"dim {A.n}")
    lines.extend("row " + " ".join(row) for row in A.sq.format_rows())
    return "\n".join(lines) + "\n"


def parse_algebra_file(path: str) -> EvolutionAlgebra:
    return AlgebraFileParser().parse(path)
