from abc import ABC, abstractmethod

from ..algebra import EvolutionAlgebra


class ParserBase(ABC):
    """Base class for algebra definition parsers"""

    @abstractmethod
    def parse_text(self, text: str, source: str = '<string>') -> EvolutionAlgebra:
        """
        Parse definition text and return the algebra it describes.
        Errors must cite the 1-based line number they were found on.
        """
        pass

    def parse(self, file_path: str) -> EvolutionAlgebra:
        """Read a UTF-8 definition file and parse it."""
        from ..errors import AlgebraParseError

        try:
            with open(file_path, 'r', encoding='utf-8') as f:
                content = f.read()
        except UnicodeDecodeError as e:
            raise AlgebraParseError(f"{file_path} is not valid UTF-8: {e}") from e
        return self.parse_text(content, source=file_path)
