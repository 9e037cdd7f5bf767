from typing import Optional


class LayersimError(Exception):
    """Base class of every error raised by layersim.

    The `exit_code` is the status returned by the command line utility when the error
    reaches it.
    """

    exit_code: int = 2


class UsageError(LayersimError):
    """Invalid command line usage or configuration"""

    exit_code = 1


class ValidationError(LayersimError, ValueError):
    """Input data or parameters out of their admissible range"""

    exit_code = 2


class ParseError(ValidationError):
    """A malformed line in an input file"""

    def __init__(self, message: str, line_number: Optional[int] = None, path: Optional[str] = None):
        self.line_number = line_number
        self.path = path
        location = ""
        if path is not None:
            location += f"{path}:"
        if line_number is not None:
            location += f"{line_number}:"
        super().__init__(f"{location} {message}" if location else message)


class NumericError(LayersimError, ArithmeticError):
    """A numerical routine failed (non-finite input, SVD/eigensolver failure)"""

    exit_code = 3
