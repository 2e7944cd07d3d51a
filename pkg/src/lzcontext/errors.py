"""Exception hierarchy shared by all lzcontext modules."""


class LzError(Exception):
    """Base class for all lzcontext errors."""


class InputError(LzError):
    """Invalid input data (bad parse, symbol out of range, bad position)."""


class ParseFormatError(InputError):
    """Malformed parse file. Carries the 1-based line number of the offense."""

    def __init__(self, line, message):
        super().__init__(f"line {line}: {message}")
        self.line = line


class UsageError(LzError):
    """API misuse: consumed handle, unsorted input, out-of-range argument."""


class ContractError(LzError):
    """An internal invariant did not hold (indicates a bug, not bad input)."""
