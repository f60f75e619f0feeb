"""Exception types shared across the package.

The CLI maps these onto exit codes: input/parse problems exit with 2,
semantic problems (domain mismatches, incompatible edits, violated
preconditions) with 3, and exceeded enumeration caps with 4.
"""


class SemprovError(Exception):
    """Base class for all errors raised by this package."""


class InputError(SemprovError):
    """Malformed textual input: formulas, polynomial expressions, data files."""

    def __init__(self, message, position=None, line=None):
        self.position = position
        self.line = line
        where = ""
        if line is not None:
            where = f" (line {line})"
        elif position is not None:
            where = f" (at position {position})"
        super().__init__(message + where)


class SemanticError(SemprovError):
    """Structurally valid input that violates a semantic requirement."""


class CapExceeded(SemprovError):
    """An enumeration grew past its configured cap.

    ``count`` holds the partial count reached before aborting.
    """

    def __init__(self, message, count):
        self.count = count
        super().__init__(f"{message} (reached {count})")
