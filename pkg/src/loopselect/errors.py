"""Shared exception types."""


class InstanceTooLargeError(ValueError):
    """An exact-computation guard (enumeration or cover search) would be exceeded."""


class ParseError(ValueError):
    """Malformed input file; carries the offending 1-based line number."""

    def __init__(self, line_no, message):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no
