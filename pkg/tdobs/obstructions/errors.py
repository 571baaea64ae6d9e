"""
Exception hierarchy for the obstruction pipeline.

Management commands map these onto exit codes: ConfigError is a usage
error (1), DataIntegrityError is a data-integrity error (2).
"""


class TdobsError(Exception):
    """Base class for all pipeline errors"""


class ConfigError(TdobsError):
    """Invalid run configuration or command arguments"""


class GraphError(TdobsError, ValueError):
    """Invalid graph edit: vertex out of range, non-edge, capacity exceeded"""


class Graph6ParseError(GraphError):
    """Malformed graph6 line"""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class ForestError(GraphError):
    """Malformed elimination forest"""


class DataIntegrityError(TdobsError):
    """A stored stage is missing, incomplete or does not match its digest"""

    def __init__(self, message: str, stage: str = ''):
        super().__init__(message)
        self.stage = stage
