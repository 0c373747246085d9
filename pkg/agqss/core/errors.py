"""Exception hierarchy. Every error carries the process exit code the CLI uses for it."""

from enum import IntEnum


class ExitCode(IntEnum):
    OK = 0
    SCHEMA = 2
    CAP = 3
    CONSISTENCY = 4
    AMBIGUOUS = 5


class AgqssError(Exception):
    exit_code: ExitCode = ExitCode.CONSISTENCY

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


# -------- schema / input --------
class SchemaError(AgqssError):
    exit_code = ExitCode.SCHEMA


class FieldSpecError(SchemaError):
    pass


class CurveError(SchemaError):
    pass


class SchemeParamsError(SchemaError):
    pass


class NotSurjectiveError(SchemaError):
    """Secret map h -> (h(Q_1), ..., h(Q_L)) is not onto."""


class NotInjectiveError(SchemaError):
    """Share map h -> (h(P_1), ..., h(P_n)) has a nonzero kernel."""


class NotACodewordError(SchemaError, ValueError):
    pass


class InstanceMismatchError(SchemaError):
    pass


# -------- arithmetic misuse --------
class FieldMismatchError(AgqssError, ValueError):
    pass


class FieldDivisionError(AgqssError, ZeroDivisionError):
    pass


class IndexOutOfRangeError(AgqssError, IndexError):
    pass


class EvaluationAtInfinityError(AgqssError, ValueError):
    pass


# -------- caps --------
class CapExceededError(AgqssError):
    exit_code = ExitCode.CAP


# -------- consistency --------
class ConsistencyError(AgqssError):
    exit_code = ExitCode.CONSISTENCY


class AmbiguousSecretError(AgqssError):
    exit_code = ExitCode.AMBIGUOUS

    def __init__(self, detail: str, count: int):
        super().__init__(detail)
        self.count = count
