"""Error hierarchy. Each class carries the CLI exit code it maps to."""


class PersistorError(Exception):
    exit_code = 1


class InputError(PersistorError):
    """Malformed input (bad file, malformed simplex, bad flag)."""

    exit_code = 2


class MalformedSimplexError(InputError):
    pass


class PreconditionError(PersistorError):
    """Input is well formed but violates a mathematical precondition."""

    exit_code = 3


class NonGenericError(PreconditionError):
    pass


class DuplicatePointError(PreconditionError):
    pass


class DegenerateCloudError(PreconditionError):
    pass


class InvalidFiltrationError(PreconditionError):
    pass


class TamenessError(PreconditionError):
    pass


class InconsistencyError(PersistorError):
    """A postcondition failed: negative count, bad pairing, rank failure."""

    exit_code = 4


class NumericalRankError(InconsistencyError):
    pass


class InvalidOrderingError(InconsistencyError):
    pass
