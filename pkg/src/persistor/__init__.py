"""Persistent homology of Rips filtrations and level persistence of PL maps."""

from persistor.errors import (
    InconsistencyError,
    InputError,
    PersistorError,
    PreconditionError,
)

__version__ = "0.1.0"

__all__ = [
    "InconsistencyError",
    "InputError",
    "PersistorError",
    "PreconditionError",
    "__version__",
]
