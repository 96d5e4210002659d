"""Exception hierarchy shared across the package."""


class SolicitError(Exception):
    """Base class for all package errors."""


class ParseError(SolicitError):
    """A corpus file line could not be parsed."""

    def __init__(self, path, line_number, message):
        self.path = str(path)
        self.line_number = line_number
        super().__init__(f"{path}:{line_number}: {message}")


class IntegrityError(SolicitError):
    """Cross-record consistency violated (duplicate or dangling ids)."""


class FormatError(SolicitError):
    """A lexicon or coefficient file violates its schema."""


class ConfigurationError(SolicitError):
    """Invalid or incomplete configuration (bad constants, missing categories)."""


class DataError(SolicitError):
    """Input data unusable for the requested computation."""


class TrainingError(DataError):
    """Training preconditions violated (e.g. a single-class dataset)."""


class EvaluationError(DataError):
    """Evaluation preconditions violated (e.g. class too small for k folds)."""


class ConstraintError(SolicitError):
    """Selection constraints are unsatisfiable for the given candidate set."""


class ContractError(SolicitError):
    """Caller violated an interface contract (wrong shape, unknown id)."""
