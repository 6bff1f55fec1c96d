"""Exception taxonomy shared by the library and the CLI.

The CLI maps each class to a distinct exit code so harnesses can tell input
problems from computation failures from analysis-stage problems.
"""


class KgcxError(Exception):
    exit_code = 1


class IngestionError(KgcxError):
    """Malformed or missing input files (datasets, embeddings, tables)."""

    exit_code = 2


class MissingLabelError(IngestionError):
    """A label required by the pipeline is absent from a file-backed table."""


class ComputeError(KgcxError):
    """Infeasible configuration or a numerical-stage failure."""

    exit_code = 3


class ConvergenceError(ComputeError):
    """Iterative solver did not reach its tolerance."""

    def __init__(self, message, iterations=None, residual=None):
        super().__init__(message)
        self.iterations = iterations
        self.residual = residual


class AnalysisError(KgcxError):
    """Correlation/report stage cannot proceed (e.g. too few datasets)."""

    exit_code = 4
