"""Exception types shared across the package."""

from __future__ import annotations

from typing import Iterable


class ArtindexError(Exception):
    """Base class for every error raised by artindex."""


class ValidationError(ArtindexError):
    """Input records or files violate the data contract.

    Validation never drops bad records silently: every problem found is
    collected and reported together in :attr:`errors`.
    """

    def __init__(self, errors: Iterable[str] | str):
        if isinstance(errors, str):
            errors = [errors]
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


class ModelError(ArtindexError):
    """A model specification, fit, or index computation is invalid."""


class RankDeficientError(ModelError):
    """The design matrix is numerically rank deficient.

    ``column`` names the offending (linearly dependent) design column.
    """

    def __init__(self, column: str, diag_ratio: float):
        self.column = column
        self.diag_ratio = diag_ratio
        super().__init__(
            f"design matrix is rank deficient: column {column!r} is linearly "
            f"dependent on the others (diagonal ratio {diag_ratio:.3e})"
        )
