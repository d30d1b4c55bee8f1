"""Exception types shared across the analysis pipeline."""


class UnsupportedRankError(ValueError):
    """Raised for entropy ranks outside the supported domain (q >= 0, q != 1)."""


class CurveMismatchError(ValueError):
    """Raised when two curves disagree in rank or scale grid."""


class PointFileError(ValueError):
    """Raised when a point-set file cannot be parsed."""
