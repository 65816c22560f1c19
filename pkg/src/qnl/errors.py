"""Exception types raised by the qnl package."""


class QnlError(Exception):
    """Base class for all qnl errors."""


class NotHermitian(QnlError):
    """Matrix is not Hermitian within tolerance."""


class TraceNotOne(QnlError):
    """Density matrix trace differs from one beyond tolerance."""


class NotPSD(QnlError):
    """Matrix has an eigenvalue below the negativity tolerance."""


class QOutOfRange(QnlError):
    """Channel strength q lies outside [0, 1]."""


class BadGrid(QnlError):
    """Scan grid is not strictly increasing inside [0, 1]."""


class InvalidTolerance(QnlError):
    """Root-finding tolerance outside the accepted range."""


class RejectionStall(QnlError):
    """Rejection sampler exceeded its draw budget without enough acceptances."""
