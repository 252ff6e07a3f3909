"""Exception types raised by the localization toolkit.

Every domain error derives from :class:`LocalizationError` so callers can
catch one base. The CLI maps :class:`AgreementError` (and failing property
suites) to exit code 1 and every other domain error to exit code 2.
"""


class LocalizationError(Exception):
    """Base class for all domain errors."""


class DimensionMismatch(LocalizationError):
    """Operands live in different ambient dimensions or are not square."""


class NotHermitian(LocalizationError):
    """A matrix failed Hermitian certification."""


class NotPSD(LocalizationError):
    """An operator has an eigenvalue below the negative tolerance."""


class NotPositiveDefinite(LocalizationError):
    """An operator that must be invertible has a near-zero eigenvalue."""


class NotDensity(LocalizationError):
    """A matrix is not a density matrix (PSD with unit trace)."""


class NegativeEigenvalue(LocalizationError):
    """A fractional pseudo-power was requested of a non-PSD operator."""


class ConvergenceFailure(LocalizationError):
    """The underlying eigensolver did not converge."""


class ZeroVector(LocalizationError):
    """A vector argument has (numerically) zero norm."""


class DomainError(LocalizationError):
    """A scalar parameter is outside its allowed interval."""


class BlockInconsistency(LocalizationError):
    """Block structure violated PSD constraints beyond tolerance.

    Raised when the coupling between the subspace and the kernel of the
    outside block fails to vanish, or when the inner block solve breaks
    down. Signals tolerance breakdown rather than a recoverable state.
    """


class ToleranceBreakdown(LocalizationError):
    """A certified quantity violated its bound by more than the tolerance."""


class ChainNotNested(LocalizationError):
    """A subspace chain is not strictly descending or does not end at 0."""


class AgreementError(LocalizationError):
    """Independent construction routes disagree beyond agree_tol."""


class SupportViolation(LocalizationError):
    """A state's support is not where the operation requires it."""


class Infeasible(LocalizationError):
    """No object with the requested properties exists for this input."""


class UnderdeterminedSystem(LocalizationError):
    """Probe set does not pin down the operator (rank-deficient system)."""


class InconsistentProbes(LocalizationError):
    """Probe equations have no Hermitian solution within tolerance."""


class UnknownSuite(LocalizationError):
    """Requested property suite name is not registered."""


class FileFormatError(LocalizationError):
    """An input file does not parse against its schema."""
