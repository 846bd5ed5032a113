"""Exception taxonomy shared by all tdyn modules.

Every failure mode that a caller may want to branch on gets its own class.
The CLI maps these onto stable exit codes (see tdyn.cli).
"""


class TdynError(Exception):
    """Base class for all tdyn errors."""


class InputError(TdynError):
    """Malformed or out-of-contract input (bad JSON, size mismatch, unknown key...)."""


class NotTameError(TdynError):
    """An operation that requires finite Reidemeister numbers met a non-tame system."""


class RootOfUnityError(TdynError):
    """An eigenvalue is a root of unity where hyperbolicity / tameness is required."""


class UnsupportedPairingError(TdynError):
    """The pairing of phi/psi eigenvalues at a finite place cannot be certified."""


class HypothesisViolatedError(TdynError):
    """Two eigenvalue moduli that must differ agree within the certification limit."""


class PrecisionError(TdynError):
    """Certified enclosures could not separate quantities at the precision ceiling."""


class NoRecurrenceError(TdynError):
    """No linear recurrence of admissible order fits the sequence window."""


class NotSquareFreeError(TdynError):
    """A recurrence denominator has repeated factors (outside the rational-zeta normal form)."""


class NonIntegerResidueError(TdynError):
    """The per-factor exponents of an exponential sum are not integers."""


class InfiniteValueError(TdynError):
    """An infinite Reidemeister number appeared where a finite value is required."""
