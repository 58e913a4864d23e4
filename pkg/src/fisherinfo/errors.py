"""Exception types raised across the toolkit."""


class FisherinfoError(Exception):
    """Base class for every toolkit-specific error."""


class DimensionMismatch(FisherinfoError):
    """Operands have incompatible shapes or an unsupported dimension."""


class NotHermitian(FisherinfoError):
    """A matrix that must be Hermitian is not, within tolerance."""


class NotNormalized(FisherinfoError):
    """A state vector is not normalized, within tolerance."""


class NotUnitary(FisherinfoError):
    """A matrix that must be unitary is not, within tolerance."""


class InvalidState(FisherinfoError):
    """A density matrix fails Hermiticity, trace or positivity checks."""


class InvalidPovm(FisherinfoError):
    """POVM effects are not positive or do not resolve the identity."""


class InvalidChannel(FisherinfoError):
    """Kraus operators do not satisfy the completeness relation."""


class SingularOutcome(FisherinfoError):
    """An outcome has (numerically) zero probability but a nonzero
    probability derivative, so its information contribution diverges."""


class DerivativeOffSupport(FisherinfoError):
    """The state derivative has weight outside the state's support, so no
    symmetric logarithmic derivative exists."""


class ZeroEvidence(FisherinfoError):
    """An outcome has zero probability under the prior predictive, so it
    admits no posterior."""


class DocumentError(FisherinfoError):
    """A JSON input document is malformed or violates its schema."""
