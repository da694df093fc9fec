"""Exception taxonomy shared by every module in the package."""


class CritcyclesError(Exception):
    """Base class for all package-specific errors."""


class InexactDivisionError(CritcyclesError):
    """An exact polynomial or ring division left a nonzero remainder."""


class DegenerateMapError(CritcyclesError):
    """A rational-map constructor received data that does not define a
    morphism of the expected degree (zero denominator, common factor of
    full degree, vanishing homogeneous resultant)."""


class SymmetryLocusError(DegenerateMapError):
    """Normal-form parameters lie on the symmetry locus, so the map
    degenerates below degree two."""


class ExcludedParameterError(CritcyclesError):
    """A family parameter falls in the excluded set of the family."""


class PoleError(CritcyclesError):
    """Specialization of a rational function at a pole."""


class VerificationFailedError(CritcyclesError):
    """A recomputation contradicted a property the construction guarantees;
    this always indicates a bug rather than bad input."""


class NotAPerfectPowerError(CritcyclesError):
    """A polynomial asked to yield an n-th root is not a perfect n-th power."""


class MapSyntaxError(CritcyclesError):
    """A map expression failed to parse; ``position`` is the text offset."""

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class BadPrimeError(CritcyclesError):
    """A prime unsuitable for the requested mod-p computation (divides a
    leading coefficient or denominator, or the reduction is not squarefree)."""


class PreconditionError(CritcyclesError):
    """A documented mathematical precondition failed (vanishing dynatomic
    discriminant, periodic point at infinity, shared roots, ...)."""


class NotPeriodicError(PreconditionError):
    """A point claimed to be n-periodic is not."""


class BudgetExceededError(CritcyclesError):
    """A configured search or resource budget was exhausted.

    ``partial`` carries whatever intermediate data was available when the
    budget ran out, so callers can report diagnostics.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class ClosureCapError(CritcyclesError):
    """Preimage closure exceeded its vertex cap."""


class ConstantCurveError(CritcyclesError):
    """A curve construction produced a polynomial constant in the fiber
    variable, so there is no curve to return."""


class VanishingEliminantError(CritcyclesError):
    """A resultant that must be nonzero for the construction vanished."""


class FieldMixError(CritcyclesError):
    """Arithmetic mixed elements of distinct quadratic fields."""


class UnsupportedDomainError(CritcyclesError):
    """The requested operation is not available over this coefficient domain."""


class ReducibleModulusError(CritcyclesError):
    """Inversion modulo a polynomial exposed a nontrivial factor.

    Raised by quotient-ring arithmetic when gcd(denominator, modulus) is
    proper; ``factor`` holds the discovered factor so the caller can split
    the modulus and retry on each piece.
    """

    def __init__(self, message, factor=None):
        super().__init__(message)
        self.factor = factor
