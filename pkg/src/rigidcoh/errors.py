"""Exception hierarchy.

Every library error derives from :class:`RigidcohError`; the class name doubles
as the machine-readable error code emitted by the task runner.
"""


class RigidcohError(Exception):
    """Base class for all library errors."""

    @property
    def code(self) -> str:
        return type(self).__name__


# -- exact integer linear algebra ------------------------------------------

class NotContained(RigidcohError):
    """The would-be denominator lattice is not contained in the numerator."""


class InfiniteQuotient(RigidcohError):
    """A subquotient was requested whose quotient has positive rank."""


# -- isogeny pairs and rigid classes ---------------------------------------

class NormNonzero(RigidcohError):
    """A rigid-class representative is not killed by the norm."""


class RepresentativeInvalid(RigidcohError):
    """A coset representative violates the membership its class requires."""


class NotEquivariant(RigidcohError):
    """A map fails to commute with the Galois actions."""


# -- band-group levels ------------------------------------------------------

class ExponentMismatch(RigidcohError):
    """The level's modulus is not a multiple of the module exponent."""


class FormulaMismatch(RigidcohError):
    """A computed group contradicts its closed form; indicates a bug."""


class DivisibilityViolated(RigidcohError):
    """Level transition requested with non-dividing moduli."""


class NotSurjective(RigidcohError):
    """A claimed group surjection misses elements."""


# -- root data and endoscopy -------------------------------------------------

class TooLarge(RigidcohError):
    """Weyl-group closure exceeded the configured order bound."""


class NotGaloisStable(RigidcohError):
    """A selected root subset is not preserved by the Galois action."""


class CharacterNotPlus(RigidcohError):
    """A character fails the vanishing conditions the pairing requires."""


# -- Laurent series -----------------------------------------------------------

class ZeroWithinPrecision(RigidcohError):
    """All known coefficients vanish, so no valuation can be reported."""


class PrecisionInsufficient(RigidcohError):
    """A quantity is zero to working precision but not provably zero."""


class NotStronglyRegular(RigidcohError):
    """A root takes the value 1 on the given torus point."""


# -- task documents -----------------------------------------------------------

class ParseError(RigidcohError):
    """The document is not syntactically valid JSON."""


class SchemaError(RigidcohError):
    """The document violates the published schema or a declared invariant."""


class DanglingReference(RigidcohError):
    """A task or declaration references an identifier that is not declared."""
