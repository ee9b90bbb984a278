"""Exception types for structural validation and precondition failures.

Every exception carries a witness tuple in ``args`` naming the offending
elements, so callers (and the CLI) can report exactly where an axiom broke.
"""


class StructureError(ValueError):
    """An input violates a structural invariant."""

    @property
    def witness(self):
        return self.args[0] if self.args else None


class MalformedTable(StructureError):
    """Table or map is not a total function on indices 0..n-1."""


class NotIdempotent(StructureError):
    pass


class NotCommutative(StructureError):
    pass


class NotAssociative(StructureError):
    pass


class BadUnit(StructureError):
    pass


class NotMonotone(StructureError):
    pass


class NotAHomomorphism(StructureError):
    pass


class NotACongruence(StructureError):
    pass


class NotProper(StructureError):
    pass


class NotADownset(StructureError):
    pass


class NotAnUpset(StructureError):
    pass


class NotDisjoint(StructureError):
    pass


class SeparationFailed(StructureError):
    """No irreducible filter separates the given pair; indicates a bug."""


class NotAnIdeal(StructureError):
    pass


class NotSaturated(StructureError):
    pass


class YNotClosed(StructureError):
    """Reference set for a bounding-family test is not subbasic closed."""


class NotAnSSpace(StructureError):
    pass


class NotAnMSSpace(StructureError):
    pass


class NotInSX(StructureError):
    """Argument is not a member of the dual-semilattice carrier."""


class NotInExtension(StructureError):
    pass


class NotOrderPreserving(StructureError):
    pass


class NotComposable(StructureError):
    pass


class NotOneToOne(StructureError):
    pass


class NotAVietorisFamily(StructureError):
    pass


class NotMIncreasing(StructureError):
    pass


class LimitExceeded(StructureError):
    """A configured size cap was exceeded; raise the cap to proceed."""
