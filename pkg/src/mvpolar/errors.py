"""Exception types shared across the package."""


class MvpolarError(Exception):
    """Base class for every error this package raises on purpose."""


class InputError(MvpolarError):
    """Malformed tables, files, matrices, or literals."""


class UsageError(MvpolarError):
    """An operation was applied to mismatched carriers, algebras, or names."""


class CapabilityError(MvpolarError):
    """The operation needs a relation or analysis that is absent or disabled."""


class ResourceError(MvpolarError):
    """An enumeration exceeded its configured budget."""


class ParseError(InputError):
    """Lexical or syntax error in a formula or sequent string."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position
