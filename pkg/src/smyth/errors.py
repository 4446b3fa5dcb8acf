"""Exception types shared across the package."""


class SmythError(Exception):
    """Base class for every error raised by this package."""


class RangeError(SmythError):
    """An index or subset mask refers to elements outside the poset."""


class CycleError(SmythError):
    """The supplied relations are cyclic, so no partial order exists."""


class CapacityError(SmythError):
    """An enumeration would exceed the configured point budget."""


class NotOpenError(SmythError):
    """The given subset is not a down-set, hence not open."""


class MalformedFamilyError(SmythError):
    """A set family is not a topology on its carrier."""


class NotSpectralError(SmythError):
    """An assignment between posets is not order-preserving."""


class CompositionMismatchError(SmythError):
    """Two maps were composed whose middle posets differ."""


class NotIsomorphismError(SmythError):
    """A map expected to be an order-isomorphism is not one."""


class IrreducibilityError(SmythError):
    """A point that should be a principal down-set is not principal."""


class SigmaUndefinedError(SmythError):
    """A required least upper bound does not exist.

    The offending subset mask is carried in ``member_mask`` so callers
    can report or replay the failure.
    """

    def __init__(self, message: str, member_mask: int | None = None):
        super().__init__(message)
        self.member_mask = member_mask


class DocumentError(SmythError):
    """A poset document file is malformed."""
