"""Exception hierarchy shared by all modules."""


class DualityError(Exception):
    """Base class for every error raised by clonedual."""


class SizeMismatchError(DualityError, ValueError):
    """Two objects that must share a ground/index set do not."""


class NotUniformlyContinuousError(DualityError, ValueError):
    def __init__(self, message, generator_index=None):
        super().__init__(message)
        self.generator_index = generator_index


class EmptySubsetError(DualityError, ValueError):
    pass


class ArityError(DualityError, ValueError):
    pass


class NonMemberError(DualityError, ValueError):
    """A labeling is not an element of the algebra it was used with."""


class SpectrumMismatchError(DualityError, ValueError):
    pass


class TowerError(DualityError, ValueError):
    pass


class IncompatibleFamilyError(TowerError):
    def __init__(self, message, level=None):
        super().__init__(message)
        self.level = level


class UnprunedError(TowerError):
    pass


class SchemaError(DualityError, ValueError):
    """An instance file is malformed or violates a domain invariant."""
