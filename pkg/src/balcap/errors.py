"""Exception types raised by balcap."""


class BalcapError(ValueError):
    """Base class for all library errors."""


class ParseError(BalcapError):
    pass


class GroundMismatch(BalcapError):
    pass


class GroundTooLarge(BalcapError):
    pass


class BadPoint(BalcapError):
    pass


class DimensionMismatch(BalcapError):
    pass


class NegativeFunction(BalcapError):
    pass


class OutOfRange(BalcapError):
    pass


class TooLarge(BalcapError):
    pass


class CapacityError(BalcapError):
    """A set function fails one of the capacity axioms."""


class MissingEntry(CapacityError):
    pass


class EmptyNotZero(CapacityError):
    pass


class FullNotOne(CapacityError):
    pass


class NotMonotone(CapacityError):
    def __init__(self, message, smaller, larger):
        super().__init__(message)
        self.smaller = smaller
        self.larger = larger


class ValueOutOfRange(CapacityError, OutOfRange):
    def __init__(self, message, subset):
        super().__init__(message)
        self.subset = subset
