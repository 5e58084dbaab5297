"""Exception hierarchy shared by every latkit module."""


class LatticeError(Exception):
    """Base class for all latkit errors."""


class NotAPartialOrder(LatticeError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotALattice(LatticeError):
    """A pair of elements without a unique least upper / greatest lower bound."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotDistributive(LatticeError):
    pass


class CapExceeded(LatticeError):
    pass


class SizeGuard(LatticeError):
    pass


class UnknownFixture(LatticeError):
    pass


class CarrierMismatch(LatticeError):
    pass


class NotAHomomorphism(LatticeError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotConvex(LatticeError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class BudgetExceeded(LatticeError):
    pass


class UnboundVariable(LatticeError):
    pass


class UnclassifiableGadget(LatticeError):
    pass


class ProbeOutsideVariety(LatticeError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ElementOutOfWindow(LatticeError):
    pass


class ParseError(LatticeError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position
