"""Exception hierarchy. Every error also subclasses ValueError."""


class LorentzPolyError(ValueError):
    pass


class ZeroPolynomialError(LorentzPolyError):
    pass


class DegreeTooSmallError(LorentzPolyError):
    pass


class DegreeDecreaseError(LorentzPolyError):
    pass


class BadNestingError(LorentzPolyError):
    pass


class IntervalMismatchError(LorentzPolyError):
    pass


class ZeroInsideDiskError(LorentzPolyError):
    pass


class NonPositivePError(LorentzPolyError):
    pass


class ClassViolationError(LorentzPolyError):
    """Input does not belong to the class a theorem is stated for."""


class RejectionBudgetExceededError(LorentzPolyError):
    pass
