"""Exception hierarchy.

Input problems derive from InputError (CLI exit code 2); mathematical
failures derive from MathError (exit code 3).
"""


class VVMFError(Exception):
    pass


class InputError(VVMFError, ValueError):
    pass


class MathError(VVMFError, ArithmeticError):
    pass


class IncompatibleOffsetError(MathError):
    pass


class NotAUnitError(MathError):
    pass


class BranchAmbiguityError(MathError):
    pass


class DivergentCompositionError(MathError):
    pass


class OutOfRangeError(MathError):
    pass


class ResonanceError(MathError):
    def __init__(self, i: int, j: int, n: int, message: str | None = None):
        self.i, self.j, self.n = i, j, n
        super().__init__(message or f"resonance at entry ({i}, {j}), order {n}")


class UnderdeterminedError(MathError):
    def __init__(self, i: int, j: int, n: int):
        self.i, self.j, self.n = i, j, n
        super().__init__(
            f"recursion under-determined at entry ({i}, {j}), order {n}: "
            "Xi_(n) is free there"
        )


class InconclusiveError(MathError):
    pass


class ShiftDegeneracyError(MathError):
    pass


class StructuralFailureError(MathError):
    pass


class ReducibleCaseError(MathError):
    pass


class NotApplicableError(MathError):
    pass


class NotTightError(MathError):
    pass


class MultiplierError(InputError):
    pass


class ExcludedParameterError(InputError):
    pass
