"""Exception hierarchy. Every error carries a stable ``code`` used by the CLI."""


class WorkbenchError(Exception):
    code = "error"

    def to_dict(self):
        return {"code": self.code, "message": str(self)}


class ArithmeticFault(WorkbenchError):
    code = "arithmetic"


class DivisionByZero(ArithmeticFault, ZeroDivisionError):
    code = "division-by-zero"


class CharMismatch(ArithmeticFault):
    code = "char-mismatch"


class RingMismatch(ArithmeticFault):
    code = "ring-mismatch"


class ExponentOverflow(ArithmeticFault, OverflowError):
    code = "exponent-overflow"

    def __init__(self, bound, limit):
        super().__init__(f"exponent {bound} exceeds limit {limit}")
        self.bound = bound
        self.limit = limit


class NotZeroDimensional(WorkbenchError):
    code = "not-zero-dimensional"


class ZeroRing(WorkbenchError):
    code = "zero-ring"


class GradingError(WorkbenchError):
    code = "grading"


class SingularEverywhere(WorkbenchError):
    code = "singular-everywhere"


class EmptyFamily(WorkbenchError):
    code = "empty-family"


class ZeroCertificate(WorkbenchError):
    code = "zero-certificate"


class MapError(WorkbenchError):
    code = "map-error"


class CertificateKilled(WorkbenchError):
    code = "certificate-killed"


class NotMonomial(WorkbenchError):
    code = "not-monomial"


class DegenerateJacobian(WorkbenchError):
    code = "degenerate-jacobian"


class NotCofinite(WorkbenchError):
    code = "not-cofinite"


class NotNested(WorkbenchError):
    code = "not-nested"


class ParameterError(WorkbenchError):
    code = "parameter"


class NotComputed(WorkbenchError):
    code = "not-computed"


class DegreeTooSmall(WorkbenchError):
    code = "degree-too-small"


class PreconditionError(WorkbenchError):
    code = "precondition"


class ParseError(WorkbenchError):
    code = "parse"

    def __init__(self, message, line, column, expected=()):
        self.line = line
        self.column = column
        self.expected = tuple(expected)
        detail = f"{line}:{column}: {message}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)

    def to_dict(self):
        d = super().to_dict()
        d.update(line=self.line, column=self.column, expected=list(self.expected))
        return d


class NameClash(ParseError):
    code = "name-clash"


class UnresolvedName(ParseError):
    code = "unresolved-name"
