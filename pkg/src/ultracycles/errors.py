"""Exception hierarchy shared by every module.

Each error carries a module-qualified ``code`` so the command line can report
it and pick an exit status without string matching.
"""

from __future__ import annotations


class UltracyclesError(Exception):
    code = "ultracycles.error"
    exit_status = 1

    def __init__(self, message: str = "", **data):
        super().__init__(message or self.__class__.__name__)
        self.data = data


# poly_core
class MixedContext(UltracyclesError):
    code = "poly.MixedContext"


class BadPrime(UltracyclesError):
    code = "poly.BadPrime"

    def __init__(self, p: int, message: str = ""):
        super().__init__(message or f"prime {p} divides a denominator", p=p)
        self.p = p


class DegreeTooLarge(UltracyclesError):
    code = "poly.DegreeTooLarge"


class VariableClash(UltracyclesError):
    code = "poly.VariableClash"


class ParseError(UltracyclesError):
    code = "cli.ParseError"

    def __init__(self, message: str, line: int = 1, column: int = 1, token: str = ""):
        super().__init__(f"{message} at line {line}, column {column}", line=line, column=column)
        self.line = line
        self.column = column
        self.token = token


# groebner
class ResourceLimit(UltracyclesError):
    code = "groebner.ResourceLimit"
    exit_status = 2


class NotHomogeneous(UltracyclesError):
    code = "groebner.NotHomogeneous"


# cycles
class UnsupportedShape(UltracyclesError):
    code = "cycles.UnsupportedShape"


class NotMinimalPrime(UltracyclesError):
    code = "cycles.NotMinimalPrime"


class AmbientMismatch(UltracyclesError):
    code = "cycles.AmbientMismatch"


# koszul
class ImproperIntersection(UltracyclesError):
    code = "koszul.ImproperIntersection"


class NotFiniteLength(UltracyclesError):
    code = "koszul.NotFiniteLength"


# correspondences
class NotFinite(UltracyclesError):
    code = "correspondences.NotFinite"


class NotSurjective(UltracyclesError):
    code = "correspondences.NotSurjective"


class ImageNotInTarget(UltracyclesError):
    code = "correspondences.ImageNotInTarget"


class DegreeComputationFailed(UltracyclesError):
    code = "correspondences.DegreeComputationFailed"


# ultraproduct
class DivisionByZeroAlmostEverywhere(UltracyclesError):
    code = "ultraproduct.DivisionByZeroAlmostEverywhere"


class PrimeTooLarge(UltracyclesError):
    code = "ultraproduct.PrimeTooLarge"


class DepthExceeded(UltracyclesError):
    code = "ultraproduct.DepthExceeded"


# cli
class ValidationError(UltracyclesError):
    code = "cli.ValidationError"
