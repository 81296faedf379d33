"""Exception types shared across the package."""


class CurveCompError(Exception):
    pass


class ZeroInput(CurveCompError):
    pass


class NotDivisible(CurveCompError):
    pass


class ParseError(CurveCompError, ValueError):
    pass


class NotSquarefree(CurveCompError, ValueError):
    pass


class CommonComponent(CurveCompError):
    pass


class InternalLimit(CurveCompError):
    pass


class DegenerateConditions(CurveCompError):
    pass


class MapUndefinedOnCurve(CurveCompError):
    pass


class NonRationalCenter(CurveCompError):
    pass


class NonRationalInfinitelyNearPoint(CurveCompError):
    def __init__(self, message, chart_poly=None):
        super().__init__(message)
        self.chart_poly = chart_poly


class NonRationalBasePoint(CurveCompError):
    pass


class NotContractible(CurveCompError):
    def __init__(self, name, self_intersection, genus=None, step=None, state=None):
        msg = f"cannot contract {name}: self-intersection {self_intersection}"
        if genus is not None and genus != 0:
            msg += f", genus {genus}"
        if step is not None:
            msg = f"step {step}: " + msg
        super().__init__(msg)
        self.name = name
        self.self_intersection = self_intersection
        self.genus = genus
        self.step = step
        self.state = state


class RankNotOne(CurveCompError):
    pass


class UnknownCase(CurveCompError, KeyError):
    pass


class Inadmissible(CurveCompError, ValueError):
    pass


class DegenerateComposition(CurveCompError):
    pass


class Contracted(CurveCompError):
    pass


class UnaccountedFactor(CurveCompError):
    pass


class ForbiddenLambda(CurveCompError, ValueError):
    pass


class VerificationFailure(CurveCompError):
    pass


class MultiplicityAmbiguity(UserWarning):
    """Components and auxiliary combinations disagree on a base multiplicity."""
