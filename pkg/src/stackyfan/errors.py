"""Exception hierarchy.  The CLI maps these onto exit codes."""


class StackyFanError(Exception):
    """Base class for all library errors."""


class ValidationError(StackyFanError):
    """Input data violates a structural invariant."""

    kind = "ValidationError"


class NotStronglyConvex(ValidationError):
    kind = "NotStronglyConvex"


class NonExtremalGenerator(ValidationError):
    kind = "NonExtremalGenerator"


class IntersectionNotFace(ValidationError):
    kind = "IntersectionNotFace"


class RaysDontSpan(ValidationError):
    kind = "RaysDontSpan"


class InvalidMarker(ValidationError):
    kind = "InvalidMarker"


class FanValidationError(ValidationError):
    """Aggregate of every violation found by :func:`stackyfan.fan.validate`."""

    def __init__(self, report):
        self.report = report
        super().__init__("; ".join(str(v) for v in report.violations))

    @property
    def kind(self):
        return self.report.violations[0].kind if self.report.violations else "ValidationError"


class SimplicialInput(StackyFanError):
    pass


class ConeNotInFan(StackyFanError):
    pass


class NotInSupport(StackyFanError):
    pass


class ZeroVector(StackyFanError):
    pass


class ZeroCone(StackyFanError):
    pass


class NoPositiveExpression(StackyFanError):
    pass


class InternalInvariantViolation(StackyFanError):
    """A property guaranteed by theory failed; always a bug or corrupt input."""


class NonTermination(InternalInvariantViolation):
    pass


class UnsupportedRank(StackyFanError):
    pass


class DegeneratePlane(StackyFanError):
    pass
