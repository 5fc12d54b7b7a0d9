"""Exception hierarchy shared by every relideal module."""


class RelIdealError(Exception):
    """Base class; ``code`` is the stable identifier printed by the CLI."""

    code = "relideal-error"

    def __init__(self, message="", **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self):
        payload = {"code": self.code, "message": self.message}
        if self.details:
            payload["details"] = {k: str(v) for k, v in self.details.items()}
        return payload


class ConfigError(RelIdealError):
    code = "config"


class PolynomialParseError(RelIdealError):
    code = "parse"


class GroupParseError(RelIdealError):
    code = "group-parse"


class ArityMismatch(RelIdealError):
    code = "arity-mismatch"


class RingMismatch(RelIdealError):
    code = "ring-mismatch"


class NotAUnit(RelIdealError):
    # A divisor vanished mod p: two roots collide, so the prime is bad.
    code = "not-a-unit"


class GroupTooLarge(RelIdealError):
    code = "group-too-large"


class PointSetTooLarge(RelIdealError):
    code = "pointset-too-large"


class NoSplitPrimeFound(RelIdealError):
    code = "no-split-prime"


class BadPrime(RelIdealError):
    code = "bad-prime"


class InsufficientPrecision(RelIdealError):
    code = "insufficient-precision"


class InconsistentLabeling(RelIdealError):
    code = "inconsistent-labeling"


class ActionMismatch(RelIdealError):
    code = "action-mismatch"


class NotExpressible(RelIdealError):
    code = "not-expressible"


class InvalidBasis(RelIdealError):
    code = "invalid-basis"


class FieldDivisionByZero(RelIdealError, ZeroDivisionError):
    code = "division-by-zero"


class VerificationFailed(RelIdealError):
    code = "verification-failed"


class InvalidInput(RelIdealError):
    # Wraps a ValueError raised by a library precondition.
    code = "invalid-input"


PARSE_ERRORS = (PolynomialParseError, GroupParseError, ConfigError, InvalidInput)

