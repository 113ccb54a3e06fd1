"""Exception hierarchy. Every error carries a stable ``code`` string for the CLI."""


class CextError(Exception):
    code = "error"


class UnknownToken(CextError):
    code = "unknown_token"


class MalformedPower(CextError):
    code = "malformed_power"


class AlphabetMismatch(CextError):
    code = "alphabet_mismatch"


class NotCyclicallyReduced(CextError):
    code = "not_cyclically_reduced"


class TruncationExceeded(CextError):
    code = "truncation_exceeded"


class NotTrivial(CextError):
    code = "not_trivial"


class OutOfBall(CextError):
    code = "out_of_ball"


class CapTooSmall(CextError):
    code = "cap_too_small"


class NotSlow(CextError):
    code = "not_slow"


class NotACocycle(CextError):
    code = "not_a_cocycle"


class NotASubgroup(CextError):
    code = "not_a_subgroup"


class DegreeUnsupported(CextError):
    code = "degree_unsupported"


class ArithmeticOverflow(CextError):
    code = "arithmetic_overflow"


class ConfigError(CextError):
    code = "config_error"
