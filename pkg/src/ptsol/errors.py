"""Exception types raised across the package.

Each carries the CLI exit code it maps to, so the command layer can
translate failures without a lookup table.
"""


class PTSolError(Exception):
    exit_code = 1


class ConfigError(PTSolError):
    exit_code = 1


class SignConditionViolated(PTSolError, ValueError):
    """The amplitude equation has no real solution for these parameters."""

    exit_code = 2


class BoundaryLeak(PTSolError):
    """Field is not small enough at the domain edge for periodic calculus."""

    exit_code = 3


class AsymmetricGrid(PTSolError, ValueError):
    exit_code = 1


class SizeExceeded(PTSolError, ValueError):
    exit_code = 1


class NoConvergence(PTSolError, ArithmeticError):
    exit_code = 4


class NonFinite(PTSolError, ArithmeticError):
    exit_code = 4


class BracketInvalid(PTSolError, ValueError):
    exit_code = 5


class BlowUp(PTSolError, ArithmeticError):
    exit_code = 6

    def __init__(self, msg, z=None, record=None):
        super().__init__(msg)
        self.z = z
        self.record = record


class StepTooLarge(PTSolError, ArithmeticError):
    exit_code = 6


class NoGrowthWindow(PTSolError, ValueError):
    exit_code = 1
