"""Exception hierarchy.

Errors split in two families: ``InputError`` for bad user input or
configuration (CLI exit code 2) and ``ConsistencyError`` for internal
certificate failures that indicate a convention bug (CLI exit code 3).
"""


class FrobstratError(Exception):
    pass


class InputError(FrobstratError):
    exit_code = 2


class ConsistencyError(FrobstratError):
    exit_code = 3


class ConfigurationError(InputError):
    pass


class BadCharacteristic(InputError):
    pass


class NotSmooth(InputError):
    pass


class CurveSpecError(InputError):
    pass


class NoFixedClass(InputError):
    pass


class ClassNotFixed(InputError):
    pass


class GaugeMissing(InputError):
    pass


class GluingViolated(ConsistencyError):
    pass


class GaugeUnsolvable(ConsistencyError):
    pass


class WindowNotStabilized(ConsistencyError):
    pass


class FixedSpaceNotSaturated(ConsistencyError):
    def __init__(self, msg, best_dim=None, best_degree=None):
        super().__init__(msg)
        self.best_dim = best_dim
        self.best_degree = best_degree


class PrecisionExhausted(ConsistencyError):
    pass
