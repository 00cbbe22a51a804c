"""Exception hierarchy shared by all entcost modules."""


class EntCostError(Exception):
    """Base class for every error raised by entcost."""


class StateError(EntCostError, ValueError):
    """A state vector violates normalization or has inconsistent dims."""


class DimsError(EntCostError, ValueError):
    pass


class PermError(EntCostError, ValueError):
    pass


class SplitError(EntCostError, ValueError):
    pass


class ParamError(EntCostError, ValueError):
    """Canonical parameters outside their allowed ranges."""


class BasisError(EntCostError, ValueError):
    """A set of states is not an orthonormal two-qubit basis."""


class BasisNameError(EntCostError, KeyError):
    pass


class UnitaryError(EntCostError, ValueError):
    pass


class SpecError(EntCostError, ValueError):
    """Invalid search or sweep configuration."""


class SweepIOError(EntCostError, OSError):
    pass
