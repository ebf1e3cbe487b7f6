"""Exception hierarchy shared by all modules."""


class DiskSpaceError(Exception):
    """Base class for every error raised by :mod:`diskspace`."""


class MalformedSpec(DiskSpaceError, ValueError):
    pass


class OutOfDomain(DiskSpaceError, ValueError):
    pass


class StepUnderflow(DiskSpaceError, ArithmeticError):
    """Finite-difference stencil would leave the disk."""


class NonConvergence(DiskSpaceError, ArithmeticError):
    pass


class EmptyGrid(DiskSpaceError, ValueError):
    pass


class MajorantError(DiskSpaceError, ValueError):
    pass


class HypothesisViolated(DiskSpaceError):
    """A theorem's hypothesis fails on the sampled data."""


class ConstraintViolated(DiskSpaceError, ValueError):
    """Parameters lie outside the range a theorem covers."""


class NotHarmonic(DiskSpaceError, ValueError):
    pass


class DerivativeUnavailable(DiskSpaceError):
    pass


class ResolutionExceeded(DiskSpaceError, ValueError):
    pass


class BatteryUnavailable(DiskSpaceError):
    pass


class DivergentDirichletNorm(HypothesisViolated):
    pass
