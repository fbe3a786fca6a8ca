"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class OrthokinError(Exception):
    exit_code = 1


class InvalidInputError(OrthokinError, ValueError):
    exit_code = 1


class DegenerateFrameError(InvalidInputError):
    pass


class InconsistentConfigurationError(InvalidInputError):
    """Pose and joint coordinates do not satisfy the leg constraints."""


class InfeasibleConfigurationError(OrthokinError):
    exit_code = 2


class OutOfWorkspaceError(InfeasibleConfigurationError):
    def __init__(self, message, legs=()):
        super().__init__(message)
        self.legs = tuple(legs)


class SingularityError(InfeasibleConfigurationError):
    pass


class SerialSingularityError(SingularityError):
    def __init__(self, message, legs=()):
        super().__init__(message)
        self.legs = tuple(legs)


class ParallelSingularityError(SingularityError):
    pass


class ParallelogramSingularityError(SingularityError):
    pass


class NonConvergenceError(OrthokinError):
    exit_code = 3


class SingularIterateError(NonConvergenceError):
    pass


class BranchError(NonConvergenceError):
    """Newton converged, but onto the rejected inverse-kinematics branch."""
