"""
Exception hierarchy for periodic-seirs.

Every failure raised by the library derives from SeirsError so callers (CLI, HTTP
routes) can map it to an exit code or a status code in one place.
"""


class SeirsError(Exception):
    """Base class for library errors"""


class ModelValidationError(SeirsError, ValueError):
    """Coefficients, incidence or invariant box violate the model hypotheses"""


class ConfigError(SeirsError, ValueError):
    """Run configuration could not be read or validated"""


class IntegrationError(SeirsError, RuntimeError):
    """The ODE solver could not produce a solution"""


class StepSizeUnderflowError(IntegrationError):
    """Required step size fell below floating point resolution (stiff problem)"""


class NonFiniteStateError(IntegrationError):
    """A state or derivative component became NaN or infinite"""


class NegativeStateError(IntegrationError):
    """A population component went negative beyond round-off slack"""


class DegenerateModelError(SeirsError):
    """The model has no meaningful threshold (e.g. bracket growth failed, mu == 0)"""


class NoEndemicRootError(SeirsError):
    """The averaged threshold equation has no positive root"""


class NewtonStalledError(SeirsError):
    """Shooting did not converge, even after re-seeding from a long run"""


class SingularJacobianError(SeirsError):
    """The shooting Jacobian flow_jacobian - I is numerically singular"""
