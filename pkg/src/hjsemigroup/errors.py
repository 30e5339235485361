"""Exception hierarchy shared by every module of the package."""


class HJError(Exception):
    """Base class for all errors raised by hjsemigroup."""


class InstanceMismatch(HJError):
    """An element was used with a semigroup instance it does not belong to."""


class NonPositiveProbability(HJError):
    pass


class ProbabilitiesDoNotSumToOne(HJError):
    pass


class BudgetExceeded(HJError):
    """Exact enumeration would visit more outcomes than the configured budget."""


class HypothesisViolated(HJError):
    """Block sizes violate ``sum(n_vec) <= n + 1``."""


class InvalidLevel(HJError):
    pass


class ConfigError(HJError):
    """A configuration file failed validation."""


class InternalCheckFailed(HJError):
    """Two routes that must agree exactly did not; always an implementation bug."""
