"""Exception types raised across the package."""


class DimensionError(ValueError):
    """Reward vectors of mismatched or invalid dimension."""


class ConfigError(ValueError):
    """Invalid environment, action-set, policy or experiment configuration."""


class FeedbackError(ValueError):
    """Semi-bandit feedback that does not match the played action's support."""


class BoundWarning(RuntimeWarning):
    """Regret bound evaluated in a degenerate regime."""
