"""Exception types shared across the package."""


class ConstructionError(ValueError):
    """A group, action or measure failed its structural validation."""


class CapacityError(ValueError):
    """The requested computation exceeds a documented size cap."""


class ConfigError(ValueError):
    """An experiment configuration is malformed; message carries the field path."""
