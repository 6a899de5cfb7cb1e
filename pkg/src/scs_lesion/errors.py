class InvalidInputError(ValueError):
    """Raised when an operation receives a raster or value outside its domain."""


class DiscoveryError(ValueError):
    """Raised when a dataset tree or manifest yields no usable samples."""


class LoadError(OSError):
    """Raised when an image or mask file cannot be decoded."""
