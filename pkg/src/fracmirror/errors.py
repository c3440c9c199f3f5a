"""Exception types shared across the package."""

__all__ = ["FracmirrorError", "InvalidNefPartition", "SmoothnessError"]


class FracmirrorError(ValueError):
    """Base class for domain errors raised by this package."""


class InvalidNefPartition(FracmirrorError):
    """The vertex partition fails the nef-partition axioms."""


class SmoothnessError(FracmirrorError):
    """A volume/Euler-characteristic identity required for a smooth
    double cover failed, signalling a violated transversality hypothesis."""
