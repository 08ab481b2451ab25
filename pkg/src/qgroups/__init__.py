"""Exact compact quantum group computations and spectral co-amenability tests."""

from .scalars import ExactScalar, parse_rational, parse_scalar

__version__ = "0.1.0"

__all__ = ["ExactScalar", "parse_rational", "parse_scalar", "__version__"]
