"""Numerical laboratory for universality certificates of operator truncations."""

from . import analytic, certify, numlin, opbuild, spaces

__all__ = ["analytic", "certify", "numlin", "opbuild", "spaces"]
__version__ = "0.1.0"
