"""Exact verification and construction toolkit for Novikov algebras, their
bialgebras, Yang-Baxter structures, and Lie-bialgebra affinizations."""

__version__ = "0.1.0"

from .fields import QQ, Field, Fp, parse_field, prime_field
from .core import Basis, BilinearForm

__all__ = [
    "QQ",
    "Field",
    "Fp",
    "parse_field",
    "prime_field",
    "Basis",
    "BilinearForm",
    "__version__",
]
