"""levelcert: exact homological level certificates for bounded complexes.

Builds Adams resolutions, homological and Gorenstein-homological dimension
reports, and verifiable upper/lower certificates for derived-category
levels over two computable ring modes (finite-dimensional local algebras
and graded polynomial rings).
"""

from .linalg import Mat, PrimeField, QQ, RationalField, parse_field

__all__ = [
    "Mat",
    "PrimeField",
    "RationalField",
    "QQ",
    "parse_field",
]

__version__ = "0.1.0"
