"""hermops: exact differential-operator algebra for Hermite polynomials and sl(2) identities."""

__version__ = "0.1.0"
