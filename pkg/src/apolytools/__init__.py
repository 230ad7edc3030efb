"""SL(2) representation varieties, A-polynomials and boundary slopes."""

__version__ = "0.1.0"
