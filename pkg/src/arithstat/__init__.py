"""arithstat: splitting statistics, Sato-Tate indicators, and one-level
densities for families of number fields of degree up to five, plus a
quaternionic twist family."""

__version__ = "0.1.0"
