"""qzeta: exact arithmetic for q-zeta values and their rational approximations."""

__version__ = "0.1.0"
