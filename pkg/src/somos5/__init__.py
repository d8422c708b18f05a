"""Primes dividing terms of the Somos-5 sequence."""

__version__ = "0.1.0"
