"""Numerical verification toolkit for weighted linear-sieve bounds."""
