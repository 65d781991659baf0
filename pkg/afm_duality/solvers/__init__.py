"""Numerical engines behind the AFM and exact solvers."""
