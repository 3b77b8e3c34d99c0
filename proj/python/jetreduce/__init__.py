"""Variational bicomplex engine: Euler-Lagrange forms, homotopy momentum maps and zero loci."""

from ._jetreduce import diagnostics, euler_lagrange, format, main, run, selftest

__all__ = ["diagnostics", "euler_lagrange", "format", "main", "run", "selftest"]
__version__ = "0.1.0"
