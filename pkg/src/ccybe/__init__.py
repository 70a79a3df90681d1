"""Exact symbolic toolkit for conformal Yang-Baxter structures.

Subpackages build on each other roughly in this order: exactpoly
(rational polynomial kernel), liealg (finite-dimensional Lie algebras
and automorphisms), conformal (lambda-bracket calculus on tensor
powers), ybe (invariance / weak / strict checks and the projection
equation catalog), families (constructors for the classified solution
families), search (bounded exhaustive classification cross-check), and
cli (command-line front end).
"""

__version__ = "0.1.0"
