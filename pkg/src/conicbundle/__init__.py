"""Exact conic-bundle computations for surfaces and hypersurfaces with a multiple linear subspace."""

__version__ = "0.1.0"
