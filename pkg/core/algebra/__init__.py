"""
ClusterDilog — Exact Algebra

Multivariate polynomials over the rationals, truncated power series and
factored subtraction-free values with tropicalization and positive evaluation.
"""
