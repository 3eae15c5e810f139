"""
ClusterDilog — Cluster Patterns

C-matrices, G-matrices and F-polynomials along mutation words, separation
formulas, tropical signs, dualities and periodicity.
"""
