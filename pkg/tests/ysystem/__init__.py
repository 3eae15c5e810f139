"""
ClusterDilog — Y-system Tests

Periods, factorization of the tropical dynamics, Coxeter orbits and constant solutions.
"""
