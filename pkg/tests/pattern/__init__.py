"""
ClusterDilog — Pattern Tests

Recursions, separation formulas, periodicity and dualities on the rank-2 fixtures.
"""
