"""
ClusterDilog — Dilogarithm Tests

Function values against an mpmath oracle, period identities and wedge sums.
"""
