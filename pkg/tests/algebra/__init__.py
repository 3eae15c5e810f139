"""
ClusterDilog — Algebra Tests

Exact division, tropicalization, factored values and truncated series.
"""
