"""
ClusterDilog — Orchestration Tests

Command routing, selftest state folding and job aggregation.
"""
