"""
ClusterDilog — Seed Tests

Matrix mutation, skew-symmetrizers, quivers, finite-type classification and relabelling.
"""
