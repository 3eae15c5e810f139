"""
ClusterDilog — Scattering Tests

Group actions, pentagon relations, ordered products, rank-2 diagrams and loop identities.
"""
