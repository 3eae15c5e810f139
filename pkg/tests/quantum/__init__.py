"""
ClusterDilog — Quantum Tests

q-numbers, the quantum torus, quantum mutations and quantum dilogarithm identities.
"""
