"""
ClusterDilog — Quantum

q-numbers and q-series, the truncated q-commutative Laurent algebra of a skew
form, quantum mutations, quantum dilogarithm elements and the quantum
dilogarithm identities in tropical and universal form.
"""
