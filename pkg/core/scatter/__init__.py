"""
ClusterDilog — Scattering

The structure group of a skew form with its dilogarithm elements, ordered
factorization in rank 2, consistent rank-2 scattering diagrams and the
group-level identities attached to periods and loops.
"""
