"""
ClusterDilog — Seeds

Exchange matrices and their skew-symmetric decomposition, Y-seeds, quivers,
Dynkin types and the permutation action on seed data.
"""
