"""
ClusterDilog — Y-systems

Bipartite product quivers Q(X, X'), tropical and symbolic Y-system runs, the
Coxeter orbit oracle, the plain recurrence and the constant Y-system.
"""
