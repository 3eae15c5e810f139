"""
ClusterDilog — Test Suite

Unit tests per engine package plus command-line tests. Slow exact checks are
marked `slow` and can be deselected.
"""
