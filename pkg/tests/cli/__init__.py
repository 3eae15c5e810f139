"""
ClusterDilog — CLI Tests

Flag parsing, report emission and the exit-code contract.
"""
