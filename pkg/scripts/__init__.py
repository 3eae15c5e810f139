"""
ClusterDilog — Utility Scripts

Development helpers such as configuration validation.
"""
