"""
ClusterDilog — Orchestration Layer

Command routing, the selftest state schema and the acceptance job list. All
dispatch decisions live in router.py.
"""
