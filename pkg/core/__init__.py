"""
ClusterDilog — Core Engine

Computational packages: exact algebra, seeds, mutation patterns, Y-systems,
dilogarithm identities, scattering diagrams and the quantum layer. These
modules hold the mathematics only; command handling lives in orchestration.
"""
