"""
ClusterDilog — Dilogarithms

Euler, Rogers and modified Rogers dilogarithms, numeric verification of the
identity attached to a period and its exact wedge constancy condition.
"""
