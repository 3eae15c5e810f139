"""
ClusterDilog — Data Models

Pydantic models for every structured result the engine hands to the command
line or writes as JSON.
"""
