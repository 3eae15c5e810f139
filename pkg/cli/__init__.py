"""
ClusterDilog — Command Line

argparse front end over the orchestration router. Reports are JSON (or YAML
text) envelopes with schema "cdl/1"; logs go to stderr through loguru.
"""
