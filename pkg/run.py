"""
ClusterDilog — Single command launcher.

Same as the cdl command: `python run.py selftest`, `python run.py csd --delta 1,2`.
"""

from cli.main import main

if __name__ == "__main__":
    raise SystemExit(main())
