"""
Presentation layer for eisenlab.

This layer contains the command line: argument parsing, exit codes and the
machine-readable error objects.
"""
