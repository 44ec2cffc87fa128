"""
Infrastructure layer for eisenlab.

This layer contains the concrete machinery the application layer runs on:

- Configuration and logging setup (python-decouple, python-dotenv)
- The thread pool that spreads quadrature cells over workers
- JSON and CSV report writers

The infrastructure layer depends on domain and application layers
but never the other way around.
"""
