"""Compiled kernels; see ``spinstat.kernels`` for the import-time selection."""
