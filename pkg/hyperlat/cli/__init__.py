"""The ``hyperlat`` command line: one module per command group."""
