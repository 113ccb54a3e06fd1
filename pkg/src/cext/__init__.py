"""Small-cancellation group, its Dehn algorithm, central extensions and finite-group cohomology."""

__version__ = "0.1.0"
