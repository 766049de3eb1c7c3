"""Normalise romanised and code-mixed Tamil comments and classify offensive content."""

__version__ = "0.1.0"
