"""Real interpolation with function parameters on finite-dimensional couples."""

__version__ = "0.1.0"
