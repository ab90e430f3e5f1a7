"""wingflow: surrogate modeling pipeline for transonic wing surface flow."""

__version__ = "0.1.0"
