"""Data augmentation and per-target evaluation toolkit for hate speech corpora."""

__version__ = "0.1.0"
