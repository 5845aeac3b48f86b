"""Expand abbreviations in clinical notes with task-oriented word embeddings."""

__version__ = "0.1.0"
