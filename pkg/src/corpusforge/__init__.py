"""Japanese-Spanish parallel sentence mining from encyclopedia dumps."""

__version__ = "0.1.0"
