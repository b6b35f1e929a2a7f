"""A small jq interpreter with formally specified evaluation and updates."""

__version__ = "0.1.0"
