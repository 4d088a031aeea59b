"""Desk-scale behavior event capture, sensor fusion, sync, and agreement statistics."""

__version__ = "0.1.0"
