"""Operational quantum reference frames on finite groups and a truncated phase frame."""

__version__ = "0.1.0"
