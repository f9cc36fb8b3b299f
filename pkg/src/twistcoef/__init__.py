"""Twisted coefficient systems on partial injections and homological stability for symmetric groups."""

__version__ = "0.1.0"
