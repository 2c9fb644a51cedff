"""Genus-theory characters of oriented elliptic curves, read off through Weil
pairings; includes a DDH distinguisher for class-group actions and a
square-root disambiguation routine."""

__version__ = "0.1.0"
