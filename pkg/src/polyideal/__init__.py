"""Polyomino ideals, their Betti numbers, and join-meet ideals of distributive lattices."""

__version__ = "0.1.0"
