"""Oriented 4-valent graphs: groups, constructions, verification."""
