"""Nilpotent maps, commuting tuples and their weight filtrations."""
