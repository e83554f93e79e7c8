"""Randomized verification of the inequality steps behind the Bohr radii."""
