"""Algorithms of the laboratory.

Modules depend on each other bottom-up: exact -> lattice -> enumerate ->
rootsys -> hyperbolic / isometry -> neighbor / leech -> orbits25 / theta /
e8orbits -> verify. Import the module you need directly.
"""
