"""
hyperlat - exact lattice computations from the command line:
✓ Short vectors and shells of positive definite lattices
✓ Root systems, Weyl vectors and Vinberg's algorithm
✓ Kneser neighbors of unimodular lattices
✓ The Leech lattice, its deep holes and the Niemeier lattices
✓ Orbits of norm 0, -2 and -4 vectors of II_25,1
✓ Theta series identities and the e8 alcove table
"""

from hyperlat.main import run

if __name__ == "__main__":
    raise SystemExit(run())
