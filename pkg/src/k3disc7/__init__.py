"""Exact reconstruction of Borcherds' method for the singular K3 surface of
discriminant 7: Golay code, Leech lattice, II_{1,25}, the A6 complement, its
faces, the inversion-involution generators and the chamber reduction."""

__version__ = "0.1.0"
