"""
Relation ideals of polynomials from their Galois groups and p-adic roots.
"""

__version__ = "1.0.0"
