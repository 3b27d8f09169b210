"""p-adic closures of finitely generated subgroups of commutative algebraic groups."""

__version__ = "0.1.0"
