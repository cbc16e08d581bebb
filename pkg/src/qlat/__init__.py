"""Finite distributive lattices, polynomial functions and quasi-polynomial factorization."""
