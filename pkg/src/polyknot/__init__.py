"""Polynomial parametrizations of long knots."""
