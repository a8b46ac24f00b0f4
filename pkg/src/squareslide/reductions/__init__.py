"""Hardness compilers: formulas and digraphs into sliding-square instances."""
