"""Numerical modules: special functions, disentropy functionals and their applications."""
