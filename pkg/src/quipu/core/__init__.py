"""Trees, characteristic polynomials, the transfer calculus and root solvers"""
