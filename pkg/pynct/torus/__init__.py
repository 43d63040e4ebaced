"""The ``torus`` sub-package contains the computations on noncommutative tori and their cyclic symmetries.

Skew forms with formal parameters, their invariance and nondegeneracy, the monomial calculus of the twisted group
algebra and the K-theoretic ranks of crossed products by finite cyclic groups.

"""
