"""The ``algebra`` sub-package holds the exact integer and rational linear algebra used everywhere else.

Matrices are dense and exact: entries are Python integers or ``fractions.Fraction`` values stored in numpy object
arrays. On top of them the package provides kernels, Smith normal forms, congruence lattices, cyclotomic polynomials
and their companion matrices.

"""
