from .scalars import GaussianRational, I, Q, mpq
from .matrix import Matrix, rref
from .subspace import Subspace, image, intersect_all, kernel, quotient_basis, sum_all
from .poly import LAM, LaurentMatrix, LaurentPolynomial, Poly, RatFunc
from .smith import column_hermite, smith_form

__all__ = ["GaussianRational", "I", "Q", "mpq", "Matrix", "rref", "Subspace", "image", "intersect_all", "kernel",
           "quotient_basis", "sum_all", "LAM", "LaurentMatrix", "LaurentPolynomial", "Poly", "RatFunc",
           "column_hermite", "smith_form"]
