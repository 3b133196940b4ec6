"""Exact computations for sign representation and rational approximation of
Boolean functions: threshold and approximate degree by exact LP, bracketed
rational approximation error, lower-bound certificates, composition and
threshold density."""
from .boolfun import BooleanFunction, make_named
from .degrees import approx_error, threshold_degree
from .errors import InvalidInput, ResourceLimit, SignrepError, VerificationFailure

__version__ = "0.1.0"

__all__ = ["BooleanFunction", "make_named", "threshold_degree", "approx_error",
           "SignrepError", "InvalidInput", "ResourceLimit", "VerificationFailure"]
