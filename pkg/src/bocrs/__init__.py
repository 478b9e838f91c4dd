"""Exact kernel for the u~_n recurrence, its Legendre and tridiagonal
determinant identities, and the associated branch solver."""

from .algebra import SparsePoly
from .recurrence import central_binomial, u_hat_eval, u_tilde, u_tilde_seq, v_eval
from .tridiag import det_T, trunc_K

__all__ = [
    "SparsePoly",
    "central_binomial",
    "det_T",
    "trunc_K",
    "u_hat_eval",
    "u_tilde",
    "u_tilde_seq",
    "v_eval",
]

__version__ = "0.1.0"
