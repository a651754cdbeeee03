"""Characteristic-polynomial coefficients and PSD certificates for small dense matrices.

The coefficient convention used throughout the package: for an n x n matrix M,

    det(M - lam*I) = sum_{r=0}^{n} C_r(M) * (-lam)**(n-r)

so C_0 = 1, C_1 = tr M, C_n = det M, and C_r equals the sum of all r x r
principal minors of M (elementary symmetric functions of the eigenvalues).
Two independent routes are provided: a Faddeev-LeVerrier recurrence
(`char_coeffs`) and brute-force principal-minor enumeration
(`principal_minor_sum`).
"""

import itertools

import numpy as np

from .errors import InvalidInputError

__all__ = ["char_coeffs", "principal_minor_sum", "psd_min_eig", "targeted_eigenvector"]

#: entrywise Hermiticity tolerance (relative to the max-norm) for psd_min_eig
HERMITICITY_TOL = 1e-12


def _as_square(M):
    A = np.asarray(M)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise InvalidInputError(f"expected a square matrix, got shape {A.shape}")
    if A.shape[0] == 0:
        raise InvalidInputError("empty matrix")
    if not np.all(np.isfinite(A)):
        raise InvalidInputError("matrix has non-finite entries")
    if np.iscomplexobj(A):
        return A.astype(np.complex128, copy=False)
    return A.astype(np.float64, copy=False)


def char_coeffs(M):
    """All characteristic coefficients C_0..C_n of a square matrix.

    Uses the Faddeev-LeVerrier recurrence
        B_0 = I,  A_k = M @ B_{k-1},  c_k = -tr(A_k)/k,  B_k = A_k + c_k I
    which produces det(lam*I - M) = sum c_k lam^{n-k}; the sign flip
    C_r = (-1)^r c_r converts to the principal-minor convention above.

    Returns a length-(n+1) array, real if M is real, complex otherwise.
    """
    A = _as_square(M)
    n = A.shape[0]
    coeffs = np.empty(n + 1, dtype=A.dtype)
    coeffs[0] = 1.0
    eye = np.eye(n, dtype=A.dtype)
    B = eye.copy()
    sign = 1.0
    for k in range(1, n + 1):
        AB = A @ B
        c = -np.trace(AB) / k
        sign = -sign
        coeffs[k] = sign * c
        B = AB + c * eye
    return coeffs


def principal_minor_sum(M, r):
    """Sum of all r x r principal minors of M (independent oracle for char_coeffs).

    Enumerates C(n, r) index subsets, so intended for n <= ~12.
    """
    A = _as_square(M)
    n = A.shape[0]
    if not isinstance(r, (int, np.integer)):
        raise InvalidInputError(f"minor order must be an integer, got {r!r}")
    if r < 0 or r > n:
        raise InvalidInputError(f"minor order {r} out of range 0..{n}")
    if r == 0:
        return 1.0 if not np.iscomplexobj(A) else complex(1.0)
    total = 0.0
    for idx in itertools.combinations(range(n), r):
        sub = A[np.ix_(idx, idx)]
        total += np.linalg.det(sub)
    return total


def psd_min_eig(H, tol=HERMITICITY_TOL):
    """Minimum eigenvalue of a Hermitian matrix (PSD certificate helper).

    Refuses input that is not Hermitian within `tol` relative to the
    entrywise max-norm, then delegates to a symmetric eigensolver so the
    result is real by construction.
    """
    A = _as_square(H)
    scale = max(1.0, np.abs(A).max())
    dev = np.abs(A - A.conj().T).max()
    if dev > tol * scale:
        raise InvalidInputError(
            f"matrix is not Hermitian within tolerance: max deviation {dev:.3e} "
            f"(allowed {tol * scale:.3e})"
        )
    return float(np.linalg.eigvalsh(A)[0])


def targeted_eigenvector(M, z):
    """Best normalized solution of (M - z) x = 0, with its residual.

    Returns the right singular vector of M - z*I belonging to the smallest
    singular value, and that singular value (= ||(M - z) x||).  Truncated
    ladder-operator combinations are highly nonnormal and their dense
    eigendecompositions are pseudospectrum-limited, so recovering the
    eigenvector at a *known* eigenvalue goes through this SVD instead.
    """
    A = _as_square(M)
    n = A.shape[0]
    _u, s, vh = np.linalg.svd(A - z * np.eye(n, dtype=A.dtype))
    vec = vh[-1].conj()
    return vec / np.linalg.norm(vec), float(s[-1])
