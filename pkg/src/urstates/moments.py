"""First and second moments of observable sets, and Gaussian covariance maps.

The covariance matrix sigma and commutator matrix C are defined through the
ordered second-moment Gram matrix G_ij = <X_i X_j>:

    sigma_ij = Re G_ij - <X_i><X_j>      (symmetric)
    C_ij     = Im G_ij = -(i/2) <[X_i, X_j]>   (antisymmetric)

so the Robertson matrix R = sigma + iC is exactly the positive-semidefinite
matrix of ordered central moments <dX_i dX_j>.
"""

import os
import re

from dataclasses import dataclass, field

import numpy as np

from .errors import BasisMismatchError, InvalidInputError, TruncationError
from .hilbert import (
    DEFAULT_FOCK_CUTOFF,
    DEFAULT_MODE_CUTOFF,
    DEFAULT_SU11_CUTOFF,
    DensityMatrix,
    Operator,
    StateVector,
    boson_rep,
    su11_rep,
    su2_rep,
    tensor_rep,
)
from .matrixkit import psd_min_eig

__all__ = [
    "ObservableSet",
    "observable_set",
    "MomentReport",
    "moment_report",
    "gaussian_sigma",
    "uv_moments",
]

#: environment variable overriding the default Fock / weight-basis cutoff
CUTOFF_ENV = "URSTATES_CUTOFF"


def _default_cutoff(fallback):
    raw = os.environ.get(CUTOFF_ENV)
    if raw is None:
        return fallback
    try:
        n = int(raw)
    except ValueError:
        raise InvalidInputError(f"{CUTOFF_ENV}={raw!r} is not an integer")
    if n < 8:
        raise InvalidInputError(f"{CUTOFF_ENV}={n} is too small (need >= 8)")
    return n


@dataclass
class ObservableSet:
    """An ordered tuple of Hermitian observables on a shared basis."""

    ops: list
    name: str = ""

    def __post_init__(self):
        if not self.ops:
            raise InvalidInputError("observable set cannot be empty")
        basis = self.ops[0].basis
        for op in self.ops:
            if op.basis != basis:
                raise BasisMismatchError(
                    f"observable {op.label!r} lives in a different basis than "
                    f"{self.ops[0].label!r}"
                )
            if not op.is_hermitian():
                raise InvalidInputError(f"observable {op.label!r} is not Hermitian")

    @property
    def n(self):
        return len(self.ops)

    @property
    def basis(self):
        return self.ops[0].basis

    @property
    def labels(self):
        return [op.label for op in self.ops]

    def matrices(self):
        return [op.matrix for op in self.ops]


def observable_set(name, N=None):
    """Build a named observable set.

    Recognized names (an optional ``:x`` suffix carries the scale parameter):

    - ``canonical`` / ``canonical:s`` — quadratures (q_1..q_s, p_1..p_s),
      s in {1, 2}
    - ``su11`` / ``su11:k`` — (K_1, K_2, K_3) at Bargmann index k (default 1/2)
    - ``su2`` / ``su2:j`` — (J_1, J_2, J_3) at spin j (default 1/2)
    - ``a2-quadratures`` — Hermitian quadratures of a^2:
      X = (a^2 + a^dag^2)/2, Y = (a^2 - a^dag^2)/(2i)
    """
    m = re.fullmatch(r"([a-z0-9-]+?)(?::([0-9.]+))?", name.strip())
    if not m:
        raise InvalidInputError(f"malformed observable-set name {name!r}")
    head, arg = m.group(1), m.group(2)

    if head == "canonical":
        s = int(arg) if arg else 1
        if s == 1:
            rep = boson_rep(N if N else _default_cutoff(DEFAULT_FOCK_CUTOFF))
            return ObservableSet([rep["q"], rep["p"]], name="canonical")
        if s == 2:
            rep = tensor_rep(2, N if N else DEFAULT_MODE_CUTOFF)
            return ObservableSet(rep["q"] + rep["p"], name="canonical:2")
        raise InvalidInputError(f"canonical quadratures support s in {{1,2}}, got s={s}")

    if head == "su11":
        k = float(arg) if arg else 0.5
        rep = su11_rep(k, N if N else _default_cutoff(DEFAULT_SU11_CUTOFF))
        return ObservableSet([rep["k1"], rep["k2"], rep["k3"]], name=f"su11:{k:g}")

    if head == "su2":
        j = float(arg) if arg else 0.5
        rep = su2_rep(j)
        return ObservableSet([rep["j1"], rep["j2"], rep["j3"]], name=f"su2:{j:g}")

    if head == "a2-quadratures":
        if arg is not None:
            raise InvalidInputError("a2-quadratures takes no scale parameter")
        rep = boson_rep(N if N else _default_cutoff(DEFAULT_FOCK_CUTOFF))
        a2 = rep["a"].matrix @ rep["a"].matrix
        basis = rep["a"].basis
        X = Operator("Re a^2", (a2 + a2.conj().T) / 2.0, basis)
        Y = Operator("Im a^2", (a2 - a2.conj().T) / 2j, basis)
        return ObservableSet([X, Y], name="a2-quadratures")

    raise InvalidInputError(f"unknown observable set {name!r}")


@dataclass
class MomentReport:
    """Means, covariance sigma, commutator matrix C and PSD certificates."""

    labels: list
    means: np.ndarray
    sigma: np.ndarray
    commut: np.ndarray
    sigma_min_eig: float = field(init=False)
    robertson_min_eig: float = field(init=False)

    def __post_init__(self):
        self.means = np.asarray(self.means, dtype=float)
        self.sigma = np.asarray(self.sigma, dtype=float)
        self.commut = np.asarray(self.commut, dtype=float)
        self.sigma_min_eig = psd_min_eig(self.sigma.astype(complex))
        self.robertson_min_eig = psd_min_eig(self.robertson)

    @property
    def robertson(self):
        return self.sigma + 1j * self.commut

    def submatrices(self, i, j):
        """(2x2 sigma, 2x2 C) restricted to the observable pair (i, j)."""
        idx = np.ix_([i, j], [i, j])
        return self.sigma[idx], self.commut[idx]

    def to_json_dict(self):
        return {
            "observables": list(self.labels),
            "means": [float(x) for x in self.means],
            "sigma": [[float(x) for x in row] for row in self.sigma],
            "commut": [[float(x) for x in row] for row in self.commut],
            "psd": {
                "sigma_min_eig": float(self.sigma_min_eig),
                "robertson_min_eig": float(self.robertson_min_eig),
            },
        }


def moment_report(obs, state, max_tail=1e-8):
    """Means and second moments of an observable set in a given state.

    Pure states go through the Gram matrix of the vectors X_i psi (one
    matrix-vector product per observable); density matrices through traces.
    A recorded tail mass above ``max_tail`` aborts with a truncation error,
    since moments of a leaking state are not trustworthy.
    """
    if isinstance(state, StateVector):
        return _moment_report_pure(obs, state, max_tail)
    if isinstance(state, DensityMatrix):
        return _moment_report_mixed(obs, state, max_tail)
    raise InvalidInputError(f"unsupported state object {type(state)!r}")


def _check_compat(obs, state, max_tail):
    if state.basis != obs.basis:
        raise BasisMismatchError(
            f"state basis {state.basis} does not match observable basis {obs.basis}"
        )
    if max_tail is not None and state.tail_mass > max_tail:
        raise TruncationError(
            f"state tail mass {state.tail_mass:.3e} exceeds {max_tail:.1e}; "
            f"moments would not be trustworthy"
        )


def _moment_report_pure(obs, state, max_tail):
    _check_compat(obs, state, max_tail)
    psi = state.amplitudes
    images = [mat @ psi for mat in obs.matrices()]
    means = np.array([np.vdot(psi, y).real for y in images])
    # Centering the image vectors makes the Gram matrix the central-moment
    # matrix directly, avoiding the <X_i><X_j> cancellation that otherwise
    # dominates the error budget for strongly displaced states.
    centered = [y - m * psi for y, m in zip(images, means)]
    n = obs.n
    gram = np.empty((n, n), dtype=complex)
    for i in range(n):
        for j in range(i, n):
            gram[i, j] = np.vdot(centered[i], centered[j])
            gram[j, i] = np.conj(gram[i, j])
    sigma = (gram.real + gram.real.T) / 2.0
    comm = (gram.imag - gram.imag.T) / 2.0
    return MomentReport(obs.labels, means, sigma, comm)


def _moment_report_mixed(obs, state, max_tail):
    _check_compat(obs, state, max_tail)
    rho = state.matrix
    dim = rho.shape[0]
    mats = obs.matrices()
    means = np.array([np.trace(rho @ mat).real for mat in mats])
    centered = [mat - m * np.eye(dim) for mat, m in zip(mats, means)]
    prods = [rho @ mat for mat in centered]
    n = obs.n
    gram = np.empty((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            gram[i, j] = np.sum(prods[i].T * centered[j])
    sigma = (gram.real + gram.real.T) / 2.0
    comm = (gram.imag - gram.imag.T) / 2.0
    return MomentReport(obs.labels, means, sigma, comm)


# ---------------------------------------------------------------------------
# Gaussian covariance from Bogoliubov data
# ---------------------------------------------------------------------------

def gaussian_sigma(u, v, ctilde=None):
    """Quadrature covariance of a joint eigenstate of A_mu = sum (u a + v a^dag).

    For s modes, u and v are s x s matrices (scalars promote to 1 x 1) with
    the eigenstate-existence condition u u^dag - v v^dag = 1; on that shell
    the ordered central moments are <A_mu A_nu^dag> = C~ = (1/2) 1.  The
    quadrature covariance in the order (q_1..q_s, p_1..p_s) follows from
    inverting the linear map B from quadratures to (A, A^dag):

        sigma = B^{-1} [[0, C~], [C~^T, 0]] B^{-T},
        B = (1/sqrt 2) [[u + v, i(u - v)], [u* + v*, i(v* - u*)]]

    ``ctilde`` defaults to the shell value (1/2) 1; passing a different
    Hermitian matrix evaluates the same map off shell.
    """
    u = np.atleast_2d(np.asarray(u, dtype=complex))
    v = np.atleast_2d(np.asarray(v, dtype=complex))
    if u.shape != v.shape or u.shape[0] != u.shape[1]:
        raise InvalidInputError(
            f"u and v must be square matrices of equal size, got {u.shape} and {v.shape}"
        )
    s = u.shape[0]
    if ctilde is None:
        ctilde = np.eye(s) / 2.0
    ctilde = np.atleast_2d(np.asarray(ctilde, dtype=complex))
    if ctilde.shape != (s, s):
        raise InvalidInputError(f"ctilde must be {s}x{s}, got {ctilde.shape}")

    B = np.block([
        [u + v, 1j * (u - v)],
        [u.conj() + v.conj(), 1j * (v.conj() - u.conj())],
    ]) / np.sqrt(2.0)
    if np.linalg.cond(B) > 1e12:
        raise InvalidInputError(
            "quadrature map is numerically singular (infinite squeezing direction)"
        )
    M0 = np.block([
        [np.zeros((s, s)), ctilde],
        [ctilde.T, np.zeros((s, s))],
    ])
    Y = np.linalg.solve(B, M0)
    sigma = np.linalg.solve(B, Y.T).T
    if np.abs(sigma.imag).max() > 1e-10 * max(1.0, np.abs(sigma).max()):
        raise InvalidInputError(
            "covariance came out non-real; (u, v, ctilde) are inconsistent"
        )
    sigma = sigma.real
    return (sigma + sigma.T) / 2.0


def uv_moments(u, v):
    """Second moments (dq^2, dp^2, dpq) of the u a + v a^dag eigenstate.

    (u, v) are rescaled to the shell |u|^2 - |v|^2 = 1 first; on shell

        dq^2 = |u - v|^2 / 2,  dp^2 = |u + v|^2 / 2,  dpq = Im(u conj(v))

    and the Schrodinger equality dq^2 dp^2 - dpq^2 = 1/4 holds identically.
    """
    from .states import SqueezeParams

    sq = SqueezeParams(complex(u), complex(v)).normalized()
    u, v = sq.u, sq.v
    dq2 = abs(u - v) ** 2 / 2.0
    dp2 = abs(u + v) ** 2 / 2.0
    dpq = (u * np.conj(v)).imag
    return dq2, dp2, dpq
