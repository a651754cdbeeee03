"""Minimizing states numerically: eigenproblems for complex combinations of
observables, and certificates that a given state minimizes the pairwise and
Robertson relations.

The certificate logic rests on one identity: for a normalized coefficient
pair beta and the ordered central-moment matrix R = sigma + iC,

    min_z || (beta_i X_i + beta_j X_j - z) psi ||^2 = beta^dag R_pair beta,

so the optimal beta is the bottom eigenvector of the 2x2 restriction of R
and the optimal residual is the square root of its lowest eigenvalue.  A
state minimizes the pairwise relation iff that residual vanishes.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import InvalidInputError, UnsupportedScaleError
from .hilbert import StateVector
from .matrixkit import char_coeffs, targeted_eigenvector
from .moments import moment_report

__all__ = [
    "CombinationSpec",
    "EigenSolveResult",
    "solve_combination_eigenstates",
    "solve_at_eigenvalue",
    "PairCertificate",
    "MinimizerCertificate",
    "minimizer_certificate",
]

#: eigenvectors holding more than this mass in the top basis decile are
#: discarded as truncation artifacts
TAIL_FILTER = 1e-6

#: pairwise residual below which a state counts as an exact minimizer
RESIDUAL_TOL = 1e-8

MAX_DENSE_DIM = 512


@dataclass
class CombinationSpec:
    """Complex coefficient vector beta over an observable set."""

    beta: np.ndarray
    observables: object

    def __post_init__(self):
        beta = np.asarray(self.beta, dtype=np.complex128)
        if beta.ndim != 1 or beta.size != self.observables.n:
            raise InvalidInputError(
                f"beta length {beta.size} does not match observable count "
                f"{self.observables.n}"
            )
        if not np.any(np.abs(beta) > 0.0):
            raise InvalidInputError("beta must have at least one nonzero coefficient")
        self.beta = beta

    def matrix(self):
        mats = self.observables.matrices()
        out = np.zeros(mats[0].shape, dtype=np.complex128)
        for b, m in zip(self.beta, mats):
            out += b * m
        return out


@dataclass
class EigenSolveResult:
    """All surviving eigenpairs of a combination matrix, sorted by eigenvalue."""

    pairs: list
    n_filtered: int
    degraded: bool

    def eigenvalues(self):
        return np.array([z for z, _ in self.pairs])


def solve_combination_eigenstates(spec, tail_filter=TAIL_FILTER):
    """Dense eigendecomposition of beta . X.

    Hermitian-to-tolerance matrices go through the symmetric solver;
    otherwise the general solver runs and the result carries a
    degraded-confidence flag when the eigenvector matrix is badly
    conditioned (defective-to-tolerance pencil).  Eigenvectors holding more
    than ``tail_filter`` of their mass in the top basis decile are dropped
    as truncation artifacts, with the dropped count reported.
    """
    M = spec.matrix()
    if M.shape[0] > MAX_DENSE_DIM:
        raise UnsupportedScaleError(
            f"dense eigensolve capped at dimension {MAX_DENSE_DIM}, got {M.shape[0]}"
        )
    basis = spec.observables.basis
    scale = max(1.0, np.abs(M).max())
    degraded = False
    if np.abs(M - M.conj().T).max() <= 1e-12 * scale:
        vals, vecs = np.linalg.eigh((M + M.conj().T) / 2.0)
        vals = vals.astype(complex)
    else:
        vals, vecs = scipy.linalg.eig(M)
        try:
            degraded = np.linalg.cond(vecs) > 1e8
        except np.linalg.LinAlgError:
            degraded = True

    order = np.lexsort((vals.imag, vals.real))
    pairs = []
    filtered = 0
    for idx in order:
        amp = vecs[:, idx]
        amp = amp / np.linalg.norm(amp)
        first = np.argmax(np.abs(amp) > 1e-8)
        amp = amp * (np.conj(amp[first]) / abs(amp[first]))
        state = StateVector(amp, basis, family="combination-eigenvector",
                            params={"degraded": degraded})
        if state.tail_mass > tail_filter:
            filtered += 1
            continue
        pairs.append((complex(vals[idx]), state))
    return EigenSolveResult(pairs, filtered, degraded)


def solve_at_eigenvalue(spec, z):
    """Eigenvector of beta . X at a *known* eigenvalue z, via the smallest
    singular pair of (beta . X - z).  Returns (StateVector, residual).

    This sidesteps the pseudospectrum trouble of nonnormal truncations:
    their dense eigendecompositions scatter along rays, but the singular
    vector at a prescribed z stays accurate.
    """
    M = spec.matrix()
    if M.shape[0] > MAX_DENSE_DIM:
        raise UnsupportedScaleError(
            f"dense solve capped at dimension {MAX_DENSE_DIM}, got {M.shape[0]}"
        )
    amp, res = targeted_eigenvector(M, complex(z))
    first = np.argmax(np.abs(amp) > 1e-8)
    amp = amp * (np.conj(amp[first]) / abs(amp[first]))
    state = StateVector(amp, spec.observables.basis,
                        family="combination-eigenvector",
                        params={"z": complex(z), "targeted": True})
    return state, res


@dataclass(frozen=True)
class PairCertificate:
    labels: tuple
    beta: np.ndarray
    z: complex
    residual: float
    schr_gap: float

    def to_json_dict(self):
        return {
            "labels": list(self.labels),
            "beta": [[b.real, b.imag] for b in self.beta],
            "z": {"re": self.z.real, "im": self.z.imag},
            "residual": self.residual,
            "schr_gap": self.schr_gap,
        }


@dataclass
class MinimizerCertificate:
    pairs: dict
    robertson_gap: float
    verdict: str

    def to_json_dict(self):
        return {
            "pairs": {f"{i},{j}": rec.to_json_dict()
                      for (i, j), rec in sorted(self.pairs.items())},
            "robertson_gap": self.robertson_gap,
            "verdict": self.verdict,
        }


def _gauge_fix(vec):
    first = np.argmax(np.abs(vec) > 1e-12)
    phase = np.conj(vec[first]) / abs(vec[first])
    return vec * phase


def minimizer_certificate(state, obs, max_tail=1e-8, residual_tol=RESIDUAL_TOL):
    """Per-pair best (beta, z) and residual, plus the full Robertson gap.

    For each observable pair the bottom eigenvector of the 2x2 restriction
    of R = sigma + iC gives the optimal normalized beta (gauge: first
    significant component real positive), z = beta . means, and the
    residual sqrt(lambda_min).  Verdict is "minimizer" when every pairwise
    residual clears ``residual_tol``.
    """
    rep = moment_report(obs, state, max_tail=max_tail)
    R = rep.robertson
    n = obs.n
    pairs = {}
    worst = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            sub = R[np.ix_([i, j], [i, j])]
            vals, vecs = np.linalg.eigh(sub)
            beta = _gauge_fix(vecs[:, 0])
            lam = max(float(vals[0]), 0.0)
            residual = float(np.sqrt(lam))
            z = complex(beta[0] * rep.means[i] + beta[1] * rep.means[j])
            s2, c2 = rep.submatrices(i, j)
            schr = float(s2[0, 0] * s2[1, 1] - s2[0, 1] ** 2 - c2[0, 1] ** 2)
            pairs[(i, j)] = PairCertificate(
                (obs.labels[i], obs.labels[j]), beta, z, residual, schr)
            worst = max(worst, residual)
    cs = char_coeffs(rep.sigma.astype(complex))
    cc = char_coeffs(rep.commut.astype(complex))
    robertson_gap = float((cs[n] - cc[n]).real)
    verdict = "minimizer" if worst <= residual_tol else "not-minimizer"
    return MinimizerCertificate(pairs, robertson_gap, verdict)
