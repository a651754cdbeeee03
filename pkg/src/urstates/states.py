"""Constructors for the coherent / squeezed / intelligent state families.

Every constructor returns a normalized :class:`~urstates.hilbert.StateVector`
and certifies itself on construction: families defined by an eigenvalue
problem get an algebraic residual check, and truncation honesty is enforced
through tail-mass gates.  Residual gates are truncation-aware — a strongly
squeezed state stores real amplitude mass near the cutoff, and the residual
of the truncated eigen-equation cannot beat that floor, so the gate widens
with the certified top-level mass instead of failing spuriously.

Conventions (hbar = 1): a = (q + ip)/sqrt(2); the squeeze parameters (u, v)
always satisfy |u|^2 - |v|^2 = 1 after the internal rescale.
"""

import cmath
import math

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import expm

from .errors import (
    DegenerateParameterError,
    InvalidInputError,
    NormalizabilityError,
    NumericError,
    TruncationError,
)
from .hilbert import (
    DEFAULT_FOCK_CUTOFF,
    DEFAULT_SU11_CUTOFF,
    StateVector,
    basis_state,
    fock_basis,
    su11_basis,
    su11_rep,
    su2_basis,
)
from .matrixkit import targeted_eigenvector
from .specfun import gauss2f1_terminating, log_gamma

__all__ = [
    "SqueezeParams",
    "glauber",
    "canonical_ss",
    "squeezed_fock",
    "bg_cs",
    "su11_cs",
    "su11_cs_unitary",
    "su11_intelligent",
    "even_odd_cs",
    "su2_cs",
]

#: hard ceiling for adaptive basis growth before declaring defeat
MAX_ADAPTIVE_CUTOFF = 4096


@dataclass(frozen=True)
class SqueezeParams:
    """Bogoliubov pair (u, v) defining A = u a + v a^dag.

    The eigenvalue problem only sees the ray through (u, v), so any overall
    complex rescale is allowed on input; ``normalized()`` maps onto the
    canonical shell |u|^2 - |v|^2 = 1.
    """

    u: complex
    v: complex

    def normalized(self):
        u = complex(self.u)
        v = complex(self.v)
        s = abs(u) ** 2 - abs(v) ** 2
        if s <= 0.0:
            raise InvalidInputError(
                f"squeeze pair needs |u| > |v| for a normalizable eigenstate, "
                f"got |u|={abs(u):.6g}, |v|={abs(v):.6g}"
            )
        root = math.sqrt(s)
        return SqueezeParams(u / root, v / root)

    @property
    def shell_defect(self):
        return abs(self.u) ** 2 - abs(self.v) ** 2 - 1.0


def _coerce_squeeze(u, v):
    return SqueezeParams(complex(u), complex(v)).normalized()


# ---------------------------------------------------------------------------
# cached ladder matrices (read-only)
# ---------------------------------------------------------------------------

_LADDER_CACHE = {}


def _ladder(N):
    a = _LADDER_CACHE.get(N)
    if a is None:
        a = np.zeros((N, N))
        for n in range(1, N):
            a[n - 1, n] = math.sqrt(n)
        a.setflags(write=False)
        _LADDER_CACHE[N] = a
    return a


def _shift_down(amp):
    """(a psi)_n = sqrt(n+1) psi_{n+1}, truncated."""
    out = np.zeros_like(amp)
    n = np.arange(1, amp.size)
    out[:-1] = np.sqrt(n) * amp[1:]
    return out


def _shift_up(amp):
    """(a^dag psi)_n = sqrt(n) psi_{n-1}."""
    out = np.zeros_like(amp)
    n = np.arange(1, amp.size)
    out[1:] = np.sqrt(n) * amp[:-1]
    return out


def _su11_down(amp, k):
    """(K- psi)_n = sqrt((n+1)(2k+n)) psi_{n+1}, truncated."""
    out = np.zeros_like(amp)
    n = np.arange(amp.size - 1, dtype=float)
    out[:-1] = np.sqrt((n + 1.0) * (2.0 * k + n)) * amp[1:]
    return out


def _su11_up(amp, k):
    """(K+ psi)_n = sqrt(n(2k+n-1)) psi_{n-1}."""
    out = np.zeros_like(amp)
    n = np.arange(1, amp.size, dtype=float)
    out[1:] = np.sqrt(n * (2.0 * k + n - 1.0)) * amp[:-1]
    return out


def _top_mass(amp, levels=2):
    return float(np.sum(np.abs(amp[-levels:]) ** 2))


def _gate_tail(state, max_tail, family):
    if max_tail is not None and state.tail_mass > max_tail:
        raise TruncationError(
            f"{family}: tail mass {state.tail_mass:.3e} exceeds {max_tail:.1e}; "
            f"raise the cutoff N"
        )
    return state


def _gate_residual(res, amp, op_scale, family, floor_factor=50.0):
    """Certify an eigen-equation residual against a truncation-aware floor."""
    N = amp.size
    floor = floor_factor * op_scale * math.sqrt(N * _top_mass(amp))
    bound = max(1e-8, floor)
    if res > bound:
        raise NumericError(
            f"{family}: eigen-equation residual {res:.3e} exceeds {bound:.3e}"
        )
    return res


# ---------------------------------------------------------------------------
# canonical (Fock-basis) families
# ---------------------------------------------------------------------------

def glauber(alpha, N=None):
    """Coherent state |alpha>: eigenstate of a, minimal and isotropic spread.

    Amplitudes follow c_{n+1} = c_n alpha/sqrt(n+1) with the exact
    exp(-|alpha|^2/2) prefactor, then a numerical renormalization mops up
    the truncated tail.
    """
    alpha = complex(alpha)
    if N is None:
        N = DEFAULT_FOCK_CUTOFF
    aa = abs(alpha)
    if N < aa * aa + 10.0 * aa + 20.0:
        raise TruncationError(
            f"glauber: cutoff N={N} too small for |alpha|={aa:.3g} "
            f"(need at least |alpha|^2 + 10|alpha| + 20)"
        )
    amp = np.empty(N, dtype=np.complex128)
    amp[0] = 1.0
    for n in range(1, N):
        amp[n] = amp[n - 1] * alpha / math.sqrt(n)
    amp *= math.exp(-0.5 * aa * aa)
    amp /= np.linalg.norm(amp)
    state = StateVector(amp, fock_basis(N), family="glauber",
                        params={"alpha": alpha})
    res = float(np.linalg.norm(_shift_down(amp) - alpha * amp))
    _gate_residual(res, amp, max(1.0, aa), "glauber")
    return state


def _stoler_phase(u, v):
    """Squeeze angle zeta for the exponential route.

    The generator exp(zeta K+ - conj(zeta) K-) with |zeta| = arccosh|u| and
    arg zeta = arg v - arg u + pi turns u a + v a^dag into e^{i arg u} a
    under conjugation, which is what makes the construction an exact
    eigenstate of the pair.
    """
    r = math.acosh(max(1.0, abs(u)))
    if abs(v) == 0.0 or r == 0.0:
        return 0.0 + 0.0j
    phi = cmath.phase(v) - cmath.phase(u) + math.pi
    return r * cmath.exp(1j * phi)


@lru_cache(maxsize=32)
def _real_squeeze_matrix(r, N):
    """exp(r (a^dag^2 - a^2)/2) on N levels; the complex-angle squeeze is
    a number-phase conjugation of this: S(r e^{i phi}) = R(-phi/2) S(r) R(phi/2)
    with R(chi) = e^{-i chi n}, so grids sharing |zeta| reuse one expm."""
    a = _ladder(N)
    return expm(0.5 * r * (a.T @ a.T - a @ a))


def _apply_squeeze(zeta, vec):
    """S(zeta) vec through the cached real-squeeze matrix."""
    r = abs(zeta)
    phi = cmath.phase(zeta)
    n_idx = np.arange(vec.size)
    pre = np.exp(-0.5j * phi * n_idx)
    post = np.exp(0.5j * phi * n_idx)
    return post * (_real_squeeze_matrix(r, vec.size) @ (pre * vec))


def canonical_ss(alpha, u, v, N=None, max_tail=1e-8):
    """Squeezed coherent state: the normalizable eigenstate of u a + v a^dag.

    Built as e^{i arg u} S(zeta) D(alpha e^{-i arg u}) |0> with the squeeze
    angle from `_stoler_phase`; (u, v) are rescaled to the shell
    |u|^2 - |v|^2 = 1 first.  Raises a truncation error when the certified
    tail mass exceeds ``max_tail``.
    """
    sq = _coerce_squeeze(u, v)
    u, v = sq.u, sq.v
    alpha = complex(alpha)
    if N is None:
        N = DEFAULT_FOCK_CUTOFF
    phase_u = u / abs(u)
    beta = alpha / phase_u

    aa = abs(beta)
    if N < aa * aa + 10.0 * aa + 20.0:
        raise TruncationError(
            f"canonical_ss: cutoff N={N} too small for displacement "
            f"|alpha|={aa:.3g}"
        )

    zeta = _stoler_phase(u, v)
    if beta != 0.0:
        seed = glauber(beta, N).amplitudes
    else:
        seed = np.zeros(N, dtype=np.complex128)
        seed[0] = 1.0
    if zeta == 0.0:
        amp = phase_u * seed
    else:
        amp = phase_u * _apply_squeeze(zeta, seed)
    amp /= np.linalg.norm(amp)

    state = StateVector(
        amp, fock_basis(N), family="canonical_ss",
        params={"alpha": alpha, "u": u, "v": v},
    )
    _gate_tail(state, max_tail, "canonical_ss")
    res = float(np.linalg.norm(u * _shift_down(amp) + v * _shift_up(amp)
                               - alpha * amp))
    _gate_residual(res, amp, abs(u) + abs(v) + abs(alpha), "canonical_ss")
    return state


def squeezed_fock(n, u, v, N=None, max_tail=1e-8):
    """Squeeze applied to the Fock level |n>: eigenstate of A^dag A, A = u a + v a^dag.

    These carry the same second moments in (q, p) direction structure as the
    eigenstates of A itself but saturate nothing beyond the Robertson floor
    for n > 0.
    """
    n = int(n)
    if n < 0:
        raise InvalidInputError(f"squeezed_fock needs n >= 0, got {n}")
    sq = _coerce_squeeze(u, v)
    u, v = sq.u, sq.v
    if N is None:
        N = DEFAULT_FOCK_CUTOFF
    if n >= N // 2:
        raise TruncationError(f"squeezed_fock: level n={n} too close to cutoff N={N}")
    zeta = _stoler_phase(u, v)
    seed = np.zeros(N, dtype=np.complex128)
    seed[n] = 1.0
    amp = seed if zeta == 0.0 else _apply_squeeze(zeta, seed)
    amp /= np.linalg.norm(amp)
    state = StateVector(
        amp, fock_basis(N), family="squeezed_fock",
        params={"n": n, "u": u, "v": v},
    )
    _gate_tail(state, max_tail, "squeezed_fock")
    w = u * _shift_down(amp) + v * _shift_up(amp)
    w = np.conj(u) * _shift_up(w) + np.conj(v) * _shift_down(w)
    res = float(np.linalg.norm(w - float(n) * amp))
    _gate_residual(res, amp, (abs(u) + abs(v)) ** 2 * math.sqrt(N) + n,
                   "squeezed_fock")
    return state


def even_odd_cs(alpha, parity, N=None, max_tail=1e-8):
    """Even/odd coherent states: parity projections of |alpha>, eigenstates of a^2.

    Both carry eigenvalue alpha^2; the odd family needs alpha != 0.
    """
    alpha = complex(alpha)
    if parity not in ("even", "odd"):
        raise InvalidInputError(f"parity must be 'even' or 'odd', got {parity!r}")
    if parity == "odd" and alpha == 0.0:
        raise InvalidInputError("odd projection of the vacuum vanishes identically")
    if N is None:
        N = DEFAULT_FOCK_CUTOFF
    aa = abs(alpha)
    if N < aa * aa + 10.0 * aa + 20.0:
        raise TruncationError(
            f"even_odd_cs: cutoff N={N} too small for |alpha|={aa:.3g}"
        )
    start = 0 if parity == "even" else 1
    amp = np.zeros(N, dtype=np.complex128)
    if aa == 0.0:
        amp[0] = 1.0
    else:
        idx = np.arange(start, N, 2)
        logs = idx * math.log(aa) - 0.5 * np.array(
            [log_gamma(m + 1.0) for m in idx]
        )
        logs -= logs.max()
        phases = np.exp(1j * cmath.phase(alpha) * idx)
        amp[idx] = np.exp(logs) * phases
        amp /= np.linalg.norm(amp)
    state = StateVector(
        amp, fock_basis(N), family="even_odd_cs",
        params={"alpha": alpha, "parity": parity},
    )
    _gate_tail(state, max_tail, "even_odd_cs")
    res = float(np.linalg.norm(_shift_down(_shift_down(amp)) - alpha * alpha * amp))
    _gate_residual(res, amp, max(1.0, aa * aa) * math.sqrt(N), "even_odd_cs")
    return state


# ---------------------------------------------------------------------------
# su(1,1) families on the discrete-series weight basis
# ---------------------------------------------------------------------------

def bg_cs(z, k, N=None):
    """Barut-Girardello state: eigenstate of the lowering generator K-.

    Amplitudes c_n ~ z^n / sqrt(n! Gamma(2k+n)) decay factorially, so any
    reasonable cutoff holds the whole state; a tail gate still certifies it.
    """
    z = complex(z)
    k = float(k)
    if k <= 0:
        raise InvalidInputError(f"Bargmann index must be positive, got k={k}")
    if N is None:
        N = DEFAULT_SU11_CUTOFF
    az = abs(z)
    amp = np.zeros(N, dtype=np.complex128)
    if az == 0.0:
        amp[0] = 1.0
    else:
        n = np.arange(N, dtype=float)
        logs = n * math.log(az) - 0.5 * (
            np.array([log_gamma(m + 1.0) for m in n])
            + np.array([log_gamma(2.0 * k + m) for m in n])
        )
        logs -= logs.max()
        amp = np.exp(logs) * np.exp(1j * cmath.phase(z) * n)
        amp /= np.linalg.norm(amp)
    state = StateVector(amp, su11_basis(k, N), family="bg_cs",
                        params={"z": z, "k": k})
    _gate_tail(state, 1e-8, "bg_cs")
    if _top_mass(amp, 1) > 1e-14:
        raise TruncationError(
            f"bg_cs: top-level amplitude mass {_top_mass(amp, 1):.3e} > 1e-14"
        )
    res = float(np.linalg.norm(_su11_down(amp, k) - z * amp))
    _gate_residual(res, amp, max(1.0, az), "bg_cs")
    return state


def _su11_cs_cutoff(abs_xi, k):
    """Adaptive weight-basis size for |xi| < 1: grow until the level weights
    drop 50 e-folds below their peak (tail mass << 1e-16)."""
    x2 = abs_xi * abs_xi
    if x2 == 0.0:
        return DEFAULT_SU11_CUTOFF
    lw = 0.0
    lw_max = 0.0
    low = 0
    n = 0
    while n < MAX_ADAPTIVE_CUTOFF:
        lw += math.log(x2) + math.log((2.0 * k + n) / (n + 1.0))
        n += 1
        if lw > lw_max:
            lw_max = lw
            low = 0
        elif lw < lw_max - 50.0:
            low += 1
            if low >= 3:
                return max(DEFAULT_SU11_CUTOFF, n + 8)
        else:
            low = 0
    raise TruncationError(
        f"su11_cs: |xi|={abs_xi:.6g}, k={k:.3g} needs more than "
        f"{MAX_ADAPTIVE_CUTOFF} levels"
    )


def su11_cs(xi, k, N=None, max_tail=1e-8):
    """SU(1,1) coherent state |xi; k>, |xi| < 1 on the unit disk.

    Amplitudes c_n ~ xi^n sqrt((2k)_n / n!); the state solves the mixed
    eigen-equation (K- - xi^2 K+) psi = 2 k xi psi exactly, which is the
    residual certified here.  With N omitted the cutoff adapts to |xi|.
    """
    xi = complex(xi)
    k = float(k)
    if k <= 0:
        raise InvalidInputError(f"Bargmann index must be positive, got k={k}")
    ax = abs(xi)
    if ax >= 1.0 - 1e-12:
        raise NormalizabilityError(
            f"su11_cs needs |xi| < 1 (unit disk), got |xi|={ax:.12g}"
        )
    if N is None:
        N = _su11_cs_cutoff(ax, k)
    amp = np.zeros(N, dtype=np.complex128)
    if ax == 0.0:
        amp[0] = 1.0
    else:
        n = np.arange(N, dtype=float)
        lg2k = log_gamma(2.0 * k)
        logs = n * math.log(ax) + 0.5 * (
            np.array([log_gamma(2.0 * k + m) for m in n])
            - lg2k
            - np.array([log_gamma(m + 1.0) for m in n])
        )
        logs -= logs.max()
        amp = np.exp(logs) * np.exp(1j * cmath.phase(xi) * n)
        amp /= np.linalg.norm(amp)
    state = StateVector(amp, su11_basis(k, N), family="su11_cs",
                        params={"xi": xi, "k": k})
    _gate_tail(state, max_tail, "su11_cs")
    res = float(np.linalg.norm(
        _su11_down(amp, k) - xi * xi * _su11_up(amp, k) - 2.0 * k * xi * amp
    ))
    _gate_residual(res, amp, max(1.0, 2.0 * k * ax) * math.sqrt(N), "su11_cs")
    return state


def su11_cs_unitary(zeta, k, N=None):
    """Exponential-route twin of `su11_cs`: exp(zeta K+ - conj(zeta) K-)|k,k>.

    Equals |xi; k> with xi = e^{i arg zeta} tanh|zeta|.  Kept as an
    independent construction so the two routes can cross-check each other.
    """
    zeta = complex(zeta)
    k = float(k)
    if k <= 0:
        raise InvalidInputError(f"Bargmann index must be positive, got k={k}")
    ax = math.tanh(abs(zeta))
    if N is None:
        N = _su11_cs_cutoff(ax, k)
    rep = su11_rep(k, N)
    G = zeta * rep["kplus"].matrix - np.conj(zeta) * rep["kminus"].matrix
    amp = expm(G)[:, 0].astype(np.complex128)
    amp /= np.linalg.norm(amp)
    state = StateVector(amp, su11_basis(k, N), family="su11_cs_unitary",
                        params={"zeta": zeta, "k": k})
    _gate_tail(state, 1e-8, "su11_cs_unitary")
    return state


def su2_cs(tau, j):
    """Spin coherent state on the sphere: c_n ~ tau^n sqrt(C(2j, n)), n = j + m.

    The (2j+1)-dimensional representation is exact, so there is no
    truncation certificate to speak of.
    """
    tau = complex(tau)
    j = float(j)
    basis = su2_basis(j)
    dim = basis.dim
    if tau == 0.0:
        return basis_state(basis, 0)
    n = np.arange(dim, dtype=float)
    twoj = 2.0 * j
    logs = n * math.log(abs(tau)) + 0.5 * (
        log_gamma(twoj + 1.0)
        - np.array([log_gamma(m + 1.0) for m in n])
        - np.array([log_gamma(twoj - m + 1.0) for m in n])
    )
    logs -= logs.max()
    amp = np.exp(logs) * np.exp(1j * cmath.phase(tau) * n)
    amp /= np.linalg.norm(amp)
    return StateVector(amp, basis, family="su2_cs", params={"tau": tau, "j": j})


# ---------------------------------------------------------------------------
# su(1,1) intelligent states: eigenstates of u K- + v K+ + w K3
# ---------------------------------------------------------------------------

def _is_nonpositive_int(x, tol=1e-9):
    """Return n >= 0 with x ~ -n, or None."""
    if abs(x.imag) > tol:
        return None
    r = round(x.real)
    if r > 0 or abs(x.real - r) > tol:
        return None
    return int(-r)

def _intelligent_amplitudes(u, v, w, z, k, l, N):
    """Closed-form components b_n of the u K- + v K+ + w K3 eigenstate.

    Two algebraically equal hypergeometric forms exist, one per root of
    u t^2 + w t + v = 0; evaluation prefers a form whose first parameter is
    a nonpositive integer (the series then terminates after a fixed number
    of cancellation-free terms), otherwise the form with the smaller base.
    """
    branches = []
    for sgn in (+1.0, -1.0):
        base = -(w + sgn * l) / (2.0 * u)
        if abs(w + sgn * l) < 1e-14 * max(abs(w), abs(l), 1e-300):
            continue
        a_par = k + sgn * z / l
        x_arg = sgn * 2.0 * l / (w + sgn * l)
        branches.append((base, a_par, x_arg, _is_nonpositive_int(a_par)))
    if not branches:
        raise DegenerateParameterError(
            "intelligent family: both hypergeometric forms degenerate"
        )
    terminating = [b for b in branches if b[3] is not None]
    if terminating:
        base, a_par, x_arg, n0_int = min(terminating, key=lambda b: abs(b[0]))
        # evaluate at the exact integer: a rounding residue of a few ulp in
        # a_par would keep the series running past its termination point,
        # and those near-zero terms get amplified by m-degree polynomials
        a_par = -float(n0_int)
    else:
        base, a_par, x_arg, _n0 = min(branches, key=lambda b: abs(b[0]))

    n = np.arange(N, dtype=float)
    lg2k = log_gamma(2.0 * k)
    half_log_poch = 0.5 * (
        np.array([log_gamma(2.0 * k + m) for m in n]) - lg2k
        - np.array([log_gamma(m + 1.0) for m in n])
    )
    b = np.empty(N, dtype=np.complex128)
    for m in range(N):
        f = gauss2f1_terminating(a_par, m, 2.0 * k, x_arg)
        b[m] = (base ** m) * math.exp(half_log_poch[m]) * f
    return b


def su11_intelligent(u, v, w, z, k, N=None, max_tail=1e-8):
    """Eigenstate of u K- + v K+ + w K3 with eigenvalue z.

    Normalizability requires a root of u t^2 + w t + v = 0 inside the unit
    disk; outside that region the constructor refuses.  The degenerate case
    l = sqrt(w^2 - 4uv) = 0 collapses onto the SU(1,1) coherent ray with
    xi = -w/(2u) and eigenvalue 0, recovered here through a targeted
    singular-vector solve rather than the (then-singular) closed form.
    """
    u, v, w, z = complex(u), complex(v), complex(w), complex(z)
    k = float(k)
    if k <= 0:
        raise InvalidInputError(f"Bargmann index must be positive, got k={k}")
    scale = max(abs(u), abs(v), abs(w))
    if scale == 0.0:
        raise InvalidInputError("intelligent family needs (u, v, w) != 0")
    if abs(u) <= 1e-12 * scale:
        raise DegenerateParameterError(
            "intelligent family needs u != 0 (no lowering part, "
            "no normalizable eigenstates off the weight basis)"
        )
    disc = w * w - 4.0 * u * v
    # the discriminant is a difference of two order-|w^2|, |4uv| products, so
    # it carries absolute rounding noise near 1e-16 of that scale; the square
    # root amplifies the noise into a ~1e-8 floor on |l|, which is why the
    # double-root classification happens on disc itself
    disc_scale = max(abs(w * w), 4.0 * abs(u) * abs(v))
    l = cmath.sqrt(disc)

    if abs(disc) <= 1e-12 * disc_scale:
        xi = -w / (2.0 * u)
        if abs(xi) >= 1.0 - 1e-12:
            raise NormalizabilityError(
                f"degenerate intelligent family: coherent ray |xi|={abs(xi):.6g} "
                f"outside the unit disk"
            )
        if abs(z) > 1e-8 * scale:
            raise InvalidInputError(
                f"degenerate intelligent family carries only eigenvalue 0, "
                f"requested z={z}"
            )
        if N is None:
            N = _su11_cs_cutoff(abs(xi), k)
        rep = su11_rep(k, N)
        M = (u * rep["kminus"].matrix + v * rep["kplus"].matrix
             + w * rep["k3"].matrix)
        amp, res = targeted_eigenvector(M, z)
        first = np.argmax(np.abs(amp) > 1e-8)
        amp = amp * (np.conj(amp[first]) / abs(amp[first]))
        state = StateVector(
            amp, su11_basis(k, N), family="su11_intelligent",
            params={"u": u, "v": v, "w": w, "z": z, "k": k,
                    "degenerate": True},
        )
        _gate_tail(state, max_tail, "su11_intelligent")
        _gate_residual(res / scale, amp, math.sqrt(N) * (1.0 + k),
                       "su11_intelligent")
        return state

    roots = ((-w + l) / (2.0 * u), (-w - l) / (2.0 * u))
    if min(abs(roots[0]), abs(roots[1])) >= 1.0 - 1e-12:
        raise NormalizabilityError(
            f"intelligent family not normalizable: characteristic roots "
            f"|t1|={abs(roots[0]):.6g}, |t2|={abs(roots[1]):.6g} both outside "
            f"the unit disk"
        )

    grow = N is None
    if grow:
        N = _su11_cs_cutoff(min(min(abs(roots[0]), abs(roots[1])) + 0.05, 0.999), k)
    grown = False
    while True:
        b = _intelligent_amplitudes(u, v, w, z, k, l, N)
        nb = np.linalg.norm(b)
        if nb == 0.0 or not np.all(np.isfinite(b)):
            raise NumericError(
                "intelligent family: closed-form amplitudes over/underflowed"
            )
        amp = b / nb
        top = _top_mass(amp)
        if not grow or top <= 1e-18:
            break
        # When one characteristic root sits outside the disk the spectrum is
        # discrete; a wrong z shows up as amplitudes that refuse to decay no
        # matter how far the basis grows.
        if grown and top > 1e-6:
            raise NormalizabilityError(
                f"su11_intelligent: no normalizable eigenstate at z={z} "
                f"(amplitude mass persists at every cutoff)"
            )
        if N >= MAX_ADAPTIVE_CUTOFF:
            raise TruncationError(
                f"su11_intelligent: amplitudes still carry mass at "
                f"N={N}; parameters sit too close to the normalizability edge"
            )
        N = min(2 * N, MAX_ADAPTIVE_CUTOFF)
        grown = True

    state = StateVector(
        amp, su11_basis(k, N), family="su11_intelligent",
        params={"u": u, "v": v, "w": w, "z": z, "k": k, "degenerate": False},
    )
    _gate_tail(state, max_tail, "su11_intelligent")
    res = float(np.linalg.norm(
        u * _su11_down(amp, k) + v * _su11_up(amp, k)
        + w * (k + np.arange(N)) * amp - z * amp
    )) / scale
    _gate_residual(res, amp, math.sqrt(N) * (1.0 + k + abs(z) / scale),
                   "su11_intelligent")
    return state


def su11_intelligent_spectrum(u, v, w, k, count=8):
    """Physical eigenvalues z_n = l (k + n) of the Hermitian-normalizable
    family (Im w = 0, v = conj(u), w^2 > 4|u|^2), lowest ``count`` levels."""
    u, v, w = complex(u), complex(v), complex(w)
    k = float(k)
    if abs(w.imag) > 1e-12 * max(1.0, abs(w)) or abs(v - np.conj(u)) > 1e-12 * max(1.0, abs(u)):
        raise InvalidInputError(
            "discrete spectrum formula applies to the Im w = 0, v = conj(u) family"
        )
    disc = w.real ** 2 - 4.0 * abs(u) ** 2
    if disc <= 0.0:
        raise NormalizabilityError(
            f"family needs w^2 > 4|u|^2 for normalizable eigenstates, "
            f"got w^2 - 4|u|^2 = {disc:.6g}"
        )
    l = math.sqrt(disc) * (1.0 if w.real > 0 else -1.0)
    return [l * (k + n) for n in range(count)]
