"""Uncertainty relations as signed gaps (LHS - RHS), with saturation flags.

Three pairwise relations of increasing precision are tracked per observable
pair, alongside the characteristic-coefficient family for n observables:

    sum:   (DX)^2 + (DY)^2 >= |<[X,Y]>|
    prod:  (DX)^2 (DY)^2   >= |<[X,Y]>|^2 / 4
    schr:  (DX)^2 (DY)^2 - (DXY)^2 >= |<[X,Y]>|^2 / 4

and for the full set, C_r(sigma) >= C_r(C) for r = 1..n, where C_r is the
sum of r x r principal minors (r = n is the Robertson determinant form).
Extended variants sum the moment matrices of several states entrywise
*before* taking coefficients — det of a sum is not the sum of dets, which
is what makes them genuinely new constraints.
"""

from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import (
    BasisMismatchError,
    InvalidInputError,
    NumericError,
    TruncationError,
)
from .hilbert import StateVector
from .matrixkit import char_coeffs
from .moments import ObservableSet, moment_report

__all__ = [
    "PairGapRecord",
    "OrderGapRecord",
    "ComplementaryPair",
    "URReport",
    "pair_ur_gaps",
    "char_ur_report",
    "two_state_schrodinger",
    "one_observable_two_state",
    "complementary",
]

#: relative saturation tolerance (matches dense-eigensolve accuracy at N <= 128)
SATURATION_RTOL = 1e-9

#: extended relations accept this many states at most
MAX_EXTENDED_STATES = 8


def _saturated(lhs, rhs, scale=0.0):
    # bool() keeps numpy scalars out of the records, which must stay
    # JSON-serializable as-is
    return bool(abs(lhs - rhs) <= SATURATION_RTOL * max(abs(lhs), abs(rhs), scale, 1e-30))


@dataclass(frozen=True)
class PairGapRecord:
    labels: tuple
    sum_gap: float
    heis_gap: float
    schr_gap: float
    saturated: dict

    def to_json_dict(self):
        return {
            "labels": list(self.labels),
            "sum_gap": self.sum_gap,
            "heis_gap": self.heis_gap,
            "schr_gap": self.schr_gap,
            "saturated": dict(self.saturated),
        }


@dataclass(frozen=True)
class OrderGapRecord:
    r: int
    c_sigma: float
    c_comm: float
    gap: float
    saturated: bool

    def to_json_dict(self):
        return {
            "c_sigma": self.c_sigma,
            "c_comm": self.c_comm,
            "gap": self.gap,
            "saturated": self.saturated,
        }


@dataclass(frozen=True)
class ComplementaryPair:
    r: int
    alpha_r: float
    P_sq: float
    V_sq: float

    def to_json_dict(self):
        return {"r": self.r, "alpha": self.alpha_r,
                "P2": self.P_sq, "V2": self.V_sq}


@dataclass
class URReport:
    observables: list
    order_gaps: dict
    pair_gaps: dict
    n_states: int
    complementary: ComplementaryPair | None = None

    def to_json_dict(self):
        doc = {
            "observables": list(self.observables),
            "n_states": self.n_states,
            "orders": {str(r): rec.to_json_dict()
                       for r, rec in sorted(self.order_gaps.items())},
            "pairs": {f"{i},{j}": rec.to_json_dict()
                      for (i, j), rec in sorted(self.pair_gaps.items())},
        }
        if self.complementary is not None:
            doc["complementary"] = self.complementary.to_json_dict()
        return doc


def _pair_record(sigma2, comm2, labels):
    s11, s22, s12 = sigma2[0, 0], sigma2[1, 1], sigma2[0, 1]
    c12 = comm2[0, 1]
    tr2 = s11 + s22
    sum_gap = tr2 - 2.0 * abs(c12)
    heis_gap = s11 * s22 - c12 * c12
    schr_gap = heis_gap - s12 * s12
    prod_scale = (tr2 / 2.0) ** 2
    flags = {
        "sum": _saturated(tr2, 2.0 * abs(c12), tr2),
        "heis": _saturated(s11 * s22, c12 * c12, prod_scale),
        "schr": _saturated(s11 * s22 - s12 * s12, c12 * c12, prod_scale),
    }
    return PairGapRecord(tuple(labels), float(sum_gap), float(heis_gap),
                         float(schr_gap), flags)


def pair_ur_gaps(X, Y, state, max_tail=1e-8):
    """Evaluate the three pairwise relations for observables (X, Y)."""
    obs = ObservableSet([X, Y])
    rep = moment_report(obs, state, max_tail=max_tail)
    return _pair_record(rep.sigma, rep.commut, obs.labels)


def char_ur_report(obs, states, max_tail=1e-8):
    """Characteristic-coefficient gaps C_r(sigma) - C_r(C) for r = 1..n.

    ``states`` is a single state or a sequence of 1..8; with several states
    the sigma and C matrices are summed entrywise first, which yields the
    state-extended inequalities.  Pairwise gap records for every observable
    pair (computed from the same summed matrices) ride along.
    """
    if obs.n < 2:
        raise InvalidInputError("characteristic relations need at least 2 observables")
    try:
        state_list = list(states)
    except TypeError:
        state_list = [states]
    if not 1 <= len(state_list) <= MAX_EXTENDED_STATES:
        raise InvalidInputError(
            f"extended relations accept 1..{MAX_EXTENDED_STATES} states, "
            f"got {len(state_list)}"
        )

    n = obs.n
    sigma_sum = np.zeros((n, n))
    comm_sum = np.zeros((n, n))
    for st in state_list:
        rep = moment_report(obs, st, max_tail=max_tail)
        sigma_sum += rep.sigma
        comm_sum += rep.commut

    cs = char_coeffs(sigma_sum.astype(complex))
    cc = char_coeffs((comm_sum.astype(complex)))
    mean_var = float(np.trace(sigma_sum)) / n
    order_gaps = {}
    for r in range(1, n + 1):
        c_sigma = float(cs[r].real)
        c_comm = float(cc[r].real)
        scale = comb(n, r) * mean_var ** r
        order_gaps[r] = OrderGapRecord(
            r, c_sigma, c_comm, c_sigma - c_comm,
            _saturated(c_sigma, c_comm, scale),
        )

    pair_gaps = {}
    for i in range(n):
        for j in range(i + 1, n):
            idx = np.ix_([i, j], [i, j])
            pair_gaps[(i, j)] = _pair_record(
                sigma_sum[idx], comm_sum[idx],
                (obs.labels[i], obs.labels[j]),
            )

    return URReport(obs.labels, order_gaps, pair_gaps, len(state_list))


def two_state_schrodinger(X, Y, state1, state2, max_tail=1e-8):
    """Two-state precise relation: signed gap of

    (1/2)[DXX(1) DYY(2) + DXX(2) DYY(1)] >= DXY(1) DXY(2) + C12(1) C12(2)

    which reduces exactly to the single-state schr gap when the states
    coincide.
    """
    obs = ObservableSet([X, Y])
    r1 = moment_report(obs, state1, max_tail=max_tail)
    r2 = moment_report(obs, state2, max_tail=max_tail)
    lhs = 0.5 * (r1.sigma[0, 0] * r2.sigma[1, 1] + r2.sigma[0, 0] * r1.sigma[1, 1])
    rhs = r1.sigma[0, 1] * r2.sigma[0, 1] + r1.commut[0, 1] * r2.commut[0, 1]
    return float(lhs - rhs)


def one_observable_two_state(X, state1, state2, max_tail=1e-8):
    """Schwarz-type relation for one observable and two pure states:

    <1|X^2|1><2|X^2|2> >= |<1|X^2|2>|^2   (gap returned signed).
    """
    for st in (state1, state2):
        if not isinstance(st, StateVector):
            raise InvalidInputError(
                "one_observable_two_state is defined for pure states"
            )
        if st.basis != X.basis:
            raise BasisMismatchError("state basis does not match observable basis")
        if max_tail is not None and st.tail_mass > max_tail:
            raise TruncationError(
                f"state tail mass {st.tail_mass:.3e} exceeds {max_tail:.1e}"
            )
    if not X.is_hermitian():
        raise InvalidInputError(f"observable {X.label!r} is not Hermitian")
    y1 = X.matrix @ state1.amplitudes
    y2 = X.matrix @ state2.amplitudes
    e1 = float(np.vdot(y1, y1).real)
    e2 = float(np.vdot(y2, y2).real)
    cross = np.vdot(y1, y2)
    return e1 * e2 - abs(cross) ** 2


def complementary(report, r, alpha_r):
    """Complementary split of the order-r characteristic pair:

    P^2 = 1 - C_r(sigma)/alpha_r  (predictability),
    V^2 = C_r(C)/alpha_r          (commutator visibility),

    bounded by P^2 + V^2 <= 1 whenever alpha_r >= C_r(sigma).
    """
    if r not in report.order_gaps:
        raise InvalidInputError(f"report carries no order r={r}")
    rec = report.order_gaps[r]
    if alpha_r <= 0.0:
        raise InvalidInputError(f"scale alpha_r must be positive, got {alpha_r}")
    if alpha_r < rec.c_sigma * (1.0 - 1e-12) - 1e-30:
        raise InvalidInputError(
            f"invalid scale: alpha_r={alpha_r:.6g} < C_{r}(sigma)={rec.c_sigma:.6g}"
        )
    p_sq = 1.0 - rec.c_sigma / alpha_r
    v_sq = rec.c_comm / alpha_r
    for name, val in (("P^2", p_sq), ("V^2", v_sq)):
        if val < -1e-12 or val > 1.0 + 1e-12:
            raise NumericError(f"{name}={val!r} escaped [0,1]")
    p_sq = min(max(p_sq, 0.0), 1.0)
    v_sq = min(max(v_sq, 0.0), 1.0)
    if p_sq + v_sq > 1.0 + 1e-12:
        raise NumericError(
            f"complementary pair violates P^2 + V^2 <= 1: {p_sq + v_sq!r}"
        )
    pair = ComplementaryPair(int(r), float(alpha_r), p_sq, v_sq)
    report.complementary = pair
    return pair
