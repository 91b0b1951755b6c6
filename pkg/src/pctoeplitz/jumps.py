"""Jump ratios, branch-controlled matrix logarithms and I-regularity, I = (-1/2, 1/2)."""
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import BoundaryCase, BranchFailure, NotIRegular, SingularValue
from .symbols import (
    MINUS, PLUS, SINGULAR_RTOL, TWO_PI, UnitPoint, as_square, as_theta,
)

# eigenvalues of a jump ratio this close to (-inf, 0] put some Re(beta) at +-1/2
BOUNDARY_TOL = 1e-10
ROUNDTRIP_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class JumpAnalysis:
    tau: UnitPoint
    ratio: np.ndarray
    L: np.ndarray
    betas: np.ndarray
    margin: float

    @property
    def theta(self):
        return self.tau.theta

    @property
    def trace(self):
        return complex(np.trace(self.L))


def _sigma_ratio(M):
    s = np.linalg.svd(M, compute_uv=False)
    if not np.all(np.isfinite(s)):
        return np.zeros(s.shape[:-1])
    return s[..., -1] / np.maximum(s[..., 0], 1.0)


def jump_ratio(sym, tau):
    """phi(tau+0)^{-1} phi(tau-0)."""
    theta = as_theta(tau)
    limits = {}
    for name, side in (("plus", PLUS), ("minus", MINUS)):
        try:
            M = sym.limit(theta, side)
        except SingularValue:
            M = None
        if M is None or _sigma_ratio(M) <= SINGULAR_RTOL:
            raise NotIRegular(
                f"one-sided limit phi(tau{'+' if side > 0 else '-'}0) is singular",
                condition="b", theta=theta, side=name,
            )
        limits[side] = M
    return np.linalg.solve(limits[PLUS], limits[MINUS])


def _distance_to_negative_axis(lam):
    return abs(lam.imag) if lam.real <= 0 else abs(lam)


def principal_log_2pii(ratio, theta=None):
    """(L, betas) with L = log(ratio)/(2 pi i), principal branch.

    The principal logarithm exists iff no eigenvalue of ``ratio`` lies on
    (-inf, 0]; then every eigenvalue beta of L has |Re beta| < 1/2.
    ``betas`` are sorted by (Re, Im) with multiplicities kept.
    """
    R = np.array(as_square(ratio), dtype=complex)
    if not np.all(np.isfinite(R)) or _sigma_ratio(R) <= SINGULAR_RTOL:
        raise NotIRegular("jump ratio is singular", condition="b", theta=theta)
    T, _ = scipy.linalg.schur(R, output="complex")
    eig = np.diag(T)
    for lam in eig:
        if _distance_to_negative_axis(lam) <= BOUNDARY_TOL * max(1.0, abs(lam)):
            raise BoundaryCase(
                "jump ratio has an eigenvalue on the negative real half-line "
                "(exponent with real part +-1/2); outside the hypotheses",
                theta=theta, eigenvalue=repr(complex(lam)),
            )
    logR, _ = scipy.linalg.logm(R, disp=False)
    L = np.asarray(logR, dtype=complex) / (2j * np.pi)
    back = scipy.linalg.expm(2j * np.pi * L)
    err = np.max(np.abs(back - R))
    if not np.isfinite(err) or err > ROUNDTRIP_TOL * max(1.0, np.max(np.abs(R))):
        raise BranchFailure("matrix logarithm failed the exp round trip", theta=theta, error=float(err))
    betas = np.log(eig) / (2j * np.pi)
    betas = betas[np.lexsort((betas.imag, betas.real))]
    return L, betas


def analyze_at(sym, tau):
    theta = as_theta(tau)
    ratio = jump_ratio(sym, theta)
    L, betas = principal_log_2pii(ratio, theta=theta)
    margin = 0.5 - float(np.max(np.abs(betas.real)))
    return JumpAnalysis(UnitPoint(theta), ratio, L, betas, margin)


def arcs_of(thetas):
    """Consecutive (start, end) pairs, end unwrapped above start; full circle if empty."""
    thetas = sorted(thetas)
    if not thetas:
        return [(0.0, TWO_PI)]
    ends = thetas[1:] + [thetas[0] + TWO_PI]
    return list(zip(thetas, ends))


def check_condition_a(sym, samples_per_arc=512, refine_rounds=10):
    """Sample sigma_min/sigma_max of sym on every open arc; raise NotIRegular('a')."""
    for a, b in arcs_of(sym.jump_thetas):
        h = (b - a) / samples_per_arc
        theta = a + h * (np.arange(samples_per_arc) + 0.5)
        r = _sigma_ratio(sym.values(theta % TWO_PI))
        i = int(np.argmin(r))
        t_min, r_min = theta[i], r[i]
        for _ in range(refine_rounds):
            lo, hi = max(a, t_min - h), min(b, t_min + h)
            h = (hi - lo) / 64
            local = lo + h * (np.arange(64) + 0.5)
            rl = _sigma_ratio(sym.values(local % TWO_PI))
            j = int(np.argmin(rl))
            if rl[j] < r_min:
                t_min, r_min = local[j], rl[j]
        if r_min <= SINGULAR_RTOL:
            raise NotIRegular("symbol is not invertible on an arc", condition="a",
                              theta=float(t_min % TWO_PI))


def analyze_jumps(sym, check_a=True):
    """One JumpAnalysis per declared jump point, counterclockwise from the smallest angle."""
    if check_a:
        check_condition_a(sym)
    return [analyze_at(sym, t) for t in sym.jump_thetas]
