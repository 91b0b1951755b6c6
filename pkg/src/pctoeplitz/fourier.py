"""Matrix Fourier coefficients a_k = (1/2pi) int_0^{2pi} a(e^{i theta}) e^{-ik theta} d theta.

Single-factor symbols with closed forms (jump, Laurent polynomial, piecewise
constant) are tabulated exactly. Everything else goes through composite
Gauss-Legendre quadrature on panels whose boundaries include every jump
point, so each panel integrand is smooth; the panel count doubles until two
refinements agree.
"""
from dataclasses import dataclass
import math

import numpy as np
import scipy.linalg

from .errors import BranchFailure, InvalidInput, QuadratureNonConvergence
from .jumps import arcs_of
from .symbols import Jump, Laurent, PiecewiseConstant, TWO_PI, as_square, as_theta

DEFAULT_TOL = 1e-12
DEFAULT_ORDER = 32
MAX_LEVELS = 10
NOISE_FLOOR = 1e-13
_CHUNK = 4096


@dataclass(frozen=True, eq=False)
class FourierTable:
    N: int
    K: int
    coeffs: np.ndarray  # shape (2K+1, N, N); offset k lives at index k + K
    est_tail: float
    decay_exponent: float

    def __getitem__(self, k):
        if abs(k) > self.K:
            raise IndexError(f"offset {k} outside [-{self.K}, {self.K}]")
        return self.coeffs[k + self.K]

    def to_json(self):
        from .schema import encode_matrix

        return {
            "N": self.N,
            "K": self.K,
            "coeffs": {str(k): encode_matrix(self[k]) for k in range(-self.K, self.K + 1)},
            "est_tail": self.est_tail,
            "decay_exponent": None if math.isinf(self.decay_exponent) else self.decay_exponent,
        }


def _sin_pi(B):
    return (scipy.linalg.expm(1j * np.pi * B) - scipy.linalg.expm(-1j * np.pi * B)) / 2j


def _jump_coeff_unrotated(B, k, eig, sinB):
    """f_k(B) for f_k(z) = sin(pi z) / (pi (z - k)), an entire function."""
    N = B.shape[0]
    if np.min(np.abs(eig - k)) > 1.0:
        # f_k(B) = sin(pi B) (pi (B - k))^{-1}; the two factors commute
        F = np.linalg.solve((B - k * np.eye(N)).T, sinB.T).T / np.pi
    else:
        # divided difference: the (1,2) block of g([[B, I], [0, k]]) is
        # (g(z) - g(k)) / (z - k) evaluated at B, here with g(k) = 0
        A = np.zeros((2 * N, 2 * N), dtype=complex)
        A[:N, :N] = B
        A[:N, N:] = np.eye(N)
        A[N:, N:] = k * np.eye(N)
        F = (_sin_pi(A) / np.pi)[:N, N:]
    resid = np.max(np.abs(F @ (B - k * np.eye(N)) - sinB / np.pi)) if N else 0.0
    if not np.all(np.isfinite(F)) or resid > 1e-10 * max(1.0, np.max(np.abs(sinB))):
        raise BranchFailure("jump Fourier coefficient is ill-conditioned", k=int(k))
    return F


def fourier_jump(B, tau, k):
    """k-th Fourier coefficient of u_{B,tau}: tau^{-k} sin(pi B) / (pi (B - k))."""
    B = np.array(as_square(B))
    theta = as_theta(tau)
    eig = np.linalg.eigvals(B)
    F = _jump_coeff_unrotated(B, int(k), eig, _sin_pi(B))
    return np.exp(-1j * k * theta) * F


def _jump_table(B, theta, K):
    B = np.array(B)
    eig = np.linalg.eigvals(B)
    sinB = _sin_pi(B)
    ks = np.arange(-K, K + 1)
    out = np.stack([_jump_coeff_unrotated(B, int(k), eig, sinB) for k in ks])
    return np.exp(-1j * ks * theta)[:, None, None] * out


def _laurent_table(f, K):
    out = np.zeros((2 * K + 1, f.N, f.N), dtype=complex)
    for k, a in f.coeffs.items():
        if abs(k) <= K:
            out[k + K] = a
    return out


def _piecewise_constant_table(f, K):
    ks = np.arange(-K, K + 1)
    out = np.zeros((2 * K + 1, f.N, f.N), dtype=complex)
    for i, (a, _, v) in enumerate(f.arcs):
        if len(f.arcs) == 1:
            length = TWO_PI
        else:
            length = (f.arcs[(i + 1) % len(f.arcs)][0] - a) % TWO_PI
        b = a + length
        w = np.empty(ks.size, dtype=complex)
        nz = ks != 0
        w[~nz] = length / TWO_PI
        w[nz] = (np.exp(-1j * ks[nz] * a) - np.exp(-1j * ks[nz] * b)) / (TWO_PI * 1j * ks[nz])
        out += w[:, None, None] * v
    return out


def _panels(arcs, per_arc, order):
    x, w = np.polynomial.legendre.leggauss(order)
    nodes, weights = [], []
    for (a, b), P in zip(arcs, per_arc):
        edges = np.linspace(a, b, P + 1)
        half = np.diff(edges) / 2
        mid = (edges[:-1] + edges[1:]) / 2
        nodes.append((mid[:, None] + half[:, None] * x).ravel())
        weights.append((half[:, None] * w).ravel())
    return np.concatenate(nodes), np.concatenate(weights)


def _project(nodes, weighted, ks):
    acc = np.zeros((ks.size, weighted.shape[1]), dtype=complex)
    for s in range(0, nodes.size, _CHUNK):
        E = np.exp(-1j * np.outer(ks, nodes[s:s + _CHUNK]))
        acc += E @ weighted[s:s + _CHUNK]
    return acc / TWO_PI


def _quadrature_table(sym, K, tol, order):
    N = sym.N
    arcs = arcs_of(sym.jump_thetas)
    ks = np.arange(-K, K + 1)
    # start with at most ~order/2 radians of phase of e^{-iK theta} per panel
    per_arc = [max(1, math.ceil(2.0 * K * (b - a) / order)) for a, b in arcs]
    prev = None
    for _ in range(MAX_LEVELS):
        nodes, weights = _panels(arcs, per_arc, order)
        vals = sym.values(nodes % TWO_PI).reshape(nodes.size, N * N)
        scale = max(1.0, float(np.max(np.abs(vals))))
        coeffs = _project(nodes, weights[:, None] * vals, ks)
        if prev is not None:
            diff = np.max(np.abs(coeffs - prev), axis=1)
            if diff.max() <= tol * scale:
                return coeffs.reshape(ks.size, N, N)
        prev = coeffs
        per_arc = [2 * p for p in per_arc]
    worst = int(ks[np.argmax(diff)])
    raise QuadratureNonConvergence("panel refinement did not settle", worst_k=worst,
                                   difference=float(diff.max()))


def fit_decay(coeffs, K):
    """(C, p) with ||a_k|| ~ C |k|^p fitted on |k| in [K/4, K].

    Uses the decreasing envelope max_{k' >= k} ||a_{+-k'}|| so that
    oscillating coefficient sequences are not biased by near-zeros. Returns
    p = -inf when the coefficients sink below the noise floor.
    """
    ks = np.arange(1, K + 1)
    norms = np.maximum(
        np.abs(coeffs[K + ks]).max(axis=(1, 2)), np.abs(coeffs[K - ks]).max(axis=(1, 2))
    )
    env = np.maximum.accumulate(norms[::-1])[::-1]
    sel = (ks >= max(2, K // 4)) & (env > NOISE_FLOOR)
    if sel.sum() < 4:
        return 0.0, -math.inf
    p, logC = np.polyfit(np.log(ks[sel]), np.log(env[sel]), 1)
    return float(math.exp(logC)), float(p)


def fourier_table(sym, K, tol=DEFAULT_TOL, order=DEFAULT_ORDER):
    """Coefficients a_k of ``sym`` for k in [-K, K], each accurate to ``tol``."""
    K = int(K)
    if K < 1:
        raise InvalidInput("K must be at least 1")
    if len(sym.factors) == 1 and isinstance(sym.factors[0], Jump):
        f = sym.factors[0]
        coeffs = _jump_table(f.B, f.theta, K)
    elif len(sym.factors) == 1 and isinstance(sym.factors[0], Laurent):
        coeffs = _laurent_table(sym.factors[0], K)
    elif len(sym.factors) == 1 and isinstance(sym.factors[0], PiecewiseConstant):
        coeffs = _piecewise_constant_table(sym.factors[0], K)
    else:
        coeffs = _quadrature_table(sym, K, tol, order)
    C, p = fit_decay(coeffs, K)
    return FourierTable(sym.N, K, coeffs, C, p)
