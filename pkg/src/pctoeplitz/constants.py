"""Asymptotic constants G, Omega and the Barnes part of E."""
from dataclasses import dataclass
import cmath
import math

import numpy as np

from .errors import IndexNonzero, PoleOfBarnes, QuadratureNonConvergence, RouteMismatch, UnwindFailure
from .factorization import factorize
from .jumps import analyze_jumps, arcs_of
from .special import log_barnes_pair
from .symbols import MINUS, PLUS, TWO_PI
from .winding import fredholm_index, scalar_c

G_TOL = 1e-13
OMEGA_TOL = 1e-10
GL_ORDER = 32
MAX_LEVELS = 10


@dataclass(frozen=True)
class AsymptoticConstants:
    G: complex
    Omega: complex
    E_barnes: complex
    log_G: complex
    log_E_barnes: complex = 0j

    def to_json(self):
        from .schema import SCHEMA_VERSION, encode_complex

        return {
            "schema_version": SCHEMA_VERSION,
            "G": encode_complex(self.G),
            "log_G": encode_complex(self.log_G),
            "Omega": encode_complex(self.Omega),
            "E_barnes": encode_complex(self.E_barnes),
            "log_E_barnes": encode_complex(self.log_E_barnes),
        }


def _det(M):
    return np.linalg.det(M) if M.shape[-1] > 1 else M[..., 0, 0]


def _mean_log_det(sym, panels):
    """Mean of a continuous branch of log det sym; panels per arc between declared jumps."""
    x, w = np.polynomial.legendre.leggauss(GL_ORDER)
    ts, ws, ds = [], [], []
    for a, b in arcs_of(sym.jump_thetas):
        edges = np.linspace(a, b, panels + 1)
        half = np.diff(edges) / 2
        mid = (edges[:-1] + edges[1:]) / 2
        nodes = (mid[:, None] + half[:, None] * x).ravel()
        # endpoints carry zero weight but anchor the phase across the arc boundary
        ts.append(np.concatenate([[a], nodes, [b]]))
        ws.append(np.concatenate([[0.0], (half[:, None] * w).ravel(), [0.0]]))
        d = np.empty(nodes.size + 2, dtype=complex)
        d[0] = _det(sym.limit(a % TWO_PI, PLUS))
        d[1:-1] = _det(sym.values(nodes % TWO_PI))
        d[-1] = _det(sym.limit(b % TWO_PI, MINUS))
        ds.append(d)
    d = np.concatenate(ds)
    if np.any(d == 0) or not np.all(np.isfinite(d)):
        raise UnwindFailure("det vanishes on the circle")
    steps = np.angle(d[1:] / d[:-1])
    if np.max(np.abs(steps)) >= np.pi / 2:
        return None
    phase = np.angle(d[0]) + np.concatenate([[0.0], np.cumsum(steps)])
    wrap = (phase[-1] - phase[0]) / TWO_PI
    if abs(wrap) > 0.5:
        raise UnwindFailure("det has nonzero winding; no continuous logarithm",
                            winding=int(round(wrap)))
    logd = np.log(np.abs(d)) + 1j * phase
    return complex(np.dot(np.concatenate(ws), logd) / TWO_PI)


def compute_G(phi0, tol=G_TOL):
    """(G, log G) with log G the mean of the continuous log det phi0 over the circle."""
    panels = 2
    prev = None
    for _ in range(MAX_LEVELS):
        cur = _mean_log_det(phi0, panels)
        if cur is not None and prev is not None and abs(cur - prev) <= tol * max(1.0, abs(cur)):
            return cmath.exp(cur), cur
        prev = cur
        panels *= 2
    if prev is None:
        raise UnwindFailure("argument of det could not be tracked")
    raise QuadratureNonConvergence("mean of log det did not settle")


def compute_G_from_c(sym, jumps=None, tol=G_TOL):
    """G from the scalar function c, which agrees with det phi0."""
    return compute_G(scalar_c(sym, jumps), tol)


def compute_Omega(jumps):
    """-sum of squared exponents, cross-checked against -sum tr(L_k^2)."""
    by_eig = -sum(complex(np.sum(j.betas ** 2)) for j in jumps)
    by_trace = -sum(complex(np.trace(j.L @ j.L)) for j in jumps)
    if abs(by_eig - by_trace) > OMEGA_TOL * max(1.0, abs(by_eig)):
        raise RouteMismatch("Omega routes disagree", eigenvalues=[by_eig.real, by_eig.imag],
                            traces=[by_trace.real, by_trace.imag])
    return by_eig


def log_barnes_factor(jumps):
    total = 0j
    for j in jumps:
        for beta in j.betas:
            if abs(beta.real) >= 0.5:
                raise PoleOfBarnes("exponent outside the strip |Re beta| < 1/2", beta=repr(beta))
            total += log_barnes_pair(beta)
    return total


def barnes_factor(jumps):
    """prod_k prod_j G(1 + beta) G(1 - beta)."""
    return cmath.exp(log_barnes_factor(jumps))


def asymptotic_constants(sym, jumps=None, fact=None):
    """G, Omega and the Barnes factor for an I-regular symbol of index zero."""
    if jumps is None:
        jumps = analyze_jumps(sym)
    kappa = -fredholm_index(sym, jumps)
    if kappa != 0:
        raise IndexNonzero("I-winding number is nonzero", winding=kappa)
    if fact is None:
        fact = factorize(sym, jumps)
    G, log_G = compute_G(fact.phi0)
    log_E = log_barnes_factor(jumps)
    return AsymptoticConstants(G, compute_Omega(jumps), cmath.exp(log_E), log_G, log_E)


def omega_closed_form_xy(lam):
    """Omega = -2 beta^2 for beta = log((lam+1)/(lam-1)) / (2 pi i)."""
    beta = math.log((lam + 1) / (lam - 1)) / (2j * math.pi)
    return -2 * beta**2
