"""I-winding number, the scalar companion function c and the Fredholm index.

Two independent routes to the same integer:

* ``winding_I``: -sum_k tr L_k + (1/2 pi i) sum over arcs of the continuous
  increment of log det phi between consecutive jumps;
* ``winding_c``: winding of c = det phi / prod_k u_{tr L_k, tau_k}, which is
  continuous on the whole circle.

Both consume the same ``JumpAnalysis`` records so they see identical branch
choices for the logarithms at the jumps.
"""
from dataclasses import dataclass

import numpy as np

from .errors import NonIntegerWinding, ResidualJump, RouteMismatch, UnwindFailure
from .jumps import analyze_jumps, arcs_of
from .symbols import MINUS, PLUS, TWO_PI, Determinant, Jump, SymbolExpr, UnitPoint, as_theta

STEP_LIMIT = np.pi / 2
MAX_REFINE = 20
INTEGER_TOL = 1e-6
CONTINUITY_TOL = 1e-8


@dataclass(frozen=True)
class ArcIncrement:
    from_tau: UnitPoint
    to_tau: UnitPoint
    delta_logdet: complex


def _det(M):
    return np.linalg.det(M) if M.shape[-1] > 1 else M[..., 0, 0]


def _arc_bounds(from_tau, to_tau):
    a = as_theta(from_tau)
    b = as_theta(to_tau)
    length = (b - a) % TWO_PI
    if length < 1e-12:
        length = TWO_PI
    return a, a + length


def arc_increment(sym, from_tau, to_tau, samples=256):
    """Continuous increment of log det sym over the open arc (from, to).

    Endpoint values are the one-sided limits sym(from+0) and sym(to-0); an
    arc whose endpoints coincide is the whole circle. Intervals on which the
    argument of det changes by pi/2 or more are bisected, at most 20 times.
    """
    a, b = _arc_bounds(from_tau, to_tau)
    t = np.linspace(a, b, int(samples) + 1)
    d = np.empty(t.size, dtype=complex)
    d[0] = _det(sym.limit(a % TWO_PI, PLUS))
    d[-1] = _det(sym.limit(b % TWO_PI, MINUS))
    d[1:-1] = _det(sym.values(t[1:-1] % TWO_PI))
    for _ in range(MAX_REFINE + 1):
        if np.any(d == 0) or not np.all(np.isfinite(d)):
            raise UnwindFailure("det vanishes on the arc", from_theta=a % TWO_PI, to_theta=b % TWO_PI)
        steps = np.angle(d[1:] / d[:-1])
        bad = np.abs(steps) >= STEP_LIMIT
        if not bad.any():
            delta = np.log(abs(d[-1])) - np.log(abs(d[0])) + 1j * steps.sum()
            return ArcIncrement(UnitPoint(a), UnitPoint(b), complex(delta))
        mids = 0.5 * (t[:-1][bad] + t[1:][bad])
        t = np.concatenate([t, mids])
        d = np.concatenate([d, _det(sym.values(mids % TWO_PI))])
        order = np.argsort(t, kind="stable")
        t, d = t[order], d[order]
    raise UnwindFailure(
        "argument unwrapping did not resolve; det is near zero on the arc",
        from_theta=a % TWO_PI, to_theta=b % TWO_PI,
    )


def _to_integer(value, what):
    k = int(round(value.real))
    resid = abs(value - k)
    if resid > INTEGER_TOL:
        raise NonIntegerWinding(f"{what} is not an integer", value=[value.real, value.imag],
                                residual=float(resid))
    return k


def winding_I_value(sym, jumps=None):
    """Pre-rounding value of the I-winding number (complex, nearly integer)."""
    if jumps is None:
        jumps = analyze_jumps(sym)
    total = -sum(j.trace for j in jumps)
    for a, b in arcs_of(sym.jump_thetas):
        total += arc_increment(sym, a, b % TWO_PI).delta_logdet / (2j * np.pi)
    return complex(total)


def winding_I(sym, jumps=None):
    return _to_integer(winding_I_value(sym, jumps), "I-winding number")


def scalar_c(sym, jumps=None):
    """c(t) = det sym(t) / prod_k u_{tr L_k, tau_k}(t), as a scalar symbol."""
    if jumps is None:
        jumps = analyze_jumps(sym)
    factors = [Determinant(sym)] + [Jump(j.theta, [[-j.trace]]) for j in jumps]
    return SymbolExpr(1, tuple(factors))


def winding_continuous(sym):
    """Winding of det sym for a symbol whose determinant is continuous.

    Declared jump points of the representation are checked to be removable
    for det (relative 1e-8) and are used as arc boundaries.
    """
    for theta in sym.jump_thetas:
        p = _det(sym.limit(theta, PLUS))
        m = _det(sym.limit(theta, MINUS))
        if abs(p - m) > CONTINUITY_TOL * max(1.0, abs(p)):
            raise ResidualJump("determinant is discontinuous", theta=theta, jump=float(abs(p - m)))
    total = 0j
    for a, b in arcs_of(sym.jump_thetas):
        total += arc_increment(sym, a, b % TWO_PI).delta_logdet
    return _to_integer(total / (2j * np.pi), "winding of a continuous function")


def winding_c(sym, jumps=None):
    return winding_continuous(scalar_c(sym, jumps))


def fredholm_index(sym, jumps=None):
    """Index of T(sym) = -wind(sym; I), with both winding routes cross-checked."""
    if jumps is None:
        jumps = analyze_jumps(sym)
    w1 = winding_I(sym, jumps)
    w2 = winding_c(sym, jumps)
    if w1 != w2:
        raise RouteMismatch("I-winding and wind(c) disagree", winding_I=w1, winding_c=w2)
    return -w1
