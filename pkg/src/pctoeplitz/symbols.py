"""Matrix-valued piecewise continuous symbols on the unit circle.

A :class:`SymbolExpr` is an ordered product of factors. Every factor can be
evaluated on a vector of angles (``values``) and knows its exact one-sided
limits at any point (``limit``), so jump ratios never come from finite
differencing.

Angles are radians in ``[0, 2*pi)``; the circle point is ``exp(1j*theta)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.linalg

from .errors import DimensionMismatch, InvalidInput, JumpPointEvaluation, SingularValue

TWO_PI = 2.0 * np.pi
ANGLE_TOL = 1e-12
# smallest admissible sigma_min/sigma_max for a value that gets inverted
SINGULAR_RTOL = 1e-13

PLUS = 1
MINUS = -1


def normalize_angle(theta):
    t = float(theta) % TWO_PI
    if TWO_PI - t < ANGLE_TOL:
        t = 0.0
    return t


def angle_distance(a, b):
    d = abs(float(a) - float(b)) % TWO_PI
    return min(d, TWO_PI - d)


@dataclass(frozen=True, eq=False)
class UnitPoint:
    """Point exp(i*theta) of the unit circle, theta normalized to [0, 2*pi)."""

    theta: float

    def __post_init__(self):
        object.__setattr__(self, "theta", normalize_angle(self.theta))

    @property
    def z(self):
        return complex(np.exp(1j * self.theta))

    def conj(self):
        return UnitPoint(-self.theta)

    def __eq__(self, other):
        if isinstance(other, UnitPoint):
            return angle_distance(self.theta, other.theta) < ANGLE_TOL
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        return f"UnitPoint(theta={self.theta!r})"


def as_theta(t):
    if isinstance(t, UnitPoint):
        return t.theta
    return normalize_angle(t)


def parse_side(side):
    if side in (PLUS, "plus", "+"):
        return PLUS
    if side in (MINUS, "minus", "-"):
        return MINUS
    raise InvalidInput(f"side must be 'plus' or 'minus', got {side!r}")


def as_square(M, N=None):
    A = np.array(M, dtype=complex)
    if A.ndim == 0:
        A = A.reshape(1, 1)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {A.shape}")
    if N is not None and A.shape[0] != N:
        raise DimensionMismatch(f"expected a {N}x{N} matrix, got {A.shape}")
    A.setflags(write=False)
    return A


def merge_angles(thetas):
    """Sort angles and merge those closer than ANGLE_TOL (mod 2*pi)."""
    out = []
    for t in sorted(normalize_angle(t) for t in thetas):
        if not out or angle_distance(out[-1], t) >= ANGLE_TOL:
            out.append(t)
    if len(out) > 1 and angle_distance(out[0], out[-1]) < ANGLE_TOL:
        out.pop()
    return out


def _at(theta, point):
    return angle_distance(theta, point) < ANGLE_TOL


def check_invertible(values, thetas):
    """Raise SingularValue if any matrix in a (M, N, N) batch is numerically singular."""
    s = np.linalg.svd(values, compute_uv=False)
    # scale floor of 1 so scalar (1x1) values can be flagged at all
    smax = np.maximum(s[:, 0], 1.0)
    bad = ~np.isfinite(smax) | (s[:, -1] <= SINGULAR_RTOL * smax)
    if np.any(bad):
        i = int(np.argmax(bad))
        raise SingularValue("symbol value is not invertible", theta=float(np.atleast_1d(thetas)[i]))


# ---------------------------------------------------------------------------
# factors

class Factor:
    """Base class; subclasses implement ``values`` and, where they jump, ``limit``."""

    kind = None
    N: int

    def jump_points(self):
        return ()

    def values(self, theta):
        raise NotImplementedError

    def limit(self, theta, side):
        return self.values(np.array([theta]))[0]


class Laurent(Factor):
    """Matrix Laurent polynomial sum_k a_k t^k."""

    kind = "laurent"

    def __init__(self, coeffs):
        if not coeffs:
            raise InvalidInput("Laurent polynomial needs at least one coefficient")
        items = sorted((int(k), as_square(a)) for k, a in dict(coeffs).items())
        N = items[0][1].shape[0]
        for k, a in items:
            if a.shape[0] != N:
                raise DimensionMismatch("Laurent coefficients of different sizes")
        self.N = N
        self.coeffs = dict(items)

    @property
    def degree(self):
        return max(abs(k) for k in self.coeffs)

    def values(self, theta):
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        out = np.zeros((theta.size, self.N, self.N), dtype=complex)
        for k, a in self.coeffs.items():
            out += np.exp(1j * k * theta)[:, None, None] * a
        return out


class ExpLaurent(Factor):
    """Pointwise matrix exponential of a Laurent polynomial."""

    kind = "exp_laurent"

    def __init__(self, exponent):
        if not isinstance(exponent, Laurent):
            exponent = Laurent(exponent)
        self.exponent = exponent
        self.N = exponent.N

    def values(self, theta):
        return scipy.linalg.expm(self.exponent.values(theta))


class Jump(Factor):
    """u_{B,tau}(t) = exp(i B arg(-t/tau)) with |arg| < pi; single jump at tau."""

    kind = "jump"

    def __init__(self, tau, B):
        self.theta = as_theta(tau)
        self.B = as_square(B)
        self.N = self.B.shape[0]

    @property
    def tau(self):
        return UnitPoint(self.theta)

    def jump_points(self):
        return (self.theta,)

    def values(self, theta):
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        s = (theta - self.theta) % TWO_PI - np.pi
        return scipy.linalg.expm(1j * s[:, None, None] * self.B)

    def limit(self, theta, side):
        if _at(theta, self.theta):
            return scipy.linalg.expm(-side * 1j * np.pi * self.B)
        return self.values(np.array([theta]))[0]


class PiecewiseConstant(Factor):
    """Constant on each half-open counterclockwise arc [from, to).

    ``arcs`` is a sequence of ``(from_theta, to_theta, value)`` that must
    partition the circle.
    """

    kind = "piecewise_constant"

    def __init__(self, arcs):
        arcs = [(as_theta(a), as_theta(b), as_square(v)) for a, b, v in arcs]
        if not arcs:
            raise InvalidInput("piecewise constant symbol needs at least one arc")
        arcs.sort(key=lambda arc: arc[0])
        N = arcs[0][2].shape[0]
        if any(v.shape[0] != N for _, _, v in arcs):
            raise DimensionMismatch("arc values of different sizes")
        total = 0.0
        for i, (a, b, _) in enumerate(arcs):
            nxt = arcs[(i + 1) % len(arcs)][0]
            if not _at(b, nxt):
                raise InvalidInput("arcs do not partition the circle", theta=b)
            length = (b - a) % TWO_PI
            total += TWO_PI if (len(arcs) == 1 and length < ANGLE_TOL) else length
        if abs(total - TWO_PI) > 1e-9:
            raise InvalidInput("arcs do not partition the circle")
        self.N = N
        self.arcs = tuple(arcs)
        self._starts = np.array([a for a, _, _ in arcs])
        self._vals = np.stack([v for _, _, v in arcs])

    def jump_points(self):
        out = []
        for i, (a, _, v) in enumerate(self.arcs):
            prev = self.arcs[i - 1][2]
            if len(self.arcs) > 1 and not np.array_equal(prev, v):
                out.append(a)
        return tuple(out)

    def _index(self, theta):
        idx = np.searchsorted(self._starts, theta, side="right") - 1
        return np.where(idx < 0, len(self.arcs) - 1, idx)

    def values(self, theta):
        theta = np.atleast_1d(np.asarray(theta, dtype=float)) % TWO_PI
        return self._vals[self._index(theta)]

    def limit(self, theta, side):
        for i, a in enumerate(self._starts):
            if _at(theta, a):
                return self._vals[i] if side == PLUS else self._vals[i - 1]
        return self.values(np.array([theta]))[0]


class Inverse(Factor):
    kind = "inverse"

    def __init__(self, of):
        self.of = of
        self.N = of.N

    def jump_points(self):
        return tuple(self.of.jump_thetas)

    def values(self, theta):
        v = self.of.values(theta)
        check_invertible(v, theta)
        return np.linalg.inv(v)

    def limit(self, theta, side):
        v = self.of.limit(theta, side)
        check_invertible(v[None], theta)
        return np.linalg.inv(v)


class Tilde(Factor):
    """t -> inner(1/t), i.e. theta -> -theta."""

    kind = "tilde"

    def __init__(self, of):
        self.of = of
        self.N = of.N

    def jump_points(self):
        return tuple(normalize_angle(-t) for t in self.of.jump_thetas)

    def values(self, theta):
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        return self.of.values((-theta) % TWO_PI)

    def limit(self, theta, side):
        return self.of.limit(normalize_angle(-theta), -side)


class Determinant(Factor):
    """Scalar factor det(inner(t)); used for the companion function c."""

    kind = "determinant"

    def __init__(self, of):
        self.of = of
        self.N = 1

    def jump_points(self):
        return tuple(self.of.jump_thetas)

    def values(self, theta):
        return np.linalg.det(self.of.values(theta))[:, None, None]

    def limit(self, theta, side):
        return np.linalg.det(self.of.limit(theta, side)).reshape(1, 1)


# ---------------------------------------------------------------------------
# symbol expressions

@dataclass(frozen=True, eq=False)
class SymbolExpr:
    N: int
    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise InvalidInput("a symbol needs at least one factor")
        for f in self.factors:
            if f.N != self.N:
                raise DimensionMismatch(f"factor {f.kind} has block size {f.N}, expected {self.N}")

    @cached_property
    def jump_thetas(self):
        pts = []
        for f in self.factors:
            pts.extend(f.jump_points())
        return tuple(merge_angles(pts))

    @property
    def jump_set(self):
        return [UnitPoint(t) for t in self.jump_thetas]

    def is_jump(self, theta):
        return any(_at(theta, t) for t in self.jump_thetas)

    def values(self, theta):
        """Batch evaluation, shape (M, N, N). No jump-point check."""
        out = self.factors[0].values(theta)
        for f in self.factors[1:]:
            out = out @ f.values(theta)
        return out

    def limit(self, theta, side):
        theta = as_theta(theta)
        out = self.factors[0].limit(theta, side)
        for f in self.factors[1:]:
            out = out @ f.limit(theta, side)
        return out

    def __mul__(self, other):
        return product(self, other)


def _single(factor):
    return SymbolExpr(factor.N, (factor,))


def evaluate(sym, t):
    """Value of ``sym`` at a non-jump point ``t`` (UnitPoint or angle)."""
    theta = as_theta(t)
    if sym.is_jump(theta):
        raise JumpPointEvaluation("evaluation at a jump point; use eval_sided", theta=theta)
    return sym.values(np.array([theta]))[0]


def evaluate_many(sym, thetas):
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float)) % TWO_PI
    for t in sym.jump_thetas:
        d = np.abs((thetas - t + np.pi) % TWO_PI - np.pi)
        if np.any(d < ANGLE_TOL):
            raise JumpPointEvaluation("evaluation at a jump point; use eval_sided", theta=t)
    return sym.values(thetas)


def eval_sided(sym, tau, side):
    """One-sided limit sym(tau +- 0) = lim_{eps -> +0} sym(tau * exp(+-i eps))."""
    return sym.limit(as_theta(tau), parse_side(side))


def product(a, b, *more):
    out_factors = list(a.factors)
    for s in (b, *more):
        if s.N != a.N:
            raise DimensionMismatch(f"block sizes {a.N} and {s.N} differ")
        out_factors.extend(s.factors)
    return SymbolExpr(a.N, tuple(out_factors))


def inverse(a):
    return _single(Inverse(a))


def tilde(a):
    return _single(Tilde(a))


def determinant(a):
    return _single(Determinant(a))


# convenience constructors

def identity(N):
    return constant(np.eye(N))


def constant(M):
    return _single(Laurent({0: M}))


def laurent(coeffs):
    return _single(Laurent(coeffs))


def exp_laurent(coeffs):
    return _single(ExpLaurent(Laurent(coeffs)))


def jump(tau, B):
    return _single(Jump(tau, B))


def piecewise_constant(arcs):
    return _single(PiecewiseConstant(arcs))
