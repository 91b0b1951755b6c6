"""Closed-form builtin symbols.

``xy_entropy``        2x2 critical XY-chain symbol [[i lam, g], [-1/g, i lam]]
``kitaev_longrange``  lam*I - M(theta)/Lambda(theta), jumps at +-theta0
``triangular_2x2``    [[f, coupling*g], [0, h]] with scalar jump entries
``jump_offdiag_2x2``  [[u_beta, b], [c, u_beta]], jump at theta = 0
"""
import numpy as np

from .errors import InvalidInput
from .symbols import (
    MINUS, PLUS, TWO_PI, Factor, Jump, SymbolExpr, _at, normalize_angle,
)


def _number(value):
    z = complex(value)
    return z.real if z.imag == 0 else z


class BuiltinFactor(Factor):
    kind = "builtin"
    name = None
    required = ()
    defaults = {}

    def __init__(self, **params):
        unknown = set(params) - set(self.required) - set(self.defaults)
        if unknown:
            raise InvalidInput(f"unknown parameter(s) for {self.name}: {sorted(unknown)}")
        missing = [p for p in self.required if p not in params]
        if missing:
            raise InvalidInput(f"missing parameter(s) for {self.name}: {missing}")
        merged = dict(self.defaults)
        merged.update(params)
        self.params = {k: _number(v) for k, v in merged.items()}
        self._setup(**self.params)

    def _setup(self, **params):
        pass


class XYEntropy(BuiltinFactor):
    name = "xy_entropy"
    required = ("lam",)
    defaults = {"alpha": 1.0, "gamma": 1.0}
    N = 2

    def _setup(self, lam, alpha, gamma):
        if isinstance(alpha, complex) or isinstance(gamma, complex):
            raise InvalidInput("xy_entropy: alpha and gamma must be real")
        self.lam, self.alpha, self.gamma = lam, alpha, gamma
        if alpha == 1.0:
            self._jumps = (0.0,)
        elif alpha == -1.0:
            self._jumps = (np.pi,)
        else:
            self._jumps = ()

    def jump_points(self):
        return self._jumps

    def _numerator(self, theta):
        a, gm = self.alpha, self.gamma
        # a*cos(theta) - 1 written to avoid cancellation near theta = 0
        return -2.0 * a * np.sin(theta / 2) ** 2 + (a - 1.0) - 1j * gm * a * np.sin(theta)

    def _matrix(self, g):
        out = np.empty(g.shape + (2, 2), dtype=complex)
        out[..., 0, 0] = 1j * self.lam
        out[..., 1, 1] = 1j * self.lam
        out[..., 0, 1] = g
        out[..., 1, 0] = -1.0 / g
        return out

    def values(self, theta):
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        num = self._numerator(theta)
        return self._matrix(num / np.abs(num))

    def limit(self, theta, side):
        if self._jumps and _at(theta, self._jumps[0]):
            # numerator ~ -i*gamma*(theta - theta_j) next to the jump
            g = -1j * side * np.sign(self.gamma) if self.gamma != 0 else -1.0 + 0j
            return self._matrix(np.array(g, dtype=complex))
        return self.values(np.array([theta]))[0]


class KitaevLongRange(BuiltinFactor):
    name = "kitaev_longrange"
    required = ("lam", "h", "theta0")
    N = 2

    def _setup(self, lam, h, theta0):
        if isinstance(h, complex) or isinstance(theta0, complex):
            raise InvalidInput("kitaev_longrange: h and theta0 must be real")
        if not 0.0 < theta0 < np.pi:
            raise InvalidInput("kitaev_longrange: theta0 must lie in (0, pi)")
        if abs(abs(h) - 2.0) < 1e-14:
            raise InvalidInput("kitaev_longrange: h = +-2 is excluded")
        self.lam, self.h, self.theta0 = lam, h, theta0

    def jump_points(self):
        return (self.theta0, normalize_angle(-self.theta0))

    def _matrix(self, theta, G):
        a = self.h + 2.0 * np.cos(theta)
        Lam = np.sqrt(a**2 + np.abs(G) ** 2)
        out = np.empty(np.shape(theta) + (2, 2), dtype=complex)
        out[..., 0, 0] = self.lam - a / Lam
        out[..., 0, 1] = -G / Lam
        out[..., 1, 0] = G / Lam
        out[..., 1, 1] = self.lam + a / Lam
        return out

    @staticmethod
    def _G(theta, branch):
        # branch -1: theta < -theta0, 0: |theta| < theta0, +1: theta > theta0
        return np.select(
            [branch < 0, branch == 0],
            [-1j * (np.pi + theta), -1j * theta],
            1j * (np.pi - theta),
        )

    def values(self, theta):
        theta = np.atleast_1d(np.asarray(theta, dtype=float)) % TWO_PI
        t = np.where(theta > np.pi, theta - TWO_PI, theta)
        branch = np.where(t > self.theta0, 1, np.where(t < -self.theta0, -1, 0))
        return self._matrix(t, self._G(t, branch))

    def limit(self, theta, side):
        t0 = self.theta0
        if _at(theta, t0):
            branch = 1 if side == PLUS else 0
            return self._matrix(np.array(t0), self._G(np.array(t0), np.array(branch)))
        if _at(theta, -t0):
            branch = 0 if side == PLUS else -1
            return self._matrix(np.array(-t0), self._G(np.array(-t0), np.array(branch)))
        return self.values(np.array([theta]))[0]


class Triangular2x2(BuiltinFactor):
    name = "triangular_2x2"
    defaults = {
        "beta_f": 0.2, "theta_f": 0.0,
        "beta_h": -0.15, "theta_h": np.pi,
        "beta_g": 0.3, "theta_g": np.pi / 2,
        "coupling": 1.0,
    }
    N = 2

    def _setup(self, beta_f, theta_f, beta_h, theta_h, beta_g, theta_g, coupling):
        self._f = Jump(theta_f, [[beta_f]])
        self._h = Jump(theta_h, [[beta_h]])
        self._g = Jump(theta_g, [[beta_g]])
        self.coupling = coupling

    def jump_points(self):
        return (self._f.theta, self._h.theta, self._g.theta)

    def _assemble(self, f, g, h):
        out = np.zeros(f.shape[:-2] + (2, 2), dtype=complex)
        out[..., 0, 0] = f[..., 0, 0]
        out[..., 0, 1] = self.coupling * g[..., 0, 0]
        out[..., 1, 1] = h[..., 0, 0]
        return out

    def values(self, theta):
        return self._assemble(self._f.values(theta), self._g.values(theta), self._h.values(theta))

    def limit(self, theta, side):
        return self._assemble(
            self._f.limit(theta, side), self._g.limit(theta, side), self._h.limit(theta, side)
        )


class JumpOffdiag2x2(BuiltinFactor):
    name = "jump_offdiag_2x2"
    required = ("beta", "b", "c")
    N = 2

    def _setup(self, beta, b, c):
        self._u = Jump(0.0, [[beta]])
        self.b, self.c = b, c

    def jump_points(self):
        return (0.0,)

    def _assemble(self, u):
        out = np.empty(u.shape[:-2] + (2, 2), dtype=complex)
        out[..., 0, 0] = u[..., 0, 0]
        out[..., 1, 1] = u[..., 0, 0]
        out[..., 0, 1] = self.b
        out[..., 1, 0] = self.c
        return out

    def values(self, theta):
        return self._assemble(self._u.values(theta))

    def limit(self, theta, side):
        return self._assemble(self._u.limit(theta, side))


BUILTINS = {cls.name: cls for cls in (XYEntropy, KitaevLongRange, Triangular2x2, JumpOffdiag2x2)}


def builtin_factor(name, **params):
    try:
        cls = BUILTINS[name]
    except KeyError:
        raise InvalidInput(f"unknown builtin {name!r}; choose from {sorted(BUILTINS)}") from None
    return cls(**params)


def builtin(name, **params):
    f = builtin_factor(name, **params)
    return SymbolExpr(f.N, (f,))


def kitaev_iota(lam, h, theta0):
    """Closed-form jump-ratio eigenvalues (iota_+, iota_-) of kitaev_longrange."""
    a = h + 2.0 * np.cos(theta0)
    xi_plus = np.arctan2(theta0 - np.pi, a)
    xi_minus = np.arctan2(theta0, a)
    half = (xi_plus - xi_minus) / 2
    root = np.sqrt(complex(lam) ** 2 - np.cos(half) ** 2)
    denom = np.sqrt(complex(lam) ** 2 - 1.0)
    return ((root + np.sin(half)) / denom) ** 2, ((root - np.sin(half)) / denom) ** 2


def offdiag_ratio_eigenvalues(beta, b, c):
    """Closed-form jump-ratio eigenvalues of jump_offdiag_2x2."""
    a = np.exp(-2j * beta * np.pi) - b * c
    base = (1 - b * c) / a
    spread = 2j * np.sqrt(complex(b * c)) * np.sin(beta * np.pi) / a
    return base + spread, base - spread


def indicator_pair(a, b, c, d, split):
    """Piecewise constant 2x2 symbol I + chi_[split, 2pi) A, A = [[a, b], [c, d]].

    Returns ``(symbol, V, (lam1, lam2))`` where ``V`` is the eigenvector
    matrix with V diag(lam1, lam2) V^{-1} equal to the symbol pointwise and
    ``lam1``, ``lam2`` are the scalar piecewise constant symbols. Requires
    b != 0 and nu = sqrt(bc + (a-d)^2/4) != 0.
    """
    from .symbols import piecewise_constant

    nu = np.sqrt(complex(b * c + (a - d) ** 2 / 4))
    if b == 0 or abs(nu) < 1e-14:
        raise InvalidInput("indicator_pair requires b != 0 and nu != 0")
    A = np.array([[a, b], [c, d]], dtype=complex)
    V = np.array([[b, b], [-(a - d) / 2 + nu, -(a - d) / 2 - nu]], dtype=complex)
    mu1 = (a + d) / 2 + nu
    mu2 = (a + d) / 2 - nu
    split = float(split)
    sym = piecewise_constant([(0.0, split, np.eye(2)), (split, 0.0, np.eye(2) + A)])
    lam1 = piecewise_constant([(0.0, split, [[1.0]]), (split, 0.0, [[1.0 + mu1]])])
    lam2 = piecewise_constant([(0.0, split, [[1.0]]), (split, 0.0, [[1.0 + mu2]])])
    return sym, V, (lam1, lam2)
