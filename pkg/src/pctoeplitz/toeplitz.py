"""Finite block Toeplitz sections, determinants and the asymptotic verification sweep."""
from dataclasses import dataclass, field
import cmath
import csv
import io
import math
import warnings

import numpy as np
import scipy.linalg
import scipy.optimize

from .constants import asymptotic_constants
from .errors import DimensionMismatch, IndexNonzero, InvalidInput, SectionSingular
from .factorization import factorize
from .fourier import fourier_table
from .jumps import analyze_jumps
from .schema import SCHEMA_VERSION, encode_complex
from .symbols import TWO_PI, Inverse, Jump, Laurent, SymbolExpr
from .winding import fredholm_index

DEFAULT_N_GRID = (16, 23, 32, 45, 64, 91, 128, 181, 256, 362, 512)
CAUCHY_TOL = 1e-2
CAUCHY_FROM = 128
OPDET_TOL = 1e-6
OPDET_M_MAX = 512
P_RANGE = (0.5, 2.0)
ERROR_MODEL = "E_n = E (1 + c n^-p), p fitted on the last three grid points and clamped to [0.5, 2]; heuristic"


@dataclass(frozen=True, eq=False)
class ToeplitzSection:
    n: int
    N: int
    entries: np.ndarray


def block_toeplitz(coeffs, K, n):
    """(nN x nN) matrix with block (j, k) = coeffs[j - k + K]."""
    N = coeffs.shape[-1]
    idx = np.arange(n)[:, None] - np.arange(n)[None, :] + K
    return coeffs[idx].transpose(0, 2, 1, 3).reshape(n * N, n * N)


def toeplitz_section(table, n):
    n = int(n)
    if n < 1:
        raise InvalidInput("section order must be positive")
    if table.K < n - 1:
        raise DimensionMismatch(f"Fourier table has K = {table.K}, need at least {n - 1}")
    return ToeplitzSection(n, table.N, block_toeplitz(table.coeffs, table.K, n))


def det_section(ts):
    """(det, log det) of a section; the log keeps large n from overflowing."""
    sign, logabs = np.linalg.slogdet(ts.entries)
    if sign == 0:
        return 0j, complex(-math.inf)
    logdet = complex(logabs + 1j * cmath.phase(sign))
    with np.errstate(over="ignore"):
        value = complex(sign * np.exp(logabs))
    return value, logdet


def det_tn(sym, n, table=None):
    if table is None:
        table = fourier_table(sym, max(1, n - 1))
    return det_section(toeplitz_section(table, n))


# ---------------------------------------------------------------------------
# Widom's identity for Laurent polynomials

def _laurent_coeffs(sym):
    if len(sym.factors) != 1 or not isinstance(sym.factors[0], Laurent):
        raise InvalidInput("Widom identity check needs single Laurent polynomial symbols")
    return sym.factors[0].coeffs


def _coeff_array(coeffs, N, K):
    out = np.zeros((2 * K + 1, N, N), dtype=complex)
    for k, a in coeffs.items():
        out[k + K] = a
    return out


def _hankel(c, K, rows, cols, reflect=False):
    """Block Hankel (c_{j+k+1}) (or (c_{-j-k-1}) when reflect) of the given shape."""
    N = c.shape[-1]
    s = np.arange(rows)[:, None] + np.arange(cols)[None, :] + 1
    s = -s if reflect else s
    s = np.clip(s, -K - 1, K + 1)
    padded = np.concatenate([np.zeros((1, N, N)), c, np.zeros((1, N, N))])
    return padded[s + K + 1].transpose(0, 2, 1, 3).reshape(rows * N, cols * N)


def widom_identity_residual(a, b, n):
    """max |T_n(ab) - T_n(a)T_n(b) - P_n H(a)H(b~)P_n - W_n H(a~)H(b)W_n|."""
    ca, cb = _laurent_coeffs(a), _laurent_coeffs(b)
    N = a.N
    d = max([abs(k) for k in ca] + [abs(k) for k in cb])
    n = int(n)
    K = max(2 * d, n - 1) + 1
    A, B = _coeff_array(ca, N, K), _coeff_array(cb, N, K)
    AB = np.zeros_like(A)
    for k, ak in ca.items():
        for j, bj in cb.items():
            AB[k + j + K] += ak @ bj
    m = n + d
    lhs = block_toeplitz(AB, K, n)
    rhs = block_toeplitz(A, K, n) @ block_toeplitz(B, K, n)
    rhs += _hankel(A, K, n, m) @ _hankel(B, K, m, n, reflect=True)
    # W_n H(a~) H(b) W_n with H(a~) = (a_{-j-k-1})
    Wt = _hankel(A, K, n, m, reflect=True) @ _hankel(B, K, m, n)
    rev = (np.arange(n)[::-1][:, None] * N + np.arange(N)[None, :]).ravel()
    rhs += Wt[np.ix_(rev, rev)]
    return float(np.max(np.abs(lhs - rhs)))


# ---------------------------------------------------------------------------
# operator determinant part of E

def _solve(M, X):
    with warnings.catch_warnings():
        warnings.simplefilter("error", scipy.linalg.LinAlgWarning)
        try:
            return scipy.linalg.solve(M, X)
        except (scipy.linalg.LinAlgWarning, np.linalg.LinAlgError):
            raise SectionSingular("finite section is numerically singular", size=M.shape[0]) from None


def _opdet_at(tables, M, S, N):
    """det P_M T(phi) T(phi_R)^{-1}...T(phi_1)^{-1} T(phi_1^-1)^{-1}...T(phi_R^-1)^{-1} T(phi^-1) P_M."""
    sec = {name: block_toeplitz(t.coeffs, t.K, S) for name, t in tables.items()}
    X = sec["inv"][:, : M * N]
    R = (len(sec) - 2) // 2
    for k in reversed(range(R)):
        X = _solve(sec[("jinv", k)], X)
    for k in range(R):
        X = _solve(sec[("j", k)], X)
    X = sec["sym"][: M * N] @ X
    sign, logabs = np.linalg.slogdet(X)
    if sign == 0:
        return 0j, complex(-math.inf)
    return complex(sign * np.exp(logabs)), complex(logabs + 1j * cmath.phase(sign))


@dataclass(frozen=True)
class OpdetEstimate:
    value: complex
    log_value: complex
    M: int
    converged: bool
    history: tuple = field(default_factory=tuple)


def estimate_E_opdet(fact, M=32, buffer=None, tol=OPDET_TOL, M_max=OPDET_M_MAX):
    """Finite-section estimate of the operator determinant in E.

    Each semi-infinite Toeplitz factor is replaced by its section of size
    M + buffer (default buffer M/2); the product is compressed to the
    leading M blocks. M doubles until two values agree to ``tol``
    (relative) or ``M_max`` is exceeded.
    """
    M = int(M)
    if M < 1:
        raise InvalidInput("section size must be positive")
    sym = fact.symbol
    N = sym.N
    history = []
    prev = None
    while True:
        S = M + (M // 2 if buffer is None else int(buffer))
        K = S - 1
        tables = {"sym": fourier_table(sym, K), "inv": fourier_table(SymbolExpr(N, (Inverse(sym),)), K)}
        for k, (tau, B) in enumerate(fact.jumps):
            tables[("j", k)] = fourier_table(SymbolExpr(N, (Jump(tau.theta, B),)), K)
            tables[("jinv", k)] = fourier_table(SymbolExpr(N, (Jump(tau.theta, -B),)), K)
        value, log_value = _opdet_at(tables, M, S, N)
        history.append((M, value))
        if prev is not None and abs(value - prev) <= tol * max(abs(value), 1e-300):
            return OpdetEstimate(value, log_value, M, True, tuple(history))
        if 2 * M > M_max:
            return OpdetEstimate(value, log_value, M, False, tuple(history))
        prev = value
        M *= 2


# ---------------------------------------------------------------------------
# verification sweep

@dataclass(frozen=True, eq=False)
class AsymptoticReport:
    constants: object
    n_grid: tuple
    log_D: tuple
    log_E: tuple
    E_empirical: tuple
    cauchy_diffs: tuple
    cauchy_ok: bool
    E_extrapolated: complex = None
    rate_p: float = None
    E_opdet: complex = None
    opdet_M: int = None
    opdet_converged: bool = None
    E_predicted: complex = None
    route_rel_diff: float = None
    sectoriality: float = None
    error_model: str = ERROR_MODEL

    def residuals(self):
        ref = self.E_extrapolated if self.E_extrapolated is not None else self.E_empirical[-1]
        return [abs(e / ref - 1) for e in self.E_empirical]

    def to_json(self):
        enc = lambda z: None if z is None else encode_complex(z)
        return {
            "schema_version": SCHEMA_VERSION,
            "constants": self.constants.to_json(),
            "rows": [
                {"n": n, "log_D": encode_complex(ld), "E_n": encode_complex(e), "residual": float(r)}
                for n, ld, e, r in zip(self.n_grid, self.log_D, self.E_empirical, self.residuals())
            ],
            "cauchy_diffs": list(self.cauchy_diffs),
            "cauchy_ok": self.cauchy_ok,
            "E_extrapolated": enc(self.E_extrapolated),
            "rate_p": self.rate_p,
            "E_opdet": enc(self.E_opdet),
            "opdet_section_size": self.opdet_M,
            "opdet_converged": self.opdet_converged,
            "E_predicted": enc(self.E_predicted),
            "route_rel_diff": self.route_rel_diff,
            "sectoriality_min_eig": self.sectoriality,
            "error_model": self.error_model,
        }

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["schema_version", "n", "re_logD", "im_logD", "re_E", "im_E", "residual"])
        for n, ld, e, r in zip(self.n_grid, self.log_D, self.E_empirical, self.residuals()):
            w.writerow([SCHEMA_VERSION, n] + [repr(float(x)) for x in (ld.real, ld.imag, e.real, e.imag, r)])
        return buf.getvalue()


def _fit_rate(n, E):
    """(E_inf, p) from E_i = E + c n_i^-p on three points."""
    (n1, n2, n3), (e1, e2, e3) = n, E
    d21, d32 = e2 - e1, e3 - e2
    if abs(d21) == 0 or abs(d32) == 0:
        return e3, None
    r = abs(d32) / abs(d21)

    def f(p):
        return (n2**-p - n3**-p) / (n1**-p - n2**-p) - r

    lo, hi = P_RANGE
    if f(lo) * f(hi) < 0:
        p = scipy.optimize.brentq(f, lo, hi, xtol=1e-12)
    else:
        p = lo if abs(f(lo)) < abs(f(hi)) else hi
    c = (e2 - e3) / (n2**-p - n3**-p)
    return e3 - c * n3**-p, float(p)


def sectoriality_margin(sym, samples=2048):
    """min over samples of the smallest eigenvalue of (phi + phi*)/2."""
    theta = (np.arange(samples) + 0.5) * TWO_PI / samples
    V = sym.values(theta)
    H = 0.5 * (V + np.conj(np.swapaxes(V, -1, -2)))
    return float(np.linalg.eigvalsh(H)[:, 0].min())


def verify_asymptotics(sym, n_grid=DEFAULT_N_GRID, cauchy_tol=CAUCHY_TOL, section_size=32,
                       opdet=True, opdet_tol=OPDET_TOL, opdet_M_max=OPDET_M_MAX):
    """Compare det T_n(sym) with G^n n^Omega E along ``n_grid``."""
    n_grid = tuple(int(n) for n in n_grid)
    if len(n_grid) < 1 or any(b <= a for a, b in zip(n_grid, n_grid[1:])) or n_grid[0] < 1:
        raise InvalidInput("n grid must be strictly increasing positive integers")
    jumps = analyze_jumps(sym)
    kappa = -fredholm_index(sym, jumps)
    if kappa != 0:
        raise IndexNonzero("I-winding number is nonzero; the asymptotic formula does not apply",
                           winding=kappa)
    fact = factorize(sym, jumps)
    consts = asymptotic_constants(sym, jumps, fact)
    table = fourier_table(sym, max(1, n_grid[-1] - 1))
    log_D = [det_section(toeplitz_section(table, n))[1] for n in n_grid]
    raw = np.array([ld - n * consts.log_G - consts.Omega * math.log(n) for ld, n in zip(log_D, n_grid)])
    log_E = raw.real + 1j * np.unwrap(raw.imag)
    E = np.exp(log_E)
    diffs = [float(abs(E[i + 1] - E[i]) / abs(E[i + 1])) for i in range(len(n_grid) - 1)]
    tail = [d for i, d in enumerate(diffs) if n_grid[i] >= CAUCHY_FROM]
    cauchy_ok = bool(tail) and max(tail) < cauchy_tol
    E_ext = p = None
    if cauchy_ok and len(n_grid) >= 3:
        E_ext, p = _fit_rate(n_grid[-3:], E[-3:])
    out = dict(E_extrapolated=E_ext, rate_p=p)
    if opdet:
        est = estimate_E_opdet(fact, M=section_size, tol=opdet_tol, M_max=opdet_M_max)
        E_pred = cmath.exp(est.log_value + consts.log_E_barnes)
        ref = E_ext if E_ext is not None else E[-1]
        out.update(E_opdet=est.value, opdet_M=est.M, opdet_converged=est.converged, E_predicted=E_pred,
                   route_rel_diff=float(abs(E_pred - ref) / abs(ref)))
    return AsymptoticReport(
        consts, n_grid, tuple(complex(x) for x in log_D), tuple(complex(x) for x in log_E),
        tuple(complex(x) for x in E), tuple(diffs), cauchy_ok,
        sectoriality=sectoriality_margin(sym), **out,
    )


def parse_n_grid(text):
    """'start:stop:geometric' (ratio sqrt 2) or 'start:stop:linear[:count]'."""
    parts = text.split(":")
    if len(parts) not in (3, 4):
        raise InvalidInput(f"bad n grid {text!r}; expected start:stop:geometric|linear[:count]")
    try:
        start, stop = int(parts[0]), int(parts[1])
        count = int(parts[3]) if len(parts) == 4 else None
    except ValueError:
        raise InvalidInput(f"bad n grid {text!r}") from None
    if start < 1 or stop < start:
        raise InvalidInput("n grid needs 1 <= start <= stop")
    kind = parts[2]
    if kind == "geometric":
        if count is None:
            count = int(math.floor(2 * math.log2(stop / start) + 1e-9)) + 1
        vals = np.geomspace(start, stop, max(count, 1)) if count > 1 else np.array([start])
    elif kind == "linear":
        if count is None:
            count = min(stop - start + 1, 11)
        vals = np.linspace(start, stop, count) if count > 1 else np.array([start])
    else:
        raise InvalidInput(f"unknown n grid spacing {kind!r}")
    grid = sorted(set(int(round(v)) for v in vals))
    return tuple(grid)
