"""Canonical representation phi = phi0 * u_{B_1,tau_1} ... u_{B_R,tau_R}.

Jumps are peeled from the largest angle down: with remainder psi, the
exponent at tau is B = log(psi's jump ratio at tau) / (2 pi i) and psi is
replaced by psi * u_{-B,tau}. What is left is continuous. Factor order
matters for matrices, so B_k is in general only similar to the L_k of the
input's own jump ratio; ``similarity_chain`` recovers the conjugators.
"""
from dataclasses import dataclass

import numpy as np

from .errors import ResidualJump, SimilarityMismatch
from .jumps import analyze_jumps, jump_ratio, principal_log_2pii
from .schema import SCHEMA_VERSION, encode_matrix, encode_symbol
from .symbols import MINUS, PLUS, Jump, SymbolExpr, UnitPoint

RESIDUAL_TOL = 1e-9
SIMILARITY_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class Factorization:
    symbol: SymbolExpr
    jumps: tuple  # ((UnitPoint, B), ...) counterclockwise from the smallest angle
    phi0: SymbolExpr
    L: tuple
    S: tuple

    @property
    def R(self):
        return len(self.jumps)

    def jump_factors(self):
        return [Jump(tau.theta, B) for tau, B in self.jumps]

    def to_json(self):
        return {
            "schema_version": SCHEMA_VERSION,
            "symbol": encode_symbol(self.symbol, version=False),
            "jumps": [
                {
                    "theta": tau.theta,
                    "B": encode_matrix(B),
                    "L": encode_matrix(L),
                    "S": encode_matrix(S),
                    "betas": [[b.real, b.imag] for b in _sorted_eig(B)],
                }
                for (tau, B), L, S in zip(self.jumps, self.L, self.S)
            ],
            "phi0": encode_symbol(self.phi0, version=False),
        }


def _sorted_eig(M):
    e = np.linalg.eigvals(M)
    return e[np.lexsort((e.imag, e.real))]


def _similarity(jumps, L):
    S_all = []
    R = len(jumps)
    for k in range(R):
        tau, B = jumps[k]
        S = np.eye(B.shape[0], dtype=complex)
        for j in range(k + 1, R):
            S = S @ Jump(*jumps[j]).values(np.array([tau.theta]))[0]
        resid = np.max(np.abs(np.linalg.solve(S, B @ S) - L[k]))
        if resid > SIMILARITY_TOL * max(1.0, np.max(np.abs(L[k]))):
            raise SimilarityMismatch("L_k differs from S_k^{-1} B_k S_k", theta=tau.theta,
                                     residual=float(resid))
        S_all.append(S)
    return tuple(S_all)


def factorize(sym, jumps=None):
    """Peel every jump of an I-regular ``sym``; raises ResidualJump if phi0 still jumps."""
    if jumps is None:
        jumps = analyze_jumps(sym)
    thetas = [j.theta for j in jumps]
    psi = sym
    peeled = {}
    for theta in reversed(thetas):
        B, _ = principal_log_2pii(jump_ratio(psi, theta), theta=theta)
        peeled[theta] = B
        psi = SymbolExpr(sym.N, psi.factors + (Jump(theta, -B),))
    for theta in thetas:
        p = psi.limit(theta, PLUS)
        m = psi.limit(theta, MINUS)
        gap = float(np.max(np.abs(p - m)))
        if gap > RESIDUAL_TOL * max(1.0, float(np.max(np.abs(p)))):
            raise ResidualJump("continuous remainder still jumps", theta=theta, jump=gap)
    ordered = tuple((UnitPoint(t), peeled[t]) for t in thetas)
    L = tuple(j.L for j in jumps)
    # B_R comes from the same call on the same ratio as L_R
    return Factorization(sym, ordered, psi, L, _similarity(ordered, L))


def similarity_chain(fact):
    """S_k = u_{B_{k+1}}(tau_k) ... u_{B_R}(tau_k), checked against L_k = S_k^{-1} B_k S_k."""
    return list(_similarity(fact.jumps, fact.L))


def reconstruct(fact, theta):
    """phi0(t) u_{B_1}(t) ... u_{B_R}(t) at the given angles."""
    out = fact.phi0.values(theta)
    for tau, B in fact.jumps:
        out = out @ Jump(tau.theta, B).values(theta)
    return out
