"""JSON encoding of symbols (and the complex/matrix helpers shared by reports).

Complex scalars are ``[re, im]``; matrices are row-major nested lists of
complex scalars. A symbol is ``{"N": int, "factors": [...]}`` with each
factor discriminated by ``"kind"``.
"""
import json

import numpy as np

from .builtins import BuiltinFactor, builtin_factor
from .errors import InvalidInput
from .symbols import (
    Determinant, ExpLaurent, Inverse, Jump, Laurent, PiecewiseConstant, SymbolExpr, Tilde,
)

SCHEMA_VERSION = 1


def encode_complex(z):
    z = complex(z)
    # + 0.0 folds -0.0 into 0.0 so output does not depend on signed zeros
    return [z.real + 0.0, z.imag + 0.0]


def decode_complex(v):
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return complex(v)
    if isinstance(v, (list, tuple)) and len(v) == 2 and all(
        isinstance(x, (int, float)) and not isinstance(x, bool) for x in v
    ):
        return complex(v[0], v[1])
    raise InvalidInput(f"expected a complex scalar [re, im], got {v!r}")


def encode_matrix(M):
    M = np.asarray(M, dtype=complex)
    return [[encode_complex(x) for x in row] for row in M]


def decode_matrix(v):
    if not isinstance(v, list) or not v or not all(isinstance(row, list) for row in v):
        raise InvalidInput("expected a matrix as a nested list of rows")
    rows = [[decode_complex(x) for x in row] for row in v]
    if any(len(r) != len(rows) for r in rows):
        raise InvalidInput("matrix must be square")
    return np.array(rows, dtype=complex)


def _encode_param(v):
    return v if not isinstance(v, complex) else encode_complex(v)


def _decode_param(v):
    if isinstance(v, bool) or not isinstance(v, (int, float, list)):
        raise InvalidInput(f"invalid builtin parameter value {v!r}")
    z = decode_complex(v)
    return z.real if z.imag == 0 else z


def encode_laurent(f):
    return {str(k): encode_matrix(a) for k, a in f.coeffs.items()}


def decode_laurent(obj):
    if not isinstance(obj, dict) or not obj:
        raise InvalidInput("laurent coeffs must be a non-empty object keyed by integer offsets")
    try:
        return Laurent({int(k): decode_matrix(v) for k, v in obj.items()})
    except ValueError as exc:
        if isinstance(exc, InvalidInput):
            raise
        raise InvalidInput(f"laurent offsets must be integers: {exc}") from None


def encode_factor(f):
    if isinstance(f, Laurent):
        return {"kind": "laurent", "coeffs": encode_laurent(f)}
    if isinstance(f, ExpLaurent):
        return {"kind": "exp_laurent", "exponent": {"coeffs": encode_laurent(f.exponent)}}
    if isinstance(f, Jump):
        return {"kind": "jump", "theta": f.theta, "B": encode_matrix(f.B)}
    if isinstance(f, PiecewiseConstant):
        return {
            "kind": "piecewise_constant",
            "arcs": [
                {"from_theta": a, "to_theta": b, "value": encode_matrix(v)} for a, b, v in f.arcs
            ],
        }
    if isinstance(f, BuiltinFactor):
        return {
            "kind": "builtin",
            "name": f.name,
            "params": {k: _encode_param(v) for k, v in sorted(f.params.items())},
        }
    if isinstance(f, Inverse):
        return {"kind": "inverse", "of": encode_symbol(f.of, version=False)}
    if isinstance(f, Tilde):
        return {"kind": "tilde", "of": encode_symbol(f.of, version=False)}
    if isinstance(f, Determinant):
        raise InvalidInput("determinant factors are internal and not serializable")
    raise InvalidInput(f"cannot encode factor {f!r}")


def _need(obj, key):
    if key not in obj:
        raise InvalidInput(f"factor of kind {obj.get('kind')!r} is missing {key!r}")
    return obj[key]


def _angle(v):
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise InvalidInput(f"angle must be a real number, got {v!r}")
    return float(v)


def decode_factor(obj):
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InvalidInput("each factor must be an object with a 'kind'")
    kind = obj["kind"]
    if kind == "laurent":
        return decode_laurent(_need(obj, "coeffs"))
    if kind == "exp_laurent":
        exponent = _need(obj, "exponent")
        if isinstance(exponent, dict) and "coeffs" in exponent:
            exponent = exponent["coeffs"]
        return ExpLaurent(decode_laurent(exponent))
    if kind == "jump":
        return Jump(_angle(_need(obj, "theta")), decode_matrix(_need(obj, "B")))
    if kind == "piecewise_constant":
        arcs = _need(obj, "arcs")
        if not isinstance(arcs, list):
            raise InvalidInput("arcs must be a list")
        return PiecewiseConstant(
            [(_angle(_need(a, "from_theta")), _angle(_need(a, "to_theta")), decode_matrix(_need(a, "value")))
             for a in arcs]
        )
    if kind == "builtin":
        params = obj.get("params", {})
        if not isinstance(params, dict):
            raise InvalidInput("builtin params must be an object")
        return builtin_factor(_need(obj, "name"), **{k: _decode_param(v) for k, v in params.items()})
    if kind == "inverse":
        return Inverse(decode_symbol(_need(obj, "of")))
    if kind == "tilde":
        return Tilde(decode_symbol(_need(obj, "of")))
    raise InvalidInput(f"unknown factor kind {kind!r}")


def encode_symbol(sym, version=True):
    out = {"N": sym.N, "factors": [encode_factor(f) for f in sym.factors]}
    if version:
        out = {"schema_version": SCHEMA_VERSION, **out}
    return out


def decode_symbol(obj):
    if not isinstance(obj, dict):
        raise InvalidInput("symbol must be a JSON object")
    version = obj.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise InvalidInput(f"unsupported schema_version {version!r}")
    N = obj.get("N")
    if isinstance(N, bool) or not isinstance(N, int) or N < 1:
        raise InvalidInput("'N' must be a positive integer")
    factors = obj.get("factors")
    if not isinstance(factors, list) or not factors:
        raise InvalidInput("'factors' must be a non-empty list")
    return SymbolExpr(N, tuple(decode_factor(f) for f in factors))


def dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2)


def load_symbol(path):
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: invalid JSON: {exc}") from None
    return decode_symbol(obj)
