"""Command-line interface: ``pctoeplitz {analyze,factor,constants,verify,barnes}``.

Exit codes: 0 ok, 2 invalid input, 3 symbol outside the
hypotheses, 4 numerical failure. Errors are written to stderr as one JSON
object.
"""
import argparse
import csv
import io
import json
import re
import sys
from typing import List, Optional

import numpy as np

from .builtins import BUILTINS, builtin
from .constants import asymptotic_constants
from .errors import InvalidInput, PCToeplitzError
from .factorization import factorize
from .jumps import analyze_jumps
from .schema import SCHEMA_VERSION, dumps, encode_complex, encode_matrix, load_symbol
from .special import log_barnes_g
from .toeplitz import DEFAULT_N_GRID, parse_n_grid, verify_asymptotics
from .winding import winding_c, winding_I, winding_I_value

_PI_RE = re.compile(r"^\s*([+-]?(?:\d+\.?\d*|\.\d+)?)\s*\*?\s*pi\s*(?:/\s*(\d+\.?\d*))?\s*$")


def parse_number(text):
    """Real or complex literal; also ``pi``, ``2pi/3``, ``2*pi/3``."""
    text = text.strip()
    try:
        return float(text)
    except ValueError:
        pass
    m = _PI_RE.match(text)
    if m:
        coef = m.group(1)
        coef = 1.0 if coef in ("", "+") else -1.0 if coef == "-" else float(coef)
        return coef * np.pi / (float(m.group(2)) if m.group(2) else 1.0)
    try:
        return complex(text.replace("i", "j").replace(" ", ""))
    except ValueError:
        raise InvalidInput(f"cannot parse number {text!r}") from None


def _params(items):
    out = {}
    for item in items or []:
        if "=" not in item:
            raise InvalidInput(f"--param expects key=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = parse_number(v)
    return out


def _symbol(args):
    if args.symbol and args.builtin:
        raise InvalidInput("give either --symbol or --builtin, not both")
    if args.symbol:
        if args.param:
            raise InvalidInput("--param only applies to --builtin")
        return load_symbol(args.symbol)
    if args.builtin:
        return builtin(args.builtin, **_params(args.param))
    raise InvalidInput("a symbol is required: --symbol FILE or --builtin NAME")


def _pair(z):
    return encode_complex(z)


def cmd_analyze(args):
    sym = _symbol(args)
    jumps = analyze_jumps(sym)
    w_value = winding_I_value(sym, jumps)
    wI = winding_I(sym, jumps)
    wc = winding_c(sym, jumps)
    report = {
        "schema_version": SCHEMA_VERSION,
        "N": sym.N,
        "i_regular": True,
        "jumps": [
            {
                "theta": j.theta,
                "betas": [_pair(b) for b in j.betas],
                "margin": j.margin,
                "trace_L": _pair(j.trace),
                "L": encode_matrix(j.L),
            }
            for j in jumps
        ],
        "winding_I": wI,
        "winding_I_value": _pair(w_value),
        "winding_c": wc,
        "routes_agree": wI == wc,
        "fredholm_index": -wI,
    }
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["schema_version", "theta", "j", "re_beta", "im_beta", "margin"])
        for j in jumps:
            for i, b in enumerate(j.betas):
                w.writerow([SCHEMA_VERSION, repr(float(j.theta)), i, repr(float(b.real)), repr(float(b.imag)),
                            repr(float(j.margin))])
        return buf.getvalue()
    return dumps(report) + "\n"


def _json_only(args, name):
    if args.format != "json":
        raise InvalidInput(f"{name} output is JSON only")


def cmd_factor(args):
    _json_only(args, "factor")
    return dumps(factorize(_symbol(args)).to_json()) + "\n"


def cmd_constants(args):
    _json_only(args, "constants")
    return dumps(asymptotic_constants(_symbol(args)).to_json()) + "\n"


def cmd_verify(args):
    sym = _symbol(args)
    grid = parse_n_grid(args.n_grid) if args.n_grid else DEFAULT_N_GRID
    if args.tol <= 0:
        raise InvalidInput("--tol must be positive")
    report = verify_asymptotics(sym, grid, cauchy_tol=args.tol, section_size=args.section_size,
                                opdet=not args.no_opdet)
    if args.format == "csv":
        return report.to_csv()
    return dumps(report.to_json()) + "\n"


def cmd_barnes(args):
    _json_only(args, "barnes")
    z = parse_number(args.z)
    log_g = log_barnes_g(z)
    return dumps({
        "schema_version": SCHEMA_VERSION,
        "z": _pair(z),
        "log_G_1_plus_z": _pair(log_g),
        "G_1_plus_z": _pair(np.exp(log_g)),
    }) + "\n"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InvalidInput(f"{self.prog}: {message}")


def build_parser():
    p = _Parser(
        prog="pctoeplitz",
        description="Block Toeplitz determinants of piecewise continuous matrix symbols.",
    )
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, symbol=True):
        if symbol:
            sp.add_argument("--symbol", metavar="FILE", help="JSON symbol file.")
            sp.add_argument("--builtin", choices=sorted(BUILTINS), help="Builtin symbol name.")
            sp.add_argument("--param", action="append", metavar="KEY=VALUE",
                            help="Builtin parameter (repeatable); values like 0.5, 1+2j, pi/3.")
        sp.add_argument("--format", choices=["json", "csv"], default="json")
        sp.add_argument("--out", metavar="PATH", help="Write output here instead of stdout.")

    sp = sub.add_parser("analyze", help="Jump table, I-regularity, winding numbers and index.")
    common(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("factor", help="Canonical factorization phi0 * prod u_{B_k,tau_k}.")
    common(sp)
    sp.set_defaults(func=cmd_factor)

    sp = sub.add_parser("constants", help="G, Omega and the Barnes factor of E.")
    common(sp)
    sp.set_defaults(func=cmd_constants)

    sp = sub.add_parser("verify", help="det T_n against G^n n^Omega E along an n grid.")
    common(sp)
    sp.add_argument("--n-grid", dest="n_grid",
                    help="start:stop:geometric|linear[:count] (default 16:512:geometric).")
    sp.add_argument("--section-size", dest="section_size", type=int, default=32,
                    help="Initial section size M for the operator determinant (default 32).")
    sp.add_argument("--tol", type=float, default=1e-2,
                    help="Cauchy tolerance for successive E_n (default 1e-2).")
    sp.add_argument("--no-opdet", dest="no_opdet", action="store_true",
                    help="Skip the finite-section operator determinant.")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("barnes", help="log G(1+z) and G(1+z).")
    sp.add_argument("z", help="Complex argument, e.g. 0.3 or 0.2+0.1j.")
    common(sp, symbol=False)
    sp.set_defaults(func=cmd_barnes)
    return p


def _error(exc):
    sys.stderr.write(json.dumps(exc.to_dict(), sort_keys=True) + "\n")
    return exc.exit_code


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        text = args.func(args)
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except PCToeplitzError as exc:
        return _error(exc)
    except OSError as exc:
        return _error(InvalidInput(str(exc)))
    return 0


if __name__ == "__main__":
    sys.exit(main())
