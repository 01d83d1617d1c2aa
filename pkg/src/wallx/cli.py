"""Command line front end.

Exit codes: 0 success, 1 usage error, 2 domain error (or failed selftest).
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .errors import WallxError
from .toric import (
    DIVISOR_KINDS,
    NAMED,
    Geometry,
    divisor,
    geometry_from_json,
    geometry_from_word,
    is_globally_linear,
    is_upper_convex,
    named_geometry,
    parse_geometry,
    support_function,
)

MAX_DEGREE = 12


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ------------------------------------------------------------ input parsing


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not text or any(c in text for c in ".eE"):
        raise UsageError(f"{text!r} is not an exact rational; use integers or p/q")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"{text!r} is not a rational of the form p/q") from None


def parse_zeta(text: str) -> tuple:
    return tuple(parse_rational(t) for t in text.split(","))


def _parse_sigma_inline(text: str) -> list:
    out = []
    for item in text.split(","):
        try:
            x, y = item.split(":")
        except ValueError:
            raise UsageError(f"sigma entries look like 7/2:0, got {item!r}") from None
        xf = parse_rational(x)
        if (2 * xf).denominator != 1:
            raise UsageError(f"sigma_x must be a half-integer, got {x}")
        out.append((int(2 * xf), int(y)))
    return out


def _load_sigma(text: str) -> list:
    path = Path(text)
    if path.is_file():
        try:
            obj = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise UsageError(f"cannot parse {text}: {exc}") from None
        if isinstance(obj, dict):
            obj = obj.get("sigma", [])
        return obj
    return _parse_sigma_inline(text)


def geometry_from_args(args) -> Geometry:
    sources = [args.geom is not None, args.geometry_json is not None, args.sigma is not None]
    if sum(sources) != 1:
        raise UsageError("give exactly one geometry source: --geom, --geometry-json, or --N0/--N1/--sigma")
    if args.geom is not None:
        name = args.geom
        if name in NAMED:
            return named_geometry(name)
        if set(name) <= {"0", "1"} and name:
            return geometry_from_word(name)
        raise UsageError(f"unknown geometry {name!r}; known: {', '.join(sorted(NAMED))} or a 0/1 word")
    if args.geometry_json is not None:
        try:
            obj = json.loads(Path(args.geometry_json).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read geometry JSON: {exc}") from None
        return geometry_from_json(obj)
    if args.N0 is None or args.N1 is None:
        raise UsageError("--sigma needs --N0 and --N1")
    return parse_geometry(args.N0, args.N1, _load_sigma(args.sigma))


def _degree(args) -> int:
    D = args.degree
    if D < 0 or D > MAX_DEGREE:
        raise UsageError(f"--degree must be in 0..{MAX_DEGREE}")
    return D


def _cache_dir(args):
    if getattr(args, "no_cache", False):
        return None
    return os.environ.get("WALLX_CACHE_DIR") or None


# ------------------------------------------------------------ output


def _emit(args, payload: dict, text_lines=None) -> None:
    if args.format == "json" or text_lines is None:
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(text_lines) + "\n")


def _series_lines(series) -> list:
    rows = [(" ".join(str(e) for e in exp), str(c)) for exp, c in series.sorted_terms()]
    width = max([len(r[0]) for r in rows] + [8])
    return [f"{'exponent'.ljust(width)}  coeff"] + [f"{e.ljust(width)}  {c}" for e, c in rows]


def _table_lines(header, rows) -> list:
    rows = [[str(x) for x in r] for r in rows]
    widths = [max(len(h), *(len(r[j]) for r in rows)) if rows else len(h) for j, h in enumerate(header)]
    out = ["  ".join(h.ljust(w) for h, w in zip(header, widths))]
    out += ["  ".join(x.ljust(w) for x, w in zip(r, widths)) for r in rows]
    return out


def _provenance(geom, mode=None, flavor=None) -> dict:
    from .engine import provenance

    return provenance(geom, mode, flavor)


# ------------------------------------------------------------ subcommands


def cmd_divisors(args) -> int:
    geom = geometry_from_args(args)
    index = args.index
    if args.kind in ("F+", "F-", "I"):
        try:
            index = int(index)
        except (TypeError, ValueError):
            raise UsageError(f"{args.kind} needs an integer --index") from None
    elif args.kind != "Fplus_total" and index is None:
        raise UsageError(f"{args.kind} needs --index like 5/2")
    div = divisor(geom, args.kind, index)
    fn = support_function(geom, div)
    payload = {
        "divisor": div.to_json(),
        "support_function": {
            "forms": [list(f) for f in fn.forms],
            "globally_linear": is_globally_linear(geom, fn),
            "upper_convex": is_upper_convex(geom, fn),
        },
        "provenance": _provenance(geom),
    }
    text = [" ".join(f"{c:>3}" for c in div.row1), " ".join(f"{c:>3}" for c in div.row0)]
    _emit(args, payload, text)
    return 0


def cmd_quiver(args) -> int:
    from .quiver import check_derivatives_match_relations, quiver_for

    geom = geometry_from_args(args)
    qwp = quiver_for(geom)
    payload = qwp.to_json()
    payload["derivatives_match_relations"] = check_derivatives_match_relations(qwp)
    payload["provenance"] = _provenance(geom)
    rows = [(a["id"], a["from"], a["to"]) for a in payload["arrows"]]
    _emit(args, payload, _table_lines(("arrow", "from", "to"), rows))
    return 0


def cmd_roots(args) -> int:
    from .rootlat import epsilon, positive_real_roots

    geom = geometry_from_args(args)
    roots = positive_real_roots(geom.N, args.max_height)
    items = [
        {"vec": list(r.vec), "height": r.height, "epsilon": epsilon(geom, r.vec), "family": r.family, "a": r.a, "b": r.b, "n": r.n}
        for r in roots
    ]
    payload = {"roots": items, "provenance": _provenance(geom)}
    rows = [(",".join(map(str, x["vec"])), x["height"], x["epsilon"]) for x in items]
    _emit(args, payload, _table_lines(("root", "height", "eps"), rows))
    return 0


def cmd_path(args) -> int:
    from .rootlat import chamber_path

    geom = geometry_from_args(args)
    path = chamber_path(geom, parse_zeta(args.zeta), strict=args.strict)
    payload = path.to_json()
    payload["provenance"] = _provenance(geom)
    rows = [(",".join(map(str, c.root)), f"{c.c.numerator}/{c.c.denominator}", c.k) for c in path.crossings]
    _emit(args, payload, _table_lines(("root", "c", "k"), rows))
    return 0


def cmd_zfun(args) -> int:
    from .engine import z_eu, z_signed

    geom = geometry_from_args(args)
    D = _degree(args)
    zeta = parse_zeta(args.zeta)
    fn = z_eu if args.flavor == "euler" else z_signed
    series = fn(geom, zeta, D, args.mode, cache_dir=_cache_dir(args))
    payload = {"series": series.to_json(), "provenance": _provenance(geom, args.mode, args.flavor)}
    _emit(args, payload, [series.pretty(limit=40)] + _series_lines(series))
    return 0


def cmd_zpt(args) -> int:
    from .engine import z_pt_macmahon

    geom = geometry_from_args(args)
    D = _degree(args)
    table = z_pt_macmahon(geom, D)
    items = [{"n": n, "beta": list(beta), "coeff": str(c)} for (n, beta), c in sorted(table.items())]
    payload = {"table": items, "degree": D, "provenance": _provenance(geom)}
    rows = [(x["n"], ",".join(map(str, x["beta"])), x["coeff"]) for x in items]
    _emit(args, payload, _table_lines(("n", "beta", "coeff"), rows))
    return 0


def cmd_gv(args) -> int:
    from .engine import gv_invariants

    geom = geometry_from_args(args)
    table = gv_invariants(geom)
    items = [{"g": g, "a": a, "b": b, "n": n} for (g, (a, b)), n in sorted(table.items())]
    payload = {"gv": items, "provenance": _provenance(geom)}
    rows = [(x["g"], f"[{x['a']},{x['b']}]", x["n"]) for x in items]
    _emit(args, payload, _table_lines(("g", "class", "n"), rows))
    return 0


def cmd_crystal(args) -> int:
    from .crystal import enumerate_molten, enumerate_molten_naive

    geom = geometry_from_args(args)
    D = _degree(args)
    if args.naive:
        series = enumerate_molten_naive(geom, D)
    else:
        series = enumerate_molten(geom, D, cache_dir=_cache_dir(args))
    payload = {"series": series.to_json(), "provenance": _provenance(geom, "crystal")}
    _emit(args, payload, _series_lines(series))
    return 0


def _parse_string_arg(text: str) -> tuple:
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise UsageError(f"strings look like n0:n1:+-, got {text!r}")
    try:
        n0, n1 = int(parts[0]), int(parts[1])
    except ValueError:
        raise UsageError(f"bad string endpoints in {text!r}") from None
    word = parts[2] if len(parts) == 3 else ""
    return n0, n1, word


def cmd_ext(args) -> int:
    from .homalg import find_stable_string, generic_wall_point, hom_ext, string_module
    from .quiver import quiver_for
    from .rootlat import epsilon

    geom = geometry_from_args(args)
    qwp = quiver_for(geom)
    payload = {"provenance": _provenance(geom)}
    if args.root is not None:
        alpha = tuple(int(x) for x in args.root.split(","))
        if len(alpha) != geom.N:
            raise UsageError(f"--root needs {geom.N} entries")
        zeta = parse_zeta(args.zeta) if args.zeta else generic_wall_point(geom.N, alpha, args.seed)
        C = find_stable_string(qwp, zeta, alpha)
        n0, n1, word = C.meta["string"]
        he = hom_ext(C, C)
        payload.update(
            {
                "root": list(alpha),
                "zeta_wall": [f"{z.numerator}/{z.denominator}" for z in zeta],
                "string": {"n0": n0, "n1": n1, "orientation": "".join(word)},
                "hom": he.hom,
                "ext1": he.ext1,
                "ext2": he.ext2,
                "ext3": he.ext3,
                "expected_ext1": 0 if epsilon(geom, alpha) == -1 else 1,
            }
        )
    else:
        if args.E is None:
            raise UsageError("give --root or --E (and optionally --F)")
        E = string_module(qwp, *_parse_string_arg(args.E))
        F = string_module(qwp, *_parse_string_arg(args.F or args.E))
        he = hom_ext(E, F)
        payload.update({"hom": he.hom, "ext1": he.ext1, "ext2": he.ext2, "ext3": he.ext3})
    keys = [k for k in ("hom", "ext1", "ext2", "ext3", "expected_ext1") if k in payload]
    _emit(args, payload, _table_lines(("quantity", "value"), [(k, payload[k]) for k in keys]))
    return 0


def cmd_selftest(args) -> int:
    from .acceptance import run_all

    results = run_all(quick=args.quick)
    ok = True
    for r in results:
        sys.stdout.write(r.line() + "\n")
        ok = ok and r.ok
    return 0 if ok else 2


# ------------------------------------------------------------ parser


def _add_geometry(p) -> None:
    g = p.add_argument_group("geometry (choose one source)")
    g.add_argument("--geom", help="named geometry or a 0/1 row word")
    g.add_argument("--geometry-json", help="geometry JSON file")
    g.add_argument("--N0", type=int)
    g.add_argument("--N1", type=int)
    g.add_argument("--sigma", help="sigma JSON file, or inline like 7/2:0,3/2:1,...")


def build_parser() -> argparse.ArgumentParser:
    from .engine import FLAVORS, MODES

    parser = _Parser(prog="wallx", description="Wall-crossing toolkit for small crepant resolutions.")
    parser.add_argument("--version", action="version", version=f"wallx {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, func, help_text, geometry=True):
        p = sub.add_parser(name, help=help_text)
        if geometry:
            _add_geometry(p)
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.set_defaults(func=func)
        return p

    p = add("divisors", cmd_divisors, "divisor coefficients and support function")
    p.add_argument("--kind", choices=DIVISOR_KINDS, required=True)
    p.add_argument("--index")

    add("quiver", cmd_quiver, "quiver with potential")

    p = add("roots", cmd_roots, "positive real roots with their signs")
    p.add_argument("--max-height", type=int, default=4)

    p = add("path", cmd_path, "walls crossed from the cyclic or trivial chamber")
    p.add_argument("--zeta", required=True)
    p.add_argument("--strict", action="store_true", help="reject parameters lying on a wall")

    p = add("zfun", cmd_zfun, "partition function at a stability parameter")
    p.add_argument("--zeta", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--mode", choices=MODES, default="relative_to_cyclic")
    p.add_argument("--flavor", choices=FLAVORS, default="euler")
    p.add_argument("--no-cache", action="store_true")

    p = add("zpt", cmd_zpt, "PT MacMahon product in sheaf variables")
    p.add_argument("--degree", type=int, required=True)

    add("gv", cmd_gv, "genus-zero GV invariants")

    p = add("crystal", cmd_crystal, "molten crystal count at the cyclic chamber")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--naive", action="store_true")
    p.add_argument("--no-cache", action="store_true")

    p = add("ext", cmd_ext, "Hom/Ext dimensions for string modules")
    p.add_argument("--root", help="find the stable string of this real root")
    p.add_argument("--zeta", help="wall point (defaults to a seeded generic one)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--E", help="string module as n0:n1:word")
    p.add_argument("--F", help="string module as n0:n1:word (defaults to E)")

    p = add("selftest", cmd_selftest, "run the acceptance criteria", geometry=False)
    p.add_argument("--quick", action="store_true", help="smaller random samples")
    return parser


_VALUE_OPTIONS = ("--zeta", "--root", "--index", "--sigma")
_NEGATIVE = re.compile(r"^-\d")


def _glue_negative_values(argv: list) -> list:
    """Turn ``--zeta -1,-1`` into ``--zeta=-1,-1``; argparse reads -1,-1 as a flag."""
    out = []
    j = 0
    while j < len(argv):
        tok = argv[j]
        if tok in _VALUE_OPTIONS and j + 1 < len(argv) and _NEGATIVE.match(argv[j + 1]):
            out.append(f"{tok}={argv[j + 1]}")
            j += 2
            continue
        out.append(tok)
        j += 1
    return out


def run(argv=None) -> int:
    try:
        parser = build_parser()
        argv = sys.argv[1:] if argv is None else list(argv)
        args = parser.parse_args(_glue_negative_values(argv))
        if not getattr(args, "command", None):
            raise UsageError("missing subcommand")
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 1
    except (WallxError, ValueError, KeyError) as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())
