"""Command-line interface.

Exit codes: 0 success, 2 invalid input, 3 valid input with a negative
answer (not a quandle, not an embedding), 4 internal invariant breach.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .embed import bergman_embed, embeddability_report
from .errors import HomQuandleError, InvariantBreach
from .geometry import DEFAULT_EPS, DEFAULT_SEED
from .groups import automorphism_order, bergman_extension, semidirect_z
from .quandles import (
    alexander_quandle,
    check_quandle_axioms,
    conj_quandle,
    core_quandle,
    dihedral_quandle,
    joyce_triplet,
    triplet_quandle,
)
from .sampling import (
    DEFAULT_SAMPLES,
    check_grassmann,
    check_oriented_grassmann,
    check_rotation,
    check_sphere,
)
from .serialize import (
    FormatError,
    automorphism_from_json,
    bergman_report_to_json,
    dumps,
    embedding_report_to_json,
    group_from_json,
    group_to_json,
    load_json,
    map_to_json,
    quandle_from_json,
    quandle_to_json,
    triplet_from_json,
    triplet_to_json,
)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NEGATIVE = 3
EXIT_BREACH = 4

MAKE_KINDS = ("conj", "core", "alex", "triplet", "dihedral", "bergman-ext", "semidirect-z")
GEOM_FAMILIES = ("sphere", "rotation", "grassmann", "oriented-grassmann")


class UsageError(HomQuandleError):
    pass


def _seed(text: str) -> int:
    return int(text, 0)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--out", help="write the result here instead of stdout")

    p = argparse.ArgumentParser(prog="homquandle",
                                description="Homogeneous quandles and their conjugation embeddings.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    mk = sub.add_parser("make", parents=[common], help="build a quandle or group table")
    mk.add_argument("kind", choices=MAKE_KINDS)
    mk.add_argument("size", nargs="?", type=int, help="n for `make dihedral n`")
    mk.add_argument("--group", help="group JSON file or catalog name (Z5, S3, D4, Q8, Z2xZ2, ...)")
    mk.add_argument("--sigma", help="automorphism JSON (file or inline)")
    mk.add_argument("--triplet", help="triplet JSON file")
    mk.add_argument("--modulus-factor", type=int, default=1)

    vf = sub.add_parser("verify", parents=[common], help="check the quandle axioms")
    vf.add_argument("path")

    em = sub.add_parser("embed", parents=[common], help="embed a triplet quandle")
    em.add_argument("path")
    em.add_argument("--mode", choices=("auto", "inner", "semidirect"), default="auto")
    em.add_argument("--modulus-factor", type=int, default=1)

    jy = sub.add_parser("joyce", parents=[common], help="triplet of a homogeneous quandle")
    jy.add_argument("path")
    jy.add_argument("--basepoint", type=int, default=0)

    bg = sub.add_parser("bergman", parents=[common], help="Bergman embedding of Core(G)")
    bg.add_argument("--group", required=True)

    ge = sub.add_parser("geom", parents=[common], help="sampled checks of the continuous quandles")
    ge.add_argument("family", choices=GEOM_FAMILIES)
    ge.add_argument("--n", type=int)
    ge.add_argument("--k", type=int)
    ge.add_argument("--theta", type=float)
    ge.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    ge.add_argument("--tol", type=float, default=DEFAULT_EPS)
    ge.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    return p


# ---------------------------------------------------------------------------
# commands: each returns (payload, exit code)

def _need(value, flag: str):
    if value is None:
        raise UsageError(f"{flag} is required here")
    return value


def cmd_make(args):
    kind = args.kind
    if kind == "dihedral":
        n = _need(args.size, "size")
        if n < 1:
            raise UsageError("dihedral quandle needs n >= 1")
        return quandle_to_json(dihedral_quandle(n)), EXIT_OK
    if kind == "triplet":
        T, _ = triplet_from_json(_need(args.triplet, "--triplet"))
        return quandle_to_json(triplet_quandle(T)[0]), EXIT_OK
    G = group_from_json(_need(args.group, "--group"))
    if kind == "conj":
        return quandle_to_json(conj_quandle(G, validate=True)), EXIT_OK
    if kind == "core":
        return quandle_to_json(core_quandle(G)), EXIT_OK
    if kind == "bergman-ext":
        return group_to_json(bergman_extension(G)), EXIT_OK
    sigma = automorphism_from_json(G, _need(args.sigma, "--sigma"))
    if kind == "alex":
        return quandle_to_json(alexander_quandle(G, sigma)), EXIT_OK
    if args.modulus_factor < 1:
        raise UsageError("--modulus-factor must be positive")
    m = automorphism_order(sigma) * args.modulus_factor
    return group_to_json(semidirect_z(G, sigma, m)), EXIT_OK


def cmd_verify(args):
    d = load_json(args.path)
    if not isinstance(d, dict) or "table" not in d:
        raise FormatError("expected a quandle document with a 'table' field")
    report = check_quandle_axioms(d["table"])
    out = {"quandle": report.ok, **report.to_dict()}
    return out, EXIT_OK if report.ok else EXIT_NEGATIVE


def cmd_embed(args):
    if args.modulus_factor < 1:
        raise UsageError("--modulus-factor must be positive")
    T, q = triplet_from_json(args.path)
    report = embeddability_report(T, mode=args.mode, q=q, modulus_factor=args.modulus_factor)
    return embedding_report_to_json(report), EXIT_OK if report.is_embedding else EXIT_NEGATIVE


def cmd_joyce(args):
    X = quandle_from_json(args.path)
    if not 0 <= args.basepoint < X.order:
        raise UsageError(f"basepoint must be in 0..{X.order - 1}")
    T, f = joyce_triplet(X, args.basepoint)
    return {"basepoint": args.basepoint, "triplet": triplet_to_json(T),
            "isomorphism": map_to_json(f)}, EXIT_OK


def cmd_bergman(args):
    b = bergman_embed(group_from_json(args.group))
    return bergman_report_to_json(b), EXIT_OK if b.ok else EXIT_NEGATIVE


def cmd_geom(args):
    if args.samples < 1:
        raise UsageError("--samples must be positive")
    if not args.tol > 0:
        raise UsageError("--tol must be positive")
    kw = dict(samples=args.samples, seed=args.seed, eps=args.tol)
    fam = args.family
    if fam == "sphere":
        n = _need(args.n, "--n")
        if n < 1:
            raise UsageError("--n must be at least 1")
        report = check_sphere(n, **kw)
    elif fam == "rotation":
        report = check_rotation(_need(args.theta, "--theta"), **kw)
    else:
        n, k = _need(args.n, "--n"), _need(args.k, "--k")
        if not 1 <= k <= n - 1:
            raise UsageError("need 1 <= k <= n-1")
        check = check_grassmann if fam == "grassmann" else check_oriented_grassmann
        report = check(n, k, **kw)
    return report.to_dict(), EXIT_OK if report.ok else EXIT_NEGATIVE


COMMANDS = {
    "make": cmd_make,
    "verify": cmd_verify,
    "embed": cmd_embed,
    "joyce": cmd_joyce,
    "bergman": cmd_bergman,
    "geom": cmd_geom,
}


# ---------------------------------------------------------------------------
# output

def render_text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for key, value in obj.items():
            if isinstance(value, dict) or (isinstance(value, list) and value
                                           and isinstance(value[0], dict)):
                lines.append(f"{pad}{key}:")
                lines.append(render_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {json.dumps(value)}")
    elif isinstance(obj, list):
        for item in obj:
            lines.append(f"{pad}-")
            lines.append(render_text(item, indent + 1))
    else:
        lines.append(f"{pad}{json.dumps(obj)}")
    return "\n".join(lines)


def _emit(payload, args) -> None:
    text = dumps(payload) if args.format == "json" else render_text(payload) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload, code = COMMANDS[args.command](args)
    except HomQuandleError as exc:
        report = getattr(exc, "report", None)
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        if report is not None:
            print(dumps(report.to_dict()), file=sys.stderr, end="")
        return EXIT_INVALID
    except InvariantBreach as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_BREACH
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if code == EXIT_NEGATIVE and payload.get("collision"):
        i, j = payload["collision"]
        cos = payload.get("cosets", [])
        names = (cos[i], cos[j]) if cos else (i, j)
        print(f"not injective: {names[0]} and {names[1]} have the same image", file=sys.stderr)
    _emit(payload, args)
    return code


if __name__ == "__main__":
    sys.exit(main())
