"""Command-line front end.

Results go to stdout in the canonical polyhedron format; diagnostics go
to stderr.  Exit codes: 0 success, 1 input or parse error, 2 map not
surjective, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import DimensionMismatch, NotSurjective, ParseError, PolymapError
from .formats import (
    parse_linmap,
    parse_point_text,
    parse_polyhedron,
    render_certificates,
    render_polyhedron,
)
from .oracle import SampleSpec, verify_image
from .polyhedron import contains, is_empty, normalize_rows
from .projection import image, preimage

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NOT_SURJECTIVE = 2
EXIT_VERIFY_FAILED = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polymap",
        description="Exact images and preimages of H-representation polyhedra "
                    "under linear maps.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("image", help="forward image of a polyhedron under a surjective map")
    p.add_argument("--poly", required=True, help="polyhedron JSON file (the set A)")
    p.add_argument("--map", required=True, dest="map_path", help="linear map JSON file")
    p.add_argument("--minimize", action="store_true", help="emit an irredundant system")
    p.add_argument("--certificates", metavar="PATH",
                   help="write per-row multiplier certificates to PATH")
    p.add_argument("--verify", type=int, metavar="N",
                   help="verify the result on N samples; exit 3 when it fails")
    p.add_argument("--seed", type=int, default=0, help="verification sample seed")
    p.add_argument("--radius", type=int, default=4, help="verification sample box radius")

    p = sub.add_parser("preimage", help="inverse image of a polyhedron")
    p.add_argument("--poly", required=True, help="polyhedron JSON file (the set B)")
    p.add_argument("--map", required=True, dest="map_path", help="linear map JSON file")

    p = sub.add_parser("member", help="exact membership test")
    p.add_argument("--poly", required=True)
    p.add_argument("--point", required=True, help="comma-separated rationals, e.g. 1/2,0")

    p = sub.add_parser("empty", help="exact emptiness test")
    p.add_argument("--poly", required=True)

    p = sub.add_parser("normalize", help="canonical form of a polyhedron")
    p.add_argument("--poly", required=True)

    p = sub.add_parser("verify", help="verify a claimed image against its inputs")
    p.add_argument("--poly", required=True, help="the input polyhedron A")
    p.add_argument("--map", required=True, dest="map_path")
    p.add_argument("--result", required=True, help="the claimed image polyhedron")
    p.add_argument("--samples", type=int, required=True, metavar="N")
    p.add_argument("--seed", type=int, required=True, metavar="S")
    p.add_argument("--radius", type=int, default=4)
    p.add_argument("--json", action="store_true", help="machine-readable report")

    return parser


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _dispatch(args, out, err) -> int:
    if args.verb == "image":
        poly = parse_polyhedron(_read(args.poly))
        lin_map = parse_linmap(_read(args.map_path))
        result, certs = image(lin_map, poly, minimize=args.minimize)
        out.write(render_polyhedron(result))
        if args.certificates:
            with open(args.certificates, "w", encoding="utf-8") as handle:
                handle.write(render_certificates(result, certs))
        if args.verify is not None:
            spec = SampleSpec(seed=args.seed, count=args.verify, box_radius=args.radius)
            report = verify_image(lin_map, poly, result, certs, spec)
            err.write(report.to_text() + "\n")
            if not report.passed:
                return EXIT_VERIFY_FAILED
        return EXIT_OK

    if args.verb == "preimage":
        poly = parse_polyhedron(_read(args.poly))
        lin_map = parse_linmap(_read(args.map_path))
        out.write(render_polyhedron(preimage(lin_map, poly)))
        return EXIT_OK

    if args.verb == "member":
        poly = parse_polyhedron(_read(args.poly))
        point = parse_point_text(args.point)
        out.write("true\n" if contains(poly, point) else "false\n")
        return EXIT_OK

    if args.verb == "empty":
        poly = parse_polyhedron(_read(args.poly))
        out.write("true\n" if is_empty(poly) else "false\n")
        return EXIT_OK

    if args.verb == "normalize":
        poly = parse_polyhedron(_read(args.poly))
        out.write(render_polyhedron(normalize_rows(poly)))
        return EXIT_OK

    if args.verb == "verify":
        poly = parse_polyhedron(_read(args.poly))
        lin_map = parse_linmap(_read(args.map_path))
        result = parse_polyhedron(_read(args.result))
        spec = SampleSpec(seed=args.seed, count=args.samples, box_radius=args.radius)
        report = verify_image(lin_map, poly, result, None, spec)
        if args.json:
            out.write(json.dumps(report.to_json_dict(), indent=2) + "\n")
        else:
            out.write(report.to_text() + "\n")
        return EXIT_OK if report.passed else EXIT_VERIFY_FAILED

    raise AssertionError(f"unhandled verb {args.verb!r}")


def run(argv, stdout=None, stderr=None) -> int:
    """Run one command; returns the exit code instead of raising SystemExit."""
    out = stdout if stdout is not None else sys.stdout
    err = stderr if stderr is not None else sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 1
        return EXIT_OK if code == 0 else EXIT_INPUT
    try:
        return _dispatch(args, out, err)
    except NotSurjective as exc:
        err.write(f"{exc}\n")
        return EXIT_NOT_SURJECTIVE
    except ParseError as exc:
        err.write(f"{exc}\n")
        return EXIT_INPUT
    except (DimensionMismatch, PolymapError, OSError, ValueError) as exc:
        err.write(f"{exc}\n")
        return EXIT_INPUT


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
