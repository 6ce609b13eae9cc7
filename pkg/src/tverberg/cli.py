"""Command-line front end.

Subcommands read point-file documents from --input (default stdin),
write result documents to stdout, and report through exit codes:

  0  success, or a refutation that holds
  1  negative result: verification failed, a partition exists where
     none was claimed, or a search completed empty-handed
  2  usage error, malformed document, or violated precondition
  3  an enumeration budget ran out before the answer was settled

Documents are exact (rationals as strings) and byte-stable for fixed
inputs and seeds, so they pipe cleanly between subcommands.
"""

from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction

from . import documents as docs
from .ambient import AmbientSet, FiniteSet, Lattice, MixedLattice, RealSpace
from .depth import (
    depth_value,
    finite_set_centerpoint,
    halfspace_depth,
    integer_centerpoint,
)
from .errors import (
    BudgetExceeded,
    Infeasible,
    InputError,
    NotFound,
    PreconditionViolated,
    SearchExhausted,
    SelectionNotFound,
    UnsupportedAmbient,
)
from .oracle import exact_tverberg_number, search_partition
from .planar import helly_number, plane_tverberg
from .points import Point, PointMultiset, rational
from .product import double_witness, product_tverberg, real_tverberg_bruteforce
from .selection import depth_partition_search, fraction_selection
from .space3 import z3_tverberg
from .witnesses import convex_lowerbound_witness, doignon_witness, onn_witness

_MIXED_FORM = re.compile(r"^Z(\d+)R(\d+)$")
_LATTICE_FORM = re.compile(r"^Z(\d+)$")
_REAL_FORM = re.compile(r"^R(\d+)$")


def _read_text(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    try:
        with open(source, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc}") from None


def _emit(doc: dict) -> None:
    sys.stdout.write(docs.dumps(doc))


def _load_point_file(args) -> tuple[PointMultiset, AmbientSet | None]:
    return docs.point_file_from_doc(docs.loads(_read_text(args.input)))


def _parse_point(text: str) -> Point:
    tokens = [tok.strip() for tok in text.split(",")]
    if not all(tokens):
        raise InputError(f"malformed point {text!r}; expected comma-separated rationals")
    return tuple(rational(tok) for tok in tokens)


def _resolve_ambient(
    spec: str | None, dim: int, declared: AmbientSet | None
) -> AmbientSet:
    """The ambient to work over: flag first, then the file, then Z^dim."""
    if spec is None:
        return declared if declared is not None else Lattice(dim)
    if spec == "Zd":
        return Lattice(dim)
    if spec == "Rd":
        return RealSpace(dim)
    if spec == "finite":
        if isinstance(declared, FiniteSet):
            return declared
        raise InputError("a finite ambient must be declared inside the point file")
    match = _MIXED_FORM.match(spec)
    if match:
        return MixedLattice(int(match.group(1)), int(match.group(2)))
    match = _LATTICE_FORM.match(spec)
    if match:
        return Lattice(int(match.group(1)))
    match = _REAL_FORM.match(spec)
    if match:
        return RealSpace(int(match.group(1)))
    raise InputError(
        f"unknown ambient {spec!r}; use Zd, Rd, finite, or explicit forms "
        "like Z2, R3, Z1R2"
    )


def _finite_ground_set(
    points: PointMultiset, declared: AmbientSet | None
) -> FiniteSet:
    if isinstance(declared, FiniteSet):
        return declared
    if declared is not None and not isinstance(declared, Lattice):
        raise InputError("this subcommand needs a finite ambient set")
    return FiniteSet(points.support(), points.dim)


def cmd_depth(args) -> int:
    points, _ = _load_point_file(args)
    q = _parse_point(args.point)
    witness = halfspace_depth(q, points)
    _emit(
        {
            "type": "depth",
            "point": docs.point_to_doc(q),
            "depth": witness.depth,
            "witness": docs.halfspace_to_doc(witness.halfspace),
        }
    )
    return 0


def cmd_centerpoint(args) -> int:
    points, declared = _load_point_file(args)
    ambient = _resolve_ambient(args.ambient, points.dim, declared)
    if isinstance(ambient, Lattice):
        center = integer_centerpoint(points, args.m)
    elif isinstance(ambient, FiniteSet):
        center = finite_set_centerpoint(points, ambient, args.m)
    else:
        raise UnsupportedAmbient(
            f"centerpoints are computed over Zd or finite sets, not "
            f"{ambient.describe()}"
        )
    _emit(
        {
            "type": "centerpoint",
            "m": args.m,
            "point": docs.point_to_doc(center),
            "depth": depth_value(center, points),
        }
    )
    return 0


def cmd_tverberg(args) -> int:
    points, declared = _load_point_file(args)
    ambient = _resolve_ambient(args.ambient, points.dim, declared)
    if isinstance(ambient, Lattice) and ambient.d == 2:
        cert = plane_tverberg(points, args.m, ambient)
    elif isinstance(ambient, Lattice) and ambient.d == 3:
        cert = z3_tverberg(points, args.m, seed=args.seed)
    elif isinstance(ambient, FiniteSet):
        cert = plane_tverberg(points, args.m, ambient)
    elif isinstance(ambient, MixedLattice):
        cert, _ = product_tverberg(points, args.m, ambient, seed=args.seed)
    elif isinstance(ambient, RealSpace):
        cert = real_tverberg_bruteforce(points, args.m)
    else:
        raise UnsupportedAmbient(f"no driver for {ambient.describe()}")
    _emit(docs.certificate_to_doc(cert))
    return 0


def cmd_verify(args) -> int:
    from .certificates import verify_certificate

    cert = docs.certificate_from_doc(docs.loads(_read_text(args.input)))
    if args.source is not None:
        source, _ = docs.point_file_from_doc(docs.loads(_read_text(args.source)))
    else:
        acc: dict[Point, int] = {}
        for part in cert.parts:
            for p, mult in part.entries:
                acc[p] = acc.get(p, 0) + mult
        source = PointMultiset(acc.items(), dim=len(cert.point))
    report = verify_certificate(cert, source)
    _emit(
        {
            "type": "verification",
            "ok": report.ok,
            "failures": list(report.failures),
            "details": list(report.details),
        }
    )
    return 0 if report.ok else 1


def cmd_refute(args) -> int:
    points, declared = _load_point_file(args)
    ambient = _resolve_ambient(args.ambient, points.dim, declared)
    found = search_partition(points, args.m, ambient, budget=args.budget)
    if found is None:
        _emit(
            {
                "type": "refutation",
                "m": args.m,
                "ambient": docs.ambient_to_doc(ambient),
                "no_partition": True,
            }
        )
        return 0
    hulls, witness = found
    _emit(
        {
            "type": "refutation",
            "m": args.m,
            "ambient": docs.ambient_to_doc(ambient),
            "no_partition": False,
            "point": docs.point_to_doc(witness),
            "parts": [docs.multiset_to_doc(h) for h in hulls],
        }
    )
    return 1


def cmd_witness(args) -> int:
    if args.shape == "onn":
        _emit(docs.point_file_to_doc(onn_witness(), Lattice(2)))
        return 0
    if args.shape == "doignon":
        _emit(docs.point_file_to_doc(doignon_witness(args.m), Lattice(2)))
        return 0
    if args.shape == "double":
        points, declared = _load_point_file(args)
        ambient = _resolve_ambient(args.ambient, points.dim, declared)
        doubled, lifted = double_witness(points, ambient)
        _emit(docs.point_file_to_doc(doubled, lifted))
        return 0
    if args.shape == "convex-lb":
        points, declared = _load_point_file(args)
        ground = _finite_ground_set(points, declared)
        _emit(docs.point_file_to_doc(convex_lowerbound_witness(ground, args.m), ground))
        return 0
    raise InputError(f"unknown witness shape {args.shape!r}")


def cmd_tvnumber(args) -> int:
    points, declared = _load_point_file(args)
    ground = _finite_ground_set(points, declared)
    number = exact_tverberg_number(ground, args.m, args.n_max, budget=args.budget)
    _emit(
        {
            "type": "tverberg_number",
            "m": args.m,
            "number": number,
            "ambient": docs.ambient_to_doc(ground),
        }
    )
    return 0


def cmd_helly(args) -> int:
    points, declared = _load_point_file(args)
    ground = _finite_ground_set(points, declared)
    witness = helly_number(ground)
    _emit(
        {
            "type": "helly_number",
            "number": witness.number,
            "witness": [docs.point_to_doc(p) for p in witness.points],
        }
    )
    return 0


def cmd_select(args) -> int:
    points, _ = _load_point_file(args)
    n, d = points.size, points.dim
    if args.point is not None:
        q = _parse_point(args.point)
    else:
        q = integer_centerpoint(points, -(-n // (d + 1)))
    min_size = args.min_size if args.min_size is not None else n // (2 * (d + 1))
    result = fraction_selection(points, q, min_size, max_seeds=args.seeds)
    _emit(
        {
            "type": "selection",
            "point": docs.point_to_doc(result.point),
            "sizes": list(result.sizes),
            "parts": [docs.multiset_to_doc(part) for part in result.parts],
            "verified": result.verified,
        }
    )
    return 0


def cmd_partition_depth(args) -> int:
    points, _ = _load_point_file(args)
    alpha = rational(args.alpha)
    parts = depth_partition_search(
        points, alpha, args.r, seed=args.seed, budget=args.budget
    )
    _emit(
        {
            "type": "depth_partition",
            "alpha": args.alpha,
            "sizes": [part.size for part in parts],
            "parts": [docs.multiset_to_doc(part) for part in parts],
        }
    )
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tverberg",
        description="Exact Tverberg partitions, depth, and refutations "
        "over discrete point sets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, ambient=True, seed=False):
        p.add_argument(
            "--input",
            default="-",
            help="point or certificate document; - reads stdin (default)",
        )
        p.add_argument(
            "--jobs",
            type=int,
            default=1,
            help="worker cap; this build computes in-process, so any "
            "value >= 1 behaves the same",
        )
        if ambient:
            p.add_argument(
                "--ambient",
                default=None,
                help="Zd, Rd, finite, or explicit forms like Z2, R3, Z1R2; "
                "defaults to the file's declaration, then Zd",
            )
        if seed:
            p.add_argument("--seed", type=int, default=0, help="search seed")

    p = sub.add_parser("depth", help="half-space depth of a query point")
    common(p, ambient=False)
    p.add_argument("--point", required=True, help="query, e.g. 1,-2/3")
    p.set_defaults(func=cmd_depth)

    p = sub.add_parser("centerpoint", help="deepest ambient point for a target m")
    common(p)
    p.add_argument("--m", type=int, required=True, help="depth target")
    p.set_defaults(func=cmd_centerpoint)

    p = sub.add_parser("tverberg", help="construct a verified m-part partition")
    common(p, seed=True)
    p.add_argument("--m", type=int, required=True, help="number of parts")
    p.set_defaults(func=cmd_tverberg)

    p = sub.add_parser("verify", help="re-check a certificate document")
    common(p, ambient=False)
    p.add_argument(
        "--source",
        default=None,
        help="point file the certificate must partition; defaults to the "
        "union of its parts",
    )
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("refute", help="prove no m-partition admits an ambient point")
    common(p)
    p.add_argument("--m", type=int, required=True, help="number of parts")
    p.add_argument("--budget", type=int, default=None, help="partition check cap")
    p.set_defaults(func=cmd_refute)

    p = sub.add_parser("witness", help="emit a named lower-bound configuration")
    wsub = p.add_subparsers(dest="shape", required=True)
    w = wsub.add_parser("onn", help="five points with no integer Radon point")
    common(w, ambient=False)
    w.set_defaults(func=cmd_witness)
    w = wsub.add_parser("doignon", help="4m-4 points with no integer m-partition")
    common(w, ambient=False)
    w.add_argument("--m", type=int, required=True)
    w.set_defaults(func=cmd_witness)
    w = wsub.add_parser("double", help="duplicate a set across a new coordinate")
    common(w)
    w.set_defaults(func=cmd_witness)
    w = wsub.add_parser(
        "convex-lb", help="hull-independent points repeated m-1 times each"
    )
    common(w, ambient=False)
    w.add_argument("--m", type=int, required=True)
    w.set_defaults(func=cmd_witness)

    p = sub.add_parser("tvnumber", help="exact Tverberg number of a finite set")
    common(p, ambient=False)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n-max", type=int, default=12, help="largest size to try")
    p.add_argument("--budget", type=int, default=None, help="partition check cap")
    p.set_defaults(func=cmd_tvnumber)

    p = sub.add_parser("helly", help="Helly number of a finite planar set")
    common(p, ambient=False)
    p.set_defaults(func=cmd_helly)

    p = sub.add_parser("select", help="three large groups every hull transversal hits")
    common(p, ambient=False)
    p.add_argument("--point", default=None, help="center; defaults to a centerpoint")
    p.add_argument("--min-size", type=int, default=None, help="group size floor")
    p.add_argument("--seeds", type=int, default=150, help="seed transversal cap")
    p.set_defaults(func=cmd_select)

    p = sub.add_parser(
        "partition-depth", help="balanced groups keeping deep points covered"
    )
    common(p, ambient=False, seed=True)
    p.add_argument("--alpha", required=True, help="depth fraction, e.g. 1/3")
    p.add_argument("--r", type=int, required=True, help="number of groups")
    p.add_argument("--budget", type=int, default=200, help="regrouping attempts")
    p.set_defaults(func=cmd_partition_depth)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        parser.error("--jobs must be at least 1")
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"tverberg: {exc}", file=sys.stderr)
        return 3
    except InputError as exc:
        print(f"tverberg: {exc}", file=sys.stderr)
        return 2
    except (PreconditionViolated, UnsupportedAmbient) as exc:
        print(f"tverberg: {exc}", file=sys.stderr)
        return 2
    except SelectionNotFound as exc:
        best = f" (best sizes {list(exc.best_sizes)})" if exc.best_sizes else ""
        print(f"tverberg: {exc}{best}", file=sys.stderr)
        return 1
    except (NotFound, SearchExhausted, Infeasible) as exc:
        print(f"tverberg: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
