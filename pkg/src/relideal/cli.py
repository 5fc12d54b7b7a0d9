"""
relideal command line.

    relideal compute --poly "Z^5 - Z^4 - 4*Z^3 + 3*Z^2 + 3*Z - 1" --generators "(1 2 3 4 5)"
    relideal verify --basis c5.json
    relideal reduce --basis c5.json --poly "T2^2"
    relideal inv --basis c5.json --poly "T1"
    relideal express --basis c5.json --index 2
    relideal bm --points points.json

Results go to stdout (or --output), logging to stderr.
"""

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from .bmoller import PointSet, buchberger_moeller
from .config import DEFAULT_CONFIG_PATH, Settings, configure_logging, load_config
from .errors import (
    PARSE_ERRORS,
    GroupParseError,
    InvalidBasis,
    InvalidInput,
    PolynomialParseError,
    RelIdealError,
    VerificationFailed,
)
from .exactring import QQ, GF
from .multipoly import MultiPoly, TriangularBasis
from .permgrp import Perm, PermGroup
from .polytext import format_poly, format_unipoly, parse_poly, parse_unipoly
from .reconstruct import (
    ReconstructedBasis,
    compute_basis,
    express_root,
    expressible_roots,
    verify_basis,
)
from .splitfield import SplittingField
from .unipoly import UniPoly

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1


@dataclass
class JobSpec:
    command: str
    poly: Optional[str] = None
    group: Optional[PermGroup] = None
    prime: Optional[int] = None
    precision: Optional[int] = None
    labeling: Optional[List[int]] = None
    output_format: str = "text"


def _read_text_arg(value: str) -> str:
    """Arguments starting with '@' name a file holding the value."""
    if value.startswith("@"):
        with open(value[1:], "r") as f:
            return f.read()
    return value


def parse_group(group: Optional[str], generators: Optional[str], n: int, cap: int) -> PermGroup:
    if group:
        text = _read_text_arg(group)
        return PermGroup.from_descriptor(text, cap=cap)
    if generators:
        gens = [Perm.parse(g.strip(), n) for g in generators.split(";") if g.strip()]
        return PermGroup(n, gens, cap=cap)
    raise GroupParseError("one of --group or --generators is required")


def parse_labeling(text: Optional[str]) -> Optional[List[int]]:
    if not text:
        return None
    try:
        return [int(v) for v in text.replace(",", " ").split()]
    except ValueError as e:
        raise PolynomialParseError(f"labeling must be a list of integers: {text!r}") from e


def _fraction_text(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def basis_to_dict(result: ReconstructedBasis, keep_labeling: bool = False) -> dict:
    prov = result.provenance
    payload = {
        "format": FORMAT_VERSION,
        "f": format_unipoly(result.f),
        "group": result.group.to_descriptor(),
        "basis": [format_poly(g) for g in result.polys],
        "provenance": {
            "p": prov.p,
            "e": prov.e,
            "labeling": list(prov.labeling),
            "alignment": [i + 1 for i in prov.alignment],
            "deltas": [str(d) for d in prov.deltas],
            "lambdas": [_fraction_text(lam) for lam in prov.lambdas],
            "denominators": [str(d) for d in result.denominators],
        },
    }
    if keep_labeling and prov.alignment:
        original = result.group.conjugate(Perm(prov.alignment))
        payload["provenance"]["group_in_input_labeling"] = original.to_descriptor()
    return payload


@dataclass
class LoadedBasis:
    f: UniPoly
    group: PermGroup
    basis: TriangularBasis
    p: Optional[int]


def load_basis(path: str, cap: int) -> LoadedBasis:
    try:
        with open(path, "r") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as e:
        raise InvalidBasis(f"basis file {path} is not JSON: {e}") from e
    if data.get("format") != FORMAT_VERSION:
        raise InvalidBasis(f"unsupported basis format {data.get('format')!r}")
    try:
        f = parse_unipoly(data["f"])
        group = PermGroup.from_descriptor(data["group"], cap=cap)
        polys = tuple(parse_poly(g, group.n) for g in data["basis"])
    except KeyError as e:
        raise InvalidBasis(f"basis file {path} lacks {e}") from e
    p = data.get("provenance", {}).get("p")
    return LoadedBasis(f, group, TriangularBasis(polys), p)


def _emit(args, payload: dict, lines: Sequence[str]):
    if args.format == "json":
        text = json.dumps(payload, indent=2) + "\n"
    else:
        text = "".join(f"{line}\n" for line in lines)
    if args.output:
        with open(args.output, "w") as f:
            f.write(text)
        logger.info(f"output written to {args.output}")
    else:
        sys.stdout.write(text)


def cmd_compute(args, settings: Settings) -> int:
    f = parse_unipoly(args.poly)
    if not f.is_monic():
        logger.warning(f"input polynomial is not monic; dividing by {f.lc}")
    group = parse_group(args.group, args.generators, f.degree, settings.group_cap)
    job = JobSpec("compute", args.poly, group, args.prime, args.precision,
                  parse_labeling(args.labeling), args.format)
    t0 = time.perf_counter()
    result = compute_basis(
        f,
        job.group,
        prime=job.prime,
        precision=job.precision,
        labeling=job.labeling,
        threads=settings.threads,
        max_degree=settings.align_max_degree,
        prime_search_cap=settings.prime_search_cap,
        small_prime_limit=settings.small_prime_limit,
        align=not args.trust_labeling,
    )
    if not args.skip_verify:
        report = verify_basis(result, result.f, group, result.provenance.p,
                              prime_search_cap=settings.prime_search_cap)
        if not report.passed:
            names = ", ".join(c.name for c in report.failures())
            raise VerificationFailed(f"computed basis failed: {names}")
    logger.info(f"compute finished in {time.perf_counter() - t0:.3f}s")

    payload = basis_to_dict(result, args.keep_labeling)
    prov = payload["provenance"]
    lines = [f"f{i} = {g}" for i, g in enumerate(payload["basis"], start=1)]
    lines.append(f"p = {prov['p']}")
    lines.append(f"e = {prov['e']}")
    lines.append(f"labeling = {' '.join(map(str, prov['labeling']))}")
    if prov["alignment"]:
        lines.append(f"alignment = {' '.join(map(str, prov['alignment']))}")
    lines.append(f"deltas = {' '.join(prov['deltas'])}")
    lines.append(f"denominators = {' '.join(prov['denominators'])}")
    if "group_in_input_labeling" in prov:
        gens = "; ".join(prov["group_in_input_labeling"]["generators"])
        lines.append(f"group in input labeling = {gens}")
    _emit(args, payload, lines)
    return 0


def cmd_verify(args, settings: Settings) -> int:
    loaded = load_basis(args.basis, settings.group_cap)
    p = args.prime or loaded.p
    if p is None:
        raise InvalidBasis("no prime in the basis file; pass --prime")
    report = verify_basis(loaded.basis, loaded.f, loaded.group, p, args.precision,
                          prime_search_cap=settings.prime_search_cap)
    payload = {"format": FORMAT_VERSION, **report.to_dict()}
    lines = [
        f"{'PASS' if c.passed else 'FAIL'} {c.name}: {c.detail}" for c in report.checks
    ]
    lines.append("PASS" if report.passed else "FAIL")
    _emit(args, payload, lines)
    return 0 if report.passed else 1


def _field_arg(args, settings: Settings):
    loaded = load_basis(args.basis, settings.group_cap)
    K = SplittingField(loaded.basis)
    return K, K(parse_poly(args.poly, K.nvars))


def cmd_reduce(args, settings: Settings) -> int:
    K, a = _field_arg(args, settings)
    text = format_poly(a.poly)
    _emit(args, {"format": FORMAT_VERSION, "normal_form": text}, [text])
    return 0


def cmd_inv(args, settings: Settings) -> int:
    K, a = _field_arg(args, settings)
    text = format_poly(a.inverse().poly)
    _emit(args, {"format": FORMAT_VERSION, "inverse": text}, [text])
    return 0


def cmd_express(args, settings: Settings) -> int:
    loaded = load_basis(args.basis, settings.group_cap)
    if args.index is not None:
        found = {args.index: express_root(loaded.basis, args.index)}
    else:
        found = expressible_roots(loaded.basis)
    texts = {i: format_poly(P) for i, P in found.items()}
    payload = {"format": FORMAT_VERSION, "roots": {f"x{i}": t for i, t in texts.items()}}
    _emit(args, payload, [f"x{i} = {t}" for i, t in texts.items()])
    return 0


def _load_points(path: str) -> PointSet:
    """``{"prime": 5, "points": [[0, 0], [1, 1]]}``; no prime means QQ."""
    with open(path, "r") as f:
        data = json.load(f)
    ring = GF(int(data["prime"])) if data.get("prime") else QQ
    points = [tuple(Fraction(str(c)) if ring == QQ else int(c) for c in pt) for pt in data["points"]]
    return PointSet(ring, tuple(points))


def cmd_bm(args, settings: Settings) -> int:
    try:
        X = _load_points(args.points)
    except (KeyError, ValueError, json.JSONDecodeError) as e:
        raise PolynomialParseError(f"invalid point set {args.points}: {e}") from e
    result = buchberger_moeller(X, cap=settings.pointset_cap)
    groebner = [format_poly(g) for g in result.groebner]
    order_ideal = [format_poly(MultiPoly.monomial(X.ring, m)) for m in result.order_ideal]
    payload = {
        "format": FORMAT_VERSION,
        "ring": X.ring.name,
        "groebner": groebner,
        "order_ideal": order_ideal,
    }
    lines = [f"g{i} = {g}" for i, g in enumerate(groebner, start=1)]
    lines.append(f"order ideal = {', '.join(order_ideal)}")
    _emit(args, payload, lines)
    return 0


COMMANDS = {
    "compute": cmd_compute,
    "verify": cmd_verify,
    "bm": cmd_bm,
    "reduce": cmd_reduce,
    "inv": cmd_inv,
    "express": cmd_express,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise PolynomialParseError(f"usage: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=DEFAULT_CONFIG_PATH, help="JSON config file")
    common.add_argument("--log-level", default=None)
    common.add_argument("--threads", type=int, default=None)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--output", default=None, help="write results here instead of stdout")

    parser = _Parser(prog="relideal", description="Relation ideals of polynomial roots")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    compute = sub.add_parser("compute", parents=[common], help="compute the triangular basis")
    compute.add_argument("--poly", required=True, help="univariate polynomial, or @file")
    compute.add_argument("--group", help="group descriptor JSON, or @file")
    compute.add_argument("--generators", help='cycle generators separated by ";"')
    compute.add_argument("--prime", type=int)
    compute.add_argument("--precision", type=int)
    compute.add_argument("--labeling", help="root residues mod p in the order to use")
    compute.add_argument("--keep-labeling", action="store_true",
                         help="also report the group in the input root labeling")
    compute.add_argument("--trust-labeling", action="store_true",
                         help="skip the alignment search")
    compute.add_argument("--skip-verify", action="store_true")

    verify = sub.add_parser("verify", parents=[common], help="verify a basis file")
    verify.add_argument("--basis", required=True)
    verify.add_argument("--prime", type=int)
    verify.add_argument("--precision", type=int)

    for name in ("reduce", "inv"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--basis", required=True)
        p.add_argument("--poly", required=True, help="polynomial in T1..Tn")

    express = sub.add_parser("express", parents=[common], help="x_i as a polynomial in earlier roots")
    express.add_argument("--basis", required=True)
    express.add_argument("--index", type=int)

    bm = sub.add_parser("bm", parents=[common], help="Buchberger-Moeller on a point set")
    bm.add_argument("--points", required=True)
    return parser


def _report_error(e: RelIdealError, output_format: str):
    logger.error(f"{e.code}: {e.message}")
    if output_format == "json":
        sys.stdout.write(json.dumps({"format": FORMAT_VERSION, "error": e.to_dict()}) + "\n")
    else:
        sys.stderr.write(f"error: {e.code}: {e.message}\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    output_format = "text"
    try:
        args = build_parser().parse_args(argv)
        output_format = args.format
        if getattr(args, "poly", None):
            args.poly = _read_text_arg(args.poly)
        settings = load_config(args.config).with_overrides(
            threads=args.threads, logging_level=args.log_level
        )
        configure_logging(settings)
        return COMMANDS[args.command](args, settings)
    except RelIdealError as e:
        _report_error(e, output_format)
        return 2 if isinstance(e, PARSE_ERRORS) else 1
    except ValueError as e:
        _report_error(InvalidInput(str(e)), output_format)
        return 2
    except OSError as e:
        logger.error(f"I/O error: {e}")
        sys.stderr.write(f"error: io: {e}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
