"""
Command line for corner mosaics.

    python cli.py validate FILE
    python cli.py convert FILE -o OUT
    python cli.py caps FILE
    python cli.py identify FILE
    python cli.py enumerate --cells N [--compliant] [--masks DIR]
    python cli.py search --max-cells N [--rules strict|mandatory] [--masks DIR]
    python cli.py render FILE --format ascii|svg [-o OUT]
    python cli.py verify-bound FILE --claimed-tc N

Exit codes: 0 success, 1 domain failure, 2 usage error.
"""
import argparse
import logging
import sys
from typing import List, Optional

from mosaics.config import get_settings
from mosaics.errors import MosaicError, SearchRangeError, UnknownFormatError, WrongSystemError
from mosaics.fillsearch import FillRules, reproduce_classification, shape_filters
from mosaics.fixtures import load_masks, load_mosaic, load_patterns, write_text
from mosaics.linkid import identify
from mosaics.polyomino import GROWTH_MODES, compliant, grow_enumerate
from mosaics.render import render
from mosaics.tiles import MosaicSystem, nonempty_count, serialize_mosaic, validate
from mosaics.transform import convert, find_caps, verify_bound

logger = logging.getLogger("cli")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

USAGE_ERRORS = (WrongSystemError, SearchRangeError, UnknownFormatError, OSError)


def _require_system(mosaic, system: MosaicSystem, command: str) -> None:
    if mosaic.system != system:
        raise WrongSystemError(f"{command} takes {system.value} mosaics, got {mosaic.system.value}")


def cmd_validate(args) -> int:
    mosaic = load_mosaic(args.file)
    report = validate(mosaic)
    if report.valid:
        print(f"valid {mosaic.system.value} mosaic, {nonempty_count(mosaic)} nonempty tiles")
        return EXIT_OK
    print(f"invalid {mosaic.system.value} mosaic: {len(report.violations)} violations")
    for violation in report.violations:
        kind, r, c = violation.location
        print(f"  {kind} ({r}, {c}): {violation.reason}")
    return EXIT_FAILURE


def cmd_convert(args) -> int:
    mosaic = load_mosaic(args.file)
    _require_system(mosaic, MosaicSystem.EDGE, "convert")
    converted, trace = convert(mosaic)
    write_text(args.output, serialize_mosaic(converted))
    print(
        f"input tiles {trace.input_nonempty}, caps {trace.caps_found}, pushed {trace.pushed}, "
        f"output tiles {trace.output_nonempty}"
    )
    print(f"wrote {args.output}")
    return EXIT_OK


def cmd_caps(args) -> int:
    mosaic = load_mosaic(args.file)
    _require_system(mosaic, MosaicSystem.EDGE, "caps")
    caps = find_caps(mosaic)
    print(f"caps {len(caps)}")
    for cap in caps:
        (r1, c1), (r2, c2) = cap.cells
        print(f"  ({r1}, {c1}) ({r2}, {c2}) opens {cap.opening.value}")
    return EXIT_OK


def cmd_identify(args) -> int:
    mosaic = load_mosaic(args.file)
    diagram, fp, link = identify(mosaic)
    print(f"components {diagram.component_count()}")
    print(f"crossings {len(diagram.crossings)}")
    print(f"fingerprint {fp}")
    print(link.tag)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    shapes = grow_enumerate(args.cells, args.mode)
    if args.compliant:
        filters = shape_filters(FillRules.preset(args.rules), load_masks(args.masks), load_patterns())
        shapes = [shape for shape in shapes if compliant(shape, filters)]
    print(f"{len(shapes)} shapes with {args.cells} cells")
    for shape in shapes:
        print(shape.to_text())
    return EXIT_OK


def cmd_search(args) -> int:
    masks = load_masks(args.masks) if args.masks else None
    report = reproduce_classification(
        args.max_cells, rules=args.rules, masks=masks, mode=args.mode, workers=args.workers
    )
    sys.stdout.write(report.to_text())
    if report.matches_expected():
        return EXIT_OK
    print("classification does not match the expected table")
    return EXIT_FAILURE


def cmd_render(args) -> int:
    mosaic = load_mosaic(args.file)
    picture = render(mosaic, args.format)
    if args.output:
        write_text(args.output, picture)
        print(f"wrote {args.output}")
    else:
        sys.stdout.write(picture)
    return EXIT_OK


def cmd_verify_bound(args) -> int:
    mosaic = load_mosaic(args.file)
    _require_system(mosaic, MosaicSystem.EDGE, "verify-bound")
    check = verify_bound(mosaic, args.claimed_tc)
    for key, value in check.to_dict().items():
        print(f"{key} {value}")
    return EXIT_OK if check.inequality_holds else EXIT_FAILURE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cli.py", description="Corner and edge knot mosaics.")
    parser.add_argument("--log-level", default=None, help="Logging level (defaults to MOSAIC_LOG_LEVEL)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="Check that every strand end is matched")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("convert", help="Convert an edge mosaic to a corner mosaic")
    p.add_argument("file")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("caps", help="List a maximum set of disjoint caps")
    p.add_argument("file")
    p.set_defaults(func=cmd_caps)

    p = sub.add_parser("identify", help="Name the link a mosaic represents")
    p.add_argument("file")
    p.set_defaults(func=cmd_identify)

    p = sub.add_parser("enumerate", help="Grow corner-connected shapes")
    p.add_argument("--cells", type=int, required=True)
    p.add_argument("--compliant", action="store_true", help="Drop shapes matching an occupancy mask")
    p.add_argument("--masks", default=None, help="Directory of .mask files")
    p.add_argument("--rules", default="strict")
    p.add_argument("--mode", default="l_triomino", choices=GROWTH_MODES)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("search", help="Classify unknot-free links by corner tile number")
    p.add_argument("--max-cells", type=int, required=True)
    p.add_argument("--rules", default="strict")
    p.add_argument("--masks", default=None, help="Directory of .mask files")
    p.add_argument("--mode", default="l_triomino", choices=GROWTH_MODES)
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("render", help="Draw a mosaic")
    p.add_argument("file")
    p.add_argument("--format", default="ascii")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("verify-bound", help="Check t_C + caps <= t on an edge mosaic")
    p.add_argument("file")
    p.add_argument("--claimed-tc", type=int, required=True)
    p.set_defaults(func=cmd_verify_bound)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    logging.basicConfig(level=args.log_level or get_settings().log_level, stream=sys.stderr)
    try:
        return args.func(args)
    except USAGE_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except MosaicError as e:
        logger.debug(f"{args.command} failed", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
