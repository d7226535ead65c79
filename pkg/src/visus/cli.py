"""``visus`` command-line interface.

Exit codes:
  0 success
  1 usage or file-system error
  2 message too large for the cover
  3 unsupported or undecodable image format (including alpha without --strip-alpha)
  4 no readable message in the image (malformed header or truncated stream)
  5 share subset misses bit planes and --require-complete was given
  6 image dimensions do not match
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import re
import sys

from . import _backend
from .errors import (
    AlphaPresent,
    DecodeError,
    DimensionMismatch,
    DuplicateShareIndex,
    ImageIOError,
    IncompleteShares,
    MalformedHeader,
    MessageTooLarge,
    PayloadTooLong,
    TruncatedStream,
    UnsupportedFormat,
    VisusError,
)
from .image import FORMATS, load_image, save_image
from .metrics import compute_histogram, compute_metrics
from .shares import Share, make_shares, min_guaranteed_size, reconstruct, verify_threshold
from .stego import capacity_bytes, embed, extract

log = logging.getLogger("visus")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_TOO_LARGE = 2
EXIT_FORMAT = 3
EXIT_NO_MESSAGE = 4
EXIT_INCOMPLETE = 5
EXIT_DIMENSIONS = 6

_EXIT_CODES = [
    ((MessageTooLarge, PayloadTooLong), EXIT_TOO_LARGE),
    ((UnsupportedFormat, DecodeError, AlphaPresent), EXIT_FORMAT),
    ((MalformedHeader, TruncatedStream), EXIT_NO_MESSAGE),
    ((IncompleteShares,), EXIT_INCOMPLETE),
    ((DimensionMismatch,), EXIT_DIMENSIONS),
    ((ImageIOError, DuplicateShareIndex), EXIT_USAGE),
]

_SHARE_NAME = re.compile(r"share([1-7])(?:\.[A-Za-z]+)?$", re.IGNORECASE)


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 by default, which is taken by MessageTooLarge.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _writable_target(path):
    parent = os.path.dirname(os.path.abspath(path))
    if not os.path.isdir(parent):
        raise ImageIOError(f"{path}: directory {parent} does not exist")
    if not os.access(parent, os.W_OK):
        raise ImageIOError(f"{path}: directory {parent} is not writable")


def cmd_embed(args):
    if args.message_file is not None:
        with open(args.message_file, "rb") as fh:
            payload = fh.read()
    else:
        payload = args.message.encode("utf-8")
    cover = load_image(args.cover, strip_alpha=args.strip_alpha)
    _writable_target(args.out)
    capacity = capacity_bytes(cover)
    if len(payload) > capacity:
        raise MessageTooLarge(len(payload), capacity)
    stego = embed(cover, payload)
    save_image(stego, args.out)
    print(f"wrote {args.out}")
    print(f"capacity: {capacity} bytes, used: {len(payload)} bytes, remaining: {capacity - len(payload)} bytes")
    return EXIT_OK


def cmd_extract(args):
    stego = load_image(args.stego, strip_alpha=args.strip_alpha)
    payload = extract(stego)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(payload)
        print(f"wrote {len(payload)} bytes to {args.out}")
        return EXIT_OK
    try:
        print(payload.decode("utf-8"))
    except UnicodeDecodeError:
        sys.stdout.flush()
        sys.stdout.buffer.write(payload)
        sys.stdout.buffer.flush()
    return EXIT_OK


def cmd_share(args):
    image = load_image(args.image, strip_alpha=args.strip_alpha)
    os.makedirs(args.out_dir, exist_ok=True)
    for share in make_shares(image):
        path = os.path.join(args.out_dir, f"share{share.index}.{args.ext}")
        save_image(share.image, path)
        print(f"wrote {path} (mask 0x{share.mask:02X})")
    return EXIT_OK


def _share_index(path):
    m = _SHARE_NAME.search(os.path.basename(path))
    if not m:
        raise ImageIOError(f"{path}: cannot tell the share index; name share files share1..share7")
    return int(m.group(1))


def cmd_reconstruct(args):
    shares = [Share(_share_index(p), load_image(p, strip_alpha=args.strip_alpha)) for p in args.shares]
    _writable_target(args.out)
    image, report = reconstruct(shares)
    print(f"shares: {', '.join(str(i) for i in sorted(report.subset))}")
    print(f"union mask: 0x{report.union_mask:02X}")
    print(f"complete: {'yes' if report.complete else 'no'}")
    if not report.complete:
        print("missing " + ", ".join(f"bit {b}" for b in report.missing_bits))
        if args.require_complete:
            raise IncompleteShares("share subset does not cover every bit plane; nothing written")
    save_image(image, args.out)
    print(f"wrote {args.out}")
    return EXIT_OK


def cmd_metrics(args):
    a = load_image(args.original, strip_alpha=args.strip_alpha)
    b = load_image(args.modified, strip_alpha=args.strip_alpha)
    report = compute_metrics(a, b)
    print(report.to_json() if args.format == "json" else report.to_table())
    return EXIT_OK


def cmd_histogram(args):
    text = compute_histogram(load_image(args.image, strip_alpha=args.strip_alpha)).to_csv()
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify_threshold(args):
    reports = verify_threshold()
    k = min_guaranteed_size(reports)
    failing_triples = [r for r in reports if len(r.subset) == 3 and not r.complete]
    if args.format == "json":
        doc = {
            "subsets": [r.as_dict() for r in reports],
            "min_guaranteed_size": k,
            "failing_triples": [sorted(r.subset) for r in failing_triples],
        }
        print(json.dumps(doc, indent=2))
        return EXIT_OK
    print(f"{'subset':<16}{'union':>7}  complete  missing")
    for r in reports:
        subset = ",".join(str(i) for i in sorted(r.subset))
        missing = ",".join(str(b) for b in r.missing_bits) or "-"
        print(f"{subset:<16}  0x{r.union_mask:02X}  {'yes' if r.complete else 'no':<8}  {missing}")
    print()
    for size in range(1, 8):
        group = [r for r in reports if len(r.subset) == size]
        print(f"size {size}: {sum(r.complete for r in group)}/{len(group)} complete")
    print(f"minimum guaranteed subset size: {k}")
    print("failing triples: " + " ".join("{" + ",".join(map(str, sorted(r.subset))) + "}" for r in failing_triples))
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--strip-alpha", action="store_true", help="drop an alpha channel instead of failing")

    parser = _Parser(prog="visus", description="Carrier-pixel steganography with 7-share bit-plane sharing.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("embed", parents=[common], help="hide a message in a cover image")
    p.add_argument("--cover", required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--message", help="inline text, stored as UTF-8")
    src.add_argument("--message-file", help="file whose bytes are embedded verbatim")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("extract", parents=[common], help="recover a hidden message")
    p.add_argument("--stego", required=True)
    p.add_argument("--out", help="write the payload bytes here instead of printing")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("share", parents=[common], help="split an image into share1..share7")
    p.add_argument("--image", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--ext", default="png", choices=[e.lstrip(".") for e in FORMATS])
    p.set_defaults(func=cmd_share)

    p = sub.add_parser("reconstruct", parents=[common], help="OR shares back into an image")
    p.add_argument("shares", nargs="+", help="share files named shareN.<ext>")
    p.add_argument("--out", required=True)
    p.add_argument("--require-complete", action="store_true", help="fail (exit 5) if any bit plane is missing")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("metrics", parents=[common], help="distortion metrics between two images")
    p.add_argument("original")
    p.add_argument("modified")
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("histogram", parents=[common], help="per-channel histogram as CSV")
    p.add_argument("image")
    p.add_argument("--out", help="CSV path (stdout if omitted)")
    p.set_defaults(func=cmd_histogram)

    p = sub.add_parser("verify-threshold", help="completeness of every share subset")
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.set_defaults(func=cmd_verify_threshold)
    return parser


def _configure_logging():
    level = os.environ.get("VISUS_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format="%(levelname)s %(name)s: %(message)s")


def main(argv=None):
    _configure_logging()
    args = build_parser().parse_args(argv)
    log.debug("kernel backend: %s", _backend.name)
    try:
        return args.func(args)
    except VisusError as exc:
        print(f"visus: {exc}", file=sys.stderr)
        for kinds, code in _EXIT_CODES:
            if isinstance(exc, kinds):
                return code
        return EXIT_USAGE
    except OSError as exc:
        print(f"visus: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
