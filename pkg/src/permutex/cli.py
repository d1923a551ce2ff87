"""Command-line front end: permute, unpermute, analyze, compare, features, keygen.

Exit codes: 0 success, 2 validation error, 3 I/O error, 4 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .baselines import SCHEMES
from .compare import PERMUTEX, compare_schemes, run_scheme
from .engine import decode_permutation, encode_permutation, unpermutex
from .features import CONTRAST_NORM, CONTRAST_RAW, FREQUENCY_NORM, IMPORTANCE_NORM, extract_features, rank_pixels
from .image_core import encode_pgm, load_pgm
from .keygen import DEFAULT_R, DEFAULT_SCALE, DEFAULT_X0, ChaosParams, encode_key, generate_key, key_csv_text
from .metrics import DIRECTIONS, analysis_report, correlation_scatter, reports_to_csv, reports_to_json

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_IO = 3
EXIT_INTERNAL = 4


def _add_common(p: argparse.ArgumentParser, chaos=True, scheme=False):
    if chaos:
        p.add_argument("--r", type=float, default=DEFAULT_R, help="logistic-sine control parameter in (0, 4)")
        p.add_argument("--x0", type=float, default=DEFAULT_X0, help="initial chaotic state in (0, 1)")
        p.add_argument("--scale", type=int, default=DEFAULT_SCALE, help="quantization factor for the key")
        p.add_argument("--window", type=int, default=3, help="odd local-contrast window size")
        p.add_argument("--seed", type=int, default=0, help="seed for random_rc and scatter sampling")
    if scheme:
        p.add_argument("--scheme", choices=(PERMUTEX,) + SCHEMES, default=PERMUTEX)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out-dir", type=Path, default=Path("."))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="permutex", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("permute", help="scramble a PGM image")
    p.add_argument("input", type=Path)
    _add_common(p, scheme=True)

    p = sub.add_parser("unpermute", help="restore a scrambled PGM from its permutation file")
    p.add_argument("input", type=Path, help="scrambled PGM")
    p.add_argument("permutation", type=Path, help=".pxpm file written by 'permute'")
    p.add_argument("-o", "--output", type=Path, help="output PGM (default: <out-dir>/<stem>.recovered.pgm)")
    _add_common(p, chaos=False)

    p = sub.add_parser("analyze", help="correlation metrics of a permuted image against its original")
    p.add_argument("original", type=Path)
    p.add_argument("permuted", type=Path)
    p.add_argument("--scheme", default="permuted", help="label for the report row")
    p.add_argument("--scatter", type=int, default=None, metavar="N",
                   help="also write scatter CSVs with N sampled pairs per direction (0 = all pairs)")
    p.add_argument("--seed", type=int, default=0)
    _add_common(p, chaos=False)

    p = sub.add_parser("compare", help="run original + all schemes and tabulate metrics")
    p.add_argument("input", type=Path)
    _add_common(p)

    p = sub.add_parser("features", help="dump frequency, contrast and importance maps plus the ranking")
    p.add_argument("input", type=Path)
    p.add_argument("--window", type=int, default=3)
    p.add_argument("--out-dir", type=Path, default=Path("."))

    p = sub.add_parser("keygen", help="write a chaotic permutation key")
    size = p.add_mutually_exclusive_group(required=True)
    size.add_argument("--n", type=int, help="key length")
    size.add_argument("--like", type=Path, help="take the key length from this PGM's pixel count")
    p.add_argument("--r", type=float, default=DEFAULT_R)
    p.add_argument("--x0", type=float, default=DEFAULT_X0)
    p.add_argument("--scale", type=int, default=DEFAULT_SCALE)
    p.add_argument("--name", default="key", help="output file stem")
    p.add_argument("--out-dir", type=Path, default=Path("."))
    return parser


# where outputs land does not affect them, so it is left out of the echo
_NOT_ECHOED = {"out_dir", "output"}


def _config(args) -> dict:
    return {k: str(v) if isinstance(v, Path) else v for k, v in sorted(vars(args).items()) if k not in _NOT_ECHOED}


def _chaos(args) -> ChaosParams:
    return ChaosParams(r=args.r, x0=args.x0, scale=args.scale)


def _write_all(outputs: dict[Path, bytes]) -> None:
    for path in outputs:
        path.parent.mkdir(parents=True, exist_ok=True)
    for path, data in outputs.items():
        path.write_bytes(data)


def _json_bytes(doc) -> bytes:
    return (json.dumps(doc, indent=2, sort_keys=True) + "\n").encode("utf-8")


def cmd_permute(args) -> int:
    img = load_pgm(args.input)
    out, perm = run_scheme(args.scheme, img, _chaos(args), args.window, args.seed)
    stem = args.input.stem
    provenance = {"config": _config(args), "permutation": perm.provenance}
    _write_all({
        args.out_dir / f"{stem}.permuted.pgm": encode_pgm(out),
        args.out_dir / f"{stem}.pxpm": encode_permutation(perm),
        args.out_dir / f"{stem}.provenance.json": _json_bytes(provenance),
    })
    return EXIT_OK


def cmd_unpermute(args) -> int:
    img = load_pgm(args.input)
    perm = decode_permutation(args.permutation.read_bytes())
    recovered = unpermutex(img, perm)
    stem = args.input.stem.removesuffix(".permuted")
    output = args.output or args.out_dir / f"{stem}.recovered.pgm"
    _write_all({output: encode_pgm(recovered)})
    return EXIT_OK


def cmd_analyze(args) -> int:
    original = load_pgm(args.original)
    permuted = load_pgm(args.permuted)
    report = analysis_report(original, permuted, args.scheme, {"config": _config(args)})
    stem = args.permuted.stem
    outputs = {}
    if args.format == "csv":
        text = reports_to_csv([report])
    else:
        text = reports_to_json([report], config=_config(args))
    outputs[args.out_dir / f"{stem}.report.{args.format}"] = text.encode("utf-8")
    if args.scatter is not None:
        for direction in DIRECTIONS:
            pairs = correlation_scatter(permuted, direction, args.scatter, args.seed)
            outputs[args.out_dir / f"{stem}.scatter.{direction}.csv"] = pairs.csv_text().encode("ascii")
    _write_all(outputs)
    sys.stdout.write(text)
    return EXIT_OK


def cmd_compare(args) -> int:
    img = load_pgm(args.input)
    result = compare_schemes(img, _chaos(args), args.window, args.seed)
    stem = args.input.stem
    outputs = {args.out_dir / f"{stem}.{name}.pgm": encode_pgm(out)
               for name, out in result.images.items() if name != "original"}
    if args.format == "csv":
        text = reports_to_csv(result.reports)
    else:
        text = reports_to_json(result.reports, config=_config(args), ordering_ok=result.ordering_ok)
    outputs[args.out_dir / f"{stem}.compare.{args.format}"] = text.encode("utf-8")
    outputs[args.out_dir / f"{stem}.compare.meta.json"] = _json_bytes(
        {"config": _config(args), "effective": result.config, "ordering_ok": result.ordering_ok}
    )
    _write_all(outputs)
    sys.stdout.write(text)
    if not result.ordering_ok:
        print("warning: permutex does not have the strictly smallest |GLCM correlation| for this seed",
              file=sys.stderr)
    return EXIT_OK


def cmd_features(args) -> int:
    img = load_pgm(args.input)
    maps = extract_features(img, args.window)
    ranking = rank_pixels(maps[IMPORTANCE_NORM])
    stem = args.input.stem
    outputs = {}
    for label, pgm_kind, csv_kind in (
        ("frequency", FREQUENCY_NORM, FREQUENCY_NORM),
        ("contrast", CONTRAST_NORM, CONTRAST_RAW),
        ("importance", IMPORTANCE_NORM, IMPORTANCE_NORM),
    ):
        outputs[args.out_dir / f"{stem}.{label}.pgm"] = encode_pgm(maps[pgm_kind].to_image())
        outputs[args.out_dir / f"{stem}.{label}.csv"] = maps[csv_kind].csv_text().encode("ascii")
    rank_lines = ["rank,flat_index"] + [f"{i},{v}" for i, v in enumerate(ranking.order.tolist())]
    outputs[args.out_dir / f"{stem}.ranking.csv"] = ("\n".join(rank_lines) + "\n").encode("ascii")
    _write_all(outputs)
    return EXIT_OK


def cmd_keygen(args) -> int:
    n = args.n if args.n is not None else load_pgm(args.like).size
    chaos = ChaosParams(r=args.r, x0=args.x0, scale=args.scale, n=n)
    key = generate_key(chaos)
    _write_all({
        args.out_dir / f"{args.name}.pxky": encode_key(key),
        args.out_dir / f"{args.name}.csv": key_csv_text(key).encode("ascii"),
        args.out_dir / f"{args.name}.json": _json_bytes(
            {"config": _config(args), "chaos": chaos.to_dict(), "collisions": key.collisions}
        ),
    })
    return EXIT_OK


COMMANDS = {
    "permute": cmd_permute,
    "unpermute": cmd_unpermute,
    "analyze": cmd_analyze,
    "compare": cmd_compare,
    "features": cmd_features,
    "keygen": cmd_keygen,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ValueError as exc:
        print(f"permutex {args.command}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"permutex {args.command}: {exc}", file=sys.stderr)
        return EXIT_IO
    except Exception as exc:  # noqa: BLE001
        print(f"permutex {args.command}: internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
