"""CLI for the embedding extractor sidecar."""

from __future__ import annotations

import argparse
import sys

from .extract import ExtractorConfig, MissingWeightsError, extract


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="i3d-extract")
    p.add_argument("--in", dest="infile", required=True,
                   help="RVID file or directory of .rvid clips")
    p.add_argument("--out", required=True, help="output REMB path")
    p.add_argument("--layer", default="logits", choices=["logits", "pooling"])
    p.add_argument("--variant", default="kinetics400",
                   choices=["kinetics400", "kinetics600"])
    p.add_argument("--batch", type=int, default=16)
    p.add_argument("--weights", help="path to a pretrained state-dict file")
    p.add_argument("--random-init", type=int, metavar="SEED",
                   help="use a seeded random initialization instead of "
                        "pretrained weights (contract testing only)")
    return p


def run(argv) -> int:
    args = build_parser().parse_args(argv)
    config = ExtractorConfig(layer=args.layer, variant=args.variant,
                             batch_size=args.batch, weights=args.weights,
                             random_init_seed=args.random_init)
    try:
        e = extract(args.infile, args.out, config)
    except (MissingWeightsError, FileNotFoundError, ValueError) as exc:
        print(f"i3d-extract: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {e.n} embeddings of dimension {e.d} to {args.out}")
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))
