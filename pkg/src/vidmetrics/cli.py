"""Command-line interface binding the library into complete workflows.

Exit codes: 0 success, 1 usage error, 2 data/format error.  Numeric
output uses 6 decimal places and is locale-independent; identical argv
plus identical input files always give byte-identical output.

The VIDMETRICS_THREADS environment variable may cap internal
parallelism; results never depend on it.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import distmetrics, framemetrics, perturb, studies, synthgen, tensorio
from .embedder import EmbedderSpec, embed_or_import
from .tensorio import FormatError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="vidmetrics")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a synthetic video corpus")
    p.add_argument("--scenario", required=True, choices=["sprite", "collector"])
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--t", required=True, type=int)
    p.add_argument("--h", required=True, type=int)
    p.add_argument("--w", required=True, type=int)
    p.add_argument("--seed", required=True, type=int)
    p.add_argument("--out", required=True)

    p = sub.add_parser("perturb", help="apply calibrated noise to a video file")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--kind", required=True, choices=list(perturb.ALL_KINDS))
    p.add_argument("--intensity", required=True, type=int)
    p.add_argument("--seed", required=True, type=int)

    p = sub.add_parser("embed", help="embed a video file")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--embedder", default="reference", choices=["reference"])
    p.add_argument("--dim", required=True, type=int)
    p.add_argument("--seed", required=True, type=int)

    for name in ("fvd", "kvd"):
        p = sub.add_parser(name, help=f"compute {name} between two embedding files")
        p.add_argument("--real", required=True)
        p.add_argument("--gen", required=True)
        p.add_argument("--allow-size-mismatch", action="store_true")

    p = sub.add_parser("framemetric", help="frame-level metric report as CSV")
    p.add_argument("--metric", required=True, choices=["psnr", "ssim"])
    p.add_argument("--real", required=True)
    p.add_argument("--gen", required=True)
    p.add_argument("--best-of-dir", dest="best_of_dir")

    p = sub.add_parser("bias-study", help="FVD between disjoint subsets per size")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--sizes", required=True)
    p.add_argument("--repeats", required=True, type=int)
    p.add_argument("--seed", required=True, type=int)
    p.add_argument("--out", required=True)

    p = sub.add_parser("noise-study", help="metric vs noise intensity table")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--kinds", default="all")
    p.add_argument("--metric", default="fvd", choices=["fvd", "kvd"])
    p.add_argument("--dim", required=True, type=int)
    p.add_argument("--seed", required=True, type=int)
    p.add_argument("--out", required=True)

    p = sub.add_parser("correlate", help="correlate two study tables row by row")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--method", required=True,
                   choices=["pearson", "spearman", "kendall"])

    p = sub.add_parser("agreement", help="metric agreement with pairwise ratings")
    p.add_argument("--ratings", required=True)
    p.add_argument("--scores", required=True)
    p.add_argument("--lower-is-better", action="store_true")
    p.add_argument("--inter-rater", action="store_true",
                   help="report agreement among raters instead")

    return parser


def _load_scores(path: str) -> dict:
    lines = [ln for ln in Path(path).read_text().splitlines() if ln.strip()]
    if not lines or lines[0] != "model,score":
        raise FormatError(f"{path}: expected score CSV with header model,score")
    scores = {}
    for ln in lines[1:]:
        model, score = ln.split(",")
        scores[model] = float(score)
    return scores


def _cmd_gen(args) -> int:
    kind = "sprite_to_border" if args.scenario == "sprite" else "collector"
    spec = synthgen.ScenarioSpec(kind, args.t, args.h, args.w, seed=args.seed)
    tensorio.save_video_file(synthgen.generate(spec, args.n), args.out)
    return EXIT_OK


def _cmd_perturb(args) -> int:
    v = tensorio.load_video_file(args.infile)
    out = perturb.apply_noise(v, args.kind, args.intensity, args.seed)
    tensorio.save_video_file(out, args.out)
    return EXIT_OK


def _cmd_embed(args) -> int:
    v = tensorio.load_video_file(args.infile)
    spec = EmbedderSpec("reference", args.dim, args.seed)
    tensorio.save_embedding_file(embed_or_import(spec, v), args.out)
    return EXIT_OK


def _cmd_distance(args) -> int:
    real = tensorio.load_embedding_file(args.real)
    gen = tensorio.load_embedding_file(args.gen)
    if real.n != gen.n and not args.allow_size_mismatch:
        raise UsageError(
            f"sample sizes differ (n_real={real.n}, n_gen={gen.n}); distribution "
            "metrics are only comparable at equal sample size — pass "
            "--allow-size-mismatch to force")
    fn = distmetrics.fvd if args.command == "fvd" else distmetrics.kvd
    m = fn(real, gen)
    print(f"{m.metric}={m.value:.6f} n_real={m.n_real} n_gen={m.n_gen}")
    return EXIT_OK


def _cmd_framemetric(args) -> int:
    real = tensorio.load_video_file(args.real)
    gen = tensorio.load_video_file(args.gen)
    if args.best_of_dir:
        paths = sorted(Path(args.best_of_dir).glob("*.rvid"))
        if not paths:
            raise FormatError(f"no .rvid files in {args.best_of_dir}")
        candidates = [gen] + [tensorio.load_video_file(p) for p in paths]
        report = framemetrics.best_of_n(args.metric, real, candidates)
    else:
        report = framemetrics.frame_average(args.metric, real, gen)
    sys.stdout.write(report.to_csv())
    return EXIT_OK


def _cmd_bias_study(args) -> int:
    e = tensorio.load_embedding_file(args.infile)
    sizes = [int(s) for s in args.sizes.split(",")]
    table = studies.bias_study(e, sizes, args.repeats, args.seed)
    Path(args.out).write_text(table.to_csv())
    return EXIT_OK


def _cmd_noise_study(args) -> int:
    v = tensorio.load_video_file(args.infile)
    kinds = list(perturb.ALL_KINDS) if args.kinds == "all" else args.kinds.split(",")
    spec = EmbedderSpec("reference", args.dim, args.seed)
    table = studies.noise_study(v, kinds, spec, args.metric, args.seed)
    Path(args.out).write_text(table.to_csv())
    return EXIT_OK


def _cmd_correlate(args) -> int:
    a = studies.StudyTable.from_csv(Path(args.a).read_text()).values()
    b = studies.StudyTable.from_csv(Path(args.b).read_text()).values()
    fn = getattr(studies, args.method)
    print(f"{args.method}={fn(a, b):.6f}")
    return EXIT_OK


def _cmd_agreement(args) -> int:
    prefs = studies.load_preferences(Path(args.ratings).read_text())
    if args.inter_rater:
        value = studies.inter_rater_agreement(studies.group_by_comparison(prefs))
        print(f"inter_rater_agreement={value:.6f}")
    else:
        scores = _load_scores(args.scores)
        value = studies.rater_agreement(prefs, scores, args.lower_is_better)
        print(f"agreement={value:.6f}")
    return EXIT_OK


_HANDLERS = {
    "gen": _cmd_gen,
    "perturb": _cmd_perturb,
    "embed": _cmd_embed,
    "fvd": _cmd_distance,
    "kvd": _cmd_distance,
    "framemetric": _cmd_framemetric,
    "bias-study": _cmd_bias_study,
    "noise-study": _cmd_noise_study,
    "correlate": _cmd_correlate,
    "agreement": _cmd_agreement,
}


def run(argv) -> int:
    threads = os.environ.get("VIDMETRICS_THREADS")
    if threads is not None and not threads.isdigit():
        print(f"vidmetrics: VIDMETRICS_THREADS must be an integer, "
              f"got {threads!r}", file=sys.stderr)
        return EXIT_USAGE
    try:
        args = _build_parser().parse_args(argv)
        return _HANDLERS[args.command](args)
    except UsageError as exc:
        print(f"vidmetrics: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FormatError, ValueError, KeyError, OSError) as exc:
        print(f"vidmetrics: {exc}", file=sys.stderr)
        return EXIT_DATA


def main() -> None:
    sys.exit(run(sys.argv[1:]))
