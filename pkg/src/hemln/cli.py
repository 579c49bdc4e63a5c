"""Command-line interface.

Subcommands: detect, kcommunity, cbg, rank, ingest-imdb. Exit codes:
0 success, 1 usage error, 2 data error (details on stderr). The
MLN_SEED environment variable overrides --seed, and --config points to a
key=value file supplying defaults for metric, seed, hub_quantile and spec.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Dict, List, Optional

from . import engine, fileio, imdb
from .cbg import build_cbg, cbg_to_tsv
from .community import detect_communities, summarize
from .engine import KCommunityResult, KTuple, detect_k_community
from .errors import HemlnError, UnknownKey
from .kspec import Composition, KSpec, parse_spec, validate_spec
from .model import MLN

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits 2; we reserve 2 for data
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="hemln", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value file with flag defaults")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--hub-quantile", type=float, default=None)

    p = sub.add_parser("detect", parents=[common],
                       help="community detection for one layer file")
    p.add_argument("--layer", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("kcommunity", parents=[common],
                       help="run a k-community specification over an MLN directory")
    p.add_argument("--mln", required=True)
    p.add_argument("--spec", help="specification string")
    p.add_argument("--spec-file", help="file with one specification per line")
    p.add_argument("--metric", choices=("e", "d", "h"), default=None)
    p.add_argument("--memberships",
                   help="directory of membership_<layer>.tsv files to use "
                        "instead of running detection")
    p.add_argument("--out", required=True)

    p = sub.add_parser("cbg", parents=[common],
                       help="export the community bipartite graph of a layer pair")
    p.add_argument("--mln", required=True)
    p.add_argument("--pair", required=True, metavar="L1,L2")
    p.add_argument("--metric", choices=("e", "d", "h"), default=None)
    p.add_argument("--memberships")

    p = sub.add_parser("rank", parents=[common],
                       help="rank result tuples from a JSONL result file")
    p.add_argument("--result", required=True)
    p.add_argument("--key", required=True)
    p.add_argument("--mln", help="needed for size/density keys")
    p.add_argument("--memberships")

    p = sub.add_parser("ingest-imdb", parents=[common],
                       help="build an MLN directory from IMDb-style TSVs")
    p.add_argument("--movies", required=True)
    p.add_argument("--people", required=True)
    p.add_argument("--acts", required=True)
    p.add_argument("--directs", required=True)
    p.add_argument("--genre-overlap-threshold", type=float, default=0.5)
    p.add_argument("--overlap-mode", choices=("min", "jaccard"), default="min")
    p.add_argument("--out", required=True)
    return parser


def _settings(args) -> fileio.RunConfig:
    defaults: Dict[str, str] = {}
    if getattr(args, "config", None):
        defaults = fileio.load_config(args.config)
    seed = args.seed
    if seed is None:
        seed = int(defaults.get("seed", 0))
    if "MLN_SEED" in os.environ:
        seed = int(os.environ["MLN_SEED"])
    metric = getattr(args, "metric", None) or defaults.get("metric", "e")
    quantile = args.hub_quantile
    if quantile is None:
        quantile = float(defaults.get("hub_quantile", 0.8))
    spec_text = getattr(args, "spec", None) or defaults.get("spec", "")
    return fileio.RunConfig(default_metric=metric, seed=seed,
                            hub_quantile=quantile, spec_text=spec_text)


def _memberships_for(mln: MLN, layers, cfg: fileio.RunConfig,
                     memberships_dir: Optional[str]):
    memberships = {}
    for lid in layers:
        g = mln.layer(lid)
        if memberships_dir:
            path = Path(memberships_dir) / f"membership_{lid}.tsv"
            memberships[lid] = fileio.load_membership_tsv(g, path)
        else:
            memberships[lid] = detect_communities(g, cfg.seed)
    return memberships


def _cmd_detect(args) -> int:
    cfg = _settings(args)
    g = fileio.load_layer(args.layer)
    m = detect_communities(g, cfg.seed)
    fileio.save_membership_tsv(m, args.out)
    return EXIT_OK


def _specs_from_args(args, cfg: fileio.RunConfig) -> List[str]:
    if args.spec_file:
        texts = []
        for _, line in fileio._lines(args.spec_file):
            texts.append(line)
        return texts
    if cfg.spec_text:
        return [cfg.spec_text]
    raise HemlnError("kcommunity needs --spec or --spec-file")


def _cmd_kcommunity(args) -> int:
    cfg = _settings(args)
    mln = fileio.load_mln(args.mln)
    spec_texts = _specs_from_args(args, cfg)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    specs = [validate_spec(parse_spec(t), mln) for t in spec_texts]
    layers = sorted({l for s in specs for l in s.layers})
    memberships = _memberships_for(mln, layers, cfg, args.memberships)
    summaries = {lid: summarize(mln.layer(lid), memberships[lid], cfg.hub_quantile)
                 for lid in layers}
    for lid in layers:
        fileio.save_membership_tsv(memberships[lid], out / f"membership_{lid}.tsv")

    for i, spec in enumerate(specs):
        result = detect_k_community(mln, memberships, summaries, spec,
                                    cfg.default_metric)
        stem = "result" if len(specs) == 1 else f"result_{i}"
        (out / f"{stem}.txt").write_text(engine.format_tuples(result),
                                         encoding="utf-8")
        (out / f"{stem}.jsonl").write_text(engine.to_jsonl(result),
                                           encoding="utf-8")
        diag = "diagnostics.tsv" if len(specs) == 1 else f"diagnostics_{i}.tsv"
        (out / diag).write_text(engine.diagnostics_tsv(result), encoding="utf-8")
    return EXIT_OK


def _cmd_cbg(args) -> int:
    cfg = _settings(args)
    mln = fileio.load_mln(args.mln)
    try:
        left, right = args.pair.split(",")
    except ValueError:
        raise HemlnError(f"--pair expects 'L1,L2', got {args.pair!r}") from None
    memberships = _memberships_for(mln, (left, right), cfg, args.memberships)
    summaries = {lid: summarize(mln.layer(lid), memberships[lid], cfg.hub_quantile)
                 for lid in (left, right)}
    cbg = build_cbg(mln, left, right,
                    sorted(summaries[left]), sorted(summaries[right]),
                    memberships[left], memberships[right],
                    summaries[left], summaries[right], cfg.default_metric)
    sys.stdout.write(cbg_to_tsv(cbg))
    return EXIT_OK


def _load_result_jsonl(path) -> KCommunityResult:
    tuples = []
    steps: List[Composition] = []
    layers: List[str] = []
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        if not raw.strip():
            continue
        rec = json.loads(raw)
        layers = [s["layer"] for s in rec["slots"]]
        communities = tuple(s["community"] for s in rec["slots"])
        while len(steps) < len(rec["x"]):
            steps.append(Composition("?", "?"))
        for j, x in enumerate(rec["x"]):
            if x is not None:
                steps[j] = Composition(x["step"][0], x["step"][1])
        x_slots = tuple(
            frozenset(map(tuple, x["pairs"])) if x is not None else None
            for x in rec["x"])
        tuples.append(KTuple(tuple(layers), communities, x_slots))
    spec = KSpec(layers[0] if layers else "", tuple(steps), tuple(layers), ())
    return KCommunityResult(spec, tuple(layers), tuple(steps),
                            tuple(tuples), ())


def _cmd_rank(args) -> int:
    cfg = _settings(args)
    result = _load_result_jsonl(args.result)
    if args.key not in engine.RANK_KEYS:
        raise UnknownKey(f"rank key must be one of {engine.RANK_KEYS}")
    if args.key == "sum_raw_pairs":
        summaries: Dict = {lid: {} for lid in result.layers}
    else:
        if not args.mln:
            raise HemlnError(f"key {args.key} needs --mln (and optionally "
                             "--memberships) to compute community statistics")
        mln = fileio.load_mln(args.mln)
        memberships = _memberships_for(mln, result.layers, cfg, args.memberships)
        summaries = {lid: summarize(mln.layer(lid), memberships[lid],
                                    cfg.hub_quantile)
                     for lid in result.layers}
    for t in engine.rank(result, summaries, args.key):
        cs = ", ".join(f"c_{l}^{c}" if c != 0 else "0"
                       for l, c in zip(t.layers, t.communities))
        sys.stdout.write(f"< {cs} >\n")
    return EXIT_OK


def _cmd_ingest_imdb(args) -> int:
    records = imdb.load_imdb_tsvs(args.movies, args.people, args.acts, args.directs)
    mln, ids = imdb.ingest_imdb(records, args.genre_overlap_threshold,
                                args.overlap_mode)
    out = Path(args.out)
    fileio.save_mln(mln, out)
    id_lines = [f"{key}\t{nid}" for key, nid in sorted(ids.items())]
    (out / "node_ids.tsv").write_text("\n".join(id_lines) + "\n", encoding="utf-8")
    return EXIT_OK


_COMMANDS = {
    "detect": _cmd_detect,
    "kcommunity": _cmd_kcommunity,
    "cbg": _cmd_cbg,
    "rank": _cmd_rank,
    "ingest-imdb": _cmd_ingest_imdb,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except HemlnError as exc:
        print(f"hemln: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
