"""Command-line surface: generate benchmark networks, run detection, score
partitions, and measure runtime scaling.

Exit codes: 0 success, 1 usage error (bad flags or parameters), 2 data error
(unreadable or malformed input files, vertex mismatches)."""

from __future__ import annotations

import argparse
import json
import secrets
import sys
import time
from pathlib import Path
from statistics import fmean

import numpy as np

from . import __version__
from .generators import gen_clique_pairs, gen_clique_ring, gen_gn
from .graph import (EdgeListParseError, NoEdgesError, Partition,
                    compact_labels, format_edge_list, format_partition,
                    from_edge_list, read_partition, singleton_partition)
from .maba import best_partition, run_maba
from .metrics import modularity, nmi, resolution_report
from .saba import SabaConfig, run_saba

__all__ = ["main"]


class DataError(Exception):
    """Input files that parse but do not fit together."""


class _Parser(argparse.ArgumentParser):
    # usage problems exit 1; argparse's default would be 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=None,
                   help="RNG seed; drawn from system entropy and recorded "
                        "if omitted")
    p.add_argument("--temp", type=float, default=500.0,
                   help="initial annealing temperature (default 500)")
    p.add_argument("--cool", type=float, default=0.1,
                   help="annealing coefficient in (0,1) (default 0.1)")
    p.add_argument("--ants-frac", type=float, default=0.6,
                   help="ant colony size as a fraction of vertices "
                        "(default 0.6)")
    p.add_argument("--eps", type=float, default=1e-6,
                   help="convergence threshold on |dQ| (default 1e-6)")
    p.add_argument("--max-iters", type=int, default=200,
                   help="hard iteration cap per level (default 200)")


def _build_parser() -> _Parser:
    parser = _Parser(prog="antmod",
                     description="Ant-based local modularity optimization "
                                 "for community detection.")
    parser.add_argument("--version", action="version",
                        version=f"antmod {__version__}")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    gen = sub.add_parser("generate", help="write a benchmark network")
    gen_sub = gen.add_subparsers(dest="kind", required=True,
                                 parser_class=_Parser)
    g_gn = gen_sub.add_parser("gn", help="Bernoulli planted partition")
    g_gn.add_argument("--groups", type=int, default=4)
    g_gn.add_argument("--size", type=int, default=32,
                      help="vertices per group (default 32)")
    g_gn.add_argument("--zin", type=float, required=True,
                      help="expected intra-group degree")
    g_gn.add_argument("--zout", type=float, required=True,
                      help="expected inter-group degree")
    g_gn.add_argument("--seed", type=int, default=None)
    g_gn.add_argument("--out", required=True, metavar="PREFIX")
    g_gn.set_defaults(func=_cmd_generate)
    g_ring = gen_sub.add_parser("clique-ring",
                                help="ring of cliques joined by single edges")
    g_ring.add_argument("--cliques", type=int, required=True)
    g_ring.add_argument("--size", type=int, default=5,
                        help="vertices per clique (default 5)")
    g_ring.add_argument("--out", required=True, metavar="PREFIX")
    g_ring.set_defaults(func=_cmd_generate)
    g_pairs = gen_sub.add_parser(
        "clique-pairs",
        help="fixed 50-vertex ring of two K20 and two K5 cliques")
    g_pairs.add_argument("--out", required=True, metavar="PREFIX")
    g_pairs.set_defaults(func=_cmd_generate)

    det = sub.add_parser("detect", help="run community detection")
    det.add_argument("edges", help="edge-list file")
    det.add_argument("--algo", choices=("saba", "maba"), default="maba")
    det.add_argument("--unweighted", action="store_true",
                     help="ignore weight columns in the edge list")
    det.add_argument("--restarts", type=int, default=1,
                     help="maba only: independent runs, best-Q hierarchy "
                          "kept (default 1)")
    _add_config_flags(det)
    det.add_argument("--out", required=True, metavar="PREFIX")
    det.set_defaults(func=_cmd_detect)

    ev = sub.add_parser("eval", help="score a partition file")
    ev.add_argument("edges", help="edge-list file")
    ev.add_argument("partition", help="partition file (token community_id)")
    ev.add_argument("--truth", default=None,
                    help="reference partition for NMI")
    ev.add_argument("--unweighted", action="store_true")
    ev.add_argument("--out", default=None, metavar="JSON",
                    help="also write the report as JSON")
    ev.set_defaults(func=_cmd_eval)

    ben = sub.add_parser(
        "bench",
        help="runtime scaling on planted partitions of growing size")
    ben.add_argument("--groups-list", default="10,20,40",
                     help="comma-separated group counts K (default 10,20,40)")
    ben.add_argument("--group-size", type=int, default=100)
    ben.add_argument("--zin", type=float, default=10.0)
    ben.add_argument("--zout", type=float, default=6.0)
    ben.add_argument("--seeds", type=int, default=3,
                     help="runs per size (default 3)")
    _add_config_flags(ben)
    ben.add_argument("--out", required=True, metavar="CSV")
    ben.set_defaults(func=_cmd_bench)
    return parser


def _resolve_seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    return secrets.randbits(63)


def _config(args, seed: int) -> SabaConfig:
    return SabaConfig(t0=args.temp, cooling=args.cool,
                      ant_fraction=args.ants_frac, eps=args.eps,
                      max_iters=args.max_iters, seed=seed)


def _write_lines(path: Path, lines: list[str]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines))
        if lines:
            fh.write("\n")


def _write_json(path: Path, obj) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")


def _write_manifest(prefix: Path, command: str, argv: list[str],
                    inputs: list[str], seed: int | None,
                    config: SabaConfig | None, duration: float) -> None:
    manifest = {
        "command": command,
        "argv": argv,
        "inputs": inputs,
        "seed": seed,
        "config": None if config is None else {
            "T0": config.t0, "c_T": config.cooling, "p": config.ant_fraction,
            "eps": config.eps, "max_iters": config.max_iters,
            "seed": config.seed,
        },
        "version": __version__,
        "duration_s": duration,
    }
    _write_json(Path(str(prefix) + ".manifest.json"), manifest)


def _load_graph(path: str, weighted: bool):
    with open(path, encoding="utf-8") as fh:
        return from_edge_list(fh, weighted=weighted)


def _names(mapping: dict[str, int]) -> list[str]:
    out = [""] * len(mapping)
    for tok, idx in mapping.items():
        out[idx] = tok
    return out


def _fmt(v) -> str:
    return str(v) if isinstance(v, (int, np.integer)) else f"{v:.10g}"


def _cmd_generate(args) -> int:
    t_start = time.perf_counter()
    seed: int | None = None
    if args.kind == "gn":
        seed = _resolve_seed(args)
        inst = gen_gn(args.groups, args.size, args.zin, args.zout, seed=seed)
        argv = ["generate", "gn", "--groups", str(args.groups),
                "--size", str(args.size), "--zin", str(args.zin),
                "--zout", str(args.zout), "--seed", str(seed),
                "--out", args.out]
    elif args.kind == "clique-ring":
        inst = gen_clique_ring(args.cliques, args.size)
        argv = ["generate", "clique-ring", "--cliques", str(args.cliques),
                "--size", str(args.size), "--out", args.out]
    else:
        inst = gen_clique_pairs()
        argv = ["generate", "clique-pairs", "--out", args.out]
    g = inst.graph
    names = [str(i) for i in range(g.n)]
    _write_lines(Path(args.out + ".edges"), format_edge_list(g, names))
    _write_lines(Path(args.out + ".truth"),
                 format_partition(inst.truth.label, names))
    _write_manifest(Path(args.out), "generate", argv, [], seed, None,
                    time.perf_counter() - t_start)
    m = g.total_weight_2m / 2.0
    print(f"generated {args.kind}: n={g.n} m={m:g} "
          f"communities={inst.truth.num_communities}")
    print(f"wrote {args.out}.edges {args.out}.truth")
    return 0


def _cmd_detect(args) -> int:
    t_start = time.perf_counter()
    g, mapping = _load_graph(args.edges, weighted=not args.unweighted)
    names = _names(mapping)
    seed = _resolve_seed(args)
    cfg = _config(args, seed)
    out = Path(args.out)
    if args.algo == "saba":
        part, trace = run_saba(g, singleton_partition(g), cfg)
        q = modularity(g, part)
        best = part
    else:
        hierarchy = run_maba(g, cfg, restarts=args.restarts)
        best = best_partition(hierarchy)
        q = hierarchy.levels[hierarchy.best_level].q
        trace = hierarchy.levels[0].q_trace
        _write_json(Path(str(out) + ".hierarchy.json"),
                    {"best_level": hierarchy.best_level,
                     "levels": hierarchy.summary()})
        for i, lvl in enumerate(hierarchy.levels):
            _write_lines(Path(f"{out}.level{i}.part"),
                         format_partition(lvl.projected.label, names))
    _write_lines(Path(str(out) + ".part"), format_partition(best.label, names))
    _write_lines(Path(str(out) + ".qtrace.csv"),
                 ["iteration,Q"] + [f"{i},{q_!r}"
                                    for i, q_ in enumerate(trace)])
    argv = ["detect", args.edges, "--algo", args.algo,
            "--restarts", str(args.restarts),
            "--seed", str(seed), "--temp", str(args.temp),
            "--cool", str(args.cool), "--ants-frac", str(args.ants_frac),
            "--eps", str(args.eps), "--max-iters", str(args.max_iters),
            "--out", args.out]
    if args.unweighted:
        argv.insert(2, "--unweighted")
    _write_manifest(out, "detect", argv, [args.edges], seed, cfg,
                    time.perf_counter() - t_start)
    print(f"algo={args.algo} seed={seed}")
    print(f"best Q={q:.6f} communities={best.num_communities}")
    return 0


def _aligned_labels(mapping: dict[str, int], part_file: str,
                    what: str) -> np.ndarray:
    with open(part_file, encoding="utf-8") as fh:
        assignment = read_partition(fh)
    extra = sorted(set(assignment) - set(mapping))
    if extra:
        raise DataError(
            f"{what} file names vertex '{extra[0]}' absent from the edge list")
    labels = np.empty(len(mapping), dtype=np.int64)
    for tok, idx in mapping.items():
        if tok not in assignment:
            raise DataError(f"vertex '{tok}' missing from {what} file")
        labels[idx] = assignment[tok]
    return compact_labels(labels)[0]


def _cmd_eval(args) -> int:
    g, mapping = _load_graph(args.edges, weighted=not args.unweighted)
    labels = _aligned_labels(mapping, args.partition, "partition")
    part = Partition.from_labels(g, labels)
    report = resolution_report(g, part).as_dict()
    if args.truth is not None:
        truth_labels = _aligned_labels(mapping, args.truth, "truth")
        report["NMI"] = nmi(labels, truth_labels)
    for key, val in report.items():
        print(f"{key} {_fmt(val)}")
    if args.out is not None:
        _write_json(Path(args.out), report)
    return 0


def _derive(master: int, *parts: int) -> int:
    ss = np.random.SeedSequence([master & (2**64 - 1), *parts])
    return int(ss.generate_state(1, np.uint64)[0])


def _cmd_bench(args) -> int:
    t_start = time.perf_counter()
    try:
        ks = [int(tok) for tok in args.groups_list.split(",") if tok.strip()]
    except ValueError:
        raise ValueError(f"bad --groups-list {args.groups_list!r}") from None
    if not ks:
        raise ValueError("empty --groups-list")
    if args.seeds < 1:
        raise ValueError("--seeds must be >= 1")
    seed = _resolve_seed(args)
    cfg = _config(args, seed)
    rows = []
    print("n,mean_time_s,mean_q,mean_nmi")
    for k in ks:
        times, qs, nmis = [], [], []
        for s in range(args.seeds):
            inst = gen_gn(k, args.group_size, args.zin, args.zout,
                          seed=_derive(seed, k, s, 0))
            tic = time.perf_counter()
            hierarchy = run_maba(inst.graph, cfg.with_seed(_derive(seed, k, s, 1)))
            times.append(time.perf_counter() - tic)
            best = best_partition(hierarchy)
            qs.append(hierarchy.levels[hierarchy.best_level].q)
            nmis.append(nmi(best, inst.truth))
        row = (k * args.group_size, fmean(times), fmean(qs), fmean(nmis))
        rows.append(row)
        print(f"{row[0]},{row[1]:.6f},{row[2]:.6f},{row[3]:.6f}")
    out = Path(args.out)
    _write_lines(out, ["n,mean_time_s,mean_q,mean_nmi"] +
                 [f"{n},{t:.6f},{q:.6f},{v:.6f}" for n, t, q, v in rows])
    argv = ["bench", "--groups-list", args.groups_list,
            "--group-size", str(args.group_size), "--zin", str(args.zin),
            "--zout", str(args.zout), "--seeds", str(args.seeds),
            "--seed", str(seed), "--temp", str(args.temp),
            "--cool", str(args.cool), "--ants-frac", str(args.ants_frac),
            "--eps", str(args.eps), "--max-iters", str(args.max_iters),
            "--out", args.out]
    _write_manifest(out.with_suffix(""), "bench", argv, [], seed, cfg,
                    time.perf_counter() - t_start)
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    try:
        return args.func(args)
    except (EdgeListParseError, NoEdgesError, DataError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
