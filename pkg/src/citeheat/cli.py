"""Command-line pipeline: ingest -> entropy -> flags -> graph -> export.

One executable with per-stage subcommands; stages compose exclusively via
files under the output directory, and ``run`` simply executes them in
sequence, so a full run and a staged run produce byte-identical artifact
trees. Options can come from a flat key=value config file; command-line
flags win over the file.

Artifact tree (all under --out):

    ingest/registry.tsv, ingest/year_<label>.tsv, ingest/corpus_stats.json
    reports/transition_summary.csv, margins_*.csv, revision_*.csv,
            triangle_nodes_*.csv, journal_flags.json,
            hot_links.csv, link_flags.json
    network/graph.net, communities.clu, components.csv, communities.csv,
            degree_ranking.csv
    export/vosviewer_map.txt, vosviewer_network.txt
    export/vosviewer_unmatched.txt, overlay_*.txt      (with --basemap)
    summary.json

Exit codes: 0 success, 1 configuration error, 2 data error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import io_export
from .corpus import (
    apply_name_changes,
    build_common_set,
    parse_edge_list,
    parse_rename_file,
)
from .entropy import UNIT_SCALE
from .errors import CiteHeatError, ConfigError, DataError
from .flags import build_flag_report
from .netgraph import (
    CommunityPartition,
    build_graph,
    connected_components,
    degree_centrality,
    louvain,
)

_LABEL_RE = re.compile(r"^[A-Za-z0-9._-]+$")

OVERLAY_COLORS = {
    "cited_up": "red",
    "cited_down": "blue",
    "citing_up": "orange",
    "citing_down": "green",
    "cited": "red",
    "citing": "blue",
}


@dataclass
class RunConfig:
    years: tuple[tuple[str, str], ...] = ()
    renames: str | None = None
    k: float = 1.0
    unit: str = "mbits"
    excludes: tuple[str, ...] = ()
    drop_loops: bool = True
    seed: int = 0
    out: Path = field(default_factory=lambda: Path("citeheat_out"))
    basemap: str | None = None
    threads: int = 1

    def validate(self, need_years: bool) -> None:
        if self.k < 0:
            raise ConfigError(f"--k must be >= 0, got {self.k}")
        if self.unit not in UNIT_SCALE:
            raise ConfigError(
                f"--unit must be one of {sorted(UNIT_SCALE)}, got {self.unit!r}"
            )
        if self.threads < 1:
            raise ConfigError(f"--threads must be >= 1, got {self.threads}")
        if need_years:
            if len(self.years) != 3:
                raise ConfigError(
                    f"--year must be given exactly 3 times, got {len(self.years)}"
                )
            labels = [label for label, _ in self.years]
            if sorted(labels) != labels or len(set(labels)) != 3:
                raise ConfigError(f"--year labels must be strictly increasing: {labels}")
            for label in labels:
                if not _LABEL_RE.match(label):
                    raise ConfigError(
                        f"--year label {label!r} must match {_LABEL_RE.pattern}"
                    )


def _parse_year_spec(spec: str) -> tuple[str, str]:
    label, sep, path = spec.partition("=")
    if not sep or not label or not path:
        raise ConfigError(f"--year expects <label>=<path>, got {spec!r}")
    return label, path


def load_config_file(path: str | Path) -> dict:
    """Flat key = value file; `year` and `exclude` may repeat."""
    values: dict = {"year": [], "exclude": []}
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ConfigError(f"{path}:{lineno}: expected key = value")
            key, value = key.strip(), value.strip()
            if key in ("year", "exclude"):
                values[key].append(value)
            elif key in ("renames", "k", "unit", "seed", "out", "basemap", "threads"):
                values[key] = value
            elif key == "keep_loops":
                if value not in ("true", "false"):
                    raise ConfigError(f"{path}:{lineno}: keep_loops must be true or false")
                values[key] = value == "true"
            else:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
    return values


def build_run_config(args: argparse.Namespace) -> RunConfig:
    file_values: dict = {}
    if args.config:
        file_values = load_config_file(args.config)

    def pick(flag_value, key, default):
        if flag_value is not None:
            return flag_value
        if key in file_values and file_values[key] not in ([], None):
            return file_values[key]
        return default

    year_specs = pick(args.year or None, "year", [])
    out = args.out or file_values.get("out") or os.environ.get("CITEHEAT_OUT") or "citeheat_out"
    try:
        k = float(pick(args.k, "k", 1.0))
        seed = int(pick(args.seed, "seed", 0))
        threads = int(pick(args.threads, "threads", 1))
    except ValueError as exc:
        raise ConfigError(f"invalid numeric option: {exc}") from None
    keep_loops = bool(args.keep_loops or file_values.get("keep_loops", False))
    return RunConfig(
        years=tuple(_parse_year_spec(s) for s in year_specs),
        renames=pick(args.renames, "renames", None),
        k=k,
        unit=pick(args.unit, "unit", "mbits"),
        excludes=tuple(pick(args.exclude or None, "exclude", [])),
        drop_loops=not keep_loops,
        seed=seed,
        out=Path(out),
        basemap=pick(args.basemap, "basemap", None),
        threads=threads,
    )


# ---------------------------------------------------------------------------
# Stages
# ---------------------------------------------------------------------------

def stage_ingest(config: RunConfig) -> None:
    config.validate(need_years=True)
    if config.threads > 1:
        with ThreadPoolExecutor(max_workers=min(3, config.threads)) as pool:
            matrices = list(
                pool.map(lambda year: parse_edge_list(year[1], year[0]), config.years)
            )
    else:
        matrices = [parse_edge_list(path, label) for label, path in config.years]
    renames = parse_rename_file(config.renames) if config.renames else []
    registry, renamed = apply_name_changes(matrices, renames)
    tensor = build_common_set(registry, renamed)

    io_export.write_tensor_cache(tensor, config.out / "ingest")
    stats = {
        "years": [
            {
                "label": matrix.year_label,
                "journals": len(matrix.nodes()),
                "links": len(matrix.cells),
            }
            for matrix in renamed
        ],
        "combined_journals": len(registry),
        "rename_records": len(renames),
        "common_journals": tensor.n_nodes,
        "valid_transition_cells": {
            tensor.pair_label(pair): int(tensor.pair_valid(pair).sum())
            for pair in ((0, 1), (1, 2), (0, 2))
        },
        "all_years_cells": int(tensor.tri_valid.sum()),
    }
    io_export.write_json(config.out / "ingest" / "corpus_stats.json", stats)
    _print_corpus_stats(stats)


def _print_corpus_stats(stats: dict) -> None:
    print("year        journals        links")
    for row in stats["years"]:
        print(f"{row['label']:<12}{row['journals']:<16}{row['links']}")
    print(f"combined    {stats['combined_journals']:<16}(after {stats['rename_records']} rename records)")
    print(f"common set: {stats['common_journals']} journals actively citing in all three years")
    cells = stats["valid_transition_cells"]
    joined = " | ".join(f"{label}: {n}" for label, n in cells.items())
    print(f"valid transition cells (prior year > 0): {joined}")
    print(f"cells positive in all three years: {stats['all_years_cells']}")


def _load_report(config: RunConfig):
    tensor = io_export.read_tensor_cache(config.out / "ingest")
    return build_flag_report(
        tensor,
        k=config.k,
        unit=config.unit,
        drop_loops=config.drop_loops,
        outliers=config.excludes,
    )


def stage_flag_journals(config: RunConfig) -> None:
    config.validate(need_years=False)
    report = _load_report(config)
    io_export.write_flag_journal_reports(config.out / "reports", report)


def stage_flag_links(config: RunConfig) -> None:
    config.validate(need_years=False)
    report = _load_report(config)
    io_export.write_link_flag_reports(config.out / "reports", report)


def _load_graph(config: RunConfig):
    links = io_export.read_hot_links_csv(config.out / "reports" / "hot_links.csv")
    graph = build_graph(links)
    components = connected_components(graph)
    if graph.nodes:
        communities = louvain(graph, seed=config.seed)
    else:
        communities = CommunityPartition(assignment={}, q=0.0, seed=config.seed)
    return graph, components, communities


def stage_graph(config: RunConfig) -> None:
    config.validate(need_years=False)
    graph, components, communities = _load_graph(config)
    outdir = config.out / "network"
    outdir.mkdir(parents=True, exist_ok=True)
    io_export.write_pajek_net(graph, outdir / "graph.net")
    io_export.write_pajek_clu(communities.assignment, outdir / "communities.clu", nodes=graph.nodes)
    io_export.write_network_reports(
        outdir, graph, components, communities, degree_centrality(graph)
    )


def _overlay_sets(config: RunConfig) -> dict[str, dict[str, set[str]]]:
    reports = config.out / "reports"
    monotonic: dict[str, set[str]] = {key: set() for key in
                                      ("cited_up", "cited_down", "citing_up", "citing_down")}
    revision: dict[str, set[str]] = {}
    triangle: dict[str, set[str]] = {}
    for direction in ("cited", "citing"):
        for journal, flag in io_export.read_monotonic_column(
            reports / f"margins_{direction}.csv"
        ).items():
            if flag:
                monotonic[f"{direction}_{flag}"].add(journal)
        revision[direction] = {
            journal
            for journal, flagged in io_export.read_flag_table(
                reports / f"revision_{direction}.csv"
            ).items()
            if flagged
        }
        triangle[direction] = {
            journal
            for journal, flagged in io_export.read_flag_table(
                reports / f"triangle_nodes_{direction}.csv"
            ).items()
            if flagged
        }
    return {"monotonic": monotonic, "revision": revision, "triangle": triangle}


def stage_export(config: RunConfig) -> None:
    config.validate(need_years=False)
    graph, components, communities = _load_graph(config)
    outdir = config.out / "export"
    outdir.mkdir(parents=True, exist_ok=True)

    basemap = io_export.read_basemap(config.basemap) if config.basemap else None
    unmatched = io_export.write_vosviewer_files(
        graph,
        communities.assignment,
        outdir / "vosviewer_map.txt",
        outdir / "vosviewer_network.txt",
        basemap=basemap,
        unmatched_path=outdir / "vosviewer_unmatched.txt",
    )

    if basemap is not None:
        sets = _overlay_sets(config)
        colors = OVERLAY_COLORS
        io_export.write_overlay(sets["monotonic"], basemap, colors, outdir / "overlay_monotonic.txt")
        io_export.write_overlay(sets["revision"], basemap, colors, outdir / "overlay_revision.txt")
        io_export.write_overlay(sets["triangle"], basemap, colors, outdir / "overlay_triangle.txt")

    corpus_stats = json.loads(
        (config.out / "ingest" / "corpus_stats.json").read_text(encoding="utf-8")
    )
    journal_flags = json.loads(
        (config.out / "reports" / "journal_flags.json").read_text(encoding="utf-8")
    )
    link_flags = json.loads(
        (config.out / "reports" / "link_flags.json").read_text(encoding="utf-8")
    )
    summary = {
        "format_version": io_export.FORMAT_VERSION,
        "config": {
            "k": config.k,
            "unit": config.unit,
            "seed": config.seed,
            "drop_loops": config.drop_loops,
            "outliers_removed": list(config.excludes),
            "basemap": config.basemap,
            "year_labels": [row["label"] for row in corpus_stats["years"]],
        },
        "corpus": corpus_stats,
        "journal_flags": {key: journal_flags[key] for key in
                          ("thresholds", "counts", "revision_excluded_cells", "journals")},
        "links": {key: link_flags[key] for key in
                  ("threshold", "evaluated_cells", "hot_links", "loops_flagged")},
        "network": {
            "nodes": len(graph.nodes),
            "edges": len(graph.edges),
            "components": len(components.components),
            "giant_size": len(components.components[0]) if components.components else 0,
            "communities": len(set(communities.assignment.values())),
            "modularity": communities.q,
            "unmatched_basemap_nodes": len(unmatched) if basemap is not None else None,
        },
    }
    io_export.write_json(config.out / "summary.json", summary)


def run_pipeline(config: RunConfig) -> None:
    """Full pipeline; composes the stages through their file artifacts so a
    staged run and a full run are byte-identical."""
    stage_ingest(config)
    stage_flag_journals(config)
    stage_flag_links(config)
    stage_graph(config)
    stage_export(config)


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit code 1 for configuration errors
        raise ConfigError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="citeheat", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--year", action="append", metavar="LABEL=PATH",
                        help="year edge list, exactly 3 times (for run/ingest)")
    common.add_argument("--renames", metavar="PATH", help="old/new name table")
    common.add_argument("--k", type=float, default=None, metavar="FLOAT",
                        help="SD multiplier for all thresholds (default 1.0)")
    common.add_argument("--unit", choices=sorted(UNIT_SCALE), default=None,
                        help="reporting unit (default mbits)")
    common.add_argument("--exclude", action="append", metavar="NAME",
                        help="journal to remove as an outlier (repeatable)")
    common.add_argument("--keep-loops", action="store_true", default=False,
                        help="keep self-citation cells among the hot links")
    common.add_argument("--seed", type=int, default=None, metavar="INT",
                        help="community-detection seed (default 0)")
    common.add_argument("--out", metavar="DIR",
                        help="output directory (default $CITEHEAT_OUT or citeheat_out)")
    common.add_argument("--basemap", metavar="PATH", help="map file for overlays")
    common.add_argument("--threads", type=int, default=None, metavar="INT",
                        help="worker cap; never affects results (default 1)")
    common.add_argument("--config", metavar="PATH", help="flat key=value config file")

    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("run", "full pipeline: ingest, flags, graph, export"),
        ("ingest", "parse and align the three years into the cache"),
        ("flag-journals", "journal-level indicators and flags"),
        ("flag-links", "link-level triangle flags (hot links)"),
        ("graph", "hot-link graph, components, communities, degrees"),
        ("export", "VOSviewer files, overlays and the JSON summary"),
    ):
        sub.add_parser(name, parents=[common], help=help_text)
    return parser


_STAGES = {
    "run": run_pipeline,
    "ingest": stage_ingest,
    "flag-journals": stage_flag_journals,
    "flag-links": stage_flag_links,
    "graph": stage_graph,
    "export": stage_export,
}


def main(argv: list[str] | None = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
        config = build_run_config(args)
        _STAGES[args.command](config)
        return 0
    except ConfigError as exc:
        print(f"citeheat: configuration error: {exc}", file=sys.stderr)
        return 1
    except DataError as exc:
        print(f"citeheat: data error: {exc}", file=sys.stderr)
        return 2
    except CiteHeatError as exc:
        print(f"citeheat: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"citeheat: i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
