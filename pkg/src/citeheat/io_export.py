"""File emission and parsing: Pajek, VOSviewer, overlays, CSV/JSON reports.

Every writer is deterministic: LF line endings, fixed orderings, fixed float
formats (6 significant digits in network files, 6 decimals in CSVs), so
identical input produces byte-identical files on any platform. Readers are
exact inverses of the writers on their own output.

Report schemas (CSV, comma-separated, one header row):

* transition_summary.csv: transition, mean_<u>, sd_cited_<u>, sd_citing_<u>, sum_<u>
* margins_<dir>.csv:      journal, kl_<y0>_<y1>_<u>, kl_<y1>_<y2>_<u>, kl_<y0>_<y2>_<u>, monotonic
* revision_<dir>.csv:     journal, revision_<u>, flagged
* triangle_nodes_<dir>.csv: journal, triangle_<u>, flagged
* hot_links.csv:          citing, cited, triangle_<u>
* degree_ranking.csv:     journal, degree            (giant component only)
* components.csv:         component, size, members   (members "; "-joined)
* communities.csv:        journal, component, community

with <u> the configured unit (bits | mbits | microbits) and <dir> cited or
citing. Margins are ranked by the t0->t2 column descending; revision,
triangle and link tables ascending (most negative first).
"""

from __future__ import annotations

import csv
import json
import re
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .corpus import PAIRS, AlignedTensor, JournalRegistry, normalize_name, parse_edge_list
from .entropy import DIRECTIONS, UNIT_SCALE, to_unit
from .errors import DataError
from .flags import FlagReport, ThresholdSpec
from .netgraph import CommunityPartition, ComponentPartition, HotLinkGraph

FORMAT_VERSION = 1

NEUTRAL_COLOR = "#c8c8c8"


def _open_w(path: str | Path):
    return open(path, "w", encoding="utf-8", newline="\n")


def fmt_sig6(x: float) -> str:
    """Positional formatting with 6 significant digits (stable under
    re-parsing, so re-exports are byte-identical)."""
    if x == 0:
        return "0.00000"
    exponent = int(f"{abs(x):.5e}".split("e")[1])
    decimals = max(0, 5 - exponent)
    return f"{x:.{decimals}f}"


def fmt_dec6(x: float) -> str:
    return f"{x:.6f}"


# ---------------------------------------------------------------------------
# Pajek
# ---------------------------------------------------------------------------

def write_pajek_net(graph: HotLinkGraph, path: str | Path, labels: Mapping | None = None) -> None:
    """Emit `*Vertices N` with 1-based ids and quoted labels, then `*Edges`.

    Vertex order is ascending node id; edge endpoints reference vertex
    positions. Labels containing a double quote cannot be represented.
    """
    nodes = list(graph.nodes)
    position = {v: i + 1 for i, v in enumerate(nodes)}
    with _open_w(path) as out:
        out.write(f"*Vertices {len(nodes)}\n")
        for v in nodes:
            label = str(labels[v]) if labels is not None else str(v)
            if '"' in label:
                raise DataError(f"label not representable in Pajek: {label!r}")
            out.write(f'{position[v]} "{label}"\n')
        if graph.edges:
            out.write("*Edges\n")
            for u, v, w in graph.edges:
                i, j = sorted((position[u], position[v]))
                out.write(f"{i} {j} {fmt_sig6(w)}\n")


_VERTEX_RE = re.compile(r'^(\d+)\s+"([^"]*)"\s*$')


def read_pajek_net(path: str | Path) -> tuple[HotLinkGraph, list[str]]:
    """Inverse of write_pajek_net; nodes come back as 0-based positions."""
    labels: list[str] = []
    edges: list[tuple[int, int, float]] = []
    with open(path, encoding="utf-8") as handle:
        lines = handle.read().splitlines()
    if not lines or not lines[0].lower().startswith("*vertices"):
        raise DataError(f"{path}:1: expected *Vertices header")
    try:
        n_vertices = int(lines[0].split()[1])
    except (IndexError, ValueError):
        raise DataError(f"{path}:1: malformed *Vertices header") from None
    section = "vertices"
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        if line.lower().startswith("*edges"):
            section = "edges"
            continue
        if section == "vertices":
            match = _VERTEX_RE.match(line)
            if not match:
                raise DataError(f"{path}:{lineno}: malformed vertex line")
            if int(match.group(1)) != len(labels) + 1:
                raise DataError(f"{path}:{lineno}: vertex ids must be sequential")
            labels.append(match.group(2))
        else:
            fields = line.split()
            if len(fields) != 3:
                raise DataError(f"{path}:{lineno}: malformed edge line")
            i, j = int(fields[0]), int(fields[1])
            if not (1 <= i <= n_vertices and 1 <= j <= n_vertices):
                raise DataError(f"{path}:{lineno}: edge endpoint out of range")
            edges.append((i - 1, j - 1, float(fields[2])))
    if len(labels) != n_vertices:
        raise DataError(f"{path}: vertex count mismatch: header says {n_vertices}")
    return HotLinkGraph.from_edges(edges), labels


def write_pajek_clu(
    assignment: Mapping, path: str | Path, nodes: Sequence | None = None
) -> None:
    """One 1-based cluster id per line, in ascending-node vertex order."""
    if nodes is None:
        nodes = sorted(assignment)
    with _open_w(path) as out:
        out.write(f"*Vertices {len(nodes)}\n")
        for v in nodes:
            out.write(f"{assignment[v] + 1}\n")


def read_pajek_clu(path: str | Path) -> list[int]:
    """Inverse of write_pajek_clu; returns 0-based cluster ids."""
    with open(path, encoding="utf-8") as handle:
        lines = handle.read().splitlines()
    if not lines or not lines[0].lower().startswith("*vertices"):
        raise DataError(f"{path}:1: expected *Vertices header")
    n = int(lines[0].split()[1])
    clusters = [int(line) - 1 for line in lines[1:] if line.strip()]
    if len(clusters) != n:
        raise DataError(f"{path}: expected {n} cluster lines, found {len(clusters)}")
    return clusters


# ---------------------------------------------------------------------------
# Base maps and VOSviewer files
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BaseMapRow:
    label: str
    x: str
    y: str
    cluster: str = ""
    weight: str = ""


@dataclass(frozen=True)
class BaseMap:
    """A fixed global map to overlay results on; labels unique after the
    same normalization the registry applies. Coordinates are kept verbatim."""

    rows: tuple[BaseMapRow, ...]
    has_cluster: bool
    has_weight: bool

    @cached_property
    def index(self) -> dict[str, BaseMapRow]:
        return {normalize_name(row.label): row for row in self.rows}


def read_basemap(path: str | Path) -> BaseMap:
    """Parse a tab-separated map file with a header naming at least
    label, x and y columns (id, cluster and weight are recognized too)."""
    with open(path, encoding="utf-8") as handle:
        lines = handle.read().splitlines()
    if not lines:
        raise DataError(f"{path}: empty base map")
    header = [h.strip().lower() for h in lines[0].split("\t")]
    try:
        col = {name: header.index(name) for name in ("label", "x", "y")}
    except ValueError as exc:
        raise DataError(f"{path}: base map header must name label, x and y ({exc})") from None
    cluster_idx = header.index("cluster") if "cluster" in header else None
    weight_idx = header.index("weight") if "weight" in header else None
    rows = []
    seen: set[str] = set()
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) < len(header):
            raise DataError(f"{path}:{lineno}: expected {len(header)} fields")
        label = fields[col["label"]]
        key = normalize_name(label)
        if key in seen:
            raise DataError(f"{path}:{lineno}: duplicate label {label!r}")
        seen.add(key)
        rows.append(
            BaseMapRow(
                label=label,
                x=fields[col["x"]],
                y=fields[col["y"]],
                cluster=fields[cluster_idx] if cluster_idx is not None else "",
                weight=fields[weight_idx] if weight_idx is not None else "",
            )
        )
    return BaseMap(
        rows=tuple(rows),
        has_cluster=cluster_idx is not None,
        has_weight=weight_idx is not None,
    )


def write_vosviewer_files(
    graph: HotLinkGraph,
    partition: Mapping,
    map_path: str | Path,
    network_path: str | Path,
    labels: Mapping | None = None,
    basemap: BaseMap | None = None,
    unmatched_path: str | Path | None = None,
) -> list:
    """Emit the map/network text file pair VOSviewer opens directly.

    Without a base map the x,y columns are omitted so VOSviewer computes its
    own layout; with one, coordinates are copied verbatim and nodes missing
    from the map are written with empty coordinates and listed in the
    unmatched report. Returns the unmatched nodes.

    The weight column is the node strength summed over the 6-digit edge
    weights the network file itself declares, which keeps re-exports of a
    re-read pair byte-identical.
    """
    nodes = list(graph.nodes)
    position = {v: i + 1 for i, v in enumerate(nodes)}
    strength = {v: 0.0 for v in nodes}
    for u, v, w in graph.edges:
        declared = float(fmt_sig6(w))
        strength[u] += declared
        strength[v] += declared

    def label_of(v) -> str:
        return str(labels[v]) if labels is not None else str(v)

    unmatched = []
    if basemap is not None:
        unmatched = [v for v in nodes if normalize_name(label_of(v)) not in basemap.index]

    with _open_w(map_path) as out:
        if basemap is None:
            out.write("id\tlabel\tcluster\tweight\n")
        else:
            out.write("id\tlabel\tx\ty\tcluster\tweight\n")
        for v in nodes:
            cluster = partition[v] + 1
            weight = fmt_sig6(strength[v])
            if basemap is None:
                out.write(f"{position[v]}\t{label_of(v)}\t{cluster}\t{weight}\n")
            else:
                row = basemap.index.get(normalize_name(label_of(v)))
                x, y = (row.x, row.y) if row is not None else ("", "")
                out.write(f"{position[v]}\t{label_of(v)}\t{x}\t{y}\t{cluster}\t{weight}\n")

    with _open_w(network_path) as out:
        for u, v, w in graph.edges:
            i, j = sorted((position[u], position[v]))
            out.write(f"{i}\t{j}\t{fmt_sig6(w)}\n")

    if basemap is not None and unmatched_path is not None:
        with _open_w(unmatched_path) as out:
            for v in unmatched:
                out.write(f"{label_of(v)}\n")
    return unmatched


def read_vosviewer_files(
    map_path: str | Path, network_path: str | Path
) -> tuple[HotLinkGraph, dict[int, int], list[str]]:
    """Inverse of write_vosviewer_files on its own output."""
    with open(map_path, encoding="utf-8") as handle:
        lines = handle.read().splitlines()
    if not lines:
        raise DataError(f"{map_path}: empty map file")
    header = lines[0].split("\t")
    col = {name: i for i, name in enumerate(header)}
    for required in ("id", "label", "cluster"):
        if required not in col:
            raise DataError(f"{map_path}: missing column {required!r}")
    labels: list[str] = []
    clusters: dict[int, int] = {}
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        fields = line.split("\t")
        node_id = int(fields[col["id"]])
        if node_id != len(labels) + 1:
            raise DataError(f"{map_path}:{lineno}: ids must be sequential")
        labels.append(fields[col["label"]])
        clusters[node_id - 1] = int(fields[col["cluster"]]) - 1
    edges = []
    with open(network_path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            fields = line.rstrip("\n").split("\t")
            if len(fields) != 3:
                raise DataError(f"{network_path}:{lineno}: malformed edge line")
            edges.append((int(fields[0]) - 1, int(fields[1]) - 1, float(fields[2])))
    return HotLinkGraph.from_edges(edges), clusters, labels


def write_overlay(
    flag_sets: Mapping[str, Iterable[str]],
    basemap: BaseMap,
    colors: Mapping[str, str],
    path: str | Path,
) -> None:
    """Annotate base-map rows with flag categories for visual overlay.

    A node flagged in several categories gets the first matching one in
    ``flag_sets`` order; unflagged rows keep neutral styling.
    """
    normalized = {
        category: {normalize_name(n) for n in names}
        for category, names in flag_sets.items()
    }
    columns = ["label", "x", "y"]
    if basemap.has_cluster:
        columns.append("cluster")
    if basemap.has_weight:
        columns.append("weight")
    columns += ["category", "color"]
    with _open_w(path) as out:
        out.write("\t".join(columns) + "\n")
        for row in basemap.rows:
            key = normalize_name(row.label)
            category, color = "", NEUTRAL_COLOR
            for name, members in normalized.items():
                if key in members:
                    category, color = name, colors[name]
                    break
            fields = [row.label, row.x, row.y]
            if basemap.has_cluster:
                fields.append(row.cluster)
            if basemap.has_weight:
                fields.append(row.weight)
            fields += [category, color]
            out.write("\t".join(fields) + "\n")


# ---------------------------------------------------------------------------
# Stage cache: aligned tensor and hot links
# ---------------------------------------------------------------------------

def write_tensor_cache(tensor: AlignedTensor, directory: str | Path) -> None:
    """Persist the aligned tensor as a registry TSV plus one canonical
    edge list per year (restricted, renamed, id-sorted)."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    with _open_w(directory / "registry.tsv") as out:
        out.write("# id\tname\n")
        for i, name in enumerate(tensor.registry.names):
            out.write(f"{i}\t{name}\n")
    names = tensor.registry.names
    for y, label in enumerate(tensor.year_labels):
        with _open_w(directory / f"year_{label}.tsv") as out:
            out.write("# citing\tcited\tcount\n")
            present = tensor.counts[y] > 0
            for c, d, n in zip(
                tensor.citing[present], tensor.cited[present], tensor.counts[y][present]
            ):
                out.write(f"{names[c]}\t{names[d]}\t{n}\n")


def read_tensor_cache(directory: str | Path) -> AlignedTensor:
    """Rebuild the tensor exactly, bypassing the common-set restriction
    (the cached registry already fixes the node set)."""
    directory = Path(directory)
    names: list[str] = []
    with open(directory / "registry.tsv", encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if line.startswith("#") or not line.strip():
                continue
            fields = line.rstrip("\n").split("\t")
            if len(fields) != 2:
                raise DataError(f"{directory}/registry.tsv:{lineno}: malformed entry")
            if int(fields[0]) != len(names):
                raise DataError(f"{directory}/registry.tsv:{lineno}: ids must be dense")
            names.append(fields[1])
    if names != sorted(names):
        raise DataError(f"{directory}/registry.tsv: names are not in id order")
    registry = JournalRegistry.from_names(names)
    ids = {name: i for i, name in enumerate(registry.names)}
    year_paths = sorted(directory.glob("year_*.tsv"))
    if len(year_paths) != 3:
        raise DataError(f"{directory}: expected 3 cached year files, found {len(year_paths)}")
    labels = [p.stem[len("year_"):] for p in year_paths]
    year_cells = []
    for path in year_paths:
        matrix = parse_edge_list(path, "cache")
        try:
            year_cells.append(
                {(ids[c], ids[d]): n for (c, d), n in matrix.cells.items()}
            )
        except KeyError as exc:
            raise DataError(f"{path}: name missing from cached registry: {exc}") from None
    return AlignedTensor.from_year_cells(registry, labels, year_cells)


def write_hot_links_csv(
    path: str | Path, hot_links: Sequence[tuple[str, str, float]], unit: str
) -> None:
    """Flagged cells ranked hottest first (score ascending, labels tie-break)."""
    ranked = sorted(hot_links, key=lambda link: (link[2], link[0], link[1]))
    with _open_w(path) as out:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["citing", "cited", f"triangle_{unit}"])
        for citing, cited, score in ranked:
            writer.writerow([citing, cited, fmt_dec6(to_unit(score, unit))])


def read_hot_links_csv(path: str | Path) -> list[tuple[str, str, float]]:
    """Inverse of write_hot_links_csv; scores come back in bits."""
    with open(path, encoding="utf-8") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if not header or len(header) != 3 or not header[2].startswith("triangle_"):
            raise DataError(f"{path}: unrecognized hot-links header")
        unit = header[2][len("triangle_"):]
        if unit not in UNIT_SCALE:
            raise DataError(f"{path}: unknown unit {unit!r} in header")
        links = []
        for row in reader:
            if not row:
                continue
            links.append((row[0], row[1], float(row[2]) / to_unit(1.0, unit)))
    return links


# ---------------------------------------------------------------------------
# Report tables
# ---------------------------------------------------------------------------

def _threshold_json(spec: ThresholdSpec, unit: str) -> dict:
    return {
        "k": spec.k,
        "mean": to_unit(spec.mean, unit),
        "sd": to_unit(spec.sd, unit),
        "upper": to_unit(spec.upper, unit),
        "lower": to_unit(spec.lower, unit),
    }


def write_json(path: str | Path, payload: dict) -> None:
    with _open_w(path) as out:
        json.dump(payload, out, indent=2, sort_keys=True)
        out.write("\n")


def write_flag_journal_reports(outdir: str | Path, report: FlagReport) -> None:
    """Emit the journal-level tables plus the journal_flags.json sidecar."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    unit = report.unit
    tensor = report.tensor
    names = tensor.registry.names

    with _open_w(outdir / "transition_summary.csv") as out:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(
            ["transition", f"mean_{unit}", f"sd_cited_{unit}", f"sd_citing_{unit}", f"sum_{unit}"]
        )
        for pair in PAIRS:
            cells = report.transitions[pair]
            cited = report.margins[(pair, "cited")]
            citing = report.margins[(pair, "citing")]
            writer.writerow(
                [
                    cells.pair_label,
                    fmt_dec6(to_unit(cited.mean, unit)),
                    fmt_dec6(to_unit(cited.sd, unit)),
                    fmt_dec6(to_unit(citing.sd, unit)),
                    fmt_dec6(to_unit(cells.grand_sum, unit)),
                ]
            )
        rev_cited = report.revision["cited"]
        rev_citing = report.revision["citing"]
        writer.writerow(
            [
                "revision_of_prediction",
                fmt_dec6(to_unit(rev_cited.mean, unit)),
                fmt_dec6(to_unit(rev_cited.sd, unit)),
                fmt_dec6(to_unit(rev_citing.sd, unit)),
                fmt_dec6(to_unit(rev_cited.grand_sum, unit)),
            ]
        )

    labels = tensor.year_labels
    for direction in DIRECTIONS:
        m01 = report.margins[((0, 1), direction)].values
        m12 = report.margins[((1, 2), direction)].values
        m02 = report.margins[((0, 2), direction)].values
        up = report.monotonic_up[direction]
        down = report.monotonic_down[direction]
        order = sorted(range(len(names)), key=lambda i: (-m02[i], names[i]))
        with _open_w(outdir / f"margins_{direction}.csv") as out:
            writer = csv.writer(out, lineterminator="\n")
            writer.writerow(
                [
                    "journal",
                    f"kl_{labels[0]}_{labels[1]}_{unit}",
                    f"kl_{labels[1]}_{labels[2]}_{unit}",
                    f"kl_{labels[0]}_{labels[2]}_{unit}",
                    "monotonic",
                ]
            )
            for i in order:
                flag = "up" if i in up else "down" if i in down else ""
                writer.writerow(
                    [
                        names[i],
                        fmt_dec6(to_unit(m01[i], unit)),
                        fmt_dec6(to_unit(m12[i], unit)),
                        fmt_dec6(to_unit(m02[i], unit)),
                        flag,
                    ]
                )

        _write_flag_table(
            outdir / f"revision_{direction}.csv",
            "revision",
            names,
            report.revision[direction].values,
            report.revision_flagged[direction],
            unit,
        )
        _write_flag_table(
            outdir / f"triangle_nodes_{direction}.csv",
            "triangle",
            names,
            report.triangle_node_margins[direction].values,
            report.triangle_flagged_nodes[direction],
            unit,
        )

    write_json(
        outdir / "journal_flags.json",
        {
            "format_version": FORMAT_VERSION,
            "unit": unit,
            "k": report.k,
            "outliers_removed": list(report.outliers_removed),
            "journals": tensor.n_nodes,
            "thresholds": {
                key: _threshold_json(spec, unit) for key, spec in report.thresholds.items()
            },
            "counts": {
                "monotonic_up": {d: len(report.monotonic_up[d]) for d in DIRECTIONS},
                "monotonic_down": {d: len(report.monotonic_down[d]) for d in DIRECTIONS},
                "revision_flagged": {d: len(report.revision_flagged[d]) for d in DIRECTIONS},
                "triangle_flagged_nodes": {
                    d: len(report.triangle_flagged_nodes[d]) for d in DIRECTIONS
                },
            },
            "revision_excluded_cells": {
                d: report.revision[d].excluded_cells for d in DIRECTIONS
            },
        },
    )


def _write_flag_table(path, column, names, values, flagged, unit):
    order = sorted(range(len(names)), key=lambda i: (values[i], names[i]))
    with _open_w(path) as out:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["journal", f"{column}_{unit}", "flagged"])
        for i in order:
            writer.writerow(
                [names[i], fmt_dec6(to_unit(float(values[i]), unit)), str(i in flagged).lower()]
            )


def write_link_flag_reports(outdir: str | Path, report: FlagReport) -> None:
    """Emit hot_links.csv (label-keyed) and the link_flags.json sidecar."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    names = report.tensor.registry.names
    labeled = [(names[c], names[d], s) for c, d, s in report.hot_links]
    write_hot_links_csv(outdir / "hot_links.csv", labeled, report.unit)
    write_json(
        outdir / "link_flags.json",
        {
            "format_version": FORMAT_VERSION,
            "unit": report.unit,
            "k": report.k,
            "drop_loops": report.drop_loops,
            "outliers_removed": list(report.outliers_removed),
            "threshold": _threshold_json(report.thresholds["links"], report.unit),
            "evaluated_cells": int(report.triangle.values.shape[0]),
            "hot_links": len(report.hot_links),
            "loops_flagged": report.loops_flagged,
        },
    )


def read_flag_table(path: str | Path) -> dict[str, bool]:
    """Journal -> flagged, from a revision_* or triangle_nodes_* table."""
    flagged: dict[str, bool] = {}
    with open(path, encoding="utf-8") as handle:
        reader = csv.reader(handle)
        next(reader, None)
        for row in reader:
            if row:
                flagged[row[0]] = row[2] == "true"
    return flagged


def read_monotonic_column(path: str | Path) -> dict[str, str]:
    """Journal -> '', 'up' or 'down', from a margins_* table."""
    out: dict[str, str] = {}
    with open(path, encoding="utf-8") as handle:
        reader = csv.reader(handle)
        next(reader, None)
        for row in reader:
            if row:
                out[row[0]] = row[4]
    return out


def write_network_reports(
    outdir: str | Path,
    graph: HotLinkGraph,
    components: ComponentPartition,
    communities: CommunityPartition,
    degrees: Mapping,
) -> None:
    """Component listing, community assignment and the degree ranking of
    the giant component, over a label-keyed graph."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    with _open_w(outdir / "components.csv") as out:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["component", "size", "members"])
        for i, comp in enumerate(components.components):
            writer.writerow([i, len(comp), "; ".join(str(v) for v in comp)])

    with _open_w(outdir / "communities.csv") as out:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["journal", "component", "community"])
        for v in graph.nodes:
            writer.writerow([v, components.assignment[v], communities.assignment[v]])

    giant = components.components[0] if components.components else ()
    ranked = sorted(giant, key=lambda v: (-degrees[v], v))
    with _open_w(outdir / "degree_ranking.csv") as out:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["journal", "degree"])
        for v in ranked:
            writer.writerow([v, degrees[v]])


def write_reports(
    outdir: str | Path,
    report: FlagReport,
    graph: HotLinkGraph,
    components: ComponentPartition,
    communities: CommunityPartition,
    degrees: Mapping,
) -> None:
    """All CSV/JSON report files for one run, under one directory."""
    write_flag_journal_reports(outdir, report)
    write_link_flag_reports(outdir, report)
    write_network_reports(outdir, graph, components, communities, degrees)
