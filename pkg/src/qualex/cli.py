"""Command-line orchestrator.

Subcommands: ingest, indicators, reports, graph, stats, tabulate, synth,
all.  Settings come from flags, then a flat ``key = value`` config file
(--config), then the EVAL_SEED environment variable for the seed, then
defaults.  Every output file embeds the config digest and seed; wall
clock timestamps appear only in the run_metadata.json sidecar, so two
runs with the same seed and corpus produce byte-identical outputs.

Exit codes: 0 success, 1 validation errors, 2 usage errors, 3 internal
failure.
"""

from __future__ import annotations

import argparse
import datetime as dt
import json
import os
import platform
import sys
import time
from dataclasses import dataclass, asdict
from pathlib import Path

from . import __version__
from .corpus import (
    AREAS,
    MAIN_CATEGORY,
    SUBTYPE_NAMES,
    TITLE_CATEGORIES,
    dedupe_applicants,
    load_corpus,
    normalize_text,
    save_corpus,
    word_count,
)
from .graph import (
    build_graph,
    clique_size_histogram,
    co_qualification_matrix,
    export_graph,
    maximal_cliques,
    top_hubs,
)
from .indicators import evaluate_corpus, load_thresholds
from .stats import (
    bootstrap_ci,
    german_tank_estimate,
    probit_fit,
    spearman_rho,
)
from .synth import SynthParams, generate_corpus
from .tabulate import (
    age_distribution,
    multiplicity_table,
    publication_type_table,
    titles_table,
    top_pubtypes_per_discipline,
)
from .textmetrics import (
    discipline_report_metrics,
    normalized_levenshtein,
    quadrant_classify,
    sample_reports,
)
from .util import config_digest, parse_config_file, write_csv, write_json

__all__ = ["main", "RunConfig"]


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    corpus: str | None = None
    thresholds: str | None = None
    out: str = "out"
    seed: int = 0
    sample_size: int = 100
    observation_year: int | None = None
    level: float = 0.95
    bootstrap: int = 2000
    format: str = "jsonl"
    workers: int = 1

    def digest(self) -> str:
        # paths are excluded so the stamp identifies the analytic settings,
        # not where the files happened to live
        settings = {
            k: str(v) for k, v in asdict(self).items()
            if k not in ("corpus", "thresholds", "out")
        }
        return config_digest(settings)

    def meta_line(self) -> str:
        return f"config={self.digest()} seed={self.seed}"

    def json_meta(self) -> dict:
        return {"config": self.digest(), "seed": self.seed}


_CONFIG_KEYS = {
    "corpus": str,
    "thresholds": str,
    "out": str,
    "seed": int,
    "sample_size": int,
    "observation_year": int,
    "level": float,
    "bootstrap": int,
    "format": str,
    "workers": int,
}


def _resolve_config(args) -> RunConfig:
    """Merge flags over config file over environment over defaults."""
    file_values = {}
    if args.config:
        raw = parse_config_file(args.config)
        unknown = sorted(set(raw) - set(_CONFIG_KEYS))
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(unknown)}")
        for key, text in raw.items():
            try:
                file_values[key] = _CONFIG_KEYS[key](text)
            except ValueError:
                raise UsageError(f"config key {key}: cannot parse {text!r}")

    cfg = RunConfig()
    for key in _CONFIG_KEYS:
        flag_value = getattr(args, key, None)
        if flag_value is not None:
            setattr(cfg, key, flag_value)
        elif key in file_values:
            setattr(cfg, key, file_values[key])
        elif key == "seed" and os.environ.get("EVAL_SEED"):
            try:
                cfg.seed = int(os.environ["EVAL_SEED"])
            except ValueError:
                raise UsageError(f"EVAL_SEED is not an integer: {os.environ['EVAL_SEED']!r}")
    if cfg.format not in ("jsonl", "csv"):
        raise UsageError(f"unknown corpus format {cfg.format!r}")
    if cfg.sample_size < 2:
        raise UsageError("sample_size must be at least 2")
    if not 0 < cfg.level < 1:
        raise UsageError("level must be in (0, 1)")
    return cfg


def _require_corpus(cfg: RunConfig):
    if not cfg.corpus:
        raise UsageError("this command needs --corpus")


def _outdir(cfg: RunConfig) -> Path:
    path = Path(cfg.out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _load(cfg: RunConfig):
    return load_corpus(cfg.corpus, format=cfg.format, observation_year=cfg.observation_year)


# ---------------------------------------------------------------------------
# subcommands

def cmd_ingest(cfg: RunConfig, corpus=None) -> int:
    """Load, validate, deduplicate; write a data-quality report."""
    _require_corpus(cfg)
    out = _outdir(cfg)
    if corpus is None:
        corpus = _load(cfg)
    deduped = dedupe_applicants(corpus)

    apps = corpus.applications.values()
    missing_birth = sum(1 for a in deduped.applicants if a.birth_date is None)
    empty_reports = sum(1 for a in apps if not a.report_text)
    per_role = {role: sum(1 for a in apps if a.role == role) for role in ("associate", "full")}
    quality = {
        "_meta": cfg.json_meta(),
        "observation_year": corpus.observation_year,
        "applicant_records": len(corpus.applicants),
        "applicants_after_dedupe": len(deduped.applicants),
        "applications": len(corpus.applications),
        "applications_per_role": per_role,
        "disciplines_present": len({a.discipline for a in apps}),
        "rejects": len(corpus.rejects),
        "missing_birth_dates": missing_birth,
        "empty_reports": empty_reports,
    }
    write_json(out / "data_quality.json", quality)
    write_csv(
        out / "rejects.csv",
        ["file", "line", "field", "reason"],
        [(r.file, r.line, r.field, r.reason) for r in corpus.rejects],
        meta=cfg.meta_line(),
    )
    print(
        f"ingest: {quality['applications']} applications, "
        f"{quality['applicants_after_dedupe']} applicants "
        f"({quality['applicant_records']} records), "
        f"{quality['rejects']} rejects"
    )
    return 1 if corpus.rejects else 0


def cmd_indicators(cfg: RunConfig, corpus=None) -> int:
    """Per-application indicator values and optional threshold verdicts."""
    _require_corpus(cfg)
    out = _outdir(cfg)
    if corpus is None:
        corpus = _load(cfg)
    thresholds = load_thresholds(cfg.thresholds) if cfg.thresholds else None
    rows, problems = evaluate_corpus(corpus, thresholds)
    header = [
        "serial_id", "first_name", "last_name", "birth_date", "discipline",
        "role", "kind", "sa", "v1", "v2", "v3",
    ]
    if thresholds is not None:
        header += ["exceeded", "eligible"]
    write_csv(
        out / "indicators.csv",
        header,
        [[row[h] for h in header] for row in rows],
        meta=cfg.meta_line(),
    )
    write_csv(
        out / "indicator_problems.csv",
        ["serial_id", "reason"],
        problems,
        meta=cfg.meta_line(),
    )
    print(f"indicators: {len(rows)} applications, {len(problems)} without usable portfolios")
    return 0


def _report_groups(corpus):
    groups = sorted(
        {(a.discipline, a.role) for a in corpus.applications.values() if a.report_text}
    )
    return groups


def cmd_reports(cfg: RunConfig, corpus=None, dump_pairs=False) -> int:
    """Report length and similarity metrics with quadrant labels."""
    _require_corpus(cfg)
    out = _outdir(cfg)
    if corpus is None:
        corpus = _load(cfg)

    metrics, skipped = [], []
    for discipline, role in _report_groups(corpus):
        try:
            metrics.append(
                discipline_report_metrics(
                    corpus, discipline, role,
                    sample_size=cfg.sample_size, seed=cfg.seed, workers=cfg.workers,
                )
            )
        except ValueError as exc:
            skipped.append((discipline, role, str(exc)))

    labels = {}
    for role in ("associate", "full"):
        role_metrics = [m for m in metrics if m.role == role]
        if role_metrics:
            for code, label in quadrant_classify(role_metrics).items():
                labels[(code, role)] = label

    rows = []
    for m in sorted(metrics, key=lambda m: (m.discipline, m.role)):
        ls = m.length_summary
        rows.append([
            m.discipline, m.role, m.n_reports,
            ls.min, ls.q1, ls.median, ls.q3, ls.max,
            m.median_pairwise_distance, m.rd, labels[(m.discipline, m.role)],
        ])
    write_csv(
        out / "report_metrics.csv",
        ["discipline", "role", "n_reports", "len_min", "len_q1", "len_median",
         "len_q3", "len_max", "median_distance", "rd", "quadrant"],
        rows,
        meta=cfg.meta_line(),
    )
    write_csv(
        out / "reports_skipped.csv",
        ["discipline", "role", "reason"],
        skipped,
        meta=cfg.meta_line(),
    )
    flagged = [row for row in rows if row[10] == "short_similar"]
    write_csv(
        out / "flagged.csv",
        ["discipline", "role", "len_median", "median_distance"],
        [[r[0], r[1], r[5], r[8]] for r in flagged],
        meta=cfg.meta_line(),
    )
    if dump_pairs:
        _dump_pair_distances(cfg, corpus, out)
    print(f"reports: {len(rows)} discipline-role groups, {len(flagged)} flagged short_similar")
    return 0


def _dump_pair_distances(cfg, corpus, out):
    from .util import derive_seed

    rows = []
    for discipline, role in _report_groups(corpus):
        apps = [
            a for a in corpus.applications.values()
            if a.discipline == discipline and a.role == role and a.report_text
        ]
        apps.sort(key=lambda a: a.serial_id)
        if len(apps) < 2:
            continue
        sample = sample_reports(apps, n=cfg.sample_size,
                                seed=derive_seed(cfg.seed, discipline, role))
        texts = [normalize_text(a.report_text) for a in sample]
        for i in range(len(sample)):
            for j in range(i + 1, len(sample)):
                rows.append([
                    discipline, role, sample[i].serial_id, sample[j].serial_id,
                    normalized_levenshtein(texts[i], texts[j]),
                ])
    write_csv(
        out / "pair_distances.csv",
        ["discipline", "role", "serial_i", "serial_j", "distance"],
        rows,
        meta=cfg.meta_line(),
    )


def cmd_graph(cfg: RunConfig, corpus=None) -> int:
    """Co-qualification matrix, graph exports, hubs and cliques."""
    _require_corpus(cfg)
    out = _outdir(cfg)
    if corpus is None:
        corpus = _load(cfg)
    matrix = co_qualification_matrix(corpus.applications.values())
    codes = matrix.disciplines
    write_csv(
        out / "coqualification_matrix.csv",
        ["code", *codes],
        [[codes[i], *matrix.m[i]] for i in range(len(codes))],
        meta=cfg.meta_line(),
    )
    g = build_graph(matrix)
    export_graph(g, "graphml", out / "graph.graphml")
    export_graph(g, "dot", out / "graph.dot")
    export_graph(g, "edge_csv", out / "edges.csv")
    write_csv(out / "hubs.csv", ["discipline", "degree"], top_hubs(g, 10),
              meta=cfg.meta_line())
    cliques = maximal_cliques(g)
    write_csv(
        out / "cliques.csv",
        ["size", "members"],
        [(len(c), ";".join(c)) for c in cliques],
        meta=cfg.meta_line(),
    )
    write_csv(
        out / "clique_histogram.csv",
        ["size", "count"],
        sorted(clique_size_histogram(cliques).items()),
        meta=cfg.meta_line(),
    )
    print(f"graph: {len(g.nodes)} nodes, {len(g.edges)} edges, {len(cliques)} maximal cliques")
    return 0


def _median_report_lengths(corpus, role):
    by_sd = {}
    for app in corpus.applications.values():
        if app.role == role and app.report_text:
            by_sd.setdefault(app.discipline, []).append(word_count(app.report_text))
    counts = {}
    for app in corpus.applications.values():
        if app.role == role:
            counts[app.discipline] = counts.get(app.discipline, 0) + 1
    import numpy as np

    codes = sorted(by_sd)
    x = [counts[c] for c in codes]
    y = [float(np.median(by_sd[c])) for c in codes]
    return codes, x, y


def cmd_stats(cfg: RunConfig, corpus=None) -> int:
    """Spearman, probit and population-size statistics as JSON."""
    _require_corpus(cfg)
    out = _outdir(cfg)
    if corpus is None:
        corpus = _load(cfg)
    payload = {"_meta": cfg.json_meta()}

    serials = sorted(corpus.applications)
    if serials:
        tank = german_tank_estimate(max(serials), len(serials), cfg.level)
        payload["german_tank"] = {
            "m": tank.m, "k": tank.k, "point": tank.point,
            "ci_low": tank.ci_low, "ci_high": tank.ci_high, "level": cfg.level,
        }
    else:
        payload["german_tank"] = None

    # rank correlation between per-discipline application count and
    # median report length, one entry per role
    spearman = {}
    for role in ("associate", "full"):
        codes, x, y = _median_report_lengths(corpus, role)
        if len(codes) < 3:
            spearman[role] = None
            continue
        rho = spearman_rho(x, y)
        entry = {"rho": rho, "n_disciplines": len(codes), "ci": None}
        if rho is not None and len(codes) >= 10:
            ci = bootstrap_ci(x, y, spearman_rho, level=cfg.level,
                              b=cfg.bootstrap, seed=cfg.seed)
            entry["ci"] = {
                "low": ci.low, "high": ci.high,
                "replicates": ci.replicates, "skipped": ci.skipped,
            }
        spearman[role] = entry
    payload["spearman_length_vs_applications"] = spearman

    reference = dt.date(corpus.observation_year, 12, 31)
    probit = {}
    groups = {}
    for app in corpus.applications.values():
        if app.outcome not in ("qualified", "not_qualified"):
            continue
        birth_iso = app.applicant_key[2]
        if not birth_iso:
            continue
        birth = dt.date.fromisoformat(birth_iso)
        age = reference.year - birth.year
        if (reference.month, reference.day) < (birth.month, birth.day):
            age -= 1
        area = int(app.discipline[:2])
        groups.setdefault((area, app.role), []).append(
            (age, 1 if app.outcome == "qualified" else 0)
        )
    for area, role in sorted(groups):
        pairs = groups[(area, role)]
        key = f"{area:02d}_{role}"
        ages = [p[0] for p in pairs]
        outcomes = [p[1] for p in pairs]
        if len(pairs) < 10 or len(set(outcomes)) < 2:
            probit[key] = None
            continue
        fit = probit_fit(ages, outcomes, level=cfg.level)
        probit[key] = {
            "beta": fit.beta, "se": fit.se, "ci_low": fit.ci_low,
            "ci_high": fit.ci_high, "converged": fit.converged,
            "separated": fit.separated, "n": fit.n,
        }
    payload["probit_age_qualification"] = probit

    write_json(out / "stats.json", payload)
    print(f"stats: {len(probit)} probit groups, tank point "
          f"{payload['german_tank']['point'] if payload['german_tank'] else 'n/a'}")
    return 0


def cmd_tabulate(cfg: RunConfig, corpus=None) -> int:
    """Descriptive tables: publication types, titles, ages, multiplicity."""
    _require_corpus(cfg)
    out = _outdir(cfg)
    if corpus is None:
        corpus = _load(cfg)

    table = publication_type_table(corpus)
    write_csv(
        out / "publication_types.csv",
        ["main_category", "subtype", "name", "count", "percent", "rank"],
        [[MAIN_CATEGORY[c], c, SUBTYPE_NAMES[c], n, pct, rank]
         for c, n, pct, rank in table.rows],
        meta=f"{cfg.meta_line()} total={table.total}",
    )

    top = top_pubtypes_per_discipline(corpus)
    write_csv(
        out / "top_pubtypes.csv",
        ["discipline", "position", "subtype", "percent"],
        [[code, pos, sub, pct]
         for code in sorted(top)
         for pos, (sub, pct) in enumerate(top[code], start=1)],
        meta=cfg.meta_line(),
    )

    for role in ("associate", "full"):
        titles = titles_table(corpus, role)
        write_csv(
            out / f"titles_{role}.csv",
            ["title", "name", "count", "percent", "rank"],
            [[key, TITLE_CATEGORIES[key], n, pct, rank]
             for key, n, pct, rank in titles.rows],
            meta=f"{cfg.meta_line()} applications={titles.total}",
        )

    rows = []
    by_role, missing_role = age_distribution(corpus, "role")
    for group in sorted(by_role):
        s = by_role[group]
        rows.append(["role", group, s.min, s.q1, s.median, s.q3, s.max])
    by_area, _ = age_distribution(corpus, "area_role")
    for area, role in sorted(by_area):
        s = by_area[(area, role)]
        rows.append(["area_role", f"{area:02d}_{role}", s.min, s.q1, s.median, s.q3, s.max])
    write_csv(
        out / "ages.csv",
        ["grouping", "group", "min", "q1", "median", "q3", "max"],
        rows,
        meta=f"{cfg.meta_line()} missing_birth_dates={missing_role}",
    )

    write_csv(
        out / "multiplicity.csv",
        ["bucket", "applicants", "qualified"],
        multiplicity_table(corpus),
        meta=cfg.meta_line(),
    )
    print("tabulate: publication_types, top_pubtypes, titles, ages, multiplicity written")
    return 0


def cmd_synth(cfg: RunConfig, args) -> int:
    """Generate a synthetic corpus into --out."""
    out = Path(cfg.out)
    params = SynthParams(
        n_applications=args.applications,
        n_disciplines=args.disciplines,
        seed=cfg.seed,
        observation_year=cfg.observation_year or 2012,
        cloning=args.cloning,
        report_words=args.report_words,
        beta_age=args.beta,
        serial_headroom=args.headroom,
        multi_apply_rate=args.multi_apply,
        duplicate_cvs=args.duplicate_cvs,
    )
    corpus = generate_corpus(params)
    save_corpus(corpus, out, format=cfg.format)
    print(
        f"synth: wrote {len(corpus.applications)} applications, "
        f"{len(corpus.applicants)} applicant records to {out}"
    )
    return 0


def cmd_all(cfg: RunConfig) -> int:
    """Full pipeline into a single output directory with a metadata sidecar."""
    _require_corpus(cfg)
    out = _outdir(cfg)
    started = time.time()
    corpus = _load(cfg)
    status = cmd_ingest(cfg, corpus)
    cmd_indicators(cfg, corpus)
    cmd_reports(cfg, corpus)
    cmd_graph(cfg, corpus)
    cmd_stats(cfg, corpus)
    cmd_tabulate(cfg, corpus)
    metadata = {
        "config": {k: v for k, v in asdict(cfg).items()},
        "config_digest": cfg.digest(),
        "started_utc": dt.datetime.fromtimestamp(started, dt.timezone.utc).isoformat(),
        "duration_seconds": round(time.time() - started, 3),
        "python": platform.python_version(),
        "toolkit_version": __version__,
    }
    write_json(out / "run_metadata.json", metadata)
    print(f"all: pipeline finished in {metadata['duration_seconds']}s -> {out}")
    return status


# ---------------------------------------------------------------------------
# argument parsing

def _build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--corpus", help="corpus directory")
    shared.add_argument("--thresholds", help="thresholds CSV (discipline,role,t1,t2,t3)")
    shared.add_argument("--out", help="output directory (default: out)")
    shared.add_argument("--seed", type=int, help="root RNG seed (default: EVAL_SEED or 0)")
    shared.add_argument("--sample-size", dest="sample_size", type=int,
                        help="reports sampled per discipline (default 100)")
    shared.add_argument("--observation-year", dest="observation_year", type=int,
                        help="override the corpus observation year")
    shared.add_argument("--level", type=float, help="confidence level (default 0.95)")
    shared.add_argument("--bootstrap", type=int, help="bootstrap replicates (default 2000)")
    shared.add_argument("--format", choices=["jsonl", "csv"], help="corpus file format")
    shared.add_argument("--workers", type=int, help="processes for pairwise distances")
    shared.add_argument("--config", help="flat key = value config file")

    parser = argparse.ArgumentParser(
        prog="qualex",
        description="Batch analytics for national research-qualification corpora.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("ingest", parents=[shared], help="validate and summarize a corpus")
    sub.add_parser("indicators", parents=[shared], help="quantitative indicators per application")
    reports = sub.add_parser("reports", parents=[shared], help="report text metrics")
    reports.add_argument("--dump-pairs", action="store_true",
                         help="also write every sampled pairwise distance")
    sub.add_parser("graph", parents=[shared], help="co-qualification graph outputs")
    sub.add_parser("stats", parents=[shared], help="correlation, probit and population size")
    sub.add_parser("tabulate", parents=[shared], help="descriptive tables")
    synth = sub.add_parser("synth", parents=[shared], help="generate a synthetic corpus")
    synth.add_argument("--applications", type=int, default=200,
                       help="number of applications to generate")
    synth.add_argument("--disciplines", type=int, default=8,
                       help="number of disciplines to draw")
    synth.add_argument("--cloning", type=float, default=None,
                       help="report cloning intensity in [0,1] for all disciplines")
    synth.add_argument("--report-words", dest="report_words", type=int, default=None,
                       help="target report length in words for all disciplines")
    synth.add_argument("--beta", type=float, default=0.02,
                       help="age slope of the qualification probability")
    synth.add_argument("--headroom", type=float, default=1.2,
                       help="serial id population / application count ratio")
    synth.add_argument("--multi-apply", dest="multi_apply", type=float, default=0.25,
                       help="chance an applicant files another application")
    synth.add_argument("--duplicate-cvs", dest="duplicate_cvs", action="store_true",
                       help="repeat the applicant record once per application")
    sub.add_parser("all", parents=[shared], help="run the whole pipeline")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _resolve_config(args)
        if args.command == "ingest":
            return cmd_ingest(cfg)
        if args.command == "indicators":
            return cmd_indicators(cfg)
        if args.command == "reports":
            return cmd_reports(cfg, dump_pairs=args.dump_pairs)
        if args.command == "graph":
            return cmd_graph(cfg)
        if args.command == "stats":
            return cmd_stats(cfg)
        if args.command == "tabulate":
            return cmd_tabulate(cfg)
        if args.command == "synth":
            return cmd_synth(cfg, args)
        if args.command == "all":
            return cmd_all(cfg)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (FileNotFoundError, ValueError, json.JSONDecodeError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 1
    except Exception:  # pragma: no cover - defensive
        import traceback

        traceback.print_exc()
        return 3


if __name__ == "__main__":
    sys.exit(main())
