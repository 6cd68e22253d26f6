"""Quantitative indicators and the threshold eligibility rule.

Two indicator triples exist.  Bibliometric disciplines use B.1 (journal
papers), B.2 (citations) and B.3 (contemporary h-index); the others use
N.1 (books), N.2 (journal papers plus book chapters) and N.3 (papers in
top journals).  Counts are normalized by scientific age: raw counts are
multiplied by 10/SA, citations are divided by SA.  An application is
eligible when its values strictly exceed at least two thresholds
(bibliometric) or at least one (non-bibliometric).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

from .corpus import ROLES, Applicant, Corpus, Discipline, dedupe_applicants

__all__ = [
    "IndicatorSet",
    "Thresholds",
    "ThresholdVerdict",
    "IndicatorError",
    "scientific_age",
    "normalize_count",
    "normalize_citations",
    "citation_weight",
    "contemporary_h_index",
    "compute_indicator_set",
    "meets_thresholds",
    "load_thresholds",
    "evaluate_corpus",
]


class IndicatorError(ValueError):
    """Raised when a portfolio cannot support the requested indicators."""


@dataclass(frozen=True)
class IndicatorSet:
    """The three indicator values for one application.

    `sa` records the scientific age used for normalization and
    `no_year_portfolio` flags portfolios where no publication carried a
    year, in which case SA falls back to its floor of 10.
    """

    kind: str  # "bibliometric" or "non_bibliometric"
    v1: float
    v2: float
    v3: float
    sa: int
    no_year_portfolio: bool = False


@dataclass(frozen=True)
class Thresholds:
    discipline: str
    role: str
    t1: float
    t2: float
    t3: float


@dataclass(frozen=True)
class ThresholdVerdict:
    eligible: bool
    exceeded: int


def scientific_age(first_pub_year: int, observation_year: int) -> int:
    """Years since the first publication, floored at 10."""
    if first_pub_year > observation_year:
        raise ValueError(
            f"first publication year {first_pub_year} is after observation year {observation_year}"
        )
    return max(10, observation_year - first_pub_year + 1)


def normalize_count(raw: int, sa: int) -> float:
    """Scale a raw count by 10/SA (applies to B.1, N.1, N.2, N.3)."""
    return raw * 10.0 / sa


def normalize_citations(raw_citations: int, sa: int) -> float:
    """Divide the raw citation total by the scientific age (B.2)."""
    return raw_citations / sa


def citation_weight(citations: int, pub_year: int, observation_year: int) -> float:
    """Age-normalized citation weight of a single paper.

    Recent papers get more weight per citation: a paper published in the
    observation year counts each citation four times.
    """
    if pub_year > observation_year:
        raise ValueError(
            f"publication year {pub_year} is after observation year {observation_year}"
        )
    return 4.0 / (observation_year - pub_year + 1) * citations


def contemporary_h_index(papers, observation_year: int) -> int:
    """Largest h such that at least h papers have citation weight >= h.

    Weights stay real-valued; only h is an integer.  Papers must carry a
    citation count; papers without a year are skipped because their
    weight is undefined.
    """
    weights = []
    for paper in papers:
        if paper.citations is None:
            raise IndicatorError("contemporary h-index needs a citation count for every paper")
        if paper.pub_year is None:
            continue
        weights.append(citation_weight(paper.citations, paper.pub_year, observation_year))
    weights.sort(reverse=True)
    h = 0
    for rank, weight in enumerate(weights, start=1):
        if weight >= rank:
            h = rank
        else:
            break
    return h


def _portfolio_age(publications, observation_year):
    years = [p.pub_year for p in publications if p.pub_year is not None]
    if not years:
        return 10, True
    return scientific_age(min(years), observation_year), False


def _is_top_journal(pub, discipline_code, top_journal_lists):
    if pub.category != "JRNL":
        return False
    if pub.is_top_journal:
        return True
    venues = top_journal_lists.get(discipline_code) if top_journal_lists else None
    return venues is not None and pub.venue in venues


def compute_indicator_set(
    applicant: Applicant,
    discipline: Discipline,
    observation_year: int,
    top_journal_lists=None,
) -> IndicatorSet:
    """Compute the indicator triple for one applicant in one discipline.

    Raises IndicatorError for a bibliometric discipline whose portfolio
    carries no citation counts at all; a partial portfolio is accepted
    and the papers with counts are used.
    """
    pubs = applicant.publications
    sa, no_year = _portfolio_age(pubs, observation_year)
    n_journal = sum(1 for p in pubs if p.category == "JRNL")

    if discipline.bibliometric:
        cited = [p for p in pubs if p.citations is not None]
        if not cited:
            raise IndicatorError(
                f"no citation data for applicant {applicant.key!r} "
                f"in bibliometric discipline {discipline.code}"
            )
        v1 = normalize_count(n_journal, sa)
        v2 = normalize_citations(sum(p.citations for p in cited), sa)
        v3 = contemporary_h_index(cited, observation_year)
        return IndicatorSet("bibliometric", v1, v2, float(v3), sa, no_year)

    n_books = sum(1 for p in pubs if p.category == "MONO")
    n_chapters = sum(1 for p in pubs if p.category == "CHAP")
    n_top = sum(1 for p in pubs if _is_top_journal(p, discipline.code, top_journal_lists))
    v1 = normalize_count(n_books, sa)
    v2 = normalize_count(n_journal + n_chapters, sa)
    v3 = normalize_count(n_top, sa)
    return IndicatorSet("non_bibliometric", v1, v2, v3, sa, no_year)


def meets_thresholds(ind: IndicatorSet, th: Thresholds) -> ThresholdVerdict:
    """Apply the strict-exceedance rule.

    Bibliometric applications must strictly exceed at least two of the
    three thresholds, non-bibliometric ones at least one.
    """
    exceeded = sum(
        1 for v, t in ((ind.v1, th.t1), (ind.v2, th.t2), (ind.v3, th.t3)) if v > t
    )
    needed = 2 if ind.kind == "bibliometric" else 1
    return ThresholdVerdict(exceeded >= needed, exceeded)


def load_thresholds(path) -> dict:
    """Read a thresholds CSV with columns discipline, role, t1, t2, t3.

    Returns a mapping (discipline, role) -> Thresholds.
    """
    table = {}
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        required = {"discipline", "role", "t1", "t2", "t3"}
        if reader.fieldnames is None or not required.issubset(reader.fieldnames):
            raise ValueError(f"thresholds file {path} must have columns {sorted(required)}")
        for row in reader:
            role = row["role"]
            if role not in ROLES:
                raise ValueError(f"{path}:{reader.line_num}: unknown role {role!r}")
            values = []
            for col in ("t1", "t2", "t3"):
                t = float(row[col])
                if t < 0:
                    raise ValueError(f"{path}:{reader.line_num}: negative threshold {col}")
                values.append(t)
            key = (row["discipline"], role)
            table[key] = Thresholds(row["discipline"], role, *values)
    return table


def evaluate_corpus(corpus: Corpus, thresholds=None):
    """Indicator rows for every application, in serial id order.

    Returns (rows, problems).  Each row is a dict ready for CSV or JSON
    output; applications whose portfolio cannot support the indicators
    land in `problems` instead, as (serial_id, reason).
    """
    deduped = dedupe_applicants(corpus)
    rows, problems = [], []
    for serial in sorted(deduped.applications):
        app = deduped.applications[serial]
        person = deduped.applicant(app.applicant_key)
        discipline = deduped.disciplines[app.discipline]
        try:
            ind = compute_indicator_set(
                person, discipline, deduped.observation_year, deduped.top_journal_lists
            )
        except IndicatorError as exc:
            problems.append((serial, str(exc)))
            continue
        row = {
            "serial_id": serial,
            "first_name": person.first_name,
            "last_name": person.last_name,
            "birth_date": app.applicant_key[2],
            "discipline": app.discipline,
            "role": app.role,
            "kind": ind.kind,
            "sa": ind.sa,
            "v1": ind.v1,
            "v2": ind.v2,
            "v3": ind.v3,
        }
        if thresholds is not None:
            th = thresholds.get((app.discipline, app.role))
            if th is None:
                row["exceeded"] = None
                row["eligible"] = None
            else:
                verdict = meets_thresholds(ind, th)
                row["exceeded"] = verdict.exceeded
                row["eligible"] = verdict.eligible
        rows.append(row)
    return rows, problems
