"""Descriptive tabulations: publication types, scientific titles, age
distributions, and application/qualification multiplicity."""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass

from .corpus import (
    MAIN_CATEGORY,
    PUBLICATION_CATEGORIES,
    ROLES,
    TITLE_CATEGORIES,
    Corpus,
    dedupe_applicants,
)
from .stats import FiveNumberSummary, five_number_summary

__all__ = [
    "FrequencyTable",
    "publication_type_table",
    "top_pubtypes_per_discipline",
    "titles_table",
    "age_distribution",
    "multiplicity_table",
]

MULTIPLICITY_BUCKETS = ("1", "2", "3", "4", "5", ">5")


@dataclass(frozen=True)
class FrequencyTable:
    """Rows of (category, count, percent, rank) plus the reference total.

    Ranks run 1..n by descending count with ties broken by category
    key.  `total` is whatever the percents refer to; for title tables it
    is an application count, so percents there do not sum to 100.
    """

    rows: tuple
    total: int


def _ranked(counts: dict, total: int) -> FrequencyTable:
    # ranks are positions 1..n in (count desc, category asc) order
    order = sorted(counts, key=lambda c: (-counts[c], c))
    rows = tuple(
        (cat, counts[cat], 100.0 * counts[cat] / total if total else 0.0, rank)
        for rank, cat in enumerate(order, start=1)
    )
    return FrequencyTable(rows, total)


def _portfolio_counts(corpus: Corpus):
    """Publication counts per subtype, one contribution per application.

    The same publication is counted once for every application whose
    applicant lists it, mirroring the duplicated CVs in the raw forms.
    """
    deduped = dedupe_applicants(corpus)
    counts: dict = {}
    for app in deduped.applications.values():
        person = deduped.applicant(app.applicant_key)
        for pub in person.publications:
            counts[pub.category] = counts.get(pub.category, 0) + 1
    return counts


def publication_type_table(corpus: Corpus) -> FrequencyTable:
    """Frequency of the 38 publication subtypes across all applications.

    Rows are grouped by main category (in form order) and by descending
    count within each group; ranks are global over subtypes.  Subtypes
    that never occur are omitted.
    """
    counts = _portfolio_counts(corpus)
    total = sum(counts.values())
    ranked = _ranked(counts, total)
    by_cat = {row[0]: row for row in ranked.rows}
    grouped = []
    for main in PUBLICATION_CATEGORIES:
        members = [c for c in PUBLICATION_CATEGORIES[main] if c in by_cat]
        members.sort(key=lambda c: (-by_cat[c][1], c))
        grouped.extend(by_cat[c] for c in members)
    return FrequencyTable(tuple(grouped), total)


def top_pubtypes_per_discipline(corpus: Corpus, k=4) -> dict:
    """The k most frequent publication subtypes per discipline.

    Returns {discipline: [(subtype, percent), ...]} with percents
    relative to that discipline's publication total; ties break by
    subtype key.
    """
    deduped = dedupe_applicants(corpus)
    per_sd: dict = {}
    for app in deduped.applications.values():
        person = deduped.applicant(app.applicant_key)
        counts = per_sd.setdefault(app.discipline, {})
        for pub in person.publications:
            counts[pub.category] = counts.get(pub.category, 0) + 1
    out = {}
    for code in sorted(per_sd):
        counts = per_sd[code]
        total = sum(counts.values())
        order = sorted(counts, key=lambda c: (-counts[c], c))[:k]
        out[code] = [(c, 100.0 * counts[c] / total) for c in order]
    return out


def titles_table(corpus: Corpus, role: str) -> FrequencyTable:
    """Applications of a role claiming at least one instance of each title.

    Percents are relative to the number of applications for the role,
    so they do not sum to 100.
    """
    if role not in ROLES:
        raise ValueError(f"unknown role {role!r}")
    apps = [a for a in corpus.applications.values() if a.role == role]
    counts = {key: 0 for key in TITLE_CATEGORIES}
    for app in apps:
        for key in set(app.titles):
            counts[key] += 1
    return _ranked(counts, len(apps))


def _age_at(birth: dt.date, reference: dt.date) -> int:
    years = reference.year - birth.year
    if (reference.month, reference.day) < (birth.month, birth.day):
        years -= 1
    return years


def age_distribution(corpus: Corpus, grouping="role", reference_date=None):
    """Five-number summaries of applicant ages, grouped.

    `grouping` is "role" or "area_role"; a person applying to several
    disciplines counts once per group.  Ages are whole years at
    `reference_date` (default: Dec 31 of the observation year).
    Returns (summaries, n_missing_birth_date); applicants without a
    birth date are excluded and counted.
    """
    if grouping not in ("role", "area_role"):
        raise ValueError(f"unknown grouping {grouping!r}")
    if reference_date is None:
        reference_date = dt.date(corpus.observation_year, 12, 31)
    members: dict = {}
    missing = set()
    for app in corpus.applications.values():
        birth_iso = app.applicant_key[2]
        if not birth_iso:
            missing.add(app.applicant_key)
            continue
        if grouping == "role":
            group = app.role
        else:
            group = (int(app.discipline[:2]), app.role)
        members.setdefault(group, {})[app.applicant_key] = dt.date.fromisoformat(birth_iso)
    summaries = {}
    for group in sorted(members):
        ages = [_age_at(b, reference_date) for b in members[group].values()]
        summaries[group] = five_number_summary(ages)
    return summaries, len(missing)


def multiplicity_table(corpus: Corpus):
    """How many applications people filed and how many qualifications they got.

    Rows are (bucket, applicants with that many applications, applicants
    with that many qualifications) for buckets 1..5 and ">5".  Applicant
    column sums to the number of distinct applicants, qualification
    column to the number of distinct qualified applicants.
    """
    n_apps: dict = {}
    n_quals: dict = {}
    for app in corpus.applications.values():
        n_apps[app.applicant_key] = n_apps.get(app.applicant_key, 0) + 1
        if app.outcome == "qualified":
            n_quals[app.applicant_key] = n_quals.get(app.applicant_key, 0) + 1

    def bucket(n: int) -> str:
        return str(n) if n <= 5 else ">5"

    rows = {label: [0, 0] for label in MULTIPLICITY_BUCKETS}
    for count in n_apps.values():
        rows[bucket(count)][0] += 1
    for count in n_quals.values():
        rows[bucket(count)][1] += 1
    return [(label, rows[label][0], rows[label][1]) for label in MULTIPLICITY_BUCKETS]
