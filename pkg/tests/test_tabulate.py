import datetime as dt

import pytest

from qualex.corpus import (
    Applicant,
    Application,
    Corpus,
    Publication,
    load_disciplines,
)
from qualex.tabulate import (
    MULTIPLICITY_BUCKETS,
    age_distribution,
    multiplicity_table,
    publication_type_table,
    titles_table,
    top_pubtypes_per_discipline,
)


def small_corpus():
    anna = Applicant(
        "Anna", "Rossi", dt.date(1970, 6, 15),
        (Publication("JRNL", 2005, 3), Publication("JRNL", 2007, 1),
         Publication("MONO", 2001), Publication("CHAP", 2008)),
    )
    luca = Applicant(
        "Luca", "Bianchi", dt.date(1962, 12, 31),
        (Publication("JRNL", 2009, 0), Publication("PROC", 2010, 0)),
    )
    mara = Applicant("Mara", "Verdi", None, (Publication("MONO", 1999),))
    apps = {
        1: Application(1, anna.key, "01/A1", "associate", "qualified",
                       titles=("ABROAD", "AWARD")),
        2: Application(2, anna.key, "01/A2", "associate", "not_qualified",
                       titles=("ABROAD",)),
        3: Application(3, luca.key, "01/A1", "full", "qualified",
                       titles=("DIRECTION",)),
        4: Application(4, mara.key, "01/A2", "full", "qualified"),
    }
    return Corpus(
        applicants=[anna, luca, mara],
        applications=apps,
        disciplines=load_disciplines(),
        observation_year=2012,
        top_journal_lists={},
        rejects=[],
    )


def test_publication_type_table_counts_once_per_application():
    table = publication_type_table(small_corpus())
    counts = {c: n for c, n, _, _ in table.rows}
    # anna's portfolio counts twice (two applications), luca's and mara's once
    assert counts["JRNL"] == 2 * 2 + 1
    assert counts["MONO"] == 2 + 1
    assert counts["CHAP"] == 2
    assert counts["PROC"] == 1
    assert table.total == sum(counts.values())
    percents = [p for _, _, p, _ in table.rows]
    assert sum(percents) == pytest.approx(100.0)


def test_publication_type_table_rank_and_zero_rows():
    table = publication_type_table(small_corpus())
    by_rank = sorted(table.rows, key=lambda r: r[3])
    assert by_rank[0][0] == "JRNL"
    assert [r[3] for r in by_rank] == list(range(1, len(table.rows) + 1))
    assert all(n > 0 for _, n, _, _ in table.rows)  # absent subtypes omitted


def test_top_pubtypes_per_discipline():
    top = top_pubtypes_per_discipline(small_corpus(), k=2)
    assert set(top) == {"01/A1", "01/A2"}
    # 01/A1 sees anna + luca: JRNL 3, MONO 1, CHAP 1, PROC 1
    first = top["01/A1"][0]
    assert first[0] == "JRNL"
    assert first[1] == pytest.approx(100.0 * 3 / 6)
    assert len(top["01/A1"]) == 2


def test_titles_table_percent_base_is_role_applications():
    table = titles_table(small_corpus(), "associate")
    counts = {t: n for t, n, _, _ in table.rows}
    assert counts["ABROAD"] == 2
    assert counts["AWARD"] == 1
    assert table.total == 2
    pct = {t: p for t, _, p, _ in table.rows}
    assert pct["ABROAD"] == pytest.approx(100.0)
    full = titles_table(small_corpus(), "full")
    full_counts = {t: n for t, n, _, _ in full.rows}
    assert len(full_counts) == 11  # every category listed, zeros included
    assert full_counts["DIRECTION"] == 1
    assert full_counts["ABROAD"] == 0


def test_age_distribution_by_role_and_missing():
    summaries, missing = age_distribution(small_corpus(), "role")
    assert missing == 1  # mara has no birth date
    assert summaries["associate"].median == 42  # anna at end of 2012
    assert summaries["full"].median == 50      # luca born 1962-12-31
    by_area, _ = age_distribution(small_corpus(), "area_role")
    assert set(by_area) == {(1, "associate"), (1, "full")}


def test_age_distribution_counts_person_once_per_group():
    corpus = small_corpus()
    summaries, _ = age_distribution(corpus, "role")
    # anna applied twice as associate but contributes a single age
    assert summaries["associate"].min == summaries["associate"].max == 42


def test_age_distribution_respects_reference_date():
    summaries, _ = age_distribution(small_corpus(), "role",
                                    reference_date=dt.date(2012, 6, 1))
    assert summaries["associate"].median == 41  # birthday not yet reached


def test_age_distribution_rejects_unknown_grouping():
    with pytest.raises(ValueError):
        age_distribution(small_corpus(), "macro_sector")


def test_multiplicity_table_buckets():
    rows = multiplicity_table(small_corpus())
    assert [r[0] for r in rows] == list(MULTIPLICITY_BUCKETS)
    table = {r[0]: (r[1], r[2]) for r in rows}
    assert table["1"] == (2, 3)  # luca, mara applied once; all three have 1 qualification
    assert table["2"] == (1, 0)  # anna applied twice, qualified once
    assert sum(n for n, _ in table.values()) == 3


def test_multiplicity_table_overflow_bucket():
    person = Applicant("Gigi", "Conti", None, ())
    codes = ["01/A1", "01/A2", "01/A3", "01/B1", "02/A1", "02/B1", "02/B2"]
    apps = {
        i + 1: Application(i + 1, person.key, code, "full", "qualified")
        for i, code in enumerate(codes)
    }
    corpus = Corpus([person], apps, load_disciplines(), 2012, {}, [])
    rows = {r[0]: (r[1], r[2]) for r in multiplicity_table(corpus)}
    assert rows[">5"] == (1, 1)
