"""Data model and corpus ingestion.

The toolkit analyzes a national qualification exercise in which each
candidate submits one application per (discipline, role) pair and every
application carries the candidate's publication portfolio, claimed
scientific titles, and the panel's final report text.  This module
defines the record types, loads and validates corpus files, and provides
the two text primitives (normalization and word counting) shared by the
analysis modules.

Corpus files live in a directory, either as JSON lines::

    applicants.jsonl     one applicant record per line
    applications.jsonl   one application record per line
    top_journals.jsonl   optional, {"discipline": ..., "venues": [...]}
    meta.json            optional, {"observation_year": 2012}

or as CSV (``format="csv"``) with files ``applicants.csv``,
``publications.csv``, ``applications.csv`` and optional
``top_journals.csv``; column orders are documented in `save_corpus`.
"""

from __future__ import annotations

import csv
import datetime as dt
import json
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

__all__ = [
    "AREAS",
    "PUBLICATION_CATEGORIES",
    "SUBTYPE_NAMES",
    "MAIN_CATEGORY",
    "TITLE_CATEGORIES",
    "ROLES",
    "OUTCOMES",
    "Publication",
    "Discipline",
    "Applicant",
    "Application",
    "Reject",
    "Corpus",
    "load_disciplines",
    "parse_discipline_code",
    "load_corpus",
    "save_corpus",
    "dedupe_applicants",
    "normalize_text",
    "word_count",
]

# The fourteen scientific areas.
AREAS = {
    1: ("MCS", "Mathematics and Computer Sciences"),
    2: ("PHY", "Physics"),
    3: ("CHE", "Chemistry"),
    4: ("EAS", "Earth Sciences"),
    5: ("BIO", "Biology"),
    6: ("MED", "Medical Sciences"),
    7: ("AVM", "Agricultural Sciences and Veterinary Medicine"),
    8: ("CEA", "Civil Engineering and Architecture"),
    9: ("IIE", "Industrial and Information Engineering"),
    10: ("APL", "Antiquities, Philology, Literary Studies, Art History"),
    11: ("HPP", "History, Philosophy, Pedagogy and Psychology"),
    12: ("LAW", "Law"),
    13: ("ECS", "Economics and Statistics"),
    14: ("PSS", "Political and Social Sciences"),
}

# The 38 publication subtypes grouped into the seven main categories of
# the application forms.
PUBLICATION_CATEGORIES = {
    "journal_contribution": ("JRNL", "ABSJ", "REVJ", "VERD", "TRJ", "BIB"),
    "volume_contribution": ("CHAP", "DICT", "CAT", "PREF", "TRV", "INTRO", "REVV"),
    "book": ("MONO", "TRB", "BIBE", "CRIT", "COMM", "SRC", "IDX", "CONC"),
    "proceedings_contribution": ("PROC", "ABSP", "POS"),
    "patent": ("PAT",),
    "curatorship": ("CUR",),
    "other": ("OP", "COM", "DB", "EXH", "SW", "EXP", "CH", "DRAW", "DES", "PERF", "AF", "ART"),
}

SUBTYPE_NAMES = {
    "JRNL": "Journal paper",
    "ABSJ": "Abstract in journal",
    "REVJ": "Review in journal",
    "VERD": "Comment of verdict",
    "TRJ": "Translation in journal",
    "BIB": "Bibliography",
    "CHAP": "Book chapter",
    "DICT": "Dictionary or encyclopedia entry",
    "CAT": "Catalogue entry",
    "PREF": "Preface/postface",
    "TRV": "Translation in volume",
    "INTRO": "Introduction",
    "REVV": "Review in volume",
    "MONO": "Monograph or scientific treatise",
    "TRB": "Book translation",
    "BIBE": "Bibliographic entry",
    "CRIT": "Critical edition of books/archaeological excavation",
    "COMM": "Scientific commentary",
    "SRC": "Publication of new literary or archivistic document",
    "IDX": "Index",
    "CONC": "Concordance",
    "PROC": "Paper in proceedings",
    "ABSP": "Abstract in proceedings",
    "POS": "Poster",
    "PAT": "Patent",
    "CUR": "Curatorship",
    "OP": "Other publication types",
    "COM": "Composition",
    "DB": "Database",
    "EXH": "Exhibition",
    "SW": "Software",
    "EXP": "Exposition",
    "CH": "Chart",
    "DRAW": "Drawing",
    "DES": "Design",
    "PERF": "Performance",
    "AF": "Artifact",
    "ART": "Art prototype",
}

MAIN_CATEGORY = {
    sub: main for main, subs in PUBLICATION_CATEGORIES.items() for sub in subs
}

# The eleven scientific-title categories that an application may claim.
TITLE_CATEGORIES = {
    "OTHER": "Other titles",
    "PROJ_PART": "Participation to research projects",
    "ABROAD": "Research or teaching fellowships abroad",
    "AWARD": "Scientific awards",
    "EDBOARD": "Membership of editorial board of journals",
    "FOREIGN": "Involvement with foreign research institutes",
    "TECH_TRANSFER": "Technology transfer activities",
    "DIRECTION": "Direction of research institutes",
    "ACADEMY": "Membership of scientific academies",
    "PROJ_COORD": "Coordination of research projects",
    "EDITOR_CHIEF": "Editor in chief of journals, encyclopedias, or treatises",
}

ROLES = ("associate", "full")
OUTCOMES = ("qualified", "not_qualified", "unknown")

_CODE_RE = re.compile(r"(0[1-9]|1[0-4])/([A-Z])(\d)")


@dataclass(frozen=True)
class Publication:
    """One entry of a publication portfolio.

    `citations` is the count received up to the observation year; it is
    optional and only required for bibliometric indicator runs.  `venue`
    optionally names the publishing venue so that journal papers can be
    matched against per-discipline top-journal lists.
    """

    category: str
    pub_year: int | None = None
    citations: int | None = None
    is_top_journal: bool = False
    venue: str | None = None


@dataclass(frozen=True)
class Discipline:
    code: str
    area_id: int
    macro_sector: str
    bibliometric: bool
    name: str


@dataclass(frozen=True)
class Applicant:
    """A person, identified by the (first name, last name, birth date) triple."""

    first_name: str
    last_name: str
    birth_date: dt.date | None
    publications: tuple[Publication, ...] = ()

    @property
    def key(self):
        iso = self.birth_date.isoformat() if self.birth_date else ""
        return (self.first_name, self.last_name, iso)


@dataclass(frozen=True)
class Application:
    """One (applicant, discipline, role) submission."""

    serial_id: int
    applicant_key: tuple
    discipline: str
    role: str
    outcome: str
    report_text: str = ""
    titles: tuple = ()


@dataclass(frozen=True)
class Reject:
    """A record that failed validation, with its location and reason."""

    file: str
    line: int
    field: str
    reason: str


@dataclass
class Corpus:
    """An immutable-after-load collection of applicants and applications.

    `applicants` is an ordered list and may contain repeated identity
    triples straight after loading (the raw forms repeat the CV once per
    application); run `dedupe_applicants` to merge them.  `applications`
    is keyed by serial id.
    """

    applicants: list = field(default_factory=list)
    applications: dict = field(default_factory=dict)
    disciplines: dict = field(default_factory=dict)
    observation_year: int = 2012
    top_journal_lists: dict = field(default_factory=dict)
    rejects: list = field(default_factory=list)
    _index: dict | None = field(default=None, compare=False, repr=False)

    def applicant(self, key) -> Applicant:
        """Look up an applicant by identity triple.

        Raises ValueError if the corpus still holds duplicate triples.
        """
        if self._index is None:
            index = {}
            for person in self.applicants:
                if person.key in index:
                    raise ValueError(
                        f"duplicate applicant key {person.key!r}; "
                        "run dedupe_applicants first"
                    )
                index[person.key] = person
            self._index = index
        return self._index[key]

    def applicant_keys(self) -> set:
        return {person.key for person in self.applicants}


def parse_discipline_code(code: str):
    """Split a well-formed AA/MC discipline code into (area_id, macro, digit)."""
    m = _CODE_RE.fullmatch(code)
    if m is None:
        raise ValueError(f"malformed discipline code {code!r}")
    return int(m.group(1)), m.group(2), int(m.group(3))


_DISCIPLINES = None


def load_disciplines() -> dict:
    """Return the bundled reference table of all 184 disciplines, by code."""
    global _DISCIPLINES
    if _DISCIPLINES is None:
        table = {}
        path = resources.files("qualex").joinpath("data/disciplines.csv")
        with path.open(encoding="utf-8") as fh:
            for row in csv.DictReader(fh):
                table[row["code"]] = Discipline(
                    code=row["code"],
                    area_id=int(row["area_id"]),
                    macro_sector=row["macro_sector"],
                    bibliometric=row["bibliometric"] == "1",
                    name=row["name"],
                )
        _DISCIPLINES = table
    return dict(_DISCIPLINES)


def normalize_text(raw: str) -> str:
    """Lowercase and strip every non-alphanumeric character.

    Alphanumeric means Unicode general categories Letter and Number, so
    accented words survive while whitespace and punctuation do not.
    """
    return "".join(c for c in raw.lower() if c.isalnum())


def word_count(raw: str) -> int:
    """Number of maximal non-whitespace runs in the raw (unnormalized) text."""
    return len(raw.split())


# ---------------------------------------------------------------------------
# record validation shared by both input formats

def _parse_date(value, where, rejects, file, line):
    if value in (None, ""):
        return None, True
    try:
        return dt.date.fromisoformat(value), True
    except (TypeError, ValueError):
        rejects.append(Reject(file, line, where, f"invalid date {value!r}"))
        return None, False


def _parse_optional_int(value, *, minimum=None):
    if value in (None, ""):
        return None, True
    if isinstance(value, (bool, float)):
        return None, False
    try:
        parsed = int(value)
    except (TypeError, ValueError):
        return None, False
    if minimum is not None and parsed < minimum:
        return None, False
    return parsed, True


def _make_publication(rec, observation_year, file, line, rejects):
    category = rec.get("category")
    if category not in SUBTYPE_NAMES:
        rejects.append(Reject(file, line, "category", f"unknown publication type {category!r}"))
        return None
    pub_year, ok = _parse_optional_int(rec.get("pub_year"))
    if not ok:
        rejects.append(Reject(file, line, "pub_year", f"invalid year {rec.get('pub_year')!r}"))
        return None
    if pub_year is not None and pub_year > observation_year:
        rejects.append(Reject(file, line, "pub_year", f"publication year {pub_year} after observation year {observation_year}"))
        return None
    citations, ok = _parse_optional_int(rec.get("citations"), minimum=0)
    if not ok:
        rejects.append(Reject(file, line, "citations", f"invalid citation count {rec.get('citations')!r}"))
        return None
    venue = rec.get("venue")
    if venue == "":
        venue = None
    return Publication(
        category=category,
        pub_year=pub_year,
        citations=citations,
        is_top_journal=bool(rec.get("is_top_journal", False)),
        venue=venue,
    )


def _make_applicant(rec, observation_year, file, line, rejects):
    first = rec.get("first_name")
    last = rec.get("last_name")
    if not first or not isinstance(first, str):
        rejects.append(Reject(file, line, "first_name", "missing first name"))
        return None
    if not last or not isinstance(last, str):
        rejects.append(Reject(file, line, "last_name", "missing last name"))
        return None
    birth, ok = _parse_date(rec.get("birth_date"), "birth_date", rejects, file, line)
    if not ok:
        return None
    pubs = []
    for pub_rec in rec.get("publications", ()):
        pub = _make_publication(pub_rec, observation_year, file, line, rejects)
        if pub is None:
            return None
        pubs.append(pub)
    return Applicant(first, last, birth, tuple(pubs))


def _make_application(rec, disciplines, known_keys, seen_serials, seen_triples,
                      file, line, rejects):
    serial, ok = _parse_optional_int(rec.get("serial_id"), minimum=1)
    if not ok or serial is None:
        rejects.append(Reject(file, line, "serial_id", f"invalid serial id {rec.get('serial_id')!r}"))
        return None
    if serial in seen_serials:
        rejects.append(Reject(file, line, "serial_id", f"duplicate serial id {serial}"))
        return None
    first = rec.get("first_name") or ""
    last = rec.get("last_name") or ""
    birth, ok = _parse_date(rec.get("birth_date"), "birth_date", rejects, file, line)
    if not ok:
        return None
    key = (first, last, birth.isoformat() if birth else "")
    if key not in known_keys:
        rejects.append(Reject(file, line, "applicant", f"unknown applicant {key!r}"))
        return None
    code = rec.get("discipline")
    if code not in disciplines:
        rejects.append(Reject(file, line, "discipline", f"unknown discipline {code!r}"))
        return None
    role = rec.get("role")
    if role not in ROLES:
        rejects.append(Reject(file, line, "role", f"unknown role {role!r}"))
        return None
    outcome = rec.get("outcome", "unknown")
    if outcome not in OUTCOMES:
        rejects.append(Reject(file, line, "outcome", f"unknown outcome {outcome!r}"))
        return None
    triple = (key, code, role)
    if triple in seen_triples:
        rejects.append(Reject(file, line, "application", f"duplicate application {triple!r}"))
        return None
    raw_titles = rec.get("titles", ())
    if not isinstance(raw_titles, (list, tuple)):
        rejects.append(Reject(file, line, "titles", "titles must be a list"))
        return None
    titles = tuple(raw_titles)
    bad = [t for t in titles if not isinstance(t, str) or t not in TITLE_CATEGORIES]
    if bad:
        rejects.append(Reject(file, line, "titles", f"unknown title categories {bad!r}"))
        return None
    report = rec.get("report_text", "")
    if report is None:
        report = ""
    if not isinstance(report, str):
        rejects.append(Reject(file, line, "report_text", "report text must be a string"))
        return None
    seen_serials.add(serial)
    seen_triples.add(triple)
    return Application(serial, key, code, role, outcome, report, titles)


# ---------------------------------------------------------------------------
# loading

def _iter_jsonl(path, rejects):
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                rejects.append(Reject(path.name, line_no, "-", f"invalid JSON: {exc.msg}"))
                continue
            if not isinstance(rec, dict):
                rejects.append(Reject(path.name, line_no, "-", "record is not an object"))
                continue
            yield line_no, rec


def _read_meta(directory):
    meta_path = directory / "meta.json"
    if meta_path.exists():
        with open(meta_path, encoding="utf-8") as fh:
            meta = json.load(fh)
        return int(meta.get("observation_year", 2012))
    return 2012


def load_corpus(path, format="jsonl", observation_year=None) -> Corpus:
    """Load and validate a corpus directory.

    Records that fail validation are collected in ``corpus.rejects``
    with file name and line number instead of aborting the load.  An
    explicit `observation_year` overrides the one in ``meta.json``.
    """
    directory = Path(path)
    if not directory.is_dir():
        raise FileNotFoundError(f"corpus directory not found: {directory}")
    if format not in ("jsonl", "csv"):
        raise ValueError(f"unknown corpus format {format!r}")

    disciplines = load_disciplines()
    obs_year = observation_year if observation_year is not None else _read_meta(directory)
    rejects = []

    if format == "jsonl":
        applicants = _load_applicants_jsonl(directory, obs_year, rejects)
        applications = _load_applications_jsonl(directory, disciplines, applicants, rejects)
        top_lists = _load_top_journals_jsonl(directory, disciplines, rejects)
    else:
        applicants = _load_applicants_csv(directory, obs_year, rejects)
        applications = _load_applications_csv(directory, disciplines, applicants, rejects)
        top_lists = _load_top_journals_csv(directory, disciplines, rejects)

    return Corpus(
        applicants=applicants,
        applications=applications,
        disciplines=disciplines,
        observation_year=obs_year,
        top_journal_lists=top_lists,
        rejects=rejects,
    )


def _load_applicants_jsonl(directory, obs_year, rejects):
    path = directory / "applicants.jsonl"
    if not path.exists():
        raise FileNotFoundError(f"missing {path}")
    applicants = []
    for line_no, rec in _iter_jsonl(path, rejects):
        person = _make_applicant(rec, obs_year, path.name, line_no, rejects)
        if person is not None:
            applicants.append(person)
    return applicants


def _load_applications_jsonl(directory, disciplines, applicants, rejects):
    path = directory / "applications.jsonl"
    if not path.exists():
        raise FileNotFoundError(f"missing {path}")
    known = {person.key for person in applicants}
    applications = {}
    seen_serials, seen_triples = set(), set()
    for line_no, rec in _iter_jsonl(path, rejects):
        app = _make_application(rec, disciplines, known, seen_serials, seen_triples,
                                path.name, line_no, rejects)
        if app is not None:
            applications[app.serial_id] = app
    return applications


def _load_top_journals_jsonl(directory, disciplines, rejects):
    path = directory / "top_journals.jsonl"
    top_lists = {}
    if not path.exists():
        return top_lists
    for line_no, rec in _iter_jsonl(path, rejects):
        code = rec.get("discipline")
        if code not in disciplines:
            rejects.append(Reject(path.name, line_no, "discipline", f"unknown discipline {code!r}"))
            continue
        venues = rec.get("venues", ())
        top_lists[code] = frozenset(str(v) for v in venues)
    return top_lists


def _read_csv_rows(path, rejects):
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        for row in reader:
            yield reader.line_num, row


def _load_applicants_csv(directory, obs_year, rejects):
    people_path = directory / "applicants.csv"
    pubs_path = directory / "publications.csv"
    if not people_path.exists():
        raise FileNotFoundError(f"missing {people_path}")
    pubs_by_key = {}
    if pubs_path.exists():
        for line_no, row in _read_csv_rows(pubs_path, rejects):
            rec = {
                "category": row.get("category"),
                "pub_year": row.get("pub_year"),
                "citations": row.get("citations"),
                "is_top_journal": row.get("is_top_journal") == "1",
                "venue": row.get("venue"),
            }
            pub = _make_publication(rec, obs_year, pubs_path.name, line_no, rejects)
            if pub is None:
                continue
            key = (row.get("first_name", ""), row.get("last_name", ""), row.get("birth_date", ""))
            pubs_by_key.setdefault(key, []).append(pub)
    applicants = []
    seen = set()
    for line_no, row in _read_csv_rows(people_path, rejects):
        rec = {
            "first_name": row.get("first_name"),
            "last_name": row.get("last_name"),
            "birth_date": row.get("birth_date"),
            "publications": (),
        }
        person = _make_applicant(rec, obs_year, people_path.name, line_no, rejects)
        if person is None:
            continue
        # CSV cannot attribute portfolios to one of several identical triples,
        # so repeated applicant rows are rejected in this format.
        if person.key in seen:
            rejects.append(Reject(people_path.name, line_no, "applicant", f"duplicate applicant {person.key!r}"))
            continue
        seen.add(person.key)
        pubs = tuple(pubs_by_key.get(person.key, ()))
        applicants.append(Applicant(person.first_name, person.last_name, person.birth_date, pubs))
    return applicants


def _load_applications_csv(directory, disciplines, applicants, rejects):
    path = directory / "applications.csv"
    if not path.exists():
        raise FileNotFoundError(f"missing {path}")
    known = {person.key for person in applicants}
    applications = {}
    seen_serials, seen_triples = set(), set()
    for line_no, row in _read_csv_rows(path, rejects):
        titles = row.get("titles", "")
        rec = {
            "serial_id": row.get("serial_id"),
            "first_name": row.get("first_name"),
            "last_name": row.get("last_name"),
            "birth_date": row.get("birth_date"),
            "discipline": row.get("discipline"),
            "role": row.get("role"),
            "outcome": row.get("outcome") or "unknown",
            "report_text": row.get("report_text", ""),
            "titles": tuple(t for t in titles.split(";") if t) if titles else (),
        }
        app = _make_application(rec, disciplines, known, seen_serials, seen_triples,
                                path.name, line_no, rejects)
        if app is not None:
            applications[app.serial_id] = app
    return applications


def _load_top_journals_csv(directory, disciplines, rejects):
    path = directory / "top_journals.csv"
    top_lists = {}
    if not path.exists():
        return top_lists
    staging = {}
    for line_no, row in _read_csv_rows(path, rejects):
        code = row.get("discipline")
        if code not in disciplines:
            rejects.append(Reject(path.name, line_no, "discipline", f"unknown discipline {code!r}"))
            continue
        staging.setdefault(code, set()).add(row.get("venue", ""))
    for code, venues in staging.items():
        top_lists[code] = frozenset(venues)
    return top_lists


# ---------------------------------------------------------------------------
# saving

def _applicant_record(person: Applicant) -> dict:
    return {
        "first_name": person.first_name,
        "last_name": person.last_name,
        "birth_date": person.birth_date.isoformat() if person.birth_date else None,
        "publications": [
            {
                "category": p.category,
                "pub_year": p.pub_year,
                "citations": p.citations,
                "is_top_journal": p.is_top_journal,
                "venue": p.venue,
            }
            for p in person.publications
        ],
    }


def _application_record(app: Application) -> dict:
    first, last, birth = app.applicant_key
    return {
        "serial_id": app.serial_id,
        "first_name": first,
        "last_name": last,
        "birth_date": birth or None,
        "discipline": app.discipline,
        "role": app.role,
        "outcome": app.outcome,
        "report_text": app.report_text,
        "titles": list(app.titles),
    }


def save_corpus(corpus: Corpus, path, format="jsonl"):
    """Write a corpus directory in the given format.

    Applicants are written in list order and applications in key order,
    so a freshly loaded corpus round-trips byte for byte.  CSV column
    orders: applicants (first_name, last_name, birth_date); publications
    (first_name, last_name, birth_date, category, pub_year, citations,
    is_top_journal, venue); applications (serial_id, first_name,
    last_name, birth_date, discipline, role, outcome, titles,
    report_text) with titles joined by ';'.
    """
    directory = Path(path)
    directory.mkdir(parents=True, exist_ok=True)

    with open(directory / "meta.json", "w", encoding="utf-8") as fh:
        json.dump({"observation_year": corpus.observation_year}, fh, sort_keys=True)
        fh.write("\n")

    if format == "jsonl":
        with open(directory / "applicants.jsonl", "w", encoding="utf-8") as fh:
            for person in corpus.applicants:
                fh.write(json.dumps(_applicant_record(person), sort_keys=True, ensure_ascii=False))
                fh.write("\n")
        with open(directory / "applications.jsonl", "w", encoding="utf-8") as fh:
            for serial in corpus.applications:
                fh.write(json.dumps(_application_record(corpus.applications[serial]),
                                    sort_keys=True, ensure_ascii=False))
                fh.write("\n")
        if corpus.top_journal_lists:
            with open(directory / "top_journals.jsonl", "w", encoding="utf-8") as fh:
                for code in sorted(corpus.top_journal_lists):
                    rec = {"discipline": code, "venues": sorted(corpus.top_journal_lists[code])}
                    fh.write(json.dumps(rec, sort_keys=True, ensure_ascii=False))
                    fh.write("\n")
    elif format == "csv":
        if len(corpus.applicant_keys()) != len(corpus.applicants):
            raise ValueError("CSV format cannot represent duplicate applicant triples; dedupe first")
        with open(directory / "applicants.csv", "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["first_name", "last_name", "birth_date"])
            for person in corpus.applicants:
                w.writerow([person.first_name, person.last_name,
                            person.birth_date.isoformat() if person.birth_date else ""])
        with open(directory / "publications.csv", "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["first_name", "last_name", "birth_date", "category",
                        "pub_year", "citations", "is_top_journal", "venue"])
            for person in corpus.applicants:
                first, last, birth = person.key
                for p in person.publications:
                    w.writerow([first, last, birth, p.category,
                                "" if p.pub_year is None else p.pub_year,
                                "" if p.citations is None else p.citations,
                                int(p.is_top_journal), p.venue or ""])
        with open(directory / "applications.csv", "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["serial_id", "first_name", "last_name", "birth_date",
                        "discipline", "role", "outcome", "titles", "report_text"])
            for serial in corpus.applications:
                app = corpus.applications[serial]
                first, last, birth = app.applicant_key
                w.writerow([app.serial_id, first, last, birth, app.discipline,
                            app.role, app.outcome, ";".join(app.titles), app.report_text])
        if corpus.top_journal_lists:
            with open(directory / "top_journals.csv", "w", encoding="utf-8", newline="") as fh:
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(["discipline", "venue"])
                for code in sorted(corpus.top_journal_lists):
                    for venue in sorted(corpus.top_journal_lists[code]):
                        w.writerow([code, venue])
    else:
        raise ValueError(f"unknown corpus format {format!r}")


def dedupe_applicants(corpus: Corpus) -> Corpus:
    """Merge applicant records that share the identity triple.

    Portfolios are concatenated in first-seen order with exact duplicate
    publications collapsed.  Records with the same names but different
    birth dates stay distinct: they are different people.  The merge is
    idempotent and leaves applications untouched (they reference the
    identity triple, which does not change).
    """
    merged: dict = {}
    for person in corpus.applicants:
        if person.key not in merged:
            merged[person.key] = person
        else:
            kept = merged[person.key]
            combined = dict.fromkeys(kept.publications)
            combined.update(dict.fromkeys(person.publications))
            merged[person.key] = Applicant(
                kept.first_name, kept.last_name, kept.birth_date, tuple(combined)
            )
    return Corpus(
        applicants=list(merged.values()),
        applications=corpus.applications,
        disciplines=corpus.disciplines,
        observation_year=corpus.observation_year,
        top_journal_lists=corpus.top_journal_lists,
        rejects=corpus.rejects,
    )
