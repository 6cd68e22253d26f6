"""Synthetic corpus generator.

Produces corpora with controllable properties for fixtures, demos and
calibration tests: per-discipline report "cloning" intensity and length,
an age effect on qualification probability with a known slope, clustered
multi-discipline applications that plant co-qualification structure, and
sparse serial ids so the population estimate has something to estimate.
Everything is a deterministic function of the seed.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, field

import numpy as np
from scipy.special import ndtr

from .corpus import Applicant, Application, Corpus, Publication, load_disciplines
from .util import derive_seed

__all__ = ["SynthProfile", "SynthParams", "generate_corpus"]

# Evaluation-report word stock; Latin filler plus committee jargon.
VOCAB = (
    "commissione candidato pubblicazioni ricerca valutazione giudizio "
    "collegiale profilo scientifico produzione continuita congruenza "
    "settore concorsuale disciplina titoli maturita originalita rigore "
    "metodologico innovativita rilevanza nazionale internazionale "
    "collocazione editoriale riviste fascia congressi citazioni indice "
    "contributo monografia capitolo articolo atti progetto coordinamento "
    "direzione premio riconoscimento soggiorno estero laboratorio "
    "didattica dottorato assegno contratto responsabilita pienamente "
    "ampiamente sufficiente buona ottima elevata apprezzabile adeguata "
    "lorem ipsum dolor sit amet consectetur adipiscing elit sed diam "
    "nonummy nibh euismod tincidunt laoreet magna aliquam erat volutpat "
    "minim veniam quis nostrud exerci tation ullamcorper suscipit "
    "lobortis nisl aliquip commodo consequat duis autem iriure dolore "
    "molestie feugiat nulla facilisis vero accumsan iusto odio dignissim "
    "blandit praesent luptatum zzril delenit augue duis dolore te"
).split()

FIRST_NAMES = (
    "Anna Bruno Carla Dario Elena Fabio Giulia Ivan Laura Marco Nadia "
    "Paolo Rita Sergio Teresa Ugo Viola Walter Chiara Davide Franca "
    "Luca Marta Nicola Ornella Pietro Sandra Tommaso"
).split()

SYLLABLES = (
    "ba bel ca chi co de fer gal li lom man mon nar or pa pe ra ri "
    "ros sa ta tol ve vi zan zi"
).split()

# Per-role probability that an application claims each title category.
_TITLE_PROBS = {
    "associate": {
        "OTHER": 0.77,
        "PROJ_PART": 0.75,
        "ABROAD": 0.49,
        "AWARD": 0.45,
        "EDBOARD": 0.38,
        "FOREIGN": 0.31,
        "TECH_TRANSFER": 0.15,
        "DIRECTION": 0.0,
        "ACADEMY": 0.0,
        "PROJ_COORD": 0.0,
        "EDITOR_CHIEF": 0.0,
    },
    "full": {
        "OTHER": 0.78,
        "PROJ_PART": 0.0,
        "ABROAD": 0.56,
        "AWARD": 0.49,
        "EDBOARD": 0.53,
        "FOREIGN": 0.0,
        "TECH_TRANSFER": 0.22,
        "DIRECTION": 0.09,
        "ACADEMY": 0.22,
        "PROJ_COORD": 0.68,
        "EDITOR_CHIEF": 0.17,
    },
}

_BIBLIO_CATEGORIES = ("JRNL", "PROC", "ABSJ", "ABSP", "CHAP", "POS")
_BIBLIO_WEIGHTS = (0.55, 0.20, 0.10, 0.08, 0.05, 0.02)
_NONBIB_CATEGORIES = ("JRNL", "CHAP", "MONO", "PROC", "DICT", "CUR", "PREF", "INTRO", "REVJ", "OP")
_NONBIB_WEIGHTS = (0.30, 0.25, 0.12, 0.10, 0.05, 0.04, 0.04, 0.03, 0.04, 0.03)

_VENUES = tuple(f"J{k:02d}" for k in range(40))


@dataclass
class SynthProfile:
    """Report generation knobs for one discipline."""

    cloning: float = 0.3
    report_words: int = 150


@dataclass
class SynthParams:
    n_applications: int = 200
    n_disciplines: int = 8
    disciplines: tuple | None = None  # explicit codes override n_disciplines
    profiles: dict = field(default_factory=dict)  # code -> SynthProfile
    seed: int = 0
    observation_year: int = 2012
    cloning: float | None = None  # global override
    report_words: int | None = None  # global override
    beta_age: float = 0.02
    serial_headroom: float = 1.2
    multi_apply_rate: float = 0.25
    duplicate_cvs: bool = False
    top_journal_rate: float = 0.25


def _pick(rng, seq):
    return seq[int(rng.integers(0, len(seq)))]


def _make_name(rng):
    first = _pick(rng, FIRST_NAMES)
    n_syll = int(rng.integers(2, 4))
    last = "".join(_pick(rng, SYLLABLES) for _ in range(n_syll)).capitalize()
    return first, last


def _choose_disciplines(params) -> tuple:
    if params.disciplines is not None:
        table = load_disciplines()
        for code in params.disciplines:
            if code not in table:
                raise ValueError(f"unknown discipline {code!r}")
        return tuple(params.disciplines)
    codes = sorted(load_disciplines())
    rng = np.random.default_rng(derive_seed(params.seed, "disciplines"))
    chosen = rng.choice(len(codes), size=min(params.n_disciplines, len(codes)), replace=False)
    return tuple(codes[i] for i in sorted(chosen))


def _profile_for(params, code, rng) -> SynthProfile:
    profile = params.profiles.get(code)
    if profile is None:
        profile = SynthProfile(
            cloning=float(rng.uniform(0.0, 0.8)),
            report_words=int(rng.integers(80, 400)),
        )
    cloning = params.cloning if params.cloning is not None else profile.cloning
    words = params.report_words if params.report_words is not None else profile.report_words
    return SynthProfile(cloning=cloning, report_words=words)


def _make_portfolio(rng, bibliometric: bool, first_pub_year: int, observation_year: int):
    if bibliometric:
        categories, weights = _BIBLIO_CATEGORIES, _BIBLIO_WEIGHTS
        n = 1 + int(rng.poisson(20))
    else:
        categories, weights = _NONBIB_CATEGORIES, _NONBIB_WEIGHTS
        n = 1 + int(rng.poisson(12))
    pubs = []
    for k in range(n):
        # the first entry is always a cited journal paper so every
        # portfolio supports both indicator kinds
        category = "JRNL" if k == 0 else str(rng.choice(categories, p=weights))
        year = int(rng.integers(first_pub_year, observation_year + 1))
        citations = None
        if category in ("JRNL", "PROC", "REVJ", "ABSJ", "ABSP", "CHAP", "MONO"):
            citations = int(rng.negative_binomial(1.2, 0.08)) if bibliometric else int(rng.poisson(2))
        if k == 0 and citations is None:
            citations = int(rng.poisson(3))
        venue = _pick(rng, _VENUES) if category == "JRNL" else None
        is_top = bool(category == "JRNL" and rng.random() < 0.25)
        pubs.append(Publication(category, year, citations, is_top, venue))
    return tuple(pubs)


def _template(params, code, role, words: int):
    rng = np.random.default_rng(derive_seed(params.seed, "template", code, role))
    return [_pick(rng, VOCAB) for _ in range(max(10, words))]


def _render(words) -> str:
    # light punctuation so normalization and word counting have work to do
    out = []
    for i, word in enumerate(words):
        token = word.capitalize() if i == 0 else word
        if i and i % 9 == 0:
            out[-1] = out[-1] + ","
        out.append(token)
    return " ".join(out) + "."


def _make_report(rng, template, profile: SynthProfile) -> str:
    c = profile.cloning
    if c >= 1.0:
        return _render(template)
    target = len(template)
    length = max(10, int(round(rng.normal(target, target * 0.2 * (1.0 - c)))))
    words = []
    for i in range(length):
        if rng.random() < c:
            words.append(template[i % len(template)])
        else:
            words.append(_pick(rng, VOCAB))
    return _render(words)


def generate_corpus(params: SynthParams) -> Corpus:
    """Build a synthetic corpus as a pure function of the parameters."""
    table = load_disciplines()
    codes = _choose_disciplines(params)
    profile_rng = np.random.default_rng(derive_seed(params.seed, "profiles"))
    profiles = {code: _profile_for(params, code, profile_rng) for code in codes}
    templates = {
        (code, role): _template(params, code, role, profiles[code].report_words)
        for code in codes
        for role in ("associate", "full")
    }
    # consecutive disciplines form clusters of three; multi-discipline
    # applicants stay inside their cluster, which plants graph cliques
    clusters = [list(codes[i : i + 3]) for i in range(0, len(codes), 3)]
    cluster_of = {code: group for group in clusters for code in group}

    rng = np.random.default_rng(derive_seed(params.seed, "people"))
    people: dict = {}
    applications = []
    seen_triples = set()
    obs = params.observation_year
    primary_cycle = 0

    while len(applications) < params.n_applications:
        if not codes:
            break
        code = codes[primary_cycle % len(codes)]
        primary_cycle += 1
        for _ in range(50):
            first, last = _make_name(rng)
            age = int(rng.integers(29, 66))
            birth = dt.date(
                obs - age, int(rng.integers(1, 13)), int(rng.integers(1, 29))
            )
            key = (first, last, birth.isoformat())
            if key not in people:
                break
        else:
            raise RuntimeError("could not generate a fresh applicant identity")
        first_pub = max(birth.year + 22, obs - int(rng.integers(3, 28)))
        portfolio = _make_portfolio(rng, table[code].bibliometric, first_pub, obs)
        people[key] = Applicant(first, last, birth, portfolio)

        role = "associate" if rng.random() < 0.7 else "full"
        applications.append((key, code, role, age))
        seen_triples.add((key, code, role))

        while (
            len(applications) < params.n_applications
            and rng.random() < params.multi_apply_rate
        ):
            if rng.random() < 0.3:
                extra_code, extra_role = code, ("full" if role == "associate" else "associate")
            else:
                mates = [c for c in cluster_of[code] if c != code]
                if not mates:
                    break
                extra_code = _pick(rng, mates)
                extra_role = role if rng.random() < 0.8 else ("full" if role == "associate" else "associate")
            if (key, extra_code, extra_role) in seen_triples:
                break
            applications.append((key, extra_code, extra_role, age))
            seen_triples.add((key, extra_code, extra_role))

    # serial ids: a sparse sample from a larger population
    serial_rng = np.random.default_rng(derive_seed(params.seed, "serials"))
    n = len(applications)
    population = max(n, int(round(n * params.serial_headroom)))
    serials = sorted(serial_rng.choice(population, size=n, replace=False) + 1)

    report_rng = np.random.default_rng(derive_seed(params.seed, "reports"))
    app_records = {}
    for serial, (key, code, role, age) in zip(serials, applications):
        qualified = report_rng.random() < float(ndtr(params.beta_age * age))
        outcome = "qualified" if qualified else "not_qualified"
        report = _make_report(report_rng, templates[(code, role)], profiles[code])
        probs = _TITLE_PROBS[role]
        titles = tuple(t for t in probs if report_rng.random() < probs[t])
        app_records[serial] = Application(
            int(serial), key, code, role, outcome, report, titles
        )

    top_rng = np.random.default_rng(derive_seed(params.seed, "topjournals"))
    top_lists = {}
    for code in codes:
        chosen = top_rng.choice(len(_VENUES), size=8, replace=False)
        top_lists[code] = frozenset(_VENUES[i] for i in sorted(chosen))

    applicants = []
    if params.duplicate_cvs:
        # one CV record per application, as in the raw forms
        for serial in sorted(app_records):
            applicants.append(people[app_records[serial].applicant_key])
    else:
        seen = set()
        for serial in sorted(app_records):
            key = app_records[serial].applicant_key
            if key not in seen:
                seen.add(key)
                applicants.append(people[key])

    return Corpus(
        applicants=applicants,
        applications={s: app_records[s] for s in sorted(app_records)},
        disciplines=table,
        observation_year=obs,
        top_journal_lists=top_lists,
    )
