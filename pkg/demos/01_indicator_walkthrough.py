"""
Age-normalized indicators, step by step
=======================================

Builds two small publication portfolios by hand and walks through the
quantities the qualification rules are built on: scientific age, the
citation-based triple, the book-based triple, and the strict
median-threshold verdict.
"""

import datetime as dt

from qualex.corpus import Applicant, Publication, load_disciplines
from qualex.indicators import (
    Thresholds,
    citation_weight,
    compute_indicator_set,
    contemporary_h_index,
    meets_thresholds,
    scientific_age,
)

OBS_YEAR = 2012
table = load_disciplines()

# ---------------------------------------------------------------------------
# 1. scientific age: years since the first publication, floored at ten

for first_year in (2010, 2003, 1995, 1985):
    print(f"first publication {first_year} -> SA = {scientific_age(first_year, OBS_YEAR)}")

# ---------------------------------------------------------------------------
# 2. a citation-based portfolio (biochemistry, 05/E2)

recent = Applicant(
    "Rita", "Moro", dt.date(1978, 3, 2),
    tuple(Publication("JRNL", 2006 + k % 6, 25 - 2 * k) for k in range(12)),
)
biochem = table["05/E2"]
ind = compute_indicator_set(recent, biochem, OBS_YEAR)
print(f"\n{biochem.code} ({biochem.name}) is citation-based: kind={ind.kind}")
print(f"  journal papers x 10/SA : v1 = {ind.v1:.2f}")
print(f"  citations / SA         : v2 = {ind.v2:.2f}")
print(f"  contemporary h-index   : v3 = {ind.v3:.0f}")

# the contemporary h-index feeds on age-discounted citation weights
w = citation_weight(25, 2011, OBS_YEAR)
print(f"  (a 2011 paper with 25 citations weighs {w:.1f}; the same in 2000 "
      f"weighs {citation_weight(25, 2000, OBS_YEAR):.1f})")

# ---------------------------------------------------------------------------
# 3. the paradox of academic twins

# Twin A: twenty journal papers, all from 2005.  Twin B has the same
# twenty plus one extra paper from 1985, and scores lower.
twin_a = Applicant("A", "Twin", None, tuple(Publication("JRNL", 2005, 0) for _ in range(20)))
twin_b = Applicant("B", "Twin", None, twin_a.publications + (Publication("JRNL", 1985, 0),))
v1_a = compute_indicator_set(twin_a, biochem, OBS_YEAR).v1
v1_b = compute_indicator_set(twin_b, biochem, OBS_YEAR).v1
print(f"\ntwin A: 20 papers, SA 10  -> v1 = {v1_a:.1f}")
print(f"twin B: 21 papers, SA 28  -> v1 = {v1_b:.1f}   (more output, lower indicator)")

# ---------------------------------------------------------------------------
# 4. a book-based portfolio (private law, 12/A1)

jurist = Applicant(
    "Paolo", "Neri", dt.date(1969, 11, 20),
    (
        Publication("MONO", 2002),
        Publication("MONO", 2009),
        Publication("JRNL", 2005, venue="Rivista Alfa"),
        Publication("JRNL", 2008),
        Publication("CHAP", 2010),
    ),
)
law = table["12/A1"]
top_lists = {"12/A1": frozenset({"Rivista Alfa"})}
nb = compute_indicator_set(jurist, law, OBS_YEAR, top_lists)
print(f"\n{law.code} ({law.name}) is book-based: kind={nb.kind}")
print(f"  books x 10/SA              : v1 = {nb.v1:.2f}")
print(f"  articles+chapters x 10/SA  : v2 = {nb.v2:.2f}")
print(f"  top-journal papers x 10/SA : v3 = {nb.v3:.2f}")

# ---------------------------------------------------------------------------
# 5. threshold verdicts are strict and count exceedances

th = Thresholds("12/A1", "full", nb.v1, 1.0, 0.5)
verdict = meets_thresholds(nb, th)
print(f"\nthresholds ({th.t1:.2f}, {th.t2:.2f}, {th.t3:.2f}): "
      f"exceeded {verdict.exceeded} of 3, eligible={verdict.eligible}")
print("note: v1 equals its threshold and does not count - the rule is strict")
