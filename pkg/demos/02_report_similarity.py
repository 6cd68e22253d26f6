"""
Detecting templated evaluation reports
======================================

Generates two synthetic disciplines whose panels behave differently -
one clones a fixed template, one writes long individual reports - and
shows how normalized edit distance separates them into quadrants.
"""

import numpy as np

from qualex.corpus import normalize_text
from qualex.synth import SynthParams, SynthProfile, generate_corpus
from qualex.textmetrics import (
    discipline_report_metrics,
    levenshtein,
    normalized_levenshtein,
    quadrant_classify,
)

# ---------------------------------------------------------------------------
# 1. the distance itself

print(levenshtein("kitten", "sitting"), "edits between kitten and sitting")
print(f"normalized: {normalized_levenshtein('kitten', 'sitting'):.3f}")

# distances are computed on normalized text: lowercase alphanumerics only
raw = "Il Candidato, nato nel 1970, presenta..."
print(f"{raw!r} -> {normalize_text(raw)!r}")

# two unrelated long strings sit near 0.9, so values near zero are loud
rng = np.random.default_rng(0)
a = "".join(rng.choice(list("abcdefghijklmnopqrstuvwxyz0123"), 1000))
b = "".join(rng.choice(list("abcdefghijklmnopqrstuvwxyz0123"), 1000))
print(f"random 1000-char pair: {normalized_levenshtein(a, b):.3f}")

# ---------------------------------------------------------------------------
# 2. one cloning panel, one diligent panel

params = SynthParams(
    n_applications=60,
    disciplines=("05/E2", "12/A1"),
    profiles={
        "05/E2": SynthProfile(cloning=0.95, report_words=60),
        "12/A1": SynthProfile(cloning=0.05, report_words=350),
    },
    seed=42,
    multi_apply_rate=0.0,
)
corpus = generate_corpus(params)

metrics = [
    discipline_report_metrics(corpus, code, "full", sample_size=100, seed=42)
    for code in ("05/E2", "12/A1")
]
for m in metrics:
    ls = m.length_summary
    print(f"\n{m.discipline} ({m.n_reports} reports)")
    print(f"  lengths: min {ls.min:.0f} / median {ls.median:.0f} / max {ls.max:.0f} words")
    print(f"  median pairwise distance: {m.median_pairwise_distance:.3f}")
    if m.rd is not None:
        print(f"  relative length difference qualified vs not: {m.rd:.3f}")

# ---------------------------------------------------------------------------
# 3. quadrants: median length x median distance

labels = quadrant_classify(metrics)
for code, label in sorted(labels.items()):
    flag = "  <- anti-pattern candidate" if label == "short_similar" else ""
    print(f"{code}: {label}{flag}")
