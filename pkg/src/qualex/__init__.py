"""Batch analytics toolkit for national research-qualification corpora.

Modules: corpus (loading and validation), indicators (age-normalized
quantitative indicators and threshold verdicts), textmetrics (report
length and edit-distance similarity), stats (rank correlation, probit,
serial-number population estimates), graph (co-qualification structure),
tabulate (descriptive tables), synth (synthetic corpus generation) and
cli (the qualex command).
"""

__version__ = "0.1.0"
