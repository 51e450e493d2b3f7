"""Constructive toolkit for finitely presented groups.

Thin convenience layer over the compiled module. Presentations and words
travel as text in the same format the CLI uses; large counts cross the
boundary as decimal strings and are converted to ints here.
"""

from gforge._gforge import (
    builtin_text,
    distinguished,
    generators,
    h1,
    kernel_witness_word,
    nielsen_disjoint,
    num_relators,
    pipeline,
    rips,
    smallcanc,
    version,
    witness_check,
    wp,
)
from gforge._gforge import quotients as _raw_quotients
from gforge._gforge import zn_count as _raw_zn_count

__all__ = [
    "builtin_text",
    "distinguished",
    "generators",
    "h1",
    "kernel_witness_word",
    "nielsen_disjoint",
    "num_relators",
    "pipeline",
    "quotients",
    "rips",
    "smallcanc",
    "version",
    "witness_check",
    "wp",
    "zn_count",
    "is_trivial",
]

__version__ = version()


def quotients(presentation, degree=5, jobs=1):
    """Count actions on {1..degree}; returns ints."""
    d = _raw_quotients(presentation, degree, jobs)
    d["total"] = int(d["total"])
    d["nontrivial"] = int(d["nontrivial"])
    return d


def zn_count(presentation, n):
    """Homomorphism counts to Z/n as (predicted, brute, brute_ran)."""
    predicted, brute, ran = _raw_zn_count(presentation, n)
    return int(predicted), int(brute), ran


def is_trivial(presentation, word, method="auto"):
    """True/False when an engine decides the word; raises on unknown."""
    status, engine, detail = wp(presentation, word, method)
    if status == "unknown":
        raise ValueError(f"undecided by {engine}: {detail}")
    return status == "trivial"
