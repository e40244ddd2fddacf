"""Random walks on HNN extensions of finitely generated groups.

Normal-form rewriting, exit-time and regeneration analysis, rate-of-escape
and CLT-variance estimation, and the exact integer-projection oracle for the
degenerate regime.
"""

from ._core import (
    Experiment,
    NormalForm,
    degenerate_drift,
    first_passage_gf,
    green_gf,
    lazy_green_identity,
    return_gf,
    __version__,
)

__all__ = [
    "Experiment",
    "NormalForm",
    "degenerate_drift",
    "first_passage_gf",
    "green_gf",
    "lazy_green_identity",
    "return_gf",
    "__version__",
]
