"""Five-state verdicts shared by every decision procedure in the package.

A verdict status records *how* a conclusion was reached, not only what it
is.  ``holds_exact`` / ``fails_exact`` are reserved for algebraic fast
paths whose residuals sit at machine scale (coefficient arithmetic on
finite Fourier support).  The ``*_numeric`` variants come from grid
refinement or section-norm profiles and are therefore graded evidence.
``inconclusive`` means the evidence met no decision threshold.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

HOLDS_EXACT = "holds_exact"
HOLDS_NUMERIC = "holds_numeric"
FAILS_EXACT = "fails_exact"
FAILS_NUMERIC = "fails_numeric"
INCONCLUSIVE = "inconclusive"

STATUSES = (HOLDS_EXACT, HOLDS_NUMERIC, FAILS_EXACT, FAILS_NUMERIC, INCONCLUSIVE)

# Exactness is only ever claimed below this residual scale.
EXACT_RESIDUAL_TOL = 1e-12


@dataclass
class Verdict:
    """Outcome of a membership or boundedness test.

    diagnostics is an ordered list of (parameter, estimate) pairs kept
    small enough to serialize into reports; witness optionally carries
    named symbols or sections that substantiate a positive verdict.
    """

    status: str
    diagnostics: list[tuple[str, float]] = field(default_factory=list)
    witness: dict[str, Any] | None = None

    def __post_init__(self) -> None:
        if self.status not in STATUSES:
            raise ValueError(f"unknown verdict status {self.status!r}")

    @property
    def holds(self) -> bool:
        return self.status in (HOLDS_EXACT, HOLDS_NUMERIC)

    @property
    def fails(self) -> bool:
        return self.status in (FAILS_EXACT, FAILS_NUMERIC)

    @property
    def exact(self) -> bool:
        return self.status in (HOLDS_EXACT, FAILS_EXACT)

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "diagnostics": [[k, _jsonable(v)] for k, v in self.diagnostics],
        }


def _jsonable(v):
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, (bool, int, float, str)) or v is None:
        return v
    return float(v)


def conjoin(parts: dict[str, Verdict]) -> Verdict:
    """Conjunction of sub-verdicts with exact/numeric grading.

    Any failing part makes the conjunction fail (exactly, if that part
    failed exactly).  Otherwise an inconclusive part wins.  A conjunction
    only holds exactly when every part does.
    """
    diagnostics: list[tuple[str, float]] = []
    for name, v in parts.items():
        diagnostics.extend((f"{name}.{k}", val) for k, val in v.diagnostics)
    failing = [v for v in parts.values() if v.fails]
    if failing:
        status = FAILS_EXACT if any(v.status == FAILS_EXACT for v in failing) else FAILS_NUMERIC
        return Verdict(status, diagnostics)
    if any(v.status == INCONCLUSIVE for v in parts.values()):
        return Verdict(INCONCLUSIVE, diagnostics)
    if all(v.status == HOLDS_EXACT for v in parts.values()):
        return Verdict(HOLDS_EXACT, diagnostics)
    return Verdict(HOLDS_NUMERIC, diagnostics)
