"""The final rules-or-not checklist.

Four criteria evaluated in a fixed order per entity: enough highlights
(TH), homogeneous language (LH), adequate recall (ER) and adequate
precision (EP). In sequential mode every criterion after the first
failure is left unevaluated and rendered as a dash. The verdict is
only "feasible" when all four pass; a checklist that cannot be finished
(no categories yet) yields INCOMPLETE rather than a verdict.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Union

PASS = "PASS"
FAIL = "FAIL"
NOT_EVALUATED = "NOT_EVALUATED"

RULES_FEASIBLE = "RULES_FEASIBLE"
RULES_NOT_FEASIBLE = "RULES_NOT_FEASIBLE"
INCOMPLETE = "INCOMPLETE"

CRITERION_CODES = ("TH", "LH", "ER", "EP")
CRITERION_LABELS = {
    "TH": "highlight count",
    "LH": "lexical homogeneity",
    "ER": "entity recall",
    "EP": "entity precision",
}

_STATUS_MARK = {PASS: "Yes", FAIL: "No", NOT_EVALUATED: "-"}


@dataclass(frozen=True)
class ChecklistThresholds:
    min_highlights: int = 25
    min_homogeneity: float = 0.10
    min_recall: float = 0.75
    min_precision: float = 0.75
    sequential: bool = True

    def __post_init__(self) -> None:
        if self.min_highlights < 1:
            raise ValueError("min_highlights must be >= 1")
        for name in ("min_homogeneity", "min_recall", "min_precision"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be in [0, 1]")

    def to_json(self) -> dict:
        return {
            "min_highlights": self.min_highlights,
            "min_homogeneity": self.min_homogeneity,
            "min_recall": self.min_recall,
            "min_precision": self.min_precision,
            "sequential": self.sequential,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ChecklistThresholds":
        return cls(
            min_highlights=obj.get("min_highlights", 25),
            min_homogeneity=obj.get("min_homogeneity", 0.10),
            min_recall=obj.get("min_recall", 0.75),
            min_precision=obj.get("min_precision", 0.75),
            sequential=obj.get("sequential", True),
        )


@dataclass(frozen=True)
class ChecklistInputs:
    """Measured values a checklist is evaluated on.

    A None value means the quantity is not computable yet; ``notes``
    may explain why, keyed by criterion code.
    """

    entity: str
    highlight_count: int
    homogeneity: Optional[float] = None
    recall: Optional[float] = None
    precision: Optional[float] = None
    notes: Mapping[str, str] = field(default_factory=dict)


@dataclass(frozen=True)
class CriterionResult:
    code: str  # TH, LH, ER or EP
    label: str
    value: Optional[Union[int, float]]
    threshold: Union[int, float]
    status: str  # PASS, FAIL or NOT_EVALUATED
    note: str = ""

    @property
    def mark(self) -> str:
        return _STATUS_MARK[self.status]


@dataclass(frozen=True)
class ChecklistResult:
    entity: str
    criteria: tuple[CriterionResult, ...]
    verdict: str  # RULES_FEASIBLE, RULES_NOT_FEASIBLE or INCOMPLETE


def evaluate_checklist(
    inputs: ChecklistInputs,
    thresholds: Optional[ChecklistThresholds] = None,
) -> ChecklistResult:
    """Walk TH, LH, ER, EP in order and derive the verdict."""
    th = thresholds or ChecklistThresholds()
    checks: list[tuple[str, Optional[Union[int, float]], Union[int, float]]] = [
        ("TH", inputs.highlight_count, th.min_highlights),
        ("LH", inputs.homogeneity, th.min_homogeneity),
        ("ER", inputs.recall, th.min_recall),
        ("EP", inputs.precision, th.min_precision),
    ]

    criteria = []
    failed = False
    incomplete = False
    for code, value, threshold in checks:
        note = ""
        if th.sequential and failed:
            status = NOT_EVALUATED
            note = "skipped after earlier failure"
            value = None
        elif value is None:
            status = NOT_EVALUATED
            note = inputs.notes.get(code, "not available")
            incomplete = True
        else:
            status = PASS if value >= threshold else FAIL
            if status == FAIL:
                failed = True
        criteria.append(
            CriterionResult(code, CRITERION_LABELS[code], value, threshold, status, note)
        )

    if failed:
        verdict = RULES_NOT_FEASIBLE
    elif incomplete:
        verdict = INCOMPLETE
    else:
        verdict = RULES_FEASIBLE
    return ChecklistResult(inputs.entity, tuple(criteria), verdict)


def render_checklist_table(results) -> str:
    """Plain-text Yes/No/- table, one block of four criterion rows per entity."""
    lines = [f"{'entity':<44} {'criterion':<28} verdict"]
    for result in results:
        for i, c in enumerate(result.criteria):
            entity_cell = result.entity if i == 0 else ""
            lines.append(f"{entity_cell:<44} {c.code} >= {c.threshold:<20} {c.mark}")
        lines.append(f"{'':<44} {'-> ' + result.verdict}")
    return "\n".join(lines)
