import csv
import io
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from agqss.models.scheme import Thresholds
from agqss.sharing.analyzer import AccessClass, AccessReport, uniform_strong_security
from agqss.sharing.qsim import CheckMode


def _one_based(indices) -> List[int]:
    return [i + 1 for i in indices]


class ThresholdsRead(BaseModel):
    u: int
    n: int
    L: int
    genus: int
    margin: int
    t_forbidden: int
    t_qualified: int
    forbidden_vacuous: bool
    qualified_vacuous: bool

    @classmethod
    def from_thresholds(cls, th: Thresholds) -> "ThresholdsRead":
        return cls(
            u=th.u,
            n=th.n,
            L=th.secret_length,
            genus=th.genus,
            margin=th.margin,
            t_forbidden=th.t_forbidden,
            t_qualified=th.t_qualified,
            forbidden_vacuous=th.forbidden_vacuous,
            qualified_vacuous=th.qualified_vacuous,
        )


class ClassificationRow(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    J: List[int]
    klass: AccessClass = Field(..., alias="class")
    fast: Optional[AccessClass] = None
    oracle: Optional[AccessClass] = None


class StrongRow(BaseModel):
    I: List[int]
    J: List[int]
    secure: bool
    within_bound: bool
    fast: Optional[bool] = None
    oracle: Optional[bool] = None


class StrongSummaryRead(BaseModel):
    i_bar_size: int
    bound: int
    secure_up_to: int
    beyond_bound: int


class StrongBySizeRead(BaseModel):
    i_bar_size: int
    J: List[int]
    secure: bool
    within_bound: bool


class ReportRead(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    tool: str
    version: str
    instance_hash: str
    instance: Dict[str, Any]
    mode: CheckMode
    full: bool
    thresholds: ThresholdsRead
    forbidden_up_to: int
    qualified_from: int
    counts_by_size: Dict[str, Dict[str, int]]
    classification: List[ClassificationRow]
    strong_summary: List[StrongSummaryRead] = []
    strong_by_size: List[StrongBySizeRead] = []
    strong_security: List[StrongRow] = []
    soundness: Dict[str, bool]


def soundness_flags(report: AccessReport) -> Dict[str, bool]:
    """Report-level flags: the three published keys first, then the detailed ones."""
    flags = {
        "theorem1": report.strong is not None and report.strong.bound_holds,
        "eq7": not report.qualified_bound_counterexamples,
        "eq8": not report.forbidden_bound_counterexamples,
    }
    flags.update(report.soundness())
    if report.strong is not None:
        flags["uniform_strong"] = uniform_strong_security(report, report.strong)
    return flags


def build_report(
    report: AccessReport,
    *,
    tool: str,
    version: str,
    instance_hash: str,
    instance: Dict[str, Any],
    full: bool = False,
) -> ReportRead:
    rows = report.rows if full else report.exceptional()
    classification = [
        ClassificationRow(J=_one_based(r.J), klass=r.klass, fast=r.fast, oracle=r.oracle) for r in rows
    ]

    strong_summary: List[StrongSummaryRead] = []
    strong_by_size: List[StrongBySizeRead] = []
    strong_rows: List[StrongRow] = []
    if report.strong is not None:
        strong_summary = [StrongSummaryRead(**vars(s)) for s in report.strong.summary()]
        strong_by_size = [
            StrongBySizeRead(i_bar_size=s.i_bar_size, J=_one_based(s.J), secure=s.secure, within_bound=s.within_bound)
            for s in report.strong.by_bar_size()
            if full or s.secure != s.within_bound
        ]
        selected = report.strong.rows if full else report.strong.counterexamples
        strong_rows = [
            StrongRow(
                I=_one_based(r.I),
                J=_one_based(r.J),
                secure=r.secure,
                within_bound=r.within_bound,
                fast=r.fast,
                oracle=r.oracle,
            )
            for r in selected
        ]

    return ReportRead(
        tool=tool,
        version=version,
        instance_hash=instance_hash,
        instance=instance,
        mode=report.mode,
        full=full,
        thresholds=ThresholdsRead.from_thresholds(report.thresholds),
        forbidden_up_to=report.forbidden_up_to,
        qualified_from=report.qualified_from,
        counts_by_size={str(k): v for k, v in report.counts_by_size().items()},
        classification=classification,
        strong_summary=strong_summary,
        strong_by_size=strong_by_size,
        strong_security=strong_rows,
        soundness=soundness_flags(report),
    )


def to_json(report: ReportRead) -> str:
    return report.model_dump_json(by_alias=True, indent=2) + "\n"


def _subset_text(indices: List[int]) -> str:
    return " ".join(str(i) for i in indices)


def _opt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    return getattr(value, "value", str(value))


def to_csv(report: ReportRead) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["instance_hash", "kind", "I", "J", "class", "secure", "fast", "oracle"])
    for r in report.classification:
        writer.writerow(
            [report.instance_hash, "subset", "", _subset_text(r.J), r.klass.value, "", _opt(r.fast), _opt(r.oracle)]
        )
    for r in report.strong_security:
        writer.writerow(
            [
                report.instance_hash,
                "strong",
                _subset_text(r.I),
                _subset_text(r.J),
                "",
                _opt(r.secure),
                _opt(r.fast),
                _opt(r.oracle),
            ]
        )
    return buf.getvalue()
