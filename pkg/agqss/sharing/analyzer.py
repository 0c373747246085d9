"""Exhaustive access-structure and strong-security sweeps over one code pair."""

from __future__ import annotations

import enum
import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence, TypeVar

from agqss.core.config import get_settings
from agqss.core.errors import ConsistencyError, SchemeParamsError
from agqss.models.scheme import CodePair, Thresholds, thresholds
from agqss.sharing.qsim import (
    CheckMode,
    complement,
    forbidden_fast,
    forbidden_oracle,
    strong_security_fast,
    strong_security_oracle,
)

logger = logging.getLogger(__name__)

MAX_SWEEP_SHARES = 12

T = TypeVar("T")
R = TypeVar("R")


class AccessClass(str, enum.Enum):
    qualified = "qualified"
    intermediate = "intermediate"
    forbidden = "forbidden"


@dataclass(frozen=True)
class SubsetClass:
    J: tuple[int, ...]
    klass: AccessClass
    fast: AccessClass | None = None
    oracle: AccessClass | None = None


@dataclass(frozen=True)
class StrongSecurityRow:
    I: tuple[int, ...]
    J: tuple[int, ...]
    secure: bool
    i_bar_size: int
    within_bound: bool  # |J| <= |I-bar| + t_forbidden
    fast: bool | None = None
    oracle: bool | None = None


@dataclass(frozen=True)
class StrongSummary:
    i_bar_size: int
    bound: int
    secure_up_to: int  # largest m with every |J| <= m secure for this |I-bar|
    beyond_bound: int


@dataclass(frozen=True)
class StrongBySize:
    """Security of J against every secret subset I with |I-bar| = i_bar_size."""

    i_bar_size: int
    J: tuple[int, ...]
    secure: bool
    within_bound: bool


@dataclass
class StrongSecurityMap:
    rows: list[StrongSecurityRow]
    thresholds: Thresholds

    @property
    def counterexamples(self) -> list[StrongSecurityRow]:
        return [r for r in self.rows if r.within_bound and not r.secure]

    @property
    def beyond_bound(self) -> list[StrongSecurityRow]:
        return [r for r in self.rows if r.secure and not r.within_bound]

    @property
    def bound_holds(self) -> bool:
        return not self.counterexamples

    @property
    def monotone(self) -> bool:
        secure = {(r.I, r.J): r.secure for r in self.rows}
        for (I, J), ok in secure.items():
            if ok and any(not secure[I, tuple(j for j in J if j != drop)] for drop in J):
                return False
        return True

    def lookup(self, I: Sequence[int], J: Sequence[int]) -> bool:
        I, J = tuple(sorted(I)), tuple(sorted(J))
        for r in self.rows:
            if r.I == I and r.J == J:
                return r.secure
        raise KeyError((I, J))

    def by_bar_size(self) -> list[StrongBySize]:
        grouped: dict[tuple[int, tuple[int, ...]], list[StrongSecurityRow]] = {}
        for r in self.rows:
            grouped.setdefault((r.i_bar_size, r.J), []).append(r)
        return [
            StrongBySize(k, J, all(r.secure for r in rows), rows[0].within_bound)
            for (k, J), rows in sorted(grouped.items(), key=lambda item: (item[0][0], len(item[0][1]), item[0][1]))
        ]

    def summary(self) -> list[StrongSummary]:
        L = self.thresholds.secret_length
        n = self.thresholds.n
        out = []
        for k in range(L + 1):
            rows = [r for r in self.rows if r.i_bar_size == k]
            secure_up_to = -1
            for m in range(n + 1):
                if all(r.secure for r in rows if len(r.J) == m):
                    secure_up_to = m
                else:
                    break
            out.append(
                StrongSummary(
                    i_bar_size=k,
                    bound=self.thresholds.strong_bound(k),
                    secure_up_to=secure_up_to,
                    beyond_bound=sum(1 for r in rows if r.secure and not r.within_bound),
                )
            )
        return out


@dataclass
class AccessReport:
    n: int
    secret_length: int
    thresholds: Thresholds
    mode: CheckMode
    rows: list[SubsetClass]
    strong: StrongSecurityMap | None = None
    paths_agree: bool | None = None
    _by_subset: dict[tuple[int, ...], AccessClass] = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self) -> None:
        self._by_subset = {r.J: r.klass for r in self.rows}

    def klass(self, J: Sequence[int]) -> AccessClass:
        return self._by_subset[tuple(sorted(J))]

    def subsets(self, klass: AccessClass) -> list[tuple[int, ...]]:
        return [r.J for r in self.rows if r.klass is klass]

    def counts_by_size(self) -> dict[int, dict[str, int]]:
        counts = {k: {c.value: 0 for c in AccessClass} for k in range(self.n + 1)}
        for r in self.rows:
            counts[len(r.J)][r.klass.value] += 1
        return counts

    @property
    def forbidden_up_to(self) -> int:
        """Largest k with every |J| <= k forbidden."""
        k = -1
        for size in range(self.n + 1):
            if all(r.klass is AccessClass.forbidden for r in self.rows if len(r.J) == size):
                k = size
            else:
                break
        return k

    @property
    def qualified_from(self) -> int:
        """Smallest k with every |J| >= k qualified."""
        k = self.n + 1
        for size in range(self.n, -1, -1):
            if all(r.klass is AccessClass.qualified for r in self.rows if len(r.J) == size):
                k = size
            else:
                break
        return k

    @property
    def forbidden_bound_counterexamples(self) -> list[tuple[int, ...]]:
        t = self.thresholds.t_forbidden
        return [r.J for r in self.rows if len(r.J) <= t and r.klass is not AccessClass.forbidden]

    @property
    def qualified_bound_counterexamples(self) -> list[tuple[int, ...]]:
        t = self.thresholds.t_qualified
        return [r.J for r in self.rows if len(r.J) >= t and r.klass is not AccessClass.qualified]

    @property
    def monotone(self) -> bool:
        for r in self.rows:
            if r.klass is AccessClass.qualified:
                for j in complement(r.J, self.n):
                    if self.klass(r.J + (j,)) is not AccessClass.qualified:
                        return False
            elif r.klass is AccessClass.forbidden:
                for j in r.J:
                    if self.klass(tuple(x for x in r.J if x != j)) is not AccessClass.forbidden:
                        return False
        return True

    def exceptional(self) -> list[SubsetClass]:
        """Non-intermediate subsets strictly between the uniform boundary sizes."""
        lo, hi = self.forbidden_up_to, self.qualified_from
        return [
            r for r in self.rows if lo < len(r.J) < hi and r.klass is not AccessClass.intermediate
        ]

    def soundness(self) -> dict[str, bool]:
        flags = {
            "qualified_bound": not self.qualified_bound_counterexamples,
            "forbidden_bound": not self.forbidden_bound_counterexamples,
            "monotone": self.monotone,
            "paths_agree": self.paths_agree is not False,
        }
        if self.strong is not None:
            flags["strong_bound"] = self.strong.bound_holds
            flags["strong_monotone"] = self.strong.monotone
        return flags

    @property
    def ok(self) -> bool:
        return all(self.soundness().values())


def all_subsets(n: int) -> list[tuple[int, ...]]:
    """Every subset of range(n), by size then lexicographically."""
    return [J for k in range(n + 1) for J in itertools.combinations(range(n), k)]


def _sweep(fn: Callable[[T], R], items: Sequence[T]) -> list[R]:
    workers = max(1, get_settings().threads)
    if workers == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _check_size(cp: CodePair) -> None:
    if cp.n > MAX_SWEEP_SHARES:
        raise SchemeParamsError(f"exhaustive sweeps support n <= {MAX_SWEEP_SHARES}, got n = {cp.n}")


def _classes(forbidden: dict[tuple[int, ...], bool], n: int) -> dict[tuple[int, ...], AccessClass]:
    out = {}
    for J, is_forbidden in forbidden.items():
        is_qualified = forbidden[complement(J, n)]
        if is_forbidden and is_qualified:
            raise ConsistencyError(f"share set {list(J)} is both qualified and forbidden")
        if is_qualified:
            out[J] = AccessClass.qualified
        elif is_forbidden:
            out[J] = AccessClass.forbidden
        else:
            out[J] = AccessClass.intermediate
    return out


def _disagreements(fast: dict, oracle: dict) -> list:
    return [key for key in fast if fast[key] != oracle[key]]


def classify_all(cp: CodePair, mode: CheckMode | str = CheckMode.both, cap: int | None = None) -> AccessReport:
    mode = CheckMode(mode)
    _check_size(cp)
    subsets = all_subsets(cp.n)

    fast = oracle = None
    if mode in (CheckMode.fast, CheckMode.both):
        fast = dict(zip(subsets, _sweep(lambda J: forbidden_fast(cp, J), subsets)))
        logger.debug("rank criterion done on %d subsets", len(subsets))
    if mode in (CheckMode.oracle, CheckMode.both):
        oracle = dict(zip(subsets, _sweep(lambda J: forbidden_oracle(cp, J, cap), subsets)))
        logger.debug("state oracle done on %d subsets", len(subsets))

    paths_agree = None
    if fast is not None and oracle is not None:
        bad = _disagreements(fast, oracle)
        if bad:
            logger.error("forbidden test disagrees on %s", bad[:5])
            raise ConsistencyError(
                f"rank criterion and state oracle disagree on {len(bad)} subsets, first {list(bad[0])}"
            )
        paths_agree = True

    fast_cls = _classes(fast, cp.n) if fast is not None else None
    oracle_cls = _classes(oracle, cp.n) if oracle is not None else None
    primary = fast_cls if fast_cls is not None else oracle_cls
    rows = [
        SubsetClass(
            J,
            primary[J],
            fast_cls[J] if fast_cls is not None else None,
            oracle_cls[J] if oracle_cls is not None else None,
        )
        for J in subsets
    ]
    report = AccessReport(cp.n, cp.secret_length, thresholds(cp.params), mode, rows, paths_agree=paths_agree)
    logger.info(
        "classified %d subsets: forbidden up to %d, qualified from %d",
        len(rows), report.forbidden_up_to, report.qualified_from,
    )
    return report


def strong_security_map(
    cp: CodePair, mode: CheckMode | str = CheckMode.both, cap: int | None = None
) -> StrongSecurityMap:
    mode = CheckMode(mode)
    _check_size(cp)
    th = thresholds(cp.params)
    L = cp.secret_length
    pairs = [(I, J) for I in all_subsets(L) for J in all_subsets(cp.n)]

    fast = oracle = None
    if mode in (CheckMode.fast, CheckMode.both):
        fast = _sweep(lambda p: strong_security_fast(cp, *p), pairs)
    if mode in (CheckMode.oracle, CheckMode.both):
        oracle = _sweep(lambda p: strong_security_oracle(cp, *p, cap=cap), pairs)

    if fast is not None and oracle is not None:
        bad = [p for p, f, o in zip(pairs, fast, oracle) if f != o]
        if bad:
            logger.error("strong security test disagrees on %s", bad[:5])
            raise ConsistencyError(
                f"rank criterion and state oracle disagree on {len(bad)} (I, J) pairs, "
                f"first I = {list(bad[0][0])}, J = {list(bad[0][1])}"
            )

    rows = []
    for k, (I, J) in enumerate(pairs):
        f = fast[k] if fast is not None else None
        o = oracle[k] if oracle is not None else None
        rows.append(
            StrongSecurityRow(
                I=I,
                J=J,
                secure=f if f is not None else o,
                i_bar_size=L - len(I),
                within_bound=th.strong_bound_satisfied(L - len(I), len(J)),
                fast=f,
                oracle=o,
            )
        )
    return StrongSecurityMap(rows, th)


def uniform_strong_security(access: AccessReport, strong: StrongSecurityMap) -> bool:
    """Every (I, J) with |I| + |J| <= k is secure, k the uniform qualified size."""
    k = access.qualified_from
    return all(r.secure for r in strong.rows if len(r.I) + len(r.J) <= k)


def analyze(
    cp: CodePair, mode: CheckMode | str = CheckMode.both, cap: int | None = None, strong: bool = True
) -> AccessReport:
    report = classify_all(cp, mode, cap)
    if strong:
        report.strong = strong_security_map(cp, mode, cap)
        full = tuple(range(cp.secret_length))
        for r in report.strong.rows:
            if r.I == full and r.secure != (report.klass(r.J) is AccessClass.forbidden):
                raise ConsistencyError(f"strong security with I = all differs from forbidden on {list(r.J)}")
    return report
