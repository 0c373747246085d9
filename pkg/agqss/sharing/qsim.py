"""Exact simulator of the coset-state quantum scheme.

A basis secret s is encoded as the uniform superposition over the coset
f(s) = s . G_secret + C2 of C1. Every amplitude is 1/sqrt|C2| times a 0/1
indicator, so partial traces of |psi><phi| have entries count/|C2| and all
comparisons below are exact ``Fraction`` equalities.

Operators are indexed by base-q keys of the restricted share vectors, first
listed coordinate most significant.
"""

from __future__ import annotations

import enum
import itertools
import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from agqss.core.config import get_settings
from agqss.core.errors import CapExceededError, ConsistencyError, FieldMismatchError, SchemeParamsError
from agqss.models.fqmat import (
    AffineCoset,
    MatrixFq,
    NoSolution,
    as_ints,
    base_q_digits,
    enumerate_coset,
    kernel_basis,
    projected_dim,
    rank,
    solve_affine,
)
from agqss.models.scheme import CodePair, extended_pair

logger = logging.getLogger(__name__)

Key = tuple[int, int]


class CheckMode(str, enum.Enum):
    fast = "fast"
    oracle = "oracle"
    both = "both"


# -------- states and operators --------


@dataclass(frozen=True, eq=False)
class CosetState:
    cp: CodePair
    secret: tuple[int, ...]
    coset: AffineCoset

    @property
    def size(self) -> int:
        return self.coset.size


@dataclass(frozen=True)
class OuterProduct:
    """|ket><bra| for two coset states of one code pair."""

    ket: CosetState
    bra: CosetState

    def __post_init__(self) -> None:
        if self.ket.cp is not self.bra.cp:
            raise FieldMismatchError("outer product of states from different code pairs")


@dataclass(frozen=True)
class SecretOperator:
    """Matrix unit |a><b| on the secret digits in I."""

    I: tuple[int, ...]
    a: tuple[int, ...]
    b: tuple[int, ...]

    def __post_init__(self) -> None:
        if not len(self.a) == len(self.b) == len(self.I):
            raise SchemeParamsError(f"matrix unit on I = {list(self.I)} needs {len(self.I)} digits per side")

    @property
    def diagonal(self) -> bool:
        return self.a == self.b


@dataclass(frozen=True)
class SubsystemOperator:
    J: tuple[int, ...]
    q: int
    entries: Mapping[Key, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "entries", {k: Fraction(v) for k, v in self.entries.items() if v != 0}
        )

    @property
    def dim(self) -> int:
        return self.q ** len(self.J)

    def trace(self) -> Fraction:
        return sum((v for (r, c), v in self.entries.items() if r == c), Fraction(0))

    def is_zero(self) -> bool:
        return not self.entries

    def is_symmetric(self) -> bool:
        return all(self.entries.get((c, r), 0) == v for (r, c), v in self.entries.items())

    def support(self) -> list[int]:
        return sorted({r for r, _ in self.entries} | {c for _, c in self.entries})

    def is_positive_semidefinite(self) -> bool:
        """Exact symmetric elimination on the support, pivoting on a positive diagonal entry."""
        if not self.is_symmetric():
            return False
        index = self.support()
        pos = {key: i for i, key in enumerate(index)}
        A = np.full((len(index), len(index)), Fraction(0), dtype=object)
        for (r, c), v in self.entries.items():
            A[pos[r], pos[c]] = v

        while A.shape[0]:
            diag = np.array([A[i, i] for i in range(A.shape[0])], dtype=object)
            if any(d < 0 for d in diag):
                return False
            positive = [i for i, d in enumerate(diag) if d > 0]
            if not positive:
                # zero diagonal forces a zero matrix
                return not any(v != 0 for v in A.flat)
            i = positive[0]
            rest = [j for j in range(A.shape[0]) if j != i]
            col = A[rest, i]
            A = A[np.ix_(rest, rest)] - np.outer(col, col) / A[i, i]
        return True

    def dense(self, cap: int = 4096) -> np.ndarray:
        if self.dim > cap:
            raise CapExceededError(f"dense operator of dimension {self.dim} exceeds {cap}")
        out = np.full((self.dim, self.dim), Fraction(0), dtype=object)
        for (r, c), v in self.entries.items():
            out[r, c] = v
        return out

    def _check(self, other: SubsystemOperator) -> None:
        if other.J != self.J or other.q != self.q:
            raise ValueError(f"operators on {self.J} and {other.J} cannot be combined")

    def __add__(self, other: SubsystemOperator) -> SubsystemOperator:
        self._check(other)
        merged = dict(self.entries)
        for k, v in other.entries.items():
            merged[k] = merged.get(k, Fraction(0)) + v
        return SubsystemOperator(self.J, self.q, merged)

    def scale(self, factor) -> SubsystemOperator:
        factor = Fraction(factor)
        return SubsystemOperator(self.J, self.q, {k: v * factor for k, v in self.entries.items()})


# -------- encoding --------


def _check_secret(cp: CodePair, s: Sequence[int]) -> tuple[int, ...]:
    s = tuple(int(v) for v in s)
    if len(s) != cp.secret_length or any(not 0 <= v < cp.spec.order for v in s):
        raise SchemeParamsError(f"{list(s)} is not a basis secret in F_{cp.spec.order}^{cp.secret_length}")
    return s


def encode_basis(cp: CodePair, s: Sequence[int]) -> CosetState:
    s = _check_secret(cp, s)
    GF = cp.spec.GF
    offset = (GF(list(s)).reshape(1, -1) @ cp.secret_rows.data).reshape(-1)
    return CosetState(cp, s, AffineCoset(offset, cp.G2))


def all_secrets(q: int, length: int) -> list[tuple[int, ...]]:
    """F_q^length in base-q order, first digit most significant."""
    return [tuple(row) for row in base_q_digits(q**length, q, length).tolist()]


@lru_cache(maxsize=4096)
def _members(cp: CodePair, s: tuple[int, ...], cap: int) -> np.ndarray:
    return enumerate_coset(encode_basis(cp, s).coset, cap=cap)


def _keys(rows: np.ndarray, cols: Sequence[int], q: int) -> np.ndarray:
    if not cols:
        return np.zeros(rows.shape[0], dtype=np.int64)
    weights = q ** np.arange(len(cols) - 1, -1, -1, dtype=np.int64)
    return rows[:, list(cols)] @ weights


def _group(rows: np.ndarray, keep: Sequence[int], traced: Sequence[int], q: int) -> dict[int, list[int]]:
    groups: dict[int, list[int]] = defaultdict(list)
    for x, y in zip(_keys(rows, keep, q).tolist(), _keys(rows, traced, q).tolist()):
        groups[y].append(x)
    return groups


@lru_cache(maxsize=16384)
def _grouped_members(cp: CodePair, s: tuple[int, ...], J: tuple[int, ...], cap: int) -> dict[int, list[int]]:
    J_bar = complement(J, cp.n)
    return _group(_members(cp, s, cap), J, J_bar, cp.spec.order)


def _pair_counts(ket: Mapping[int, list[int]], bra: Mapping[int, list[int]]) -> Counter:
    counts: Counter = Counter()
    for y, xs in ket.items():
        partners = bra.get(y)
        if not partners:
            continue
        for x in xs:
            for x2 in partners:
                counts[x, x2] += 1
    return counts


def complement(J: Iterable[int], n: int) -> tuple[int, ...]:
    J = set(J)
    return tuple(j for j in range(n) if j not in J)


def _check_subset(cp: CodePair, J: Iterable[int]) -> tuple[int, ...]:
    J = tuple(sorted(set(J)))
    if any(not 0 <= j < cp.n for j in J):
        raise SchemeParamsError(f"share subset {list(J)} outside [0, {cp.n})")
    return J


def _check_operator_cap(cp: CodePair, J: tuple[int, ...], cap: int | None) -> int:
    cap = cap if cap is not None else get_settings().operator_cap
    size = cp.spec.order ** max(len(J), cp.n - len(J))
    if size > cap:
        logger.warning("reduced operator on %s needs %d > %d", J, size, cap)
        raise CapExceededError(f"reduced operator on J = {list(J)} needs q^{max(len(J), cp.n - len(J))} = {size} > cap {cap}")
    return cap


def reduced_on_J(
    op: CosetState | OuterProduct, J: Iterable[int], cap: int | None = None
) -> SubsystemOperator:
    """Partial trace over the complement of J of |psi><psi| or |psi><phi|."""
    ket, bra = (op.ket, op.bra) if isinstance(op, OuterProduct) else (op, op)
    cp = ket.cp
    J = _check_subset(cp, J)
    _check_operator_cap(cp, J, cap)
    counts = _reduced_counts(cp, ket.secret, bra.secret, J)
    return SubsystemOperator(J, cp.spec.order, {k: Fraction(v, ket.size) for k, v in counts.items()})


def _reduced_counts(cp: CodePair, s: tuple[int, ...], t: tuple[int, ...], J: tuple[int, ...]) -> Counter:
    coset_cap = get_settings().coset_cap
    return _pair_counts(
        _grouped_members(cp, s, J, coset_cap),
        _grouped_members(cp, t, J, coset_cap),
    )


# -------- oracles --------


def _secret_with(I: Sequence[int], I_bar: Sequence[int], a: Sequence[int], c: Sequence[int], L: int) -> tuple[int, ...]:
    s = [0] * L
    for i, v in zip(I, a):
        s[i] = v
    for i, v in zip(I_bar, c):
        s[i] = v
    return tuple(s)


def channel_output(
    cp: CodePair, op: SecretOperator, J: Iterable[int], cap: int | None = None
) -> SubsystemOperator:
    """Reduced share operator for the secret input |a><b|_I (x) maximally mixed on I-bar."""
    J = _check_subset(cp, J)
    _check_operator_cap(cp, J, cap)
    L = cp.secret_length
    I_bar = complement(op.I, L)
    q = cp.spec.order
    total: Counter = Counter()
    for c in all_secrets(q, len(I_bar)):
        s = _secret_with(op.I, I_bar, op.a, c, L)
        t = _secret_with(op.I, I_bar, op.b, c, L)
        total.update(_reduced_counts(cp, s, t, J))
    norm = q**cp.dim_c2 * q ** len(I_bar)
    return SubsystemOperator(J, q, {k: Fraction(v, norm) for k, v in total.items()})


def _check_secret_indices(cp: CodePair, I: Iterable[int]) -> tuple[int, ...]:
    I = tuple(sorted(set(I)))
    if any(not 0 <= i < cp.secret_length for i in I):
        raise SchemeParamsError(f"secret index set {list(I)} outside [0, {cp.secret_length})")
    return I


def strong_security_oracle(cp: CodePair, I: Iterable[int], J: Iterable[int], cap: int | None = None) -> bool:
    I = _check_secret_indices(cp, I)
    J = _check_subset(cp, J)
    _check_operator_cap(cp, J, cap)
    inputs = all_secrets(cp.spec.order, len(I))
    reference = None
    for a in inputs:
        out = channel_output(cp, SecretOperator(I, a, a), J, cap)
        if reference is None:
            reference = out
        elif out != reference:
            return False
    for a, b in itertools.permutations(inputs, 2):
        if not channel_output(cp, SecretOperator(I, a, b), J, cap).is_zero():
            return False
    return True


def strong_security_fast(cp: CodePair, I: Iterable[int], J: Iterable[int]) -> bool:
    """Rank test on the extended pair: P_J leaks nothing and J-bar plus the I-bar columns carries all of I."""
    I = _check_secret_indices(cp, I)
    J = _check_subset(cp, J)
    ext = extended_pair(cp, I)
    rest = complement(J, cp.n) + ext.appended
    on_j = projected_dim(ext.G1ext, J) - projected_dim(ext.G2ext, J)
    on_rest = projected_dim(ext.G1ext, rest) - projected_dim(ext.G2ext, rest)
    return on_j == 0 and on_rest == len(I)


def forbidden_fast(cp: CodePair, J: Iterable[int]) -> bool:
    return strong_security_fast(cp, range(cp.secret_length), J)


def forbidden_oracle(cp: CodePair, J: Iterable[int], cap: int | None = None) -> bool:
    return strong_security_oracle(cp, range(cp.secret_length), J, cap)


def _resolve(what: str, fast: Callable[[], bool], oracle: Callable[[], bool], mode: CheckMode | str) -> bool:
    mode = CheckMode(mode)
    if mode is CheckMode.fast:
        return fast()
    if mode is CheckMode.oracle:
        return oracle()
    fast_result, oracle_result = fast(), oracle()
    if fast_result != oracle_result:
        logger.error("%s: rank criterion says %s, state oracle says %s", what, fast_result, oracle_result)
        raise ConsistencyError(
            f"{what}: rank criterion ({fast_result}) and state oracle ({oracle_result}) disagree"
        )
    return fast_result


def is_forbidden_exact(
    cp: CodePair, J: Iterable[int], mode: CheckMode | str = CheckMode.both, cap: int | None = None
) -> bool:
    J = _check_subset(cp, J)
    return _resolve(
        f"forbidden({list(J)})",
        lambda: forbidden_fast(cp, J),
        lambda: forbidden_oracle(cp, J, cap),
        mode,
    )


def is_qualified_exact(
    cp: CodePair, J: Iterable[int], mode: CheckMode | str = CheckMode.both, cap: int | None = None
) -> bool:
    J = _check_subset(cp, J)
    return is_forbidden_exact(cp, complement(J, cp.n), mode, cap)


def strong_security_exact(
    cp: CodePair,
    I: Iterable[int],
    J: Iterable[int],
    mode: CheckMode | str = CheckMode.both,
    cap: int | None = None,
) -> bool:
    I = _check_secret_indices(cp, I)
    J = _check_subset(cp, J)
    return _resolve(
        f"strong({list(I)}, {list(J)})",
        lambda: strong_security_fast(cp, I, J),
        lambda: strong_security_oracle(cp, I, J, cap),
        mode,
    )


def verify_isometry(cp: CodePair, cap: int | None = None) -> bool:
    """Encoded basis states are orthonormal: equal-size cosets, pairwise disjoint."""
    cap = cap if cap is not None else get_settings().coset_cap
    q = cp.spec.order
    total = q**cp.secret_length * q**cp.dim_c2
    if total > cap:
        raise CapExceededError(f"isometry check enumerates {total} codewords, cap {cap}")
    seen: set[int] = set()
    for s in all_secrets(q, cp.secret_length):
        members = _members(cp, s, cap)
        keys = set(_keys(members, range(cp.n), q).tolist())
        if len(keys) != q**cp.dim_c2 or seen & keys:
            return False
        seen |= keys
    return True


# -------- decoder synthesis --------


@dataclass(frozen=True)
class NotQualified:
    J: tuple[int, ...]
    reason: str


@dataclass(frozen=True, eq=False)
class DecoderDescription:
    """Invertible relabeling y = M x_J; the first ``secret_block`` entries of y carry the secret."""

    J: tuple[int, ...]
    matrix: MatrixFq
    secret_block: int

    def apply(self, x_J: Sequence[int]) -> tuple[int, ...]:
        GF = self.matrix.spec.GF
        y = self.matrix.data @ GF([int(v) for v in x_J])
        return tuple(as_ints(y).tolist())

    def recover(self, x_J: Sequence[int]) -> tuple[int, ...]:
        return self.apply(x_J)[: self.secret_block]


def synthesize_decoder(cp: CodePair, J: Iterable[int]) -> DecoderDescription | NotQualified:
    """Solve for a decoder from the code pair alone; NotQualified when no linear system solves."""
    J = _check_subset(cp, J)
    L = cp.secret_length
    spec = cp.spec
    J_bar = complement(J, cp.n)
    G2, secret_rows = cp.G2, cp.secret_rows

    # secret representatives vanishing off J
    shifted = []
    for i in range(L):
        g = secret_rows.select_rows([i])
        if not J_bar:
            shifted.append(g.data.reshape(-1))
            continue
        target = -(g.columns(J_bar).data.reshape(-1))
        z = solve_affine(G2.columns(J_bar).T, target)
        if isinstance(z, NoSolution):
            return NotQualified(J, f"secret row {i} has no representative vanishing off J")
        shift = (z.offset.reshape(1, -1) @ G2.data).reshape(-1) if G2.rows else spec.GF.Zeros(cp.n)
        shifted.append(g.data.reshape(-1) + shift)
    G_shift = MatrixFq.from_array(spec, np.vstack([as_ints(g) for g in shifted])).columns(J)

    system = MatrixFq.vstack(spec, [G_shift, G2.columns(J)], len(J))
    phi_rows = []
    for i in range(L):
        rhs = [1 if r == i else 0 for r in range(system.rows)]
        solution = solve_affine(system, rhs)
        if isinstance(solution, NoSolution):
            return NotQualified(J, f"secret digit {i} is not a linear function of the shares on J")
        phi_rows.append(as_ints(solution.offset))

    K = kernel_basis(G_shift)
    M = MatrixFq.vstack(spec, [MatrixFq.from_array(spec, np.vstack(phi_rows)), K], len(J))
    if M.rows != len(J) or rank(M) != len(J):
        raise ConsistencyError(f"decoder on {list(J)} is not a bijection of F_q^{len(J)}")

    decoder = DecoderDescription(J, M, L)
    if not verify_decoder(cp, decoder):
        raise ConsistencyError(f"decoder on {list(J)} failed exact verification")
    logger.debug("decoder on %s verified", list(J))
    return decoder


def _relabeled(cp: CodePair, decoder: DecoderDescription, s: tuple[int, ...]) -> np.ndarray:
    members = _members(cp, s, get_settings().coset_cap)
    GF = cp.spec.GF
    J_bar = complement(decoder.J, cp.n)
    y = as_ints(GF(members[:, list(decoder.J)]) @ decoder.matrix.data.T)
    return np.hstack([y, members[:, list(J_bar)]])


def verify_decoder(cp: CodePair, decoder: DecoderDescription) -> bool:
    """Every |s><s'| maps to |s><s'| on the secret block after tracing out the rest."""
    q = cp.spec.order
    L = decoder.secret_block
    width = cp.n
    keep = list(range(L))
    traced = list(range(L, width))
    secrets = all_secrets(q, L)
    groups = {s: _group(_relabeled(cp, decoder, s), keep, traced, q) for s in secrets}
    weights = q ** np.arange(L - 1, -1, -1, dtype=np.int64)
    for s, t in itertools.product(secrets, repeat=2):
        counts = _pair_counts(groups[s], groups[t])
        expected = {(int(np.dot(s, weights)), int(np.dot(t, weights))): q**cp.dim_c2}
        if dict(counts) != expected:
            logger.debug("decoder on %s fails on |%s><%s|", list(decoder.J), s, t)
            return False
    return True
