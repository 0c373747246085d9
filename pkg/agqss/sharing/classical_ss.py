"""Classical ramp scheme over the same code pair: deal, reconstruct, measure leakage."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from agqss.core.config import get_settings
from agqss.core.errors import ConsistencyError, NotACodewordError, SchemeParamsError
from agqss.models.fqmat import (
    AffineCoset,
    NoSolution,
    as_ints,
    enumerate_coset,
    projected_dim,
    rank,
    solve_affine,
)
from agqss.models.scheme import CodePair

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ShareVector:
    values: tuple[int, ...]  # j-th entry = h(P_j), element reprs

    def restrict(self, J: Iterable[int]) -> tuple[int, ...]:
        return tuple(self.values[j] for j in J)


@dataclass(frozen=True)
class Ambiguous:
    """The given shares are consistent with ``count`` different secrets."""

    count: int


def _check_secret(cp: CodePair, secret: Sequence[int]) -> list[int]:
    secret = [int(s) for s in secret]
    if len(secret) != cp.secret_length:
        raise SchemeParamsError(f"secret has {len(secret)} digits, instance expects L = {cp.secret_length}")
    if any(not 0 <= s < cp.spec.order for s in secret):
        raise SchemeParamsError(f"secret digits must be element reprs in [0, {cp.spec.order})")
    return secret


def _check_subset(cp: CodePair, J: Iterable[int]) -> list[int]:
    J = sorted(set(J))
    if any(not 0 <= j < cp.n for j in J):
        raise SchemeParamsError(f"share subset {J} outside [0, {cp.n})")
    return J


def deal(cp: CodePair, secret: Sequence[int], seed: int | None = None) -> ShareVector:
    """Pick h in L(G) with h(Q_i) = s_i uniformly at random and return (h(P_1), ..., h(P_n))."""
    secret = _check_secret(cp, secret)
    solutions = cp.secret_coset(secret)
    rng = np.random.default_rng(seed)
    GF = cp.spec.GF

    coeffs = solutions.offset
    if solutions.dim:
        r = GF(rng.integers(0, cp.spec.order, size=solutions.dim))
        coeffs = coeffs + (r.reshape(1, -1) @ solutions.basis.data).reshape(-1)
    shares = coeffs.reshape(1, -1) @ cp.generator.data
    return ShareVector(tuple(as_ints(shares).reshape(-1).tolist()))


def reconstruct(cp: CodePair, J: Iterable[int], values: Sequence[int]) -> tuple[int, ...] | Ambiguous:
    J = _check_subset(cp, J)
    if len(values) != len(J):
        raise SchemeParamsError(f"{len(values)} share values given for {len(J)} shares")
    q = cp.spec.order
    bad = [int(v) for v in values if not 0 <= int(v) < q]
    if bad:
        raise SchemeParamsError(f"share values {bad} outside F_{q}")
    L = cp.secret_length

    solution = solve_affine(cp.generator.columns(J).T, list(values))
    if isinstance(solution, NoSolution):
        raise NotACodewordError(f"share values on {J} do not match any codeword of C1")

    secret_offset = as_ints(solution.offset)[:L]
    free = rank(solution.basis.columns(range(L))) if solution.dim else 0
    if free:
        return Ambiguous(cp.spec.order**free)
    return tuple(int(s) for s in secret_offset)


def _exact_log(count: int, q: int) -> int:
    e = 0
    value = 1
    while value < count:
        value *= q
        e += 1
    if value != count:
        raise ConsistencyError(f"support size {count} is not a power of {q}")
    return e


def _uniform_entropy(counts: np.ndarray, q: int) -> int:
    """log_q of the support size of a distribution that must be uniform."""
    if counts.size and np.any(counts != counts[0]):
        raise ConsistencyError("share distribution is not uniform over its support")
    return _exact_log(int(counts.size), q)


def leakage_exact(cp: CodePair, J: Iterable[int], cap: int | None = None) -> Fraction:
    """I(secret; shares on J) in units of log_q symbols, for a uniform secret."""
    J = _check_subset(cp, J)
    q = cp.spec.order
    cap = cap if cap is not None else get_settings().coset_cap

    # all of C1, ordered so that codeword index // |C2| is the secret index
    code = AffineCoset(cp.spec.GF.Zeros(cp.n), cp.generator)
    codewords = enumerate_coset(code, cap=cap)
    if not J:
        return Fraction(0)

    weights = q ** np.arange(len(J) - 1, -1, -1, dtype=np.int64)
    share_keys = codewords[:, J] @ weights
    secret_index = np.arange(codewords.shape[0], dtype=np.int64) // (q**cp.dim_c2)

    _, share_counts = np.unique(share_keys, return_counts=True)
    h_shares = _uniform_entropy(share_counts, q)

    h_conditional = Fraction(0)
    n_secrets = q**cp.secret_length
    for s in range(n_secrets):
        _, counts = np.unique(share_keys[secret_index == s], return_counts=True)
        h_conditional += Fraction(_uniform_entropy(counts, q), n_secrets)

    leak = h_shares - h_conditional
    logger.debug("leakage on %s: %s", J, leak)
    return leak


def projected_leakage(cp: CodePair, J: Iterable[int]) -> int:
    """dim P_J(C1) - dim P_J(C2), the closed form leakage_exact agrees with."""
    J = _check_subset(cp, J)
    return projected_dim(cp.G1, J) - projected_dim(cp.G2, J)

