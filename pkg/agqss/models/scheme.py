"""Secret-sharing instance: place assignment, the code pair C2 < C1 and its I-extension.

The basis of L(G) is adapted to the secret map: row i < L of ``functions`` is
a function with h(Q_j) = delta_ij, and the remaining rows span
L(G - Q_1 - ... - Q_L). The secret carried by a codeword is therefore the first
L coordinates of its coefficient vector over ``generator``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

from agqss.core.errors import NotInjectiveError, NotSurjectiveError, SchemeParamsError
from agqss.models.fqmat import (
    AffineCoset,
    MatrixFq,
    NoSolution,
    kernel_basis,
    rank,
    solve_affine,
)
from agqss.models.funcfield import (
    CurveModel,
    Monomial,
    Place,
    affine_places,
    evaluation_matrix,
    genus,
    rr_basis,
)
from agqss.models.gf import FieldSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SchemeParams:
    curve: CurveModel
    u: int
    n: int
    secret_length: int
    share_places: tuple[Place, ...]
    secret_places: tuple[Place, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "share_places", tuple(self.share_places))
        object.__setattr__(self, "secret_places", tuple(self.secret_places))
        if self.u < 0:
            raise SchemeParamsError(f"deg G = {self.u} must be nonnegative")
        if self.n < 1 or self.secret_length < 1:
            raise SchemeParamsError("need n >= 1 shares and L >= 1 secret digits")
        available = affine_places(self.curve)
        if self.n + self.secret_length > len(available):
            raise SchemeParamsError(
                f"n + L = {self.n + self.secret_length} exceeds the {len(available)} affine "
                f"rational places of {self.curve}"
            )
        if len(self.share_places) != self.n:
            raise SchemeParamsError(f"{len(self.share_places)} share places given for n = {self.n}")
        if len(self.secret_places) != self.secret_length:
            raise SchemeParamsError(
                f"{len(self.secret_places)} secret places given for L = {self.secret_length}"
            )
        used = self.share_places + self.secret_places
        if any(P.is_infinity for P in used):
            raise SchemeParamsError("Q_inf is the support of G and cannot carry a share or secret")
        unknown = [str(P) for P in used if P not in available]
        if unknown:
            raise SchemeParamsError(f"places {', '.join(unknown)} are not rational places of {self.curve}")
        if len(set(used)) != len(used):
            raise SchemeParamsError("share and secret places must be pairwise distinct")

    @classmethod
    def with_default_places(
        cls,
        curve: CurveModel,
        u: int,
        n: int,
        secret_length: int,
        share_places: Sequence[Place] | None = None,
        secret_places: Sequence[Place] | None = None,
    ) -> SchemeParams:
        """First n affine places carry shares, the next L carry the secret, unless given."""
        available = affine_places(curve)
        if share_places is None:
            share_places = available[:n]
        if secret_places is None:
            remaining = [P for P in available if P not in set(share_places)]
            secret_places = remaining[:secret_length]
        return cls(curve, u, n, secret_length, tuple(share_places), tuple(secret_places))

    @property
    def field(self) -> FieldSpec:
        return self.curve.field

    @property
    def genus(self) -> int:
        return genus(self.curve)


@dataclass(frozen=True, eq=False)
class CodePair:
    params: SchemeParams
    monomials: tuple[Monomial, ...]
    functions: MatrixFq  # adapted basis of L(G), monomial coordinates
    generator: MatrixFq  # G1; the last dim C2 rows generate C2
    secret_eval: MatrixFq  # values of the adapted basis at Q_1..Q_L, i.e. [I_L; 0]

    @property
    def spec(self) -> FieldSpec:
        return self.params.field

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def secret_length(self) -> int:
        return self.params.secret_length

    @property
    def G1(self) -> MatrixFq:
        return self.generator

    @property
    def G2(self) -> MatrixFq:
        return self.generator.select_rows(range(self.secret_length, self.generator.rows))

    @property
    def secret_rows(self) -> MatrixFq:
        return self.generator.select_rows(range(self.secret_length))

    @property
    def dim_c1(self) -> int:
        return self.generator.rows

    @property
    def dim_c2(self) -> int:
        return self.generator.rows - self.secret_length

    def secret_coset(self, secret) -> AffineCoset:
        """Coefficient vectors of every h in L(G) with (h(Q_1), ..., h(Q_L)) = secret."""
        solution = solve_affine(self.secret_eval.T, secret)
        if isinstance(solution, NoSolution):
            raise NotSurjectiveError(f"secret {list(secret)} is not in the image of the secret map")
        return solution


@dataclass(frozen=True, eq=False)
class ExtendedCodePair:
    base: CodePair
    I: tuple[int, ...]
    I_bar: tuple[int, ...]
    G1ext: MatrixFq
    G2ext: MatrixFq

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def appended(self) -> tuple[int, ...]:
        """Column indices of the appended Q-evaluations."""
        return tuple(range(self.base.n, self.base.n + len(self.I_bar)))


@dataclass(frozen=True)
class Thresholds:
    u: int
    n: int
    secret_length: int
    genus: int
    t_forbidden: int
    t_qualified: int
    margin: int

    @property
    def forbidden_vacuous(self) -> bool:
        return self.t_forbidden < 0

    @property
    def qualified_vacuous(self) -> bool:
        return self.t_qualified > self.n

    def strong_bound(self, i_bar_size: int) -> int:
        """Largest |J| covered by the strong-security bound for |I-bar| = i_bar_size."""
        return i_bar_size + self.t_forbidden

    def strong_bound_satisfied(self, i_bar_size: int, j_size: int) -> bool:
        return j_size <= self.strong_bound(i_bar_size)


def build(params: SchemeParams) -> CodePair:
    spec = params.field
    L = params.secret_length
    basis = rr_basis(params.curve, params.u)
    k = basis.dim

    eval_p = evaluation_matrix(params.curve, basis.monomials, params.share_places)
    eval_q = evaluation_matrix(params.curve, basis.monomials, params.secret_places)

    # L = dim L(G) - dim L(G - Q_1 - ... - Q_L)
    kernel_q = kernel_basis(eval_q.T)
    if k - kernel_q.rows != L:
        raise NotSurjectiveError(
            f"dim L(G) - dim L(G - sum Q_i) = {k} - {kernel_q.rows} != L = {L}; "
            "the secret map is not onto"
        )
    # 0 = dim L(G - P_1 - ... - P_n)
    if rank(eval_p) != k:
        raise NotInjectiveError(
            f"dim L(G - sum P_j) = {k - rank(eval_p)} > 0; shares do not determine h"
        )

    secret_funcs = []
    for i in range(L):
        target = [1 if j == i else 0 for j in range(L)]
        solution = solve_affine(eval_q.T, target)
        secret_funcs.append(solution.offset)
    functions = MatrixFq.vstack(
        spec,
        [MatrixFq.from_array(spec, [list(map(int, f)) for f in secret_funcs]), kernel_q],
        k,
    )
    generator = functions @ eval_p
    secret_eval = functions @ eval_q

    logger.info(
        "built code pair on %s: u=%d n=%d L=%d dim C1=%d dim C2=%d",
        params.curve, params.u, params.n, L, generator.rows, generator.rows - L,
    )
    return CodePair(params, basis.monomials, functions, generator, secret_eval)


def extended_pair(cp: CodePair, I: Iterable[int]) -> ExtendedCodePair:
    """Append the Q_i evaluations for i in I-bar; C2' also keeps the I-bar secret rows."""
    L = cp.secret_length
    I = tuple(sorted(set(I)))
    if any(not 0 <= i < L for i in I):
        raise SchemeParamsError(f"secret index set {list(I)} outside [0, {L})")
    I_bar = tuple(i for i in range(L) if i not in I)

    appended = cp.secret_eval.columns(I_bar)
    G1ext = MatrixFq.hstack(cp.spec, [cp.generator, appended], cp.generator.rows)
    keep = list(I_bar) + list(range(L, cp.generator.rows))
    G2ext = G1ext.select_rows(keep)
    return ExtendedCodePair(cp, I, I_bar, G1ext, G2ext)


def thresholds(params: SchemeParams) -> Thresholds:
    u, n, L, g = params.u, params.n, params.secret_length, params.genus
    margin = u - L - 2 * g + 1
    t_forbidden = min(margin, n - 1 - u)
    t_qualified = max(1 + u, n - margin)
    return Thresholds(u, n, L, g, t_forbidden, t_qualified, margin)
