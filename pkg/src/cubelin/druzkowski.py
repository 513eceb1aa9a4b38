"""Cubic-linear maps F(X) = X + (AX)^{*3} and the rank-bound certificate.

For an n x n matrix A over Q(i), write t_i for the linear form given by
row i of A.  The map sends x_i to x_i + t_i^3.  Its Jacobian is
I + 3 * diag(t_i^2) * A, so the trace of the cubic part is
3 * sum_i a_ii * t_i^2.

That trace vanishes identically iff the Gram-style matrix A^T D A is zero,
where D = diag(a_11, ..., a_nn) and the transpose is plain (no conjugation;
the quadratic form t_i^2 is not a Hermitian norm).  When it vanishes,
2 * rank(A) <= n + delta with delta the number of zero diagonal entries.
The certificate below records both sides of that inequality.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass

from .linalg import ScalarMatrix, rank
from .poly import Polynomial, PolyMap, cube_linear_form, linear_combination
from .scalars import GaussianRational, ZERO

logger = logging.getLogger(__name__)


def _as_matrix(A) -> ScalarMatrix:
    return A if isinstance(A, ScalarMatrix) else ScalarMatrix(A)


def _require_square(A: ScalarMatrix) -> ScalarMatrix:
    if not A.is_square():
        raise ValueError(f"cubic-linear map needs a square matrix, got {A.rows}x{A.cols}")
    return A


def linear_forms(A) -> list[Polynomial]:
    """The forms t_i = sum_j a_ij x_j, one per row of A."""
    A = _require_square(_as_matrix(A))
    return [Polynomial.linear_form(row) for row in A.entries]


def expand_map(A) -> PolyMap:
    """The full polynomial map X + (AX)^{*3} with cubes expanded."""
    A = _require_square(_as_matrix(A))
    n = A.rows
    return PolyMap(
        [
            Polynomial.variable(n, i) + cube_linear_form(A.entries[i])
            for i in range(n)
        ],
        nvars=n,
    )


def cubic_part(A) -> PolyMap:
    """Just (AX)^{*3}, the homogeneous degree-3 part of the map."""
    A = _require_square(_as_matrix(A))
    return PolyMap(
        [cube_linear_form(row) for row in A.entries], nvars=A.rows
    )


def trace_poly(A) -> Polynomial:
    """Trace of the Jacobian of the cubic part: 3 * sum_i a_ii * t_i^2."""
    A = _require_square(_as_matrix(A))
    n = A.rows
    total = Polynomial.zero(n)
    three = GaussianRational(3)
    for i in range(n):
        d = A.entries[i][i]
        if not d:
            continue
        t = Polynomial.linear_form(A.entries[i])
        total = total + (t * t).scale(three * d)
    return total


def gram_matrix(A) -> ScalarMatrix:
    """A^T diag(a_11..a_nn) A, with plain (non-conjugating) transpose."""
    A = _require_square(_as_matrix(A))
    diag = A.diagonal()
    scaled = ScalarMatrix._raw(
        tuple(
            tuple(d * c for c in row) if d else tuple(ZERO for _ in row)
            for d, row in zip(diag, A.entries)
        ),
        A.cols,
    )
    return A.transpose() * scaled


def gram_and_condition(A) -> tuple[ScalarMatrix, bool]:
    """The Gram-style matrix together with whether it vanishes.

    Vanishing is equivalent to the trace polynomial being identically
    zero: the quadratic form sum_i a_ii t_i^2 has matrix A^T D A.
    """
    G = gram_matrix(A)
    return G, G.is_zero()


def trace_condition_holds(A) -> bool:
    return gram_and_condition(A)[1]


def zero_diagonal_count(A) -> int:
    """delta: how many diagonal entries of A are zero."""
    A = _require_square(_as_matrix(A))
    return sum(1 for c in A.diagonal() if not c)


delta = zero_diagonal_count


@dataclass(frozen=True)
class RankBoundCertificate:
    """Checked instance of the inequality 2 * rank(A) <= n + delta.

    ``theorem_satisfied`` is vacuously true when the trace condition
    fails (the bound is only claimed under that hypothesis).
    """

    n: int
    trace_condition_holds: bool
    delta: int
    rank: int
    bound_times_two: int

    @property
    def theorem_satisfied(self) -> bool:
        if not self.trace_condition_holds:
            return True
        return 2 * self.rank <= self.bound_times_two

    def to_dict(self) -> dict:
        return {
            "trace_condition_holds": self.trace_condition_holds,
            "delta": self.delta,
            "rank": self.rank,
            "bound_times_two": self.bound_times_two,
            "theorem_satisfied": self.theorem_satisfied,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def rank_bound_certificate(A) -> RankBoundCertificate:
    """Evaluate every quantity in the rank bound exactly and package it."""
    A = _require_square(_as_matrix(A))
    n = A.rows
    _, holds = gram_and_condition(A)
    delta = zero_diagonal_count(A)
    certificate = RankBoundCertificate(
        n=n,
        trace_condition_holds=holds,
        delta=delta,
        rank=rank(A),
        bound_times_two=n + delta,
    )
    if not certificate.theorem_satisfied:
        # would be a counterexample to the rank bound; surface it loudly
        logger.error(
            "rank bound violated for %r: %s", A, certificate.to_json()
        )
    return certificate


@dataclass(frozen=True)
class DruzkowskiMap:
    """A cubic-linear map bundled with its defining matrix."""

    matrix: ScalarMatrix

    @property
    def n(self) -> int:
        return self.matrix.rows

    def polynomial_map(self) -> PolyMap:
        return expand_map(self.matrix)

    def certificate(self) -> RankBoundCertificate:
        return rank_bound_certificate(self.matrix)


def mixed_cubic_map(mix: ScalarMatrix, comb: ScalarMatrix | None) -> PolyMap:
    """The map Y -> Y + comb @ (mix @ Y)^{*3} in dim(Y) = mix.cols variables.

    With ``comb`` None this is X + (AX)^{*3} for mix = A (square).  With a
    rectangular pair (comb r x m, mix m x r) it covers the reduced maps
    produced by pairing.
    """
    nvars = mix.cols
    cubes = [cube_linear_form(row) for row in mix.entries]
    if comb is None:
        if mix.rows != nvars:
            raise ValueError("square matrix required when no combination matrix given")
        return PolyMap(
            [Polynomial.variable(nvars, i) + cubes[i] for i in range(nvars)],
            nvars=nvars,
        )
    if comb.cols != mix.rows:
        raise ValueError("shape mismatch between combination and mixing matrices")
    components = []
    for i in range(comb.rows):
        body = linear_combination(comb.entries[i], cubes, nvars)
        components.append(Polynomial.variable(nvars, i) + body)
    if comb.rows != nvars:
        raise ValueError("combination matrix must be square in the reduced dimension")
    return PolyMap(components, nvars=nvars)
