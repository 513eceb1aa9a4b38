"""Rank reduction of cubic-linear maps and the dimension-bound pipeline.

A rank factorization A = B @ C (B made of pivot columns, C of the nonzero
reduced-echelon rows) pairs F = X + (AX)^{*3} in dimension n with the
smaller map G = Y + C (BY)^{*3} in dimension r = rank(A).  The projection
C intertwines them, C o F == G o C, and an inverse of G lifts back:

    F^{-1}(Z) = Z - (B @ G^{-1}(C Z))^{*3}.

``corollary_pipeline`` chains the pieces: when every diagonal entry of A
is nonzero and F is Keller, the rank bound forces r <= 4 in dimension at
most 9, so the reduced inverse lives in a tiny space and the lift gives a
fully verified polynomial inverse of F.  Any matrix that satisfies those
hypotheses yet fails a later stage is flagged as an anomaly instead of
raising, so searches can log it and move on.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass

from .druzkowski import (
    _as_matrix,
    _require_square,
    expand_map,
    mixed_cubic_map,
    rank_bound_certificate,
    zero_diagonal_count,
)
from .invert import _decide, default_degree_bound, is_keller, nilpotency_index
from .linalg import ScalarMatrix, rank_factorization
from .matrixio import matrix_entries_text
from .poly import Polynomial, PolyMap, compose, jacobian, linear_combination

logger = logging.getLogger(__name__)

_DIMENSION_CAP = 9


@dataclass(frozen=True)
class GZPair:
    """A cubic-linear map together with its reduced partner."""

    matrix: ScalarMatrix
    B: ScalarMatrix
    C: ScalarMatrix
    G: PolyMap

    @property
    def n(self) -> int:
        return self.matrix.rows

    @property
    def r(self) -> int:
        return self.B.cols

    def projection(self) -> PolyMap:
        """The linear map Y = C X as a polynomial map."""
        return PolyMap(
            [Polynomial.linear_form(row) for row in self.C.entries],
            nvars=self.n,
        )

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "B": matrix_entries_text(self.B),
            "C": matrix_entries_text(self.C),
            "G": [p.to_text() for p in self.G.components],
        }


def gz_reduce(A) -> GZPair:
    """Factor A and build the reduced map, verifying the intertwining.

    Both the factorization B @ C == A and the identity C o F == G o C are
    checked exactly on every call; a failure would be a bug in the
    reduction, so it raises.
    """
    A = _require_square(_as_matrix(A))
    B, C = rank_factorization(A)
    if B * C != A:
        raise RuntimeError(
            "internal check failed: rank factorization does not multiply back"
        )
    G = mixed_cubic_map(B, C)
    F = expand_map(A)
    projection = PolyMap(
        [Polynomial.linear_form(row) for row in C.entries], nvars=A.rows
    )
    C_after_F = PolyMap(
        [
            linear_combination(C.entries[i], F.components, A.rows)
            for i in range(C.rows)
        ],
        nvars=A.rows,
    )
    G_after_C = compose(G, projection)
    if C_after_F != G_after_C:
        raise RuntimeError("internal check failed: reduction does not intertwine")
    return GZPair(matrix=A, B=B, C=C, G=G)


def lift_inverse(pair: GZPair, g_inverse: PolyMap) -> PolyMap:
    """Lift an inverse of the reduced map to an inverse of the full map.

    ``g_inverse`` is re-verified against the reduced map in both
    composition orders before lifting (ValueError if it is not actually
    the inverse), and the lifted map is checked against F exactly.
    """
    r = pair.r
    G = pair.G
    if g_inverse.dimension != r or g_inverse.nvars != r:
        raise ValueError(f"reduced inverse must be a square map in dimension {r}")
    identity_r = PolyMap.identity(r)
    if compose(G, g_inverse) != identity_r or compose(g_inverse, G) != identity_r:
        raise ValueError("supplied map is not a verified inverse of the reduced map")
    n = pair.n
    projection = pair.projection()
    g_of_CZ = compose(g_inverse, projection)
    lifted = [
        linear_combination(pair.B.entries[j], g_of_CZ.components, n)
        for j in range(n)
    ]
    inverse = PolyMap(
        [Polynomial.variable(n, i) - lifted[i].cube() for i in range(n)],
        nvars=n,
    )
    # exact check F(F^{-1}) == id via the collapsed linear forms
    for i in range(n):
        u = linear_combination(pair.matrix.entries[i], inverse.components, n)
        if inverse.components[i] + u.cube() != Polynomial.variable(n, i):
            raise RuntimeError("internal check failed: lifted map does not invert F")
    return inverse


@dataclass(frozen=True)
class CorollaryReport:
    """Step-by-step outcome of the small-dimension invertibility pipeline.

    Fields past the first failed gate stay None.  ``verified`` means a
    polynomial inverse of F was produced and checked in both composition
    orders; ``is_anomaly`` flags a matrix that satisfies every hypothesis
    yet could not be verified, which no input should be able to produce.
    """

    n: int
    diag_nonzero: bool
    keller: bool
    rank: int | None = None
    rank_le_4: bool | None = None
    pair: GZPair | None = None
    g_inverse_degree: int | None = None
    f_inverse: PolyMap | None = None
    verified: bool = False

    @property
    def hypotheses_hold(self) -> bool:
        return self.diag_nonzero and self.keller

    @property
    def is_anomaly(self) -> bool:
        return self.hypotheses_hold and not self.verified

    @property
    def f_inverse_degree(self) -> int | None:
        return None if self.f_inverse is None else self.f_inverse.max_degree()

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "diag_nonzero": self.diag_nonzero,
            "keller": self.keller,
            "rank": self.rank,
            "rank_le_4": self.rank_le_4,
            "pair": None if self.pair is None else self.pair.to_dict(),
            "g_inverse_degree": self.g_inverse_degree,
            "f_inverse": None
            if self.f_inverse is None
            else [p.to_text() for p in self.f_inverse.components],
            "verified": self.verified,
            "anomaly": self.is_anomaly,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def corollary_pipeline(A) -> CorollaryReport:
    """Run the full invertibility argument for dimension at most nine.

    Stages, in order: dimension cap (hard error above nine), nonzero
    diagonal, Keller condition, trace condition and rank at most four,
    reduction, nilpotency of the reduced Jacobian, reduced-map inversion,
    lift, verification.  A failed hypothesis gate (diagonal or Keller)
    ends the run quietly; any failure after both hypotheses hold is
    reported as an anomaly.
    """
    A = _require_square(_as_matrix(A))
    n = A.rows
    if n > _DIMENSION_CAP:
        raise ValueError(
            f"the invertibility argument applies in dimension <= {_DIMENSION_CAP}, got {n}"
        )
    diag_nonzero = zero_diagonal_count(A) == 0
    keller = is_keller(A)
    if not (diag_nonzero and keller):
        return CorollaryReport(n=n, diag_nonzero=diag_nonzero, keller=keller)

    certificate = rank_bound_certificate(A)
    if not certificate.trace_condition_holds:
        raise RuntimeError(
            "internal check failed: Keller map violating the trace condition"
        )
    r = certificate.rank
    rank_le_4 = r <= 4
    if not rank_le_4:
        report = CorollaryReport(
            n=n, diag_nonzero=diag_nonzero, keller=keller, rank=r, rank_le_4=False
        )
        logger.warning("anomaly: rank above four for %r: %s", A, report.to_json())
        return report

    pair = gz_reduce(A)
    base = dict(
        n=n,
        diag_nonzero=diag_nonzero,
        keller=keller,
        rank=r,
        rank_le_4=True,
        pair=pair,
    )
    cubic = PolyMap(
        [pair.G.components[i] - Polynomial.variable(r, i) for i in range(r)],
        nvars=r,
    )
    if nilpotency_index(jacobian(cubic)) is None:
        report = CorollaryReport(**base)
        logger.warning(
            "anomaly: reduced Jacobian not nilpotent for %r: %s", A, report.to_json()
        )
        return report

    g_result = _decide(pair.B, pair.C, default_degree_bound(r))
    if not g_result.invertible:
        report = CorollaryReport(**base)
        logger.warning(
            "anomaly: reduced map not invertible for %r: %s", A, report.to_json()
        )
        return report

    f_inverse = lift_inverse(pair, g_result.inverse)
    return CorollaryReport(
        **base,
        g_inverse_degree=g_result.inverse_degree,
        f_inverse=f_inverse,
        verified=True,
    )
