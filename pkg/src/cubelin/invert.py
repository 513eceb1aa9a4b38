"""Keller test and exact inversion for cubic-linear maps.

Inversion runs the fixed-point recurrence G <- X - H(G), truncated at a
degree bound, which converges to the truncated formal inverse series in
finitely many steps.  For maps of the shape X + comb @ (mix @ X)^{*3} the
recurrence is evaluated in structured form: collapse the linear forms
u_j = mix_j . G first, then cube.  The collapse is where all the
cancellation lives, so iterates stay small even when the generic
composition would blow up.

Once the iteration is stationary, F o G == id reduces to an exact identity
on the collapsed forms (no truncation), and G o F == id follows from
F o G == id because maps with identity linear part form a group under
formal composition; it is still re-verified here through one cheap scalar
composition per row of the mixing matrix.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .druzkowski import cubic_part, expand_map, mixed_cubic_map, _as_matrix, _require_square
from .linalg import ScalarMatrix
from .poly import (
    Polynomial,
    PolyMap,
    PolyMatrix,
    compose,
    compose_polynomial,
    cube_linear_form,
    det,
    jacobian,
    linear_combination,
)

INVERTIBLE = "Invertible"
NOT_INVERTIBLE = "NotInvertible"

_DET_CROSS_CHECK_CAP = 6


def nilpotency_index(M: PolyMatrix) -> int | None:
    """Least k >= 1 with M^k == 0, or None if M is not nilpotent.

    Powers are checked only up to the matrix size: over the fraction
    field a nilpotent n x n matrix always dies by exponent n.
    """
    if not M.is_square():
        raise ValueError("nilpotency is defined for square matrices only")
    n = M.rows
    if M.is_zero():
        return 1
    power = M
    for k in range(1, n + 1):
        if power.is_zero():
            return k
        if k < n:
            power = power * M
    return None


def is_keller(A) -> bool:
    """Whether det J(X + (AX)^{*3}) == 1, tested through nilpotency.

    For cubic homogeneous H the Jacobian determinant is identically 1
    exactly when JH is nilpotent.  In small dimensions the determinant is
    also expanded directly and compared; a disagreement would mean a bug,
    not a mathematical finding, so it raises.
    """
    A = _require_square(_as_matrix(A))
    n = A.rows
    JH = jacobian(cubic_part(A))
    nilpotent = nilpotency_index(JH) is not None
    if n <= _DET_CROSS_CHECK_CAP:
        d = det(jacobian(expand_map(A)))
        det_says = d == Polynomial.one(n)
        if det_says != nilpotent:
            raise RuntimeError(
                "internal check failed: Jacobian determinant and nilpotency "
                f"disagree for {A!r}"
            )
    return nilpotent


def default_degree_bound(n: int) -> int:
    """3^(n-1): the degree bound for inverses of cubic maps in dimension n."""
    return 3 ** (n - 1) if n >= 1 else 1


@dataclass(frozen=True)
class InverseResult:
    """Outcome of an inversion attempt at a fixed degree bound."""

    status: str
    degree_bound_used: int
    inverse: PolyMap | None = None

    @property
    def invertible(self) -> bool:
        return self.status == INVERTIBLE

    @property
    def inverse_degree(self) -> int | None:
        if self.inverse is None:
            return None
        return self.inverse.max_degree()

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "degree_bound_used": self.degree_bound_used,
            "inverse_degree": self.inverse_degree,
            "inverse": None
            if self.inverse is None
            else [p.to_text() for p in self.inverse.components],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _identity_components(n: int) -> list[Polynomial]:
    return [Polynomial.variable(n, i) for i in range(n)]


def formal_inverse(F: PolyMap, degree_bound: int) -> PolyMap:
    """Truncated formal inverse series of F = X + (degree >= 2 terms).

    No invertibility claim is made: the returned map satisfies
    F(G(X)) == X modulo degrees above the bound, nothing more.  Raises
    ValueError when F's shape breaks the precondition.
    """
    n = F.nvars
    if F.dimension != n:
        raise ValueError("formal inverse needs a square map")
    if degree_bound < 1:
        raise ValueError("degree bound must be at least 1")
    identity = _identity_components(n)
    higher = []
    for i, p in enumerate(F.components):
        h = p - identity[i]
        if any(sum(e) < 2 for e in h.terms):
            raise ValueError(
                "formal inverse needs identity linear part plus terms of "
                f"degree >= 2; component {i + 1} violates this"
            )
        higher.append(h)
    H = PolyMap(higher, nvars=n)
    G = PolyMap(identity, nvars=n)
    for _ in range(degree_bound + 2):
        HG = compose(H, G, truncate_above=degree_bound)
        new = PolyMap(
            [identity[i] - HG.components[i] for i in range(n)], nvars=n
        )
        if new == G:
            return G
        G = new
    raise RuntimeError("fixed-point iteration failed to stabilize")


def _decide(mix: ScalarMatrix, comb: ScalarMatrix | None, bound: int) -> InverseResult:
    """Decide invertibility of X + comb @ (mix @ X)^{*3} within a bound.

    comb None means the identity combination (mix must then be square).
    """
    dim = mix.cols
    nrows = mix.rows
    if comb is None:
        if nrows != dim:
            raise ValueError("square mixing matrix required without a combination matrix")
    elif comb.rows != dim or comb.cols != nrows:
        raise ValueError("combination matrix shape does not match the mixing matrix")
    if bound < 1:
        raise ValueError("degree bound must be at least 1")
    identity = _identity_components(dim)

    def step(components: list[Polynomial]) -> tuple[list[Polynomial], list[Polynomial]]:
        forms = [
            linear_combination(mix.entries[j], components, dim) for j in range(nrows)
        ]
        cubes = [u.cube(truncate_above=bound) for u in forms]
        if comb is None:
            new = [identity[i] - cubes[i] for i in range(dim)]
        else:
            new = [
                identity[i] - linear_combination(comb.entries[i], cubes, dim)
                for i in range(dim)
            ]
        return new, forms

    components = list(identity)
    stable = False
    for _ in range(bound + 2):
        new, _ = step(components)
        if new == components:
            stable = True
            break
        components = new
    if not stable:
        raise RuntimeError("fixed-point iteration failed to stabilize")

    # Exact right-composition check: F(G) == X iff the untruncated cube
    # combination reproduces X - G.
    forms = [linear_combination(mix.entries[j], components, dim) for j in range(nrows)]
    exact_cubes = [u.cube() for u in forms]
    for i in range(dim):
        if comb is None:
            body = exact_cubes[i]
        else:
            body = linear_combination(comb.entries[i], exact_cubes, dim)
        if body != identity[i] - components[i]:
            return InverseResult(status=NOT_INVERTIBLE, degree_bound_used=bound)

    # Exact left-composition check: G(F) == X iff composing the collapsed
    # forms with F turns each cube back into the cube of the original row.
    F = mixed_cubic_map(mix, comb)
    target_cubes = [cube_linear_form(mix.entries[j]) for j in range(nrows)]
    memo: dict[tuple[int, ...], Polynomial] = {}
    for j in range(nrows):
        w = compose_polynomial(forms[j], F, _memo=memo)
        composed_cube = w.cube()
        if comb is None:
            if composed_cube != target_cubes[j]:
                raise RuntimeError(
                    "internal check failed: right inverse is not a left inverse"
                )
        else:
            # compare per-row; combined below for rectangular comb
            target_cubes[j] = target_cubes[j] - composed_cube
    if comb is not None:
        for i in range(dim):
            residue = linear_combination(comb.entries[i], target_cubes, dim)
            if not residue.is_zero():
                raise RuntimeError(
                    "internal check failed: right inverse is not a left inverse"
                )

    inverse = PolyMap(components, nvars=dim)
    return InverseResult(status=INVERTIBLE, degree_bound_used=bound, inverse=inverse)


def decide_automorphism(A, degree_bound: int | None = None) -> InverseResult:
    """Decide whether X + (AX)^{*3} has a polynomial inverse.

    The default bound 3^(n-1) is the maximum possible inverse degree, so
    with it the answer is unconditional; a caller-supplied bound decides
    invertibility-within-that-bound instead.
    """
    A = _require_square(_as_matrix(A))
    bound = default_degree_bound(A.rows) if degree_bound is None else degree_bound
    return _decide(A, None, bound)
