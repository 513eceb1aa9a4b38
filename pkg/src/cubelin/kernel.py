"""Backend selection for the certificate hot path.

The search harness evaluates the (trace condition, delta, rank) triple on
up to millions of matrices.  When the compiled extension is importable
and a matrix fits the int64 overflow guard, the triple comes from the
Cython kernel; otherwise an equivalent pure-Python routine over unbounded
integers takes over.  Both run the same fraction-free elimination, and
both are cross-checked in tests against the Fraction-based reference in
:mod:`cubelin.druzkowski`.

``BACKEND`` records what import-time selection produced: "compiled" when
the extension loaded, "pure" otherwise.
"""

from __future__ import annotations

import logging

from .druzkowski import RankBoundCertificate, _as_matrix, _require_square
from .druzkowski import rank_bound_certificate as _reference_certificate
from .linalg import ScalarMatrix

try:
    from . import _certkernel
except ImportError:
    _certkernel = None

logger = logging.getLogger(__name__)

BACKEND = "pure" if _certkernel is None else "compiled"

# 8*B^3 < 2^63 for every Bareiss intermediate when B bounds all minors,
# and the Gram triple products stay far below that for the same B.
_MINOR_BOUND_CAP = 1 << 20
_ENTRY_CAP = 10_000


def flatten_gaussian_ints(M: ScalarMatrix) -> list[int] | None:
    """Row-major interleaved (re, im) integers, or None if any entry of M
    is not a Gaussian integer."""
    flat: list[int] = []
    for row in M.entries:
        for c in row:
            if c.re.denominator != 1 or c.im.denominator != 1:
                return None
            flat.append(c.re.numerator)
            flat.append(c.im.numerator)
    return flat


def int_guard_ok(n: int, flat: list[int]) -> bool:
    """Whether int64 arithmetic is provably safe for this matrix."""
    if _certkernel is None or n > _certkernel.kernel_max_n():
        return False
    bound = 1
    for i in range(n):
        row_sum = 0
        for j in range(n):
            row_sum += abs(flat[2 * (i * n + j)]) + abs(flat[2 * (i * n + j) + 1])
            if abs(flat[2 * (i * n + j)]) > _ENTRY_CAP:
                return False
            if abs(flat[2 * (i * n + j) + 1]) > _ENTRY_CAP:
                return False
        bound *= max(row_sum, 1)
        if bound > _MINOR_BOUND_CAP:
            return False
    return True


def certificate_ints(n: int, flat: list[int]) -> tuple[bool, int, int]:
    """(trace condition holds, delta, rank) for a Gaussian-integer matrix.

    Dispatches to the compiled kernel when safe; any kernel exactness
    failure falls back to the pure path, so answers never depend on the
    int64 guard being tight.
    """
    if _certkernel is not None and int_guard_ok(n, flat):
        try:
            return _certkernel.certificate_int(n, flat)
        except RuntimeError:
            pass
    return certificate_ints_pure(n, flat)


def certificate_ints_pure(n: int, flat: list[int]) -> tuple[bool, int, int]:
    """Pure-Python twin of the kernel over unbounded integers."""
    are = [[flat[2 * (i * n + j)] for j in range(n)] for i in range(n)]
    aim = [[flat[2 * (i * n + j) + 1] for j in range(n)] for i in range(n)]

    delta = sum(1 for i in range(n) if are[i][i] == 0 and aim[i][i] == 0)

    holds = True
    for j in range(n):
        if not holds:
            break
        for k in range(j, n):
            sre = 0
            sim = 0
            for i in range(n):
                dre = are[i][i]
                dim_ = aim[i][i]
                if dre == 0 and dim_ == 0:
                    continue
                t1re = dre * are[i][j] - dim_ * aim[i][j]
                t1im = dre * aim[i][j] + dim_ * are[i][j]
                sre += t1re * are[i][k] - t1im * aim[i][k]
                sim += t1re * aim[i][k] + t1im * are[i][k]
            if sre or sim:
                holds = False
                break

    rank_ = 0
    row = 0
    prev_re, prev_im = 1, 0
    for col in range(n):
        if row == n:
            break
        piv = -1
        for i in range(row, n):
            if are[i][col] or aim[i][col]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != row:
            are[row], are[piv] = are[piv], are[row]
            aim[row], aim[piv] = aim[piv], aim[row]
        p_re = are[row][col]
        p_im = aim[row][col]
        den = prev_re * prev_re + prev_im * prev_im
        for i in range(row + 1, n):
            f_re = are[i][col]
            f_im = aim[i][col]
            for j in range(col + 1, n):
                nre = (p_re * are[i][j] - p_im * aim[i][j]) - (
                    f_re * are[row][j] - f_im * aim[row][j]
                )
                nim = (p_re * aim[i][j] + p_im * are[i][j]) - (
                    f_re * aim[row][j] + f_im * are[row][j]
                )
                if prev_re == 1 and prev_im == 0:
                    are[i][j] = nre
                    aim[i][j] = nim
                else:
                    qre_num = nre * prev_re + nim * prev_im
                    qim_num = nim * prev_re - nre * prev_im
                    if qre_num % den or qim_num % den:
                        raise RuntimeError(
                            "inexact division in fraction-free elimination"
                        )
                    are[i][j] = qre_num // den
                    aim[i][j] = qim_num // den
            are[i][col] = 0
            aim[i][col] = 0
        prev_re, prev_im = p_re, p_im
        rank_ += 1
        row += 1

    return holds, delta, rank_


def certificate(A) -> RankBoundCertificate:
    """Rank-bound certificate via the fastest applicable backend.

    Identical output to :func:`cubelin.druzkowski.rank_bound_certificate`
    on every input; non-integer matrices go straight to the reference.
    """
    A = _require_square(_as_matrix(A))
    flat = flatten_gaussian_ints(A)
    if flat is None:
        return _reference_certificate(A)
    n = A.rows
    holds, delta, rank_ = certificate_ints(n, flat)
    result = RankBoundCertificate(
        n=n,
        trace_condition_holds=holds,
        delta=delta,
        rank=rank_,
        bound_times_two=n + delta,
    )
    if not result.theorem_satisfied:
        logger.error("rank bound violated for %r: %s", A, result.to_json())
    return result
