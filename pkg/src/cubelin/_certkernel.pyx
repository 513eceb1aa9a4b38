# cython: language_level=3
"""Fixed-width certificate kernel for Gaussian-integer matrices.

Computes the (trace condition, delta, rank) triple behind the rank-bound
certificate using int64 arithmetic: the Gram check is a direct triple
product and the rank comes from fraction-free (Bareiss) elimination with
column skipping.  Callers are responsible for staying inside the overflow
guard; every exact division is remainder-checked and raises on failure,
so a guard miss degrades to an exception, never to a wrong answer.
"""

from libc.stdint cimport int64_t

DEF MAX_N = 16


def kernel_max_n():
    return MAX_N


def certificate_int(int n, flat):
    """(holds, delta, rank) for an n x n matrix of Gaussian integers.

    ``flat`` lists entries row-major as interleaved (re, im) Python ints:
    [re00, im00, re01, im01, ...], 2*n*n values in total.
    """
    cdef int64_t are[MAX_N][MAX_N]
    cdef int64_t aim[MAX_N][MAX_N]
    cdef int i, j, k, col, row, piv
    cdef int64_t dre, dim_, t1re, t1im, sre, sim
    cdef int64_t p_re, p_im, f_re, f_im, nre, nim
    cdef int64_t den, qre_num, qim_num
    cdef int64_t prev_re, prev_im
    cdef bint holds
    cdef int delta, rank_

    if n < 0 or n > MAX_N:
        raise ValueError(f"kernel supports sizes 0..{MAX_N}, got {n}")
    if len(flat) != 2 * n * n:
        raise ValueError("flat entry list has the wrong length")

    k = 0
    for i in range(n):
        for j in range(n):
            are[i][j] = flat[k]
            aim[i][j] = flat[k + 1]
            k += 2

    delta = 0
    for i in range(n):
        if are[i][i] == 0 and aim[i][i] == 0:
            delta += 1

    # Gram check: (A^T D A)[j][k] = sum_i a_ii * a_ij * a_ik; the matrix
    # is symmetric, so the upper triangle suffices.
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
            if sre != 0 or sim != 0:
                holds = False
                break

    # Bareiss rank: entries stay exact minors of the input, divisions by
    # the previous pivot are exact (checked).
    rank_ = 0
    row = 0
    prev_re = 1
    prev_im = 0
    for col in range(n):
        if row == n:
            break
        piv = -1
        for i in range(row, n):
            if are[i][col] != 0 or aim[i][col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != row:
            for j in range(n):
                t1re = are[row][j]
                are[row][j] = are[piv][j]
                are[piv][j] = t1re
                t1im = aim[row][j]
                aim[row][j] = aim[piv][j]
                aim[piv][j] = t1im
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
                    if qre_num % den != 0 or qim_num % den != 0:
                        raise RuntimeError(
                            "inexact division in fraction-free elimination"
                        )
                    are[i][j] = qre_num // den
                    aim[i][j] = qim_num // den
            are[i][col] = 0
            aim[i][col] = 0
        prev_re = p_re
        prev_im = p_im
        rank_ += 1
        row += 1

    return bool(holds), delta, rank_
