"""Exact linear algebra over the integers.

All matrices are numpy arrays with ``dtype=object`` holding Python ints, so
nothing ever rounds or overflows.  The workhorse is a Smith normal form with
optional unimodular transforms; kernels, saturations, integer solves and
cokernel presentations are derived from it.  A column-style Hermite form is
used to put lattice bases into a canonical shape.
"""

from __future__ import annotations

import operator
from typing import NamedTuple, Optional, Sequence

import numpy as np

IntMatrixLike = Sequence[Sequence[int]]


def intmat(data: IntMatrixLike | np.ndarray, shape: tuple[int, int] | None = None) -> np.ndarray:
    """Copy ``data`` into a fresh object-dtype matrix of Python ints.

    ``shape`` is required when ``data`` cannot determine it (no rows, or rows
    of length zero).  Non-integer entries raise ``TypeError``.
    """
    if isinstance(data, np.ndarray):
        rows = data.tolist()
    else:
        rows = [list(r) for r in data]
    m = len(rows)
    n = len(rows[0]) if m else 0
    if shape is not None:
        if m and (m, n) != shape:
            raise ValueError(f"data of shape {(m, n)} does not match requested {shape}")
        m, n = shape
    out = np.empty((m, n), dtype=object)
    for i, r in enumerate(rows):
        if len(r) != n:
            raise ValueError("ragged rows")
        for j, x in enumerate(r):
            out[i, j] = operator.index(x)
    return out


def zeros(m: int, n: int) -> np.ndarray:
    out = np.empty((m, n), dtype=object)
    out[...] = 0
    return out


def eye(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = 1
    return out


def mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact matrix product; handles empty inner dimensions."""
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    if a.shape[0] == 0 or b.shape[1] == 0 or a.shape[1] == 0:
        return zeros(a.shape[0], b.shape[1])
    return np.dot(a, b)


def hstack(blocks: Sequence[np.ndarray]) -> np.ndarray:
    blocks = [b for b in blocks]
    m = blocks[0].shape[0]
    out = zeros(m, sum(b.shape[1] for b in blocks))
    j = 0
    for b in blocks:
        if b.shape[0] != m:
            raise ValueError("row mismatch in hstack")
        out[:, j:j + b.shape[1]] = b
        j += b.shape[1]
    return out


def vstack(blocks: Sequence[np.ndarray]) -> np.ndarray:
    blocks = [b for b in blocks]
    n = blocks[0].shape[1]
    out = zeros(sum(b.shape[0] for b in blocks), n)
    i = 0
    for b in blocks:
        if b.shape[1] != n:
            raise ValueError("column mismatch in vstack")
        out[i:i + b.shape[0], :] = b
        i += b.shape[0]
    return out


def is_zero(a: np.ndarray) -> bool:
    return a.size == 0 or not (a != 0).any()


def det(a: np.ndarray) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    m, n = a.shape
    if m != n:
        raise ValueError("determinant of a non-square matrix")
    if m == 0:
        return 1
    d = a.copy()
    sign = 1
    prev = 1
    for k in range(m - 1):
        if d[k, k] == 0:
            for i in range(k + 1, m):
                if d[i, k] != 0:
                    d[[k, i]] = d[[i, k]]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, m):
            for j in range(k + 1, m):
                d[i, j] = (d[i, j] * d[k, k] - d[i, k] * d[k, j]) // prev
        prev = d[k, k]
    return sign * int(d[m - 1, m - 1])


class SmithForm(NamedTuple):
    """U @ A @ V = diag(diagonal), with U, V unimodular when requested.

    ``diagonal`` has length min(m, n); its nonzero entries are positive,
    come first, and form a divisibility chain d1 | d2 | ... .  ``uinv`` is
    the inverse of ``u`` (maintained directly, never by matrix inversion).
    """

    diagonal: tuple[int, ...]
    rank: int
    u: Optional[np.ndarray]
    uinv: Optional[np.ndarray]
    v: Optional[np.ndarray]


def smith_normal_form(a: np.ndarray, want_u: bool = False,
                      want_uinv: bool = False, want_v: bool = False) -> SmithForm:
    d = a.copy() if a.dtype == object else intmat(a)
    m, n = d.shape
    u = eye(m) if want_u else None
    uinv = eye(m) if want_uinv else None
    v = eye(n) if want_v else None

    def row_add(i, j, c):
        # row_i += c * row_j
        d[i, :] += c * d[j, :]
        if u is not None:
            u[i, :] += c * u[j, :]
        if uinv is not None:
            uinv[:, j] -= c * uinv[:, i]

    def row_swap(i, j):
        d[[i, j]] = d[[j, i]]
        if u is not None:
            u[[i, j]] = u[[j, i]]
        if uinv is not None:
            uinv[:, [i, j]] = uinv[:, [j, i]]

    def row_negate(i):
        d[i, :] *= -1
        if u is not None:
            u[i, :] *= -1
        if uinv is not None:
            uinv[:, i] *= -1

    def col_add(j, i, c):
        # col_j += c * col_i
        d[:, j] += c * d[:, i]
        if v is not None:
            v[:, j] += c * v[:, i]

    def col_swap(i, j):
        d[:, [i, j]] = d[:, [j, i]]
        if v is not None:
            v[:, [i, j]] = v[:, [j, i]]

    def find_pivot(t):
        # Prefer a +-1 entry (no coefficient growth), else minimal |entry|.
        sub = d[t:, t:]
        nz = np.nonzero(sub)
        if len(nz[0]) == 0:
            return None
        best = None
        best_abs = None
        for i, j in zip(nz[0], nz[1]):
            val = abs(sub[i, j])
            if val == 1:
                return (t + int(i), t + int(j))
            if best_abs is None or val < best_abs:
                best_abs = val
                best = (t + int(i), t + int(j))
        return best

    t = 0
    limit = min(m, n)
    while t < limit:
        piv = find_pivot(t)
        if piv is None:
            break
        if piv[0] != t:
            row_swap(t, piv[0])
        if piv[1] != t:
            col_swap(t, piv[1])
        while True:
            if d[t, t] < 0:
                row_negate(t)
            # clear column t
            again = False
            for i in np.nonzero(d[t + 1:, t])[0]:
                i = t + 1 + int(i)
                q = d[i, t] // d[t, t]
                if q:
                    row_add(i, t, -q)
                if d[i, t] != 0:
                    row_swap(t, i)  # strictly smaller pivot
                    again = True
                    break
            if again:
                continue
            # clear row t
            for j in np.nonzero(d[t, t + 1:])[0]:
                j = t + 1 + int(j)
                q = d[t, j] // d[t, t]
                if q:
                    col_add(j, t, -q)
                if d[t, j] != 0:
                    col_swap(t, j)
                    again = True
                    break
            if again:
                continue
            if is_zero(d[t + 1:, t:t + 1]) and is_zero(d[t:t + 1, t + 1:]):
                break
        t += 1
    rank = t

    # Enforce the divisibility chain d_i | d_j for i < j.
    for i in range(rank):
        for j in range(i + 1, rank):
            if d[j, j] % d[i, i] == 0:
                continue
            col_add(i, j, 1)  # puts d_jj into position (j, i)
            while True:
                if d[i, i] < 0:
                    row_negate(i)
                q = d[j, i] // d[i, i]
                if q:
                    row_add(j, i, -q)
                if d[j, i] != 0:
                    row_swap(i, j)
                    continue
                q2 = d[i, j] // d[i, i]
                if q2:
                    col_add(j, i, -q2)
                if d[i, j] != 0:
                    col_swap(i, j)
                    continue
                break
            if d[j, j] < 0:
                row_negate(j)

    diag = tuple(int(d[k, k]) for k in range(limit))
    return SmithForm(diag, rank, u, uinv, v)


def rank(a: np.ndarray) -> int:
    return smith_normal_form(a).rank


def invariant_factors(a: np.ndarray) -> tuple[int, ...]:
    """Nontrivial invariant factors (entries >= 2) of the Smith form."""
    return tuple(x for x in smith_normal_form(a).diagonal if x not in (0, 1))


def kernel_basis(a: np.ndarray) -> np.ndarray:
    """Columns form a basis of {x : a @ x = 0}; always a saturated lattice."""
    snf = smith_normal_form(a, want_v=True)
    ker = snf.v[:, snf.rank:]
    return hermite_column(ker)


def solve(a: np.ndarray, b: np.ndarray) -> Optional[np.ndarray]:
    """An integer solution X of a @ X = b, or None if there is none."""
    if b.shape[0] != a.shape[0]:
        raise ValueError("shape mismatch in solve")
    snf = smith_normal_form(a, want_u=True, want_v=True)
    y = mul(snf.u, b)
    x = zeros(a.shape[1], b.shape[1])
    for i in range(a.shape[0]):
        di = snf.diagonal[i] if i < len(snf.diagonal) else 0
        for j in range(b.shape[1]):
            if i < snf.rank:
                q, r = divmod(y[i, j], di)
                if r != 0:
                    return None
                x[i, j] = q
            elif y[i, j] != 0:
                return None
    return mul(snf.v, x)


def in_column_span(a: np.ndarray, b: np.ndarray) -> bool:
    return solve(a, b) is not None


def column_span_basis(a: np.ndarray) -> np.ndarray:
    """A basis (independent columns, Hermite-normalized) of the column span."""
    return hermite_column(a)


def hermite_column(a: np.ndarray) -> np.ndarray:
    """Column-style Hermite normal form, zero columns dropped.

    Pivots are positive and sit strictly lower as one moves right; entries to
    the right of a pivot in its row vanish and entries to the left are reduced
    into [0, pivot).  The result is the canonical basis of the column span.
    """
    h = a.copy() if a.dtype == object else intmat(a)
    m, n = h.shape
    c = 0  # next pivot column
    for r in range(m):
        # gcd-collect row r into column c using columns >= c
        piv = None
        for j in range(c, n):
            if h[r, j] != 0:
                piv = j
                break
        if piv is None:
            continue
        if piv != c:
            h[:, [c, piv]] = h[:, [piv, c]]
        for j in range(c + 1, n):
            while h[r, j] != 0:
                q = h[r, j] // h[r, c]
                if q:
                    h[:, j] -= q * h[:, c]
                if h[r, j] == 0:
                    break
                h[:, [c, j]] = h[:, [j, c]]
        if h[r, c] < 0:
            h[:, c] *= -1
        for j in range(c):
            q = h[r, j] // h[r, c]
            if q:
                h[:, j] -= q * h[:, c]
        c += 1
        if c == n:
            break
    # drop zero columns
    keep = [j for j in range(n) if not is_zero(h[:, j:j + 1])]
    return h[:, keep] if keep else zeros(m, 0)


def is_saturated(a: np.ndarray) -> bool:
    """True when Z^m / colspan(a) is torsion-free and a has full column rank."""
    snf = smith_normal_form(a)
    return snf.rank == a.shape[1] and all(x == 1 for x in snf.diagonal[:snf.rank])


class CokernelData(NamedTuple):
    """Presentation of Z^m / colspan(A).

    ``orders`` pairs with the columns of ``generators``: order 0 marks a free
    generator, an order d >= 2 a torsion generator of that order.  Torsion
    generators come first, in divisibility order.
    """

    orders: tuple[int, ...]
    generators: np.ndarray


def cokernel_data(a: np.ndarray) -> CokernelData:
    m = a.shape[0]
    snf = smith_normal_form(a, want_uinv=True)
    orders = []
    cols = []
    for i in range(snf.rank):
        if snf.diagonal[i] >= 2:
            orders.append(snf.diagonal[i])
            cols.append(i)
    free_cols = list(range(snf.rank, m))
    gens = snf.uinv[:, cols + free_cols]
    orders.extend([0] * len(free_cols))
    return CokernelData(tuple(orders), gens)


def quotient_invariants(numerator: np.ndarray, denominator: np.ndarray
                        ) -> tuple[int, tuple[int, ...]]:
    """Structure of span(numerator)/span(denominator) inside Z^m.

    Requires span(denominator) <= span(numerator).  Returns (free_rank,
    torsion invariant factors).
    """
    basis = column_span_basis(numerator)
    x = solve(basis, denominator)
    if x is None:
        raise ValueError("denominator does not lie in the span of the numerator")
    snf = smith_normal_form(x)
    torsion = tuple(t for t in snf.diagonal[:snf.rank] if t >= 2)
    return basis.shape[1] - snf.rank, torsion
