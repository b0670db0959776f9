"""Exact symmetric-matrix kernel: integer matrices, rational PSD certificates,
and integer row-space bases.

Everything theorem-critical downstream (threshold eigenvalue tests, Gram
factorizations, lattice discriminants) reduces to the three operations here,
so they are implemented over exact arithmetic only: fraction-free symmetric
elimination for PSD verdicts, bisection over PSD probes for eigenvalue
brackets, and a Hermite-style echelon form for lattice bases.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "IntSymMatrix",
    "PSDVerdict",
    "psd_check",
    "lambda_min_bracket",
    "integer_rowspace_basis",
]


class IntSymMatrix:
    """Immutable symmetric matrix with arbitrary-precision integer entries."""

    __slots__ = ("_rows", "_n")

    def __init__(self, rows: Iterable[Iterable[int]]):
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        n = len(rows)
        if n == 0:
            raise ValueError("order must be at least 1")
        for row in rows:
            if len(row) != n:
                raise ValueError("matrix must be square")
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(f"not symmetric at ({i}, {j})")
        self._rows = rows
        self._n = n

    @classmethod
    def identity(cls, n: int) -> "IntSymMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, values: Sequence[int]) -> "IntSymMatrix":
        vals = list(values)
        return cls([[vals[i] if i == j else 0 for j in range(len(vals))]
                    for i in range(len(vals))])

    @property
    def order(self) -> int:
        return self._n

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        return self._rows[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self._rows[i]

    def rows(self) -> tuple[tuple[int, ...], ...]:
        return self._rows

    def shifted(self, t: int) -> "IntSymMatrix":
        """Return self + t*I for an integer t."""
        t = int(t)
        return IntSymMatrix(
            [tuple(x + t if i == j else x for j, x in enumerate(row))
             for i, row in enumerate(self._rows)])

    def submatrix(self, indices: Sequence[int]) -> "IntSymMatrix":
        """Principal submatrix on the given (deduplicated, ordered) indices."""
        idx = list(indices)
        if len(set(idx)) != len(idx):
            raise ValueError("duplicate indices")
        return IntSymMatrix([[self._rows[i][j] for j in idx] for i in idx])

    def to_numpy(self, dtype=float) -> np.ndarray:
        return np.array(self._rows, dtype=dtype)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntSymMatrix) and self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        return f"IntSymMatrix({[list(r) for r in self._rows]!r})"


@dataclass(frozen=True)
class PSDVerdict:
    """Outcome of an exact positive-semidefiniteness test.

    pivot_trace holds the LDL pivots (exact rationals, in elimination order)
    produced before the verdict was reached; failure_index is the matrix index
    at which a negative pivot, or a zero pivot with a nonzero residual row,
    occurred; is_singular records whether any zero pivot was skipped.
    """

    is_psd: bool
    pivot_trace: tuple[Fraction, ...]
    failure_index: int | None
    is_singular: bool


def _support_components(rows, n):
    # connected components of the off-diagonal nonzero pattern
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(n):
        for j in range(i + 1, n):
            if rows[i][j]:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    comps: dict[int, list[int]] = {}
    for v in range(n):
        comps.setdefault(find(v), []).append(v)
    return sorted(comps.values(), key=min)


def psd_check(M: IntSymMatrix, shift: int | Fraction = 0) -> PSDVerdict:
    """Decide exactly whether M + shift*I is positive semidefinite.

    Fraction-free symmetric elimination: a positive pivot eliminates its row
    and column, a zero pivot whose residual row is entirely zero is skipped
    (and marks the matrix singular), and a zero pivot with a nonzero residual
    row or a negative pivot decides not-PSD on the spot.  Rational shifts are
    handled by clearing denominators, so every intermediate value is an exact
    integer minor ratio.
    """
    shift = Fraction(shift)
    p, q = shift.numerator, shift.denominator
    n = M.order
    work = [[q * M[i, j] + (p if i == j else 0) for j in range(n)]
            for i in range(n)]

    pivots: list[Fraction] = []
    singular = False
    for comp in _support_components(work, n):
        sub = [[work[i][j] for j in comp] for i in comp]
        m = len(comp)
        active = list(range(m))
        prev = 1
        while active:
            k = active[0]
            a = sub[k][k]
            if a < 0:
                pivots.append(Fraction(a, prev * q))
                return PSDVerdict(False, tuple(pivots), comp[k], singular)
            if a == 0:
                if all(sub[k][j] == 0 for j in active):
                    pivots.append(Fraction(0))
                    singular = True
                    active.pop(0)
                    continue
                pivots.append(Fraction(0))
                return PSDVerdict(False, tuple(pivots), comp[k], singular)
            pivots.append(Fraction(a, prev * q))
            active.pop(0)
            row_k = sub[k]
            for i in active:
                row_i = sub[i]
                b = row_i[k]
                for j in active:
                    if j < i:
                        continue
                    num = a * row_i[j] - b * row_k[j]
                    val, rem = divmod(num, prev)
                    if rem:
                        raise ArithmeticError("exact division failed")
                    row_i[j] = val
                    sub[j][i] = val
            prev = a
    return PSDVerdict(True, tuple(pivots), None, singular)


def lambda_min_bracket(M: IntSymMatrix,
                       width: int | Fraction) -> tuple[Fraction, Fraction]:
    """Certified rational bracket for the smallest eigenvalue of M.

    Returns (lo, hi) with hi - lo <= width and lambda_min(M) in [lo, hi):
    psd_check(M, -lo) passes and psd_check(M, -hi) fails, and both endpoint
    probes are re-run before returning so the pair is re-checkable.
    Initial bounds come from Gershgorin discs; bisection does the rest.
    """
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    n = M.order
    lo = min(M[i, i] - sum(abs(M[i, j]) for j in range(n) if j != i)
             for i in range(n))
    hi = max(M[i, i] + sum(abs(M[i, j]) for j in range(n) if j != i)
             for i in range(n)) + 1
    lo, hi = Fraction(lo), Fraction(hi)
    if not psd_check(M, -lo).is_psd:
        raise AssertionError("Gershgorin lower bound violated")
    if psd_check(M, -hi).is_psd:
        raise AssertionError("Gershgorin upper bound violated")
    while hi - lo > width:
        mid = (lo + hi) / 2
        if psd_check(M, -mid).is_psd:
            lo = mid
        else:
            hi = mid
    # re-verify the defining pair on the final endpoints
    assert psd_check(M, -lo).is_psd
    assert not psd_check(M, -hi).is_psd
    return lo, hi


def integer_rowspace_basis(
        rows: Iterable[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """Canonical basis (Hermite normal form rows) of the lattice generated by
    the given integer row vectors.

    Pivots are positive, entries above each pivot are reduced to [0, pivot),
    and zero rows are dropped, so equal lattices yield identical bases.
    """
    mat = [list(map(int, r)) for r in rows]
    if not mat:
        return ()
    ncols = len(mat[0])
    if any(len(r) != ncols for r in mat):
        raise ValueError("rows must have equal length")

    basis: list[list[int]] = []
    col = 0
    rest = [r for r in mat if any(r)]
    while rest and col < ncols:
        rest = [r for r in rest if any(r)]
        pivots = [r for r in rest if r[col] != 0]
        if not pivots:
            col += 1
            continue
        # gcd-combine all rows with a nonzero entry in this column
        while len(pivots) > 1:
            pivots.sort(key=lambda r: abs(r[col]))
            base = pivots[0]
            for r in pivots[1:]:
                f = r[col] // base[col]
                for c in range(ncols):
                    r[c] -= f * base[c]
            pivots = [r for r in pivots if r[col] != 0]
        base = pivots[0]
        if base[col] < 0:
            for c in range(ncols):
                base[c] = -base[c]
        basis.append(base)
        rest = [r for r in rest if r is not base and any(r)]
        for r in rest:
            if r[col] != 0:
                f = r[col] // base[col]
                for c in range(ncols):
                    r[c] -= f * base[c]
        rest = [r for r in rest if any(r)]
        col += 1

    # Reduce entries above each pivot into [0, pivot).  Left to right:
    # row k has zeros before its pivot, so later steps cannot disturb
    # columns normalized earlier.
    basis.sort(key=lambda r: next(c for c in range(ncols) if r[c]))
    for k in range(len(basis)):
        pc = next(c for c in range(ncols) if basis[k][c])
        pv = basis[k][pc]
        for r in basis[:k]:
            f = r[pc] // pv
            if f:
                for c in range(ncols):
                    r[c] -= f * basis[k][c]
    return tuple(tuple(r) for r in basis)
