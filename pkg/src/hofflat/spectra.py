"""Floating spectra, the clique-growth limit matrix, and small witnesses.

The limit construction takes a symmetric integer matrix M whose index set
is split into two parts and grows an n-clique block attached to the second
part.  Its smallest eigenvalue mu_n decreases monotonically to lambda_min(M),
and a rank-one correction argument turns the n-th stage into an explicit
factorization certificate for a lower bound on lambda_min(M).

Note on the bound direction: the convergence inequality is

    lambda_min(M) >= mu_n - (-mu_n - 1) |I2| / (n - mu_n - 1)

with a minus sign, as forced by the certificate identity
N^T N = M + (-mu_n + eps2^2 |I2|) I; see notes in the repository history.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np
from numba import njit

from .exactmat import IntSymMatrix, psd_check

_OFF_TOL = 1e-10
_MAX_SWEEPS = 100


@njit(cache=True)
def _jacobi_inplace(a, v):
    n = a.shape[0]
    for _ in range(_MAX_SWEEPS):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += 2.0 * a[p, q] * a[p, q]
        if math.sqrt(off) <= _OFF_TOL:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if theta >= 0.0:
                    t = 1.0 / (theta + math.sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                tau = s / (1.0 + c)
                a[p, p] = a[p, p] - t * apq
                a[q, q] = a[q, q] + t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
                for i in range(n):
                    if i != p and i != q:
                        aip = a[i, p]
                        aiq = a[i, q]
                        a[i, p] = aip - s * (aiq + tau * aip)
                        a[p, i] = a[i, p]
                        a[i, q] = aiq + s * (aip - tau * aiq)
                        a[q, i] = a[i, q]
                for i in range(n):
                    vip = v[i, p]
                    viq = v[i, q]
                    v[i, p] = vip - s * (viq + tau * vip)
                    v[i, q] = viq + s * (vip - tau * viq)


def _eigh(arr: np.ndarray):
    """Eigenvalues (ascending) and matching eigenvector columns."""
    a = np.array(arr, dtype=np.float64)
    n = a.shape[0]
    v = np.eye(n)
    _jacobi_inplace(a, v)
    vals = np.diag(a).copy()
    order = np.argsort(vals, kind="stable")
    return vals[order], v[:, order]


def float_spectrum(m: IntSymMatrix) -> list[float]:
    """All eigenvalues of m, ascending, via deterministic Jacobi sweeps."""
    vals, _ = _eigh(m.to_numpy())
    return [float(x) for x in vals]


def _split_partition(m: IntSymMatrix, partition):
    i1, i2 = partition
    i1 = [int(x) for x in i1]
    i2 = [int(x) for x in i2]
    seen = set(i1) | set(i2)
    if len(i1) + len(i2) != len(seen) or seen != set(range(m.order)):
        raise ValueError("partition must cover the index set disjointly")
    return i1, i2


def build_limit_matrix(m: IntSymMatrix, partition, n: int) -> IntSymMatrix:
    """Block matrix [[M11, M12, O], [M21, M22+J, J], [O, J, J-I]].

    Rows are ordered: first part, second part, then the n new indices.
    """
    i1, i2 = _split_partition(m, partition)
    if n < 1:
        raise ValueError("n must be positive")
    k1, k2 = len(i1), len(i2)
    order = i1 + i2
    total = k1 + k2 + n
    rows = [[0] * total for _ in range(total)]
    for a, ia in enumerate(order):
        for b, ib in enumerate(order):
            rows[a][b] = m[ia, ib]
    for a in range(k1, k1 + k2):
        for b in range(k1, k1 + k2):
            rows[a][b] += 1
        for b in range(k1 + k2, total):
            rows[a][b] = rows[b][a] = 1
    for a in range(k1 + k2, total):
        for b in range(k1 + k2, total):
            if a != b:
                rows[a][b] = 1
    return IntSymMatrix(rows)


@dataclass(frozen=True)
class LimitReport:
    n_values: list
    mu: list
    lambda_min_m: float
    bound_gaps: list


@dataclass(frozen=True)
class LimitWitness:
    eps1: float
    eps2: float
    u: np.ndarray
    pair_matrix: tuple
    assembled: np.ndarray
    residual_max: float


def limit_report(m: IntSymMatrix, partition, n_max: int,
                 tol: float = 1e-7) -> LimitReport:
    """Compute mu_n for n = 1..n_max and verify the convergence facts."""
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    i1, i2 = _split_partition(m, partition)
    probe = psd_check(m, 1)
    if probe.is_psd and not probe.is_singular:
        raise ValueError(
            "smallest eigenvalue exceeds -1; pivot trace %r certifies M + I "
            "positive definite" % (probe.pivot_trace,))

    lam = float_spectrum(m)[0]
    n_values = list(range(1, n_max + 1))
    mu = [float_spectrum(build_limit_matrix(m, (i1, i2), n))[0]
          for n in n_values]

    gaps = []
    k2 = len(i2)
    for n, mu_n in zip(n_values[1:], mu[1:]):
        bound = mu_n - (-mu_n - 1.0) * k2 / (n - mu_n - 1.0)
        gaps.append(lam - bound)

    for a, b in zip(mu, mu[1:]):
        if b > a + tol:
            raise RuntimeError("mu sequence increased: %r -> %r" % (a, b))
    for mu_n in mu:
        if mu_n < lam - tol:
            raise RuntimeError("mu fell below lambda_min: %r < %r" % (mu_n, lam))
    for g in gaps:
        if g < -tol:
            raise RuntimeError("convergence bound violated by %r" % (-g,))
    return LimitReport(n_values, mu, lam, gaps)


def _pair_matrix(k: int):
    rows = []
    for i, j in combinations(range(k), 2):
        row = [0] * k
        row[i] = 1
        row[j] = -1
        rows.append(tuple(row))
    return tuple(rows)


def limit_bound_witness(m: IntSymMatrix, partition, n: int,
                        tol: float = 1e-6) -> LimitWitness:
    """Explicit N with N^T N = M + (-mu_n + eps2^2 |I2|) I.

    The factor certifies lambda_min(M) >= mu_n - eps2^2 |I2| by exhibiting
    the shifted matrix as a Gram matrix.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    i1, i2 = _split_partition(m, partition)
    k1, k2 = len(i1), len(i2)
    mh = build_limit_matrix(m, (i1, i2), n)
    vals, vecs = _eigh(mh.to_numpy())
    mu = float(vals[0])
    if mu > -1.0 + 1e-9:
        # impossible for n >= 2: the clique block contributes a -1 eigenvalue
        raise RuntimeError("mu_n = %r above -1" % mu)

    shifted = vals - mu
    shifted[shifted < 1e-12] = 0.0
    nhat = np.sqrt(shifted)[:, None] * vecs.T  # nhat.T @ nhat = Mhat - mu I

    denom = n - mu - 1.0
    eps1 = 1.0 - math.sqrt(n / denom)
    eps2 = math.sqrt((-mu - 1.0) / denom)
    cols3 = nhat[:, k1 + k2:]
    u = cols3 @ np.ones(n) / math.sqrt(n * denom)

    pair = _pair_matrix(k2)
    b = np.array(pair, dtype=np.float64).reshape(len(pair), k2)
    top = np.hstack([
        nhat[:, :k1],
        nhat[:, k1:k1 + k2] + (eps1 - 1.0) * np.outer(u, np.ones(k2)),
    ])
    mid = np.hstack([eps2 * math.sqrt(k2) * np.eye(k1),
                     np.zeros((k1, k2))])
    bot = np.hstack([np.zeros((len(pair), k1)), eps2 * b])
    assembled = np.vstack([top, mid, bot])

    perm = i1 + i2
    target = np.empty((k1 + k2, k1 + k2))
    for a, ia in enumerate(perm):
        for c, ic in enumerate(perm):
            target[a, c] = m[ia, ic]
    target += (-mu + eps2 * eps2 * k2) * np.eye(k1 + k2)
    residual = float(np.abs(assembled.T @ assembled - target).max())

    if abs(eps2 * eps2 - (2.0 * eps1 - eps1 * eps1)) > tol:
        raise RuntimeError("epsilon identity failed")
    if residual > tol:
        raise RuntimeError("factorization residual %r above tolerance" % residual)
    return LimitWitness(eps1, eps2, u, pair, assembled, residual)


def small_submatrix_witness(m: IntSymMatrix, max_order: int = 10):
    """Index subset of size <= max_order whose block has an eigenvalue
    below -2, or None when the whole matrix has smallest eigenvalue >= -2.

    Hypotheses: diagonal entries 0 or -1 (integer off-diagonals are implied
    by the matrix type).  Search is by size then lexicographic order, with a
    floating pre-screen and exact confirmation, so the returned witness is
    the canonical smallest one.
    """
    n = m.order
    for i in range(n):
        if m[i, i] not in (0, -1):
            raise ValueError("diagonal entries must be 0 or -1")
    if psd_check(m, 2).is_psd:
        return None
    arr = m.to_numpy()
    for size in range(1, min(max_order, n) + 1):
        for subset in combinations(range(n), size):
            block = arr[np.ix_(subset, subset)]
            vals, _ = _eigh(block)
            if vals[0] < -2.0 + 1e-8:
                if not psd_check(m.submatrix(subset), 2).is_psd:
                    return subset
    raise RuntimeError("no witness of order <= %d found" % max_order)
