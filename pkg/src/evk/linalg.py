"""Exact integer linear algebra: Smith normal form and congruence solving.

Everything here works on Python ints so entry growth during elimination can
never overflow. The Smith form is computed over Z; the diagonal form over
Z_m falls out by reducing each invariant factor with ``gcd(s_i, m)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd
from typing import Iterator, Sequence

from . import kernels
from .errors import CapExceeded, ShapeMismatch
from .tensor import IntMatrix


@dataclass(frozen=True)
class SmithDecomposition:
    """``P @ B @ Q == diag(diagonal) padded with zeros``; P and Q unimodular."""

    P: IntMatrix
    Q: IntMatrix
    diagonal: tuple[int, ...]
    shape: tuple[int, int]

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    def diagonal_matrix(self) -> IntMatrix:
        k, n = self.shape
        rows = [[0] * n for _ in range(k)]
        for i, s in enumerate(self.diagonal):
            rows[i][i] = s
        return IntMatrix.from_rows(rows, cols=n)


def smith_normal_form(B: IntMatrix) -> SmithDecomposition:
    """Smith normal form with unimodular transforms.

    Pivots on the smallest nonzero absolute value (ties: lowest row, then
    column), then alternates column/row clearing until the pivot divides the
    whole trailing block.
    """
    k, n = B.rows, B.cols
    A = [list(r) for r in B.data]
    P = [[int(i == j) for j in range(k)] for i in range(k)]
    Q = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        P[i], P[j] = P[j], P[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in Q:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        if c:
            ra, rs = A[dst], A[src]
            for t in range(n):
                if rs[t]:
                    ra[t] += c * rs[t]
            pa, ps = P[dst], P[src]
            for t in range(k):
                if ps[t]:
                    pa[t] += c * ps[t]

    def add_col(dst, src, c):
        if c:
            for row in A:
                if row[src]:
                    row[dst] += c * row[src]
            for row in Q:
                if row[src]:
                    row[dst] += c * row[src]

    diag = []
    t = 0
    while t < min(k, n):
        best = None
        for i in range(t, k):
            row = A[i]
            for j in range(t, n):
                a = row[j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
        if best is None:
            break
        _, pi, pj = best
        swap_rows(t, pi)
        swap_cols(t, pj)

        while True:
            p = A[t][t]
            for i in range(t + 1, k):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
            rest = [(abs(A[i][t]), i) for i in range(t + 1, k) if A[i][t]]
            if rest:
                swap_rows(t, min(rest)[1])
                continue
            p = A[t][t]
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
            rest = [(abs(A[t][j]), j) for j in range(t + 1, n) if A[t][j]]
            if rest:
                swap_cols(t, min(rest)[1])
                continue
            p = A[t][t]
            bad = next(
                (i for i in range(t + 1, k) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)

        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            P[t] = [-a for a in P[t]]
        diag.append(A[t][t])
        t += 1

    return SmithDecomposition(
        IntMatrix.from_rows(P, cols=k),
        IntMatrix.from_rows(Q, cols=n),
        tuple(diag),
        (k, n),
    )


def derive_modm_divisors(snf: SmithDecomposition, m: int, n: int) -> tuple[list[int], int]:
    """Invariant divisors over Z_m and the number of Z_m summands of the kernel.

    A diagonal entry divisible by ``m`` becomes a zero column over Z_m, so it
    joins the free part instead of the divisor list.
    """
    divisors = [d for d in (gcd(s, m) for s in snf.diagonal) if d < m]
    return divisors, n - len(divisors)


@dataclass(frozen=True)
class ModSolutionSet:
    """Solutions of ``B x = b (mod m)`` as ``particular + span(generators)``.

    Each generator carries its additive order; distinct coefficient tuples
    with ``0 <= c_i < order_i`` give distinct solutions.
    """

    modulus: int
    particular: tuple[int, ...] | None
    generators: tuple[tuple[tuple[int, ...], int], ...]

    @property
    def feasible(self) -> bool:
        return self.particular is not None

    def count(self) -> int:
        if self.particular is None:
            return 0
        out = 1
        for _, order in self.generators:
            out *= order
        return out

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        if self.particular is None:
            return
        m = self.modulus
        gens = [g for g, _ in self.generators]
        for coeffs in product(*(range(o) for _, o in self.generators)):
            x = list(self.particular)
            for c, g in zip(coeffs, gens):
                if c:
                    for i, gi in enumerate(g):
                        x[i] += c * gi
            yield tuple(v % m for v in x)


def _solve_diagonal(snf: SmithDecomposition, b: Sequence[int], m: int) -> ModSolutionSet:
    k, n = snf.shape
    P, Q = snf.P.data, snf.Q.data
    c = [sum(P[i][j] * b[j] for j in range(k)) % m for i in range(k)]
    r = snf.rank
    if any(c[i] for i in range(r, k)):
        return ModSolutionSet(m, None, ())

    y = [0] * n
    gens: list[tuple[tuple[int, ...], int]] = []
    for i, s in enumerate(snf.diagonal):
        g = gcd(s, m)
        if c[i] % g:
            return ModSolutionSet(m, None, ())
        mg = m // g
        if mg > 1:
            y[i] = (c[i] // g) * pow(s // g, -1, mg) % mg
        if g > 1:
            gens.append((tuple(mg * Q[row][i] % m for row in range(n)), g))
    for i in range(r, n):
        gens.append((tuple(Q[row][i] % m for row in range(n)), m))
    x = tuple(sum(Q[row][j] * y[j] for j in range(n)) % m for row in range(n))
    return ModSolutionSet(m, x, tuple(gens))


def solve_mod(B: IntMatrix, b: Sequence[int], m: int, snf: SmithDecomposition | None = None) -> ModSolutionSet:
    """Solve the congruence system ``B x = b (mod m)`` through the Smith form."""
    if len(b) != B.rows:
        raise ShapeMismatch(f"right-hand side has length {len(b)}, expected {B.rows}")
    if snf is None:
        snf = smith_normal_form(B)
    return _solve_diagonal(snf, [int(v) for v in b], m)


def brute_force_solve_mod(B: IntMatrix, b: Sequence[int], m: int, cap: int = 10**7) -> list[tuple[int, ...]]:
    """Every ``x`` in Z_m^n with ``B x = b (mod m)``, by exhaustive enumeration."""
    n = B.cols
    if m ** n > cap:
        raise CapExceeded(f"{m}^{n} vectors exceeds cap {cap}")
    if len(b) != B.rows:
        raise ShapeMismatch(f"right-hand side has length {len(b)}, expected {B.rows}")
    sols = kernels.enumerate_solutions(B.tolist(), [int(v) for v in b], m, n)
    return [tuple(int(v) for v in row) for row in sols]


def composition_length_of(d: int) -> int:
    """Number of prime factors of ``d`` counted with multiplicity."""
    if d < 1:
        raise ValueError("d must be positive")
    count, p = 0, 2
    while p * p <= d:
        while d % p == 0:
            d //= p
            count += 1
        p += 1
    return count + (d > 1)


def rank_mod_prime(B: IntMatrix, p: int) -> int:
    """Rank of ``B`` over the field Z_p (plain Gaussian elimination)."""
    rows = [[v % p for v in r] for r in B.data]
    rank, col = 0, 0
    while rank < len(rows) and col < B.cols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [v * inv % p for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank
