"""Perron vector by shifted power iteration, and eigenvectors rebuilt from phases.

For a phase vector phi solving ``B_A phi = (m j / l) 1 (mod m)`` the vector
``y_k = exp(2 pi i phi_k / m) v_k`` satisfies ``A y^{m-1} = lambda y^{[m-1]}``
with ``lambda = rho * exp(+2 pi i j / l)``.
"""
from __future__ import annotations

import cmath
import math
import os
from concurrent.futures import ThreadPoolExecutor
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import kernels
from .eigenvariety import EigenvarietyStructure, PhaseVector, coset_representative, enumerate_ps0
from .errors import DimensionMismatch, NoConvergence, NotWeaklyIrreducible
from .tensor import SymTensorSupport, is_weakly_irreducible


@dataclass(frozen=True)
class _Terms:
    idx: np.ndarray
    entry: np.ndarray
    skip: np.ndarray
    vertex: np.ndarray
    coef: np.ndarray


@lru_cache(maxsize=64)
def _terms(A: SymTensorSupport) -> _Terms:
    # one term per (entry, distinct vertex): value * #orderings of the other m-1 slots
    m = A.order
    idx, entry, skip, vertex, coef = [], [], [], [], []
    for e, (key, val) in enumerate(A.entries):
        idx.append([v - 1 for v in key])
        counts = Counter(key)
        for v, c in counts.items():
            rest = math.factorial(m - 1) // math.factorial(c - 1)
            for u, cu in counts.items():
                if u != v:
                    rest //= math.factorial(cu)
            entry.append(e)
            skip.append(key.index(v))
            vertex.append(v - 1)
            coef.append(float(val) * rest)
    i64 = lambda a: np.ascontiguousarray(a, dtype=np.int64)
    return _Terms(
        i64(idx).reshape(len(A.entries), m),
        i64(entry),
        i64(skip),
        i64(vertex),
        np.ascontiguousarray(coef, dtype=np.float64),
    )


def apply_tensor(A: SymTensorSupport, x) -> np.ndarray:
    """``(A x^{m-1})_i = sum a_{i i_2 .. i_m} x_{i_2} .. x_{i_m}``."""
    x = np.asarray(x)
    if x.shape != (A.dim,):
        raise DimensionMismatch(f"vector has shape {x.shape}, expected ({A.dim},)")
    t = _terms(A)
    return kernels.apply_terms(t.idx, t.entry, t.skip, t.vertex, t.coef, x, A.dim)


def eigen_residual(A: SymTensorSupport, y, lam: complex) -> float:
    y = np.asarray(y)
    if y.shape != (A.dim,):
        raise DimensionMismatch(f"vector has shape {y.shape}, expected ({A.dim},)")
    p = A.order - 1
    diff = apply_tensor(A, y) - lam * y**p
    scale = max(1.0, abs(lam) * float(np.max(np.abs(y))) ** p)
    return float(np.max(np.abs(diff))) / scale


@dataclass(frozen=True)
class PerronResult:
    rho: float
    v: np.ndarray
    iterations: int
    residual: float
    bracket: tuple[float, float]


def perron_vector(
    A: SymTensorSupport,
    tol: float = 1e-10,
    max_iter: int = 10**5,
    residual_tol: float = 1e-8,
    history: list | None = None,
) -> PerronResult:
    """Power iteration on the shifted tensor A + I.

    The Collatz-Wielandt ratios of the shifted map bracket rho(A) + 1; the
    loop stops when the bracket's relative width drops below ``tol``. Pass a
    list as ``history`` to record the ``(lo, hi)`` bracket at every step.
    """
    if not is_weakly_irreducible(A):
        raise NotWeaklyIrreducible("tensor is not weakly irreducible")
    p = A.order - 1
    x = np.ones(A.dim)
    for it in range(1, max_iter + 1):
        xp = x**p
        y = apply_tensor(A, x) + xp
        ratios = y / xp
        lo, hi = float(ratios.min()), float(ratios.max())
        if history is not None:
            history.append((lo, hi))
        if hi - lo <= tol * hi:
            break
        x = y ** (1.0 / p)
        x /= x.max()
    else:
        raise NoConvergence(f"bracket [{lo}, {hi}] after {max_iter} iterations")
    rho = 0.5 * (lo + hi) - 1.0
    v = x / x[0]
    res = eigen_residual(A, v, rho)
    if res > residual_tol:
        raise NoConvergence(f"residual {res:.3e} exceeds {residual_tol:.1e}")
    return PerronResult(rho, v, it, res, (lo - 1.0, hi - 1.0))


@dataclass(frozen=True)
class ComplexEigenpair:
    lam: complex
    y: np.ndarray
    j: int
    ell: int


def reconstruct_eigenvector(phi: PhaseVector | Sequence[int], j: int, ell: int, pr: PerronResult,
                            m: int | None = None) -> ComplexEigenpair:
    if isinstance(phi, PhaseVector):
        m, phases = phi.modulus, phi.phases
    else:
        phases = tuple(phi)
        if m is None:
            raise ValueError("modulus required for a bare phase sequence")
    phase = np.exp(2j * np.pi * np.asarray(phases, dtype=float) / m)
    lam = pr.rho * cmath.exp(2j * math.pi * j / ell)
    return ComplexEigenpair(lam, phase * pr.v, j, ell)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("EVK_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class SweepSummary:
    count: int
    accepted: int
    distinct_accepted: int
    max_residual: float
    coset_residuals: tuple[tuple[int, float], ...]


def eigenvector_sweep(A: SymTensorSupport, es: EigenvarietyStructure, pr: PerronResult,
                      cyclic: int, tol: float = 1e-8, cap: int = 10**6) -> SweepSummary:
    """Rebuild every eigenvector for rho(A) and one per coset on the spectral circle."""
    phis = list(enumerate_ps0(es, cap))

    def one(phi):
        pair = reconstruct_eigenvector(phi, 0, 1, pr)
        return pair.y, eigen_residual(A, pair.y, pair.lam)

    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        results = list(pool.map(one, phis))
    ok = [y for y, r in results if r < tol]
    distinct = {tuple(np.round(y, 9)) for y in ok}
    cosets = []
    for j in range(cyclic):
        rep = coset_representative(A, cyclic, j)
        pair = reconstruct_eigenvector(rep, j, cyclic, pr)
        cosets.append((j, eigen_residual(A, pair.y, pair.lam)))
    return SweepSummary(
        count=len(phis),
        accepted=len(ok),
        distinct_accepted=len(distinct),
        max_residual=max((r for _, r in results), default=0.0),
        coset_residuals=tuple(cosets),
    )
