"""Z_m-module structure of the projective eigenvariety at the spectral radius.

Eigenvectors for rho(A) normalized by y_1 = 1 correspond one-to-one with
phase vectors phi in Z_m^n, phi_1 = 0, solving ``B_A phi = 0 (mod m)``; the
eigenvector is ``y_k = exp(2 pi i phi_k / m) * v_k`` with ``v`` the Perron
vector. Everything in this module is exact and depends only on the support.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd, prod
from typing import Iterator, Sequence

from .errors import (
    CapExceeded,
    NotSubpattern,
    NotThreeUniform,
    NotWeaklyIrreducible,
    PreconditionError,
    TheoremViolation,
)
from .linalg import (
    SmithDecomposition,
    composition_length_of,
    derive_modm_divisors,
    smith_normal_form,
    solve_mod,
)
from .tensor import IntMatrix, SymTensorSupport, incidence_matrix, is_subpattern, is_weakly_irreducible


@dataclass(frozen=True)
class PhaseVector:
    modulus: int
    phases: tuple[int, ...]

    def __post_init__(self):
        if self.phases and self.phases[0] != 0:
            raise ValueError("first phase must be 0")
        if any(not 0 <= p < self.modulus for p in self.phases):
            raise ValueError(f"phases must lie in 0..{self.modulus - 1}")

    def __add__(self, other: "PhaseVector") -> "PhaseVector":
        m = self.modulus
        return PhaseVector(m, tuple((a + b) % m for a, b in zip(self.phases, other.phases)))

    def __neg__(self) -> "PhaseVector":
        m = self.modulus
        return PhaseVector(m, tuple(-a % m for a in self.phases))

    def __mul__(self, c: int) -> "PhaseVector":
        m = self.modulus
        return PhaseVector(m, tuple(c * a % m for a in self.phases))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.phases)


@dataclass(frozen=True)
class EigenvarietyStructure:
    m: int
    n: int
    smith_diagonal: tuple[int, ...]
    zm_divisors_all: tuple[int, ...]
    zm_divisors: tuple[int, ...]
    unit_divisor_count: int
    free_rank: int
    stabilizing_index: int
    stabilizing_dimension: int
    generators: tuple[tuple[PhaseVector, int], ...]

    @property
    def zm_rank(self) -> int:
        return len(self.zm_divisors_all)

    def summands(self) -> list[int]:
        """Cyclic orders of the decomposition, in divisibility order."""
        return list(self.zm_divisors) + [self.m] * self.free_rank

    def decomposition(self) -> str:
        parts = [f"Z_{d}" for d in self.summands()]
        return " ⊕ ".join(parts) if parts else "0"


def _canonical_generator(g: tuple[int, ...], order: int, m: int) -> tuple[int, ...]:
    # any unit multiple generates the same cyclic summand; keep the lex-smallest
    return min(
        tuple(u * v % m for v in g) for u in range(1, order + 1) if gcd(u, order) == 1
    )


def _require_irreducible(A: SymTensorSupport) -> None:
    if not A.entries:
        raise PreconditionError("tensor has no nonzero entries")
    if not is_weakly_irreducible(A):
        raise NotWeaklyIrreducible("tensor is not weakly irreducible")


def normalized_kernel(B: IntMatrix, m: int):
    """Solution module of ``B x = 0 (mod m)`` restricted to ``x_1 = 0``."""
    first = IntMatrix.from_rows([[1] + [0] * (B.cols - 1)], cols=B.cols)
    return solve_mod(B.vstack(first), [0] * (B.rows + 1), m)


def analyze(A: SymTensorSupport, snf: SmithDecomposition | None = None) -> EigenvarietyStructure:
    _require_irreducible(A)
    m, n = A.order, A.dim
    B = incidence_matrix(A)
    if snf is None:
        snf = smith_normal_form(B)
    divisors, s0_free = derive_modm_divisors(snf, m, n)
    free_rank = s0_free - 1
    nonunit = tuple(d for d in divisors if d != 1)
    units = len(divisors) - len(nonunit)
    s = m**free_rank * prod(nonunit)
    gamma = sum(composition_length_of(d) for d in nonunit) + free_rank * composition_length_of(m)

    sol = normalized_kernel(B, m)
    gens = tuple(
        (PhaseVector(m, _canonical_generator(g, order, m)), order) for g, order in sol.generators
    )
    orders = sorted(o for _, o in gens)
    expected = sorted(list(nonunit) + [m] * free_rank)
    if orders != expected:
        raise TheoremViolation(
            f"generator orders {orders} disagree with invariant divisors {expected}"
        )
    return EigenvarietyStructure(
        m=m,
        n=n,
        smith_diagonal=snf.diagonal,
        zm_divisors_all=tuple(divisors),
        zm_divisors=nonunit,
        unit_divisor_count=units,
        free_rank=free_rank,
        stabilizing_index=s,
        stabilizing_dimension=gamma,
        generators=gens,
    )


def enumerate_ps0(es: EigenvarietyStructure, cap: int = 10**6) -> Iterator[PhaseVector]:
    """Every element of PS_0, zero vector first."""
    if es.stabilizing_index > cap:
        raise CapExceeded(f"s(A) = {es.stabilizing_index} exceeds cap {cap}")
    m, n = es.m, es.n
    vecs = [g.phases for g, _ in es.generators]
    for coeffs in product(*(range(o) for _, o in es.generators)):
        x = [0] * n
        for c, g in zip(coeffs, vecs):
            if c:
                for i, gi in enumerate(g):
                    x[i] += c * gi
        yield PhaseVector(m, tuple(v % m for v in x))


def _divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


def cyclic_index(A: SymTensorSupport, snf: SmithDecomposition | None = None) -> int:
    """Largest l dividing m for which ``B x = (m/l) 1 (mod m)`` is solvable."""
    _require_irreducible(A)
    m = A.order
    B = incidence_matrix(A)
    if snf is None:
        snf = smith_normal_form(B)
    for ell in reversed(_divisors(m)):
        if solve_mod(B, [m // ell] * B.rows, m, snf=snf).feasible:
            return ell
    raise TheoremViolation("homogeneous system reported infeasible")


def coset_representative(A: SymTensorSupport, ell: int, j: int) -> PhaseVector | None:
    """A point of PS_j, or None when that coset is empty."""
    m = A.order
    if ell < 1 or m % ell:
        raise ValueError(f"ell={ell} must divide m={m}")
    if not 0 <= j < ell:
        raise ValueError(f"j={j} must lie in [0, {ell})")
    B = incidence_matrix(A)
    sol = solve_mod(B, [m * j // ell] * B.rows, m)
    if not sol.feasible:
        return None
    x = sol.particular
    return PhaseVector(m, tuple((v - x[0]) % m for v in x))


def tripartition_3uniform(A: SymTensorSupport) -> tuple[list[int], list[int], list[int]] | None:
    """Vertex classes of a nonzero phase vector mod 3, or None if gamma(A) = 0."""
    if A.order != 3:
        raise NotThreeUniform(f"order is {A.order}, expected 3")
    es = analyze(A)
    if es.stabilizing_dimension == 0:
        return None
    phi = es.generators[0][0].phases
    return tuple([v + 1 for v in range(A.dim) if phi[v] == label] for label in range(3))


def is_valid_tripartition(A: SymTensorSupport, parts: Sequence[Sequence[int]]) -> bool:
    """Every part nonempty, parts cover [n] disjointly, each entry mono or rainbow."""
    if len(parts) != 3 or any(not p for p in parts):
        return False
    label = {}
    for i, part in enumerate(parts):
        for v in part:
            if v in label:
                return False
            label[v] = i
    if set(label) != set(range(1, A.dim + 1)):
        return False
    for idx in A.indices:
        seen = {label[v] for v in idx}
        if len(seen) == 2:
            return False
    return True


@dataclass(frozen=True)
class MonotonicityReport:
    s_full: int
    s_sub: int
    gamma_full: int
    gamma_sub: int
    divides: bool
    gamma_le: bool
    submodule_checked: bool
    submodule_ok: bool | None

    @property
    def ok(self) -> bool:
        return self.divides and self.gamma_le and self.submodule_ok is not False


def subpattern_monotonicity_check(
    A: SymTensorSupport, Ahat: SymTensorSupport, cap: int = 10**5
) -> MonotonicityReport:
    """Compare A with a subpattern Ahat: s(A) | s(Ahat), gamma(A) <= gamma(Ahat)."""
    if not is_subpattern(Ahat, A):
        raise NotSubpattern("second tensor's support is not contained in the first")
    es, es_hat = analyze(A), analyze(Ahat)
    checked = es.stabilizing_index <= cap and es_hat.stabilizing_index <= cap
    sub_ok = None
    if checked:
        big = {p.phases for p in enumerate_ps0(es_hat, cap)}
        sub_ok = all(p.phases in big for p in enumerate_ps0(es, cap))
    return MonotonicityReport(
        s_full=es.stabilizing_index,
        s_sub=es_hat.stabilizing_index,
        gamma_full=es.stabilizing_dimension,
        gamma_sub=es_hat.stabilizing_dimension,
        divides=es_hat.stabilizing_index % es.stabilizing_index == 0,
        gamma_le=es.stabilizing_dimension <= es_hat.stabilizing_dimension,
        submodule_checked=checked,
        submodule_ok=sub_ok,
    )
