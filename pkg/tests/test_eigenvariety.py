from math import gcd

import pytest
from hypothesis import given, settings

from evk import hypergraph as hg
from evk.eigenvariety import (
    PhaseVector,
    analyze,
    coset_representative,
    cyclic_index,
    enumerate_ps0,
    is_valid_tripartition,
    normalized_kernel,
    subpattern_monotonicity_check,
    tripartition_3uniform,
)
from evk.errors import CapExceeded, NotSubpattern, NotThreeUniform, NotWeaklyIrreducible
from evk.linalg import brute_force_solve_mod
from evk.regression import ex1_tensor, ex2_tensor
from evk.tensor import build_support, incidence_matrix

from conftest import small_hypergraphs


def _brute_ps(A, ell=1, j=0):
    m = A.order
    B = incidence_matrix(A)
    return {x for x in brute_force_solve_mod(B, [m * j // ell] * B.rows, m) if x[0] == 0}


def test_ex1_structure():
    es = analyze(ex1_tensor())
    assert es.smith_diagonal == (1, 2, 2)
    assert es.zm_divisors == (2, 2) and es.free_rank == 2 and es.unit_divisor_count == 1
    assert es.decomposition() == "Z_2 ⊕ Z_2 ⊕ Z_12 ⊕ Z_12"
    assert (es.stabilizing_index, es.stabilizing_dimension) == (576, 8)


def test_ex2_structure():
    A = ex2_tensor()
    es = analyze(A)
    assert (es.stabilizing_index, es.stabilizing_dimension) == (3, 1)
    assert es.unit_divisor_count == 4
    assert [g.phases for g, _ in es.generators] == [(0, 1, 2, 0, 1, 2)]
    assert {p.phases for p in enumerate_ps0(es)} == _brute_ps(A)
    assert cyclic_index(A) == 3
    assert len(brute_force_solve_mod(incidence_matrix(A), [0] * 6, 3)) == 9


def test_ex2_tripartition():
    parts = tripartition_3uniform(ex2_tensor())
    assert parts == ([1, 4], [2, 5], [3, 6])
    assert is_valid_tripartition(ex2_tensor(), parts)


def test_complete_is_trivial():
    A = hg.adjacency_tensor(hg.complete(4, 3))
    es = analyze(A)
    assert es.stabilizing_index == 1 and es.decomposition() == "0"
    assert tripartition_3uniform(A) is None
    assert coset_representative(A, 3, 1) is None


@settings(max_examples=40, deadline=None)
@given(small_hypergraphs())
def test_ps0_matches_brute_force(G):
    A = hg.adjacency_tensor(G)
    es = analyze(A)
    elems = [p.phases for p in enumerate_ps0(es)]
    assert len(elems) == len(set(elems)) == es.stabilizing_index
    assert set(elems) == _brute_ps(A)
    assert elems[0] == (0,) * G.n


@settings(max_examples=40, deadline=None)
@given(small_hypergraphs())
def test_structure_invariants(G):
    A = hg.adjacency_tensor(G)
    es = analyze(A)
    m, n = G.m, G.n
    prod_orders = 1
    for g, o in es.generators:
        prod_orders *= o
        assert (g * o).is_zero()
    assert prod_orders == es.stabilizing_index
    assert (m ** (n - 1)) % es.stabilizing_index == 0
    assert es.stabilizing_index < m ** (n - 1)
    assert all(d > 1 and m % d == 0 for d in es.zm_divisors)
    assert all(es.zm_divisors[i + 1] % es.zm_divisors[i] == 0 for i in range(len(es.zm_divisors) - 1))
    assert normalized_kernel(incidence_matrix(A), m).count() == es.stabilizing_index


@settings(max_examples=40, deadline=None)
@given(small_hypergraphs())
def test_ps0_closed_under_addition(G):
    es = analyze(hg.adjacency_tensor(G))
    elems = list(enumerate_ps0(es, cap=200))[:20]
    pool = {p.phases for p in enumerate_ps0(es)}
    for a in elems:
        assert (-a).phases in pool
        for b in elems:
            assert (a + b).phases in pool


@settings(max_examples=30, deadline=None)
@given(small_hypergraphs())
def test_cyclic_index_and_cosets(G):
    A = hg.adjacency_tensor(G)
    m = G.m
    ell = cyclic_index(A)
    assert m % ell == 0
    # oracle: largest l | m with PS_1 nonempty by brute force
    feasible = [l for l in range(1, m + 1) if m % l == 0 and _brute_ps(A, l, 1)]
    assert ell == max(feasible)
    for j in range(ell):
        rep = coset_representative(A, ell, j)
        assert rep is not None and rep.phases in _brute_ps(A, ell, j)


def test_k4_cosets():
    A = hg.adjacency_tensor(hg.complete(4, 3))
    assert cyclic_index(A) == 1
    with pytest.raises(ValueError):
        coset_representative(A, 2, 0)


@pytest.mark.parametrize("n", range(3, 9))
def test_wheel_parity(n):
    A = hg.adjacency_tensor(hg.wheel(n))
    es = analyze(A)
    assert (es.stabilizing_dimension > 0) == (n % 2 == 0)
    parts = tripartition_3uniform(A)
    if n % 2 == 0:
        assert is_valid_tripartition(A, parts)
    else:
        assert parts is None


def test_tripartition_validator():
    A = ex2_tensor()
    assert not is_valid_tripartition(A, ([1, 2], [3, 4], [5, 6]))
    assert not is_valid_tripartition(A, ([1, 4], [2, 5], []))
    assert not is_valid_tripartition(A, ([1, 4], [2, 5], [3]))
    with pytest.raises(NotThreeUniform):
        tripartition_3uniform(ex1_tensor())


def test_preconditions():
    with pytest.raises(NotWeaklyIrreducible):
        analyze(build_support(3, 6, [((1, 2, 3), 1), ((4, 5, 6), 1)]))
    with pytest.raises(CapExceeded):
        list(enumerate_ps0(analyze(ex1_tensor()), cap=100))


def test_phase_vector_arithmetic():
    a = PhaseVector(6, (0, 1, 5))
    assert (a + a).phases == (0, 2, 4)
    assert (-a).phases == (0, 5, 1)
    assert (3 * a).phases == (0, 3, 3)
    with pytest.raises(ValueError):
        PhaseVector(3, (1, 0))


@settings(max_examples=30, deadline=None)
@given(small_hypergraphs())
def test_subpattern_monotonicity(G):
    import random
    H = hg.random_spanning_subhypergraph(G, random.Random(G.n * 7919 + len(G.edges)))
    rep = subpattern_monotonicity_check(hg.adjacency_tensor(G), hg.adjacency_tensor(H))
    assert rep.ok and rep.divides and rep.gamma_le and rep.submodule_ok


def test_not_subpattern():
    with pytest.raises(NotSubpattern):
        subpattern_monotonicity_check(ex2_tensor(), hg.adjacency_tensor(hg.complete(6, 3)))


def test_generator_orders_divide_m():
    es = analyze(ex1_tensor())
    for g, o in es.generators:
        assert 12 % o == 0
        assert gcd(*g.phases) * o % 12 == 0
