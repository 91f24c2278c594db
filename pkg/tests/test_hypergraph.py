import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from evk import hypergraph as hg
from evk.eigenvariety import analyze
from evk.errors import BadParameters, BoundViolated, BudgetExceeded, NotConnected, ParseError
from evk.hypergraph import HPath
from evk.regression import EX2_EDGES, pc17_hypergraph
from evk.tensor import incidence_matrix


@st.composite
def tiny_hypergraphs(draw):
    m = draw(st.sampled_from([3, 4]))
    n = draw(st.integers(m, 8 if m == 3 else 9))
    seed = draw(st.integers(0, 2**32 - 1))
    return hg.random_connected(n, m, draw(st.integers(1, n + 2)), random.Random(seed))


def _all_paths(G):
    """Every path, trivial ones included, by plain DFS over vertex/edge sequences."""
    out = []

    def dfs(verts, edges):
        out.append(HPath(tuple(verts), tuple(edges)))
        tail = verts[-1]
        for e in G.edges:
            if tail not in e or e in edges or any(v in e for v in verts[:-1]):
                continue
            for w in e:
                if w not in verts:
                    dfs(verts + [w], edges + [e])

    for v in range(1, G.n + 1):
        dfs([v], [])
    return out


def _pc_oracle(G):
    paths = _all_paths(G)
    best = [G.n]

    def go(chosen, covered):
        if len(covered) == G.n:
            if hg.is_path_cover(G, chosen):
                best[0] = min(best[0], len(chosen))
            return
        if len(chosen) + 1 >= best[0]:
            return
        v = min(set(range(1, G.n + 1)) - covered)
        for P in paths:
            if v in P.vertices and not covered & set(P.vertices):
                go(chosen + [P], covered | set(P.vertices))

    go([], set())
    return best[0]


def _matching_oracle(G):
    for k in range(len(G.edges), 0, -1):
        for sub in combinations(G.edges, k):
            if len({v for e in sub for v in e}) == k * G.m:
                return k
    return 0


def test_generator_sizes():
    assert (hg.hyperpath(4, 3).n, len(hg.hyperpath(4, 3).edges)) == (7, 3)
    for m in (3, 4, 5):
        for t in range(1, m + 1):
            assert hg.squid(m, t).n == t * m + m - t
    assert (hg.wheel(3).n, len(hg.wheel(3).edges)) == (4, 3)
    assert hg.hyperpath(2, 5).edges == ((1, 2, 3, 4, 5),)
    assert len(hg.complete(4, 3).edges) == 4


def test_generator_errors():
    for bad in (lambda: hg.complete(2, 3), lambda: hg.squid(3, 4), lambda: hg.wheel(2),
                lambda: hg.power(3, [(1, 1)], 3), lambda: hg.grow_shared_pair(hg.complete(4, 3), 1, 1),
                lambda: hg.grow_shared_pair(hg.hyperpath(3, 3), 1, 3)):
        with pytest.raises(BadParameters):
            bad()


def test_grow_shared_pair():
    G = hg.grow_shared_pair(hg.hyperpath(2, 3), 1, 2)
    assert G.n == 4 and (1, 2, 4) in G.edges


def test_adjacency_values():
    A = hg.adjacency_tensor(hg.hyperpath(2, 3))
    assert A.entries == (((1, 2, 3), 0.5),)
    assert hg.adjacency_tensor(hg.complete(4, 3)).indices == [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]


def test_cored():
    assert not hg.is_cored(hg.complete(4, 3))
    assert all(hg.is_cored(hg.squid(m, t)) for m in (3, 4) for t in range(1, m))
    # with t = m every base vertex has degree 2
    assert not any(hg.is_cored(hg.squid(m, m)) for m in (3, 4, 5))
    assert hg.is_cored(hg.power(4, [(1, 2), (2, 3), (3, 4), (4, 1)], 3))


def test_pc17():
    G = pc17_hypergraph()
    res = hg.path_cover_number(G)
    assert res.number == 9
    assert len(res.paths) == 9 and hg.is_path_cover(G, res.paths)
    stated = [HPath(tuple(range(1, 9)), ((1, 2, 11), (2, 3, 12), (3, 4, 13), (4, 5, 14), (5, 6, 15), (6, 7, 16), (7, 8, 17))),
              HPath((9, 10), ((9, 10, 17),))] + [HPath((v,)) for v in range(11, 18)]
    assert hg.is_path_cover(G, stated)


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("m", [3, 4, 5])
def test_hyperpath_searches(n, m):
    G = hg.hyperpath(n, m)
    assert hg.path_cover_number(G).number == (n - 1) * (m - 2) + 1
    assert hg.max_path_length(G) == n - 1


@pytest.mark.parametrize("m", [3, 4])
def test_squid_matching(m):
    for t in range(1, m + 1):
        assert hg.matching_number(hg.squid(m, t)) == t


def test_small_cases():
    single = hg.UniformHypergraph(3, 1, ())
    assert hg.path_cover_number(single).number == 1
    assert hg.matching_number(hg.hyperpath(2, 3)) == 1
    assert hg.matching_number(hg.complete(4, 3)) == 1
    with pytest.raises(NotConnected):
        hg.path_cover_number(hg.UniformHypergraph.from_edges(3, 6, [(1, 2, 3), (4, 5, 6)]))


def test_budget():
    with pytest.raises(BudgetExceeded):
        hg.path_cover_number(pc17_hypergraph(), budget=10)


@settings(max_examples=40, deadline=None)
@given(tiny_hypergraphs())
def test_searches_match_brute_force(G):
    res = hg.path_cover_number(G)
    assert res.number == _pc_oracle(G)
    assert hg.is_path_cover(G, res.paths) and len(res.paths) == res.number
    assert res.edges_used == G.n - res.number
    assert hg.max_path_length(G) == max(P.length for P in _all_paths(G))
    assert hg.matching_number(G) == _matching_oracle(G)


@settings(max_examples=40, deadline=None)
@given(tiny_hypergraphs())
def test_bounds_hold(G):
    rep = hg.bound_report(G)
    assert not rep.violations
    if hg.is_cored(G):
        assert rep.stabilizing_index == G.m ** (G.n - 1 - len(G.edges))


def test_bound_violation_raises():
    G = hg.hyperpath(3, 3)
    es = analyze(hg.adjacency_tensor(hg.hyperpath(3, 3)))
    fake = type(es)(**{**es.__dict__, "stabilizing_index": 81})
    with pytest.raises(BoundViolated) as info:
        hg.bound_report(G, es=fake)
    assert info.value.report.violations
    assert hg.bound_report(G, strict=False, es=fake).violations


def test_hyperpath_bounds_tight():
    rep = hg.bound_report(hg.hyperpath(3, 3))
    assert all(r.tight for r in rep.rows if r.name in ("path-cover", "longest-path"))


def test_hypergraph_text_roundtrip():
    G = hg.UniformHypergraph.from_edges(3, 6, EX2_EDGES)
    text = hg.format_hypergraph(G)
    assert hg.format_hypergraph(hg.parse_hypergraph(text)) == text
    assert hg.parse_hypergraph("# c\n" + text) == G


@pytest.mark.parametrize("text", ["", "hypergraph 3\n", "hypergraph 3 4\n1 2\n", "hypergraph 3 4\n1 2 9\n",
                                  "hypergraph 3 4\n1 1 2\n", "hypergraph 3 4\n1 2 a\n"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        hg.parse_hypergraph(text)


def test_incidence_matches_tensor():
    G = hg.wheel(5)
    assert hg.incidence(G) == incidence_matrix(hg.adjacency_tensor(G))


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 7), st.integers(0, 10**6))
def test_power_formula(n, seed):
    rng = random.Random(seed)
    edges = hg.random_connected_graph(n, rng, rng.randint(0, 3))
    for m in (3, 4):
        G = hg.power(n, edges, m)
        assert hg.is_cored(G) and hg.is_connected(G)
        assert analyze(hg.adjacency_tensor(G)).stabilizing_index == m ** (n - 1 + len(edges) * (m - 3))
