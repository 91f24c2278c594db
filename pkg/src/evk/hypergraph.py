"""Uniform hypergraphs: generator families, exact searches, and bound reports.

Paths follow the alternating-sequence definition ``v_1 e_1 v_2 ... e_l v_{l+1}``
with ``{v_i, v_{i+1}} <= e_i`` and ``v_i`` absent from every later edge. In a
path cover the vertex sequences partition V, and no edge of one path may
contain a non-terminal vertex ``v_1 .. v_l`` of another. Those non-terminal
vertices index an upper unitriangular square submatrix of the incidence
matrix, which is what makes the path-cover bound hold.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .eigenvariety import EigenvarietyStructure, analyze
from .errors import BadParameters, BoundViolated, BudgetExceeded, NotConnected, ParseError
from .linalg import composition_length_of
from .tensor import IntMatrix, SymTensorSupport, build_support, incidence_matrix


@dataclass(frozen=True)
class UniformHypergraph:
    m: int
    n: int
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.m < 2 or self.n < 1:
            raise BadParameters(f"need m >= 2 and n >= 1, got m={self.m}, n={self.n}")
        seen = set()
        for e in self.edges:
            if len(e) != self.m or len(set(e)) != self.m:
                raise BadParameters(f"edge {e} does not have {self.m} distinct vertices")
            if any(not 1 <= v <= self.n for v in e):
                raise BadParameters(f"edge {e} has a vertex outside [1, {self.n}]")
            key = frozenset(e)
            if key in seen:
                raise BadParameters(f"duplicate edge {e}")
            seen.add(key)

    @classmethod
    def from_edges(cls, m: int, n: int, edges: Iterable[Iterable[int]]) -> "UniformHypergraph":
        return cls(m, n, tuple(tuple(sorted(e)) for e in edges))

    def degree(self, v: int) -> int:
        return sum(v in e for e in self.edges)

    def masks(self) -> list[int]:
        return [sum(1 << (v - 1) for v in e) for e in self.edges]


def is_connected(G: UniformHypergraph) -> bool:
    if G.n == 1:
        return True
    adj = {v: set() for v in range(1, G.n + 1)}
    for e in G.edges:
        for v in e:
            adj[v].update(e)
    seen, stack = {1}, [1]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == G.n


def adjacency_tensor(G: UniformHypergraph) -> SymTensorSupport:
    """Entry ``1/(m-1)!`` on each edge."""
    val = Fraction(1, math.factorial(G.m - 1))
    return build_support(G.m, G.n, [(e, val) for e in G.edges])


def incidence(G: UniformHypergraph) -> IntMatrix:
    return incidence_matrix(adjacency_tensor(G))


# --- generator families ----------------------------------------------------

def complete(n: int, m: int) -> UniformHypergraph:
    if m < 2 or n < m:
        raise BadParameters(f"complete hypergraph needs n >= m >= 2, got n={n}, m={m}")
    return UniformHypergraph.from_edges(m, n, combinations(range(1, n + 1), m))


def power(n: int, graph_edges: Sequence[tuple[int, int]], m: int) -> UniformHypergraph:
    """m-th power of a simple graph on ``n`` vertices: pad each edge with m-2 new vertices."""
    if m < 2:
        raise BadParameters("m must be >= 2")
    edges, nxt = [], n + 1
    seen = set()
    for u, v in graph_edges:
        if u == v or not (1 <= u <= n and 1 <= v <= n) or frozenset((u, v)) in seen:
            raise BadParameters(f"bad simple-graph edge ({u}, {v})")
        seen.add(frozenset((u, v)))
        fresh = list(range(nxt, nxt + m - 2))
        nxt += m - 2
        edges.append([u, v] + fresh)
    return UniformHypergraph.from_edges(m, nxt - 1, edges)


def hyperpath(n: int, m: int) -> UniformHypergraph:
    if n < 2:
        raise BadParameters("hyperpath needs n >= 2")
    return power(n, [(i, i + 1) for i in range(1, n)], m)


def squid(m: int, t: int) -> UniformHypergraph:
    """Base edge {1..m}; edge i (i <= t) is {i} plus m-1 new vertices."""
    if m < 2 or not 1 <= t <= m:
        raise BadParameters(f"squid needs 1 <= t <= m, got m={m}, t={t}")
    edges, nxt = [list(range(1, m + 1))], m + 1
    for i in range(1, t + 1):
        edges.append([i] + list(range(nxt, nxt + m - 1)))
        nxt += m - 1
    return UniformHypergraph.from_edges(m, nxt - 1, edges)


def wheel(n: int) -> UniformHypergraph:
    """3-uniform wheel: center 1, rim 2..n+1, edges {1, u_i, u_{i+1}} cyclically."""
    if n < 3:
        raise BadParameters("wheel needs n >= 3")
    rim = list(range(2, n + 2))
    return UniformHypergraph.from_edges(3, n + 1, [(1, rim[i], rim[(i + 1) % n]) for i in range(n)])


def grow_shared_pair(G: UniformHypergraph, u: int, v: int) -> UniformHypergraph:
    """Attach a new triangle {u, v, w} along a pair already inside some edge."""
    if G.m != 3:
        raise BadParameters("grow_shared_pair is defined for 3-uniform hypergraphs")
    if u == v or not any(u in e and v in e for e in G.edges):
        raise BadParameters(f"pair ({u}, {v}) is not contained in an edge")
    w = G.n + 1
    return UniformHypergraph.from_edges(3, w, list(G.edges) + [(u, v, w)])


def is_cored(G: UniformHypergraph) -> bool:
    deg = [0] * (G.n + 1)
    for e in G.edges:
        for v in e:
            deg[v] += 1
    return all(any(deg[v] == 1 for v in e) for e in G.edges)


# --- paths ------------------------------------------------------------------

@dataclass(frozen=True)
class HPath:
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, ...], ...] = ()

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def leads(self) -> tuple[int, ...]:
        return self.vertices[:-1]


def is_path(G: UniformHypergraph, P: HPath) -> bool:
    edge_set = {frozenset(e) for e in G.edges}
    if len(P.vertices) != len(P.edges) + 1 or len(set(P.vertices)) != len(P.vertices):
        return False
    if len({frozenset(e) for e in P.edges}) != len(P.edges):
        return False
    for i, e in enumerate(P.edges):
        if frozenset(e) not in edge_set:
            return False
        if P.vertices[i] not in e or P.vertices[i + 1] not in e:
            return False
        if any(P.vertices[k] in e for k in range(i)):
            return False
    return True


def is_path_cover(G: UniformHypergraph, paths: Sequence[HPath]) -> bool:
    covered = [v for P in paths for v in P.vertices]
    if sorted(covered) != list(range(1, G.n + 1)):
        return False
    if not all(is_path(G, P) for P in paths):
        return False
    for a, Pa in enumerate(paths):
        for b, Pb in enumerate(paths):
            if a != b and any(v in e for e in Pa.edges for v in Pb.leads):
                return False
    return True


class _Budget:
    def __init__(self, limit: int):
        self.left = limit

    def tick(self):
        self.left -= 1
        if self.left < 0:
            raise BudgetExceeded("search node budget exhausted")


def _edges_at(G: UniformHypergraph) -> list[list[int]]:
    at = [[] for _ in range(G.n)]
    for k, e in enumerate(G.edges):
        for v in e:
            at[v - 1].append(k)
    return at


def max_path_length(G: UniformHypergraph, budget: int = 5_000_000) -> int:
    """Exhaustive search for the longest path."""
    masks, at = G.masks(), _edges_at(G)
    bud = _Budget(budget)
    best = 0

    def extend(tail: int, leads: int, length: int):
        nonlocal best
        bud.tick()
        if length > best:
            best = length
        if best == len(masks):
            return
        lead_mask = leads | (1 << tail)
        for k in at[tail]:
            if masks[k] & leads:
                continue
            rest = masks[k] & ~(1 << tail)
            while rest:
                low = rest & -rest
                extend(low.bit_length() - 1, lead_mask, length + 1)
                rest ^= low

    for v in range(G.n):
        extend(v, 0, 0)
        if best == len(masks):
            break
    return best


def matching_number(G: UniformHypergraph) -> int:
    """Maximum set of pairwise disjoint edges (branch and bound on the lowest open vertex)."""
    masks, at, m = G.masks(), _edges_at(G), G.m
    best = 0

    def go(v: int, used: int, count: int):
        nonlocal best
        while v < G.n and used >> v & 1:
            v += 1
        free = G.n - v - bin(used >> v).count("1")
        if count + free // m <= best:
            return
        if v >= G.n:
            best = max(best, count)
            return
        for k in at[v]:
            if not masks[k] & used:
                go(v + 1, used | masks[k], count + 1)
        go(v + 1, used | (1 << v), count)

    go(0, 0, 0)
    return best


@dataclass(frozen=True)
class PathCoverResult:
    number: int
    edges_used: int
    paths: tuple[HPath, ...] = field(default=())


def path_cover_number(G: UniformHypergraph, budget: int = 5_000_000) -> PathCoverResult:
    """Minimum path cover, found as a path packing using the most edges.

    Paths are started in increasing order of their first vertex so each
    packing is visited once.
    """
    if not is_connected(G):
        raise NotConnected("hypergraph is not connected")
    n = G.n
    masks, at = G.masks(), _edges_at(G)
    ceiling = min(n - 1, len(masks))
    bud = _Budget(budget)
    best_edges = 0
    best_paths: list[list] = []
    current: list[list] = []  # [vertices, edge indices] per open/closed path

    def record(count: int, seq_used: int):
        nonlocal best_edges, best_paths
        n_paths = len(current) + n - bin(seq_used).count("1")
        if count != n - n_paths:
            raise AssertionError("edge count and path count disagree")
        best_edges = count
        best_paths = [[list(vs), list(es)] for vs, es in current]

    full = (1 << n) - 1

    def room(seq_used: int, leads: int, edge_union: int, tail_bit: int) -> int:
        # every further edge needs its own fresh successor vertex and its own
        # lead, drawn from vertices that no closed path's edge touches
        free = n - bin(seq_used).count("1")
        eligible = (full & ~seq_used & ~edge_union) | tail_bit
        n_edges, lead_pool = 0, 0
        for e in masks:
            if not e & leads and e & eligible:
                n_edges += 1
                lead_pool |= e & eligible
        return min(n_edges, bin(lead_pool).count("1"), free - (0 if tail_bit else 1))

    def start_paths(after: int, seq_used: int, leads: int, edge_union: int, count: int):
        bud.tick()
        if count > best_edges:
            record(count, seq_used)
        if best_edges >= ceiling:
            return
        if count + room(seq_used, leads, edge_union, 0) <= best_edges:
            return
        for v in range(after + 1, n):
            bit = 1 << v
            if seq_used & bit or edge_union & bit:
                continue
            current.append([[v], []])
            grow(v, v, seq_used | bit, leads, edge_union, 0, count)
            current.pop()
            if best_edges >= ceiling:
                return

    def grow(start, tail, seq_used, leads, edge_union, path_edges, count):
        # tail is about to become a lead; it is already known to avoid other paths' edges
        bud.tick()
        tail_bit = 1 << tail
        if count + room(seq_used, leads, edge_union, tail_bit) <= best_edges:
            return
        for k in at[tail]:
            e = masks[k]
            if e & leads:
                continue
            rest = e & ~tail_bit & ~seq_used
            while rest:
                low = rest & -rest
                w = low.bit_length() - 1
                rest ^= low
                vs, es = current[-1]
                vs.append(w)
                es.append(k)
                new_leads = leads | tail_bit
                new_union_path = path_edges | e
                if not (edge_union & low):
                    grow(start, w, seq_used | low, new_leads, edge_union, new_union_path, count + 1)
                if best_edges < ceiling:
                    # close the path at w and start the next one
                    start_paths(start, seq_used | low, new_leads, edge_union | new_union_path, count + 1)
                vs.pop()
                es.pop()
                if best_edges >= ceiling:
                    return

    start_paths(-1, 0, 0, 0, 0)

    paths = []
    used = set()
    for vs, es in best_paths:
        paths.append(HPath(tuple(v + 1 for v in vs), tuple(G.edges[k] for k in es)))
        used.update(v + 1 for v in vs)
    paths.extend(HPath((v,)) for v in range(1, n + 1) if v not in used)
    return PathCoverResult(n - best_edges, best_edges, tuple(paths))


# --- bounds -------------------------------------------------------------------

@dataclass(frozen=True)
class BoundRow:
    name: str
    quantity: str
    value: int
    relation: str
    bound: int

    @property
    def holds(self) -> bool:
        if self.relation == "<=":
            return self.value <= self.bound
        if self.relation == "==":
            return self.value == self.bound
        if self.relation == "|":
            return self.bound % self.value == 0
        if self.relation == "<":
            return self.value < self.bound
        raise ValueError(self.relation)

    @property
    def tight(self) -> bool:
        return self.value == self.bound


@dataclass(frozen=True)
class BoundReport:
    m: int
    n: int
    n_edges: int
    stabilizing_index: int
    stabilizing_dimension: int
    path_cover_number: int
    matching_number: int
    max_path_length: int
    cored: bool
    rows: tuple[BoundRow, ...]

    @property
    def violations(self) -> list[BoundRow]:
        return [r for r in self.rows if not r.holds]


def bound_report(G: UniformHypergraph, strict: bool = True,
                 es: EigenvarietyStructure | None = None) -> BoundReport:
    """Compare s(G), gamma(G) with the path-cover, matching and longest-path bounds."""
    if not is_connected(G) or not G.edges:
        raise NotConnected("bounds need a connected hypergraph with at least one edge")
    if es is None:
        es = analyze(adjacency_tensor(G))
    m, n, E = G.m, G.n, len(G.edges)
    cl = composition_length_of(m)
    s, gamma = es.stabilizing_index, es.stabilizing_dimension
    pc = path_cover_number(G).number
    mu = matching_number(G)
    d = max_path_length(G)
    cored = is_cored(G)

    rows = [
        BoundRow("structure", "s", s, "|", m ** (n - 1)),
        BoundRow("path-cover", "s", s, "<=", m ** (pc - 1)),
        BoundRow("path-cover", "gamma", gamma, "<=", (pc - 1) * cl),
    ]
    if n >= 2:
        rows.insert(1, BoundRow("structure", "s", s, "<", m ** (n - 1)))
    if E >= 2:
        rows += [
            BoundRow("matching", "s", s, "<=", m ** (n - mu - 2)),
            BoundRow("matching", "gamma", gamma, "<=", (n - mu - 2) * cl),
        ]
    rows += [
        BoundRow("longest-path", "s", s, "<=", m ** (n - d - 1)),
        BoundRow("longest-path", "gamma", gamma, "<=", (n - d - 1) * cl),
    ]
    if cored:
        rows += [
            BoundRow("cored", "s", s, "==", m ** (n - 1 - E)),
            BoundRow("cored", "gamma", gamma, "==", (n - 1 - E) * cl),
        ]
    report = BoundReport(m, n, E, s, gamma, pc, mu, d, cored, tuple(rows))
    if strict and report.violations:
        err = BoundViolated(
            "; ".join(f"{r.name}: {r.quantity}={r.value} !{r.relation} {r.bound}" for r in report.violations)
        )
        err.report = report
        raise err
    return report


# --- text format ----------------------------------------------------------

def parse_hypergraph(text: str) -> UniformHypergraph:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty hypergraph file")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "hypergraph":
        raise ParseError(f"expected header 'hypergraph m n', got {lines[0]!r}")
    try:
        m, n = int(head[1]), int(head[2])
        edges = [tuple(int(t) for t in ln.split()) for ln in lines[1:]]
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    for e in edges:
        if len(e) != m:
            raise ParseError(f"edge {e} does not list {m} vertices")
    try:
        return UniformHypergraph.from_edges(m, n, edges)
    except BadParameters as exc:
        raise ParseError(str(exc)) from exc


def format_hypergraph(G: UniformHypergraph) -> str:
    out = [f"hypergraph {G.m} {G.n}"]
    out += [" ".join(map(str, e)) for e in G.edges]
    return "\n".join(out) + "\n"


# --- random instances ---------------------------------------------------------

def random_connected(n: int, m: int, n_edges: int, rng) -> UniformHypergraph:
    """Random connected m-uniform hypergraph with at least enough edges to span.

    Vertices are attached one new vertex per edge until all are covered, then
    extra random edges are added up to ``n_edges`` (fewer if the pool runs dry).
    """
    if n < m:
        raise BadParameters(f"need n >= m, got n={n}, m={m}")
    order = list(range(1, n + 1))
    rng.shuffle(order)
    edges = {tuple(sorted(order[:m]))}
    covered = order[:m]
    for v in order[m:]:
        edges.add(tuple(sorted([v] + rng.sample(covered, m - 1))))
        covered.append(v)
    pool = [e for e in combinations(range(1, n + 1), m) if e not in edges]
    rng.shuffle(pool)
    while len(edges) < n_edges and pool:
        edges.add(pool.pop())
    return UniformHypergraph.from_edges(m, n, sorted(edges))


def random_connected_graph(n: int, rng, extra: int = 0) -> list[tuple[int, int]]:
    """Edge list of a random connected simple graph: random tree plus ``extra`` chords."""
    edges = set()
    for v in range(2, n + 1):
        edges.add((rng.randint(1, v - 1), v))
    pool = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if (u, v) not in edges]
    rng.shuffle(pool)
    edges.update(pool[:extra])
    return sorted(edges)


def random_spanning_subhypergraph(G: UniformHypergraph, rng, drop: float = 0.5) -> UniformHypergraph:
    """Drop random edges while keeping every vertex reachable."""
    edges = list(G.edges)
    rng.shuffle(edges)
    kept = list(edges)
    for e in edges:
        if len(kept) > 1 and rng.random() < drop:
            trial = [f for f in kept if f != e]
            if is_connected(UniformHypergraph(G.m, G.n, tuple(trial))):
                kept = trial
    return UniformHypergraph.from_edges(G.m, G.n, kept)
