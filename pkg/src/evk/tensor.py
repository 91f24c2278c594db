"""Nonnegative symmetric tensors stored by their support.

A tensor of order ``m`` and dimension ``n`` is kept as a map from canonical
(nondecreasing, 1-based) multi-indices to positive rationals. Zero entries
are simply absent, so the support is the key set.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    ConflictingDuplicate,
    IndexOutOfRange,
    OrderMismatch,
    ParseError,
    ShapeMismatch,
    SupportNotSymmetric,
)

MultiIndex = tuple[int, ...]


@dataclass(frozen=True)
class IntMatrix:
    """Dense exact integer matrix (row-major tuple of tuples)."""

    rows: int
    cols: int
    data: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise ValueError("data shape does not match rows x cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        data = tuple(tuple(int(v) for v in r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(len(data), cols, data)

    @classmethod
    def identity(cls, k: int) -> "IntMatrix":
        return cls(k, k, tuple(tuple(int(i == j) for j in range(k)) for i in range(k)))

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        cols_t = list(zip(*other.data)) if other.rows else [()] * other.cols
        data = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in cols_t) for row in self.data
        )
        return IntMatrix(self.rows, other.cols, data)

    def vstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.cols:
            raise ShapeMismatch("column counts differ")
        return IntMatrix(self.rows + other.rows, self.cols, self.data + other.data)


@dataclass(frozen=True)
class SymTensorSupport:
    """Order-``m``, dimension-``n`` nonnegative tensor with symmetric support.

    ``entries`` holds ``(multi_index, value)`` pairs sorted lexicographically.
    ``symmetrized`` records whether permuted input values had to be averaged.
    """

    order: int
    dim: int
    entries: tuple[tuple[MultiIndex, Fraction], ...]
    symmetrized: bool = field(default=False, compare=False)

    @property
    def support(self) -> frozenset[MultiIndex]:
        return frozenset(idx for idx, _ in self.entries)

    @property
    def indices(self) -> list[MultiIndex]:
        return [idx for idx, _ in self.entries]

    def value(self, idx: Sequence[int]) -> Fraction:
        key = tuple(sorted(idx))
        for k, v in self.entries:
            if k == key:
                return v
        return Fraction(0)

    def __len__(self) -> int:
        return len(self.entries)


def _multinomial(counts: Iterable[int]) -> int:
    counts = list(counts)
    out = math.factorial(sum(counts))
    for c in counts:
        out //= math.factorial(c)
    return out


def build_support(
    order: int,
    dim: int,
    raw_entries: Iterable[tuple[Sequence[int], object]],
    symmetrize: bool = False,
) -> SymTensorSupport:
    """Canonicalize raw ``(index_tuple, value)`` pairs into a tensor.

    If any tuple arrives unsorted the caller is describing the full tensor,
    so the supplied tuple set must be closed under index permutation. Values
    that differ between permutations of one tuple raise
    ``ConflictingDuplicate`` unless ``symmetrize`` is set, in which case they
    are averaged over the supplied permutations.
    """
    if order < 2:
        raise OrderMismatch(f"order must be >= 2, got {order}")
    if dim < 1:
        raise IndexOutOfRange(f"dimension must be >= 1, got {dim}")

    seen: dict[MultiIndex, dict[MultiIndex, Fraction]] = {}
    any_unsorted = False
    for idx, val in raw_entries:
        idx = tuple(int(i) for i in idx)
        if len(idx) != order:
            raise OrderMismatch(f"index {idx} has length {len(idx)}, expected {order}")
        for i in idx:
            if not 1 <= i <= dim:
                raise IndexOutOfRange(f"index {idx} outside [1, {dim}]")
        v = Fraction(val) if not isinstance(val, str) else Fraction(val.strip())
        if v <= 0:
            raise ValueError(f"entry {idx} must be strictly positive, got {v}")
        key = tuple(sorted(idx))
        if key != idx:
            any_unsorted = True
        perms = seen.setdefault(key, {})
        if idx in perms and perms[idx] != v:
            raise ConflictingDuplicate(f"index {idx} given twice with values {perms[idx]} and {v}")
        perms[idx] = v

    symmetrized = False
    entries = []
    for key in sorted(seen):
        perms = seen[key]
        if any_unsorted:
            needed = _multinomial(Counter(key).values())
            if len(perms) != needed:
                raise SupportNotSymmetric(
                    f"support not closed under permutation at {key}: "
                    f"{len(perms)} of {needed} orderings present"
                )
        values = set(perms.values())
        if len(values) > 1:
            if not symmetrize:
                raise ConflictingDuplicate(f"permutations of {key} carry different values {sorted(values)}")
            symmetrized = True
            value = sum(perms.values(), Fraction(0)) / len(perms)
        else:
            value = values.pop()
        entries.append((key, value))
    return SymTensorSupport(order, dim, tuple(entries), symmetrized)


def is_weakly_irreducible(A: SymTensorSupport) -> bool:
    """True iff the digraph D(A) is strongly connected.

    With a symmetric support every arc comes with its reverse, so strong
    connectivity is plain connectivity of the entry/vertex incidence graph,
    with every vertex touched by some entry.
    """
    n = A.dim
    if n == 1:
        return True
    parent = list(range(n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    touched = set()
    for idx, _ in A.entries:
        touched.update(idx)
        r = find(idx[0])
        for v in idx[1:]:
            rv = find(v)
            if rv != r:
                parent[rv] = r
    if len(touched) != n:
        return False
    root = find(1)
    return all(find(v) == root for v in range(2, n + 1))


def incidence_matrix(A: SymTensorSupport) -> IntMatrix:
    """Rows follow the lexicographic order of the canonical entries."""
    rows = []
    for idx, _ in A.entries:
        row = [0] * A.dim
        for v in idx:
            row[v - 1] += 1
        rows.append(row)
    return IntMatrix.from_rows(rows, cols=A.dim)


def is_subpattern(B: SymTensorSupport, A: SymTensorSupport) -> bool:
    if B.order != A.order or B.dim != A.dim:
        raise ShapeMismatch(
            f"shapes differ: ({B.order}, {B.dim}) vs ({A.order}, {A.dim})"
        )
    return B.support <= A.support


def parse_tensor(text: str) -> SymTensorSupport:
    """Parse the ``tensor m n`` text format (``#`` starts a comment line)."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty tensor file")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "tensor":
        raise ParseError(f"expected header 'tensor m n', got {lines[0]!r}")
    try:
        m, n = int(head[1]), int(head[2])
    except ValueError as exc:
        raise ParseError(f"bad header {lines[0]!r}") from exc
    raw = []
    for lineno, ln in enumerate(lines[1:], start=2):
        tok = ln.split()
        if len(tok) != m + 1:
            raise ParseError(f"line {lineno}: expected {m} indices and a value, got {ln!r}")
        try:
            idx = tuple(int(t) for t in tok[:m])
            val = Fraction(tok[m])
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"line {lineno}: {exc}") from exc
        raw.append((idx, val))
    return build_support(m, n, raw)


def format_tensor(A: SymTensorSupport) -> str:
    out = [f"tensor {A.order} {A.dim}"]
    for idx, val in A.entries:
        out.append(" ".join(map(str, idx)) + f" {val}")
    return "\n".join(out) + "\n"
