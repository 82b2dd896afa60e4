"""Exact homology of finite chain complexes over Z, Q and Z/2.

Integer work goes through a Smith normal form with arbitrary-precision
Python ints; the Z/2 ranks are computed separately by bitset elimination so
that the two fields give independent answers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import NotAComplex

__all__ = [
    "IntegerMatrix",
    "ChainComplex",
    "HomologySummary",
    "smith_normal_form",
    "rank_mod2",
    "homology",
    "euler_characteristic_of_complex",
    "load_chain_complex",
]


@dataclass(frozen=True)
class IntegerMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError(f"entries do not form a {self.rows}x{self.cols} matrix")
        for row in self.entries:
            for x in row:
                # bool is an int subclass but never a meaningful entry
                if not isinstance(x, int) or isinstance(x, bool):
                    raise TypeError(f"matrix entries must be integers, got {x!r}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntegerMatrix:
        entries = tuple(tuple(int(x) for x in r) for r in rows)
        if cols is None:
            if not entries:
                raise ValueError("cannot infer column count of a matrix with no rows")
            cols = len(entries[0])
        return cls(len(entries), cols, entries)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntegerMatrix:
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> IntegerMatrix:
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def diagonal(cls, values: Sequence[int], rows: int | None = None, cols: int | None = None):
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        return cls(rows, cols, tuple(
            tuple(values[i] if i == j and i < len(values) else 0 for j in range(cols))
            for i in range(rows)
        ))

    def __matmul__(self, other: IntegerMatrix) -> IntegerMatrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        columns = list(zip(*other.entries)) if other.rows else [()] * other.cols
        return IntegerMatrix(self.rows, other.cols, tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in columns)
            for row in self.entries
        ))

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def transpose(self) -> IntegerMatrix:
        return IntegerMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else
                             tuple(() for _ in range(self.cols)))

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


def smith_normal_form(m: IntegerMatrix) -> tuple[int, list[int]]:
    """Return ``(rank, invariant_factors)`` of an integer matrix.

    The factors satisfy ``d1 | d2 | ... | dr`` and are all positive. Pivots are
    chosen by minimal absolute value to keep intermediate entries small.

    >>> smith_normal_form(IntegerMatrix.diagonal([2, 3]))
    (2, [1, 6])
    """
    a = [list(r) for r in m.entries]
    nrows, ncols = m.rows, m.cols
    factors: list[int] = []
    t = 0
    while t < nrows and t < ncols:
        pivot = _min_nonzero(a, t, t, nrows, ncols)
        if pivot is None:
            break
        _swap_into(a, t, pivot)
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, nrows):
                if a[i][t]:
                    q = a[i][t] // p
                    if q:
                        ri, rt = a[i], a[t]
                        for j in range(t, ncols):
                            ri[j] -= q * rt[j]
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, ncols):
                if a[t][j]:
                    q = a[t][j] // p
                    if q:
                        for i in range(t, nrows):
                            a[i][j] -= q * a[i][t]
                    if a[t][j]:
                        dirty = True
            if dirty:
                _swap_into(a, t, _min_in_cross(a, t, nrows, ncols))
                continue
            # pivot must divide the whole trailing block for d_i | d_{i+1}
            bad = next(((i, j) for i in range(t + 1, nrows) for j in range(t + 1, ncols)
                        if a[i][j] % p), None)
            if bad is None:
                break
            rt, rb = a[t], a[bad[0]]
            for j in range(t, ncols):
                rt[j] += rb[j]
        factors.append(abs(a[t][t]))
        t += 1
    return len(factors), factors


def _min_nonzero(a, r0, c0, nrows, ncols):
    best = None
    for i in range(r0, nrows):
        row = a[i]
        for j in range(c0, ncols):
            x = row[j]
            if x and (best is None or abs(x) < best[0]):
                best = (abs(x), i, j)
                if best[0] == 1:
                    return i, j
    return None if best is None else best[1:]


def _min_in_cross(a, t, nrows, ncols):
    best = (abs(a[t][t]), t, t)
    for i in range(t + 1, nrows):
        if a[i][t] and abs(a[i][t]) < best[0]:
            best = (abs(a[i][t]), i, t)
    for j in range(t + 1, ncols):
        if a[t][j] and abs(a[t][j]) < best[0]:
            best = (abs(a[t][j]), t, j)
    return best[1:]


def _swap_into(a, t, pos):
    i, j = pos
    if i != t:
        a[t], a[i] = a[i], a[t]
    if j != t:
        for row in a:
            row[t], row[j] = row[j], row[t]


def rank_mod2(m: IntegerMatrix) -> int:
    """Rank of ``m`` reduced modulo 2, by elimination on row bitsets."""
    pivots: dict[int, int] = {}
    for row in m.entries:
        bits = 0
        for j, x in enumerate(row):
            if x & 1:
                bits |= 1 << j
        while bits:
            top = bits.bit_length() - 1
            if top not in pivots:
                pivots[top] = bits
                break
            bits ^= pivots[top]
    return len(pivots)


class ChainComplex:
    """Finite chain complex ``C_n -> ... -> C_0`` of free abelian groups.

    ``boundaries[k-1]`` is the matrix of ``d_k : C_k -> C_{k-1}``, with one row
    per (k-1)-cell. ``ranks`` gives the chain group ranks and is only needed
    when a matrix with zero rows leaves a rank undetermined. ``d o d == 0`` is
    checked here, at construction.
    """

    def __init__(self, boundaries: Iterable[IntegerMatrix], ranks: Sequence[int] | None = None):
        self.boundaries: tuple[IntegerMatrix, ...] = tuple(boundaries)
        self.ranks: tuple[int, ...] = tuple(self._resolve_ranks(ranks))
        self._validate()

    @property
    def dim(self) -> int:
        return len(self.ranks) - 1

    def _resolve_ranks(self, ranks):
        n = len(self.boundaries)
        if ranks is not None:
            if len(ranks) != n + 1:
                raise NotAComplex(f"{n} boundary matrices need {n + 1} chain ranks, got {len(ranks)}")
            return [int(r) for r in ranks]
        if n == 0:
            raise NotAComplex("a complex with no boundary matrices needs explicit ranks")
        out = [self.boundaries[0].rows]
        for k in range(1, n + 1):
            mat = self.boundaries[k - 1]
            nxt = self.boundaries[k] if k < n else None
            if mat.rows or nxt is None:
                out.append(mat.cols)
            else:
                out.append(nxt.rows)
        return out

    def _validate(self):
        for r in self.ranks:
            if r < 0:
                raise NotAComplex("chain ranks must be nonnegative")
        for k, mat in enumerate(self.boundaries, start=1):
            if (mat.rows, mat.cols) != (self.ranks[k - 1], self.ranks[k]):
                raise NotAComplex(
                    f"d_{k} has shape {mat.rows}x{mat.cols}, expected "
                    f"{self.ranks[k - 1]}x{self.ranks[k]}"
                )
        for k in range(2, len(self.boundaries) + 1):
            if not (self.boundaries[k - 2] @ self.boundaries[k - 1]).is_zero():
                raise NotAComplex(f"d_{k - 1} o d_{k} is not zero")

    def boundary(self, k: int) -> IntegerMatrix:
        """``d_k``, with zero maps outside degrees ``1..dim``."""
        if 1 <= k <= self.dim:
            return self.boundaries[k - 1]
        rows = self.ranks[k - 1] if 1 <= k <= self.dim + 1 else 0
        cols = self.ranks[k] if 0 <= k <= self.dim else 0
        return IntegerMatrix.zeros(rows, cols)

    @classmethod
    def from_json(cls, data: dict) -> ChainComplex:
        dim = int(data["dim"])
        raw = data["boundaries"]
        if len(raw) != dim:
            raise NotAComplex(f"dim {dim} requires {dim} boundary matrices, got {len(raw)}")
        ranks = data.get("ranks")
        if ranks is None:
            inferred: list[int | None] = [None] * (dim + 1)
            for k, rows in enumerate(raw, start=1):
                inferred[k - 1] = len(rows)
                if rows:
                    inferred[k] = len(rows[0])
            if None in inferred:
                raise NotAComplex("chain ranks are ambiguous (empty top matrix); add a 'ranks' field")
            ranks = inferred
        try:
            mats = [IntegerMatrix.from_rows(rows, cols=ranks[k]) for k, rows in enumerate(raw, start=1)]
        except (ValueError, IndexError) as exc:
            raise NotAComplex(str(exc)) from exc
        return cls(mats, ranks)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "ranks": list(self.ranks),
            "boundaries": [m.tolist() for m in self.boundaries],
        }

    def __repr__(self):
        return f"ChainComplex(ranks={list(self.ranks)})"


def load_chain_complex(path: str | Path) -> ChainComplex:
    return ChainComplex.from_json(json.loads(Path(path).read_text()))


@dataclass(frozen=True)
class HomologySummary:
    betti_q: tuple[int, ...]
    betti_z2: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]

    def euler_characteristic(self, field: str = "Q") -> int:
        betti = self.betti_q if field == "Q" else self.betti_z2
        return sum((-1) ** k * b for k, b in enumerate(betti))


def homology(c: ChainComplex) -> HomologySummary:
    """Betti numbers over Q and Z/2, and integral torsion, of ``c``.

    >>> s2 = ChainComplex([IntegerMatrix.zeros(1, 0), IntegerMatrix.zeros(0, 1)], ranks=[1, 0, 1])
    >>> homology(s2).betti_q
    (1, 0, 1)
    """
    n = c.dim
    snf = [smith_normal_form(c.boundary(k)) for k in range(n + 2)]
    r2 = [rank_mod2(c.boundary(k)) for k in range(n + 2)]
    betti_q, betti_z2, torsion = [], [], []
    for k in range(n + 1):
        betti_q.append(c.ranks[k] - snf[k][0] - snf[k + 1][0])
        betti_z2.append(c.ranks[k] - r2[k] - r2[k + 1])
        torsion.append(tuple(d for d in snf[k + 1][1] if d > 1))
    return HomologySummary(tuple(betti_q), tuple(betti_z2), tuple(torsion))


def euler_characteristic_of_complex(c: ChainComplex) -> int:
    return sum((-1) ** k * r for k, r in enumerate(c.ranks))
