"""Minimal CW chain complexes for the catalog pieces that admit cheap ones.

These complexes are the independent route for Betti numbers: products are
assembled as tensor products of cellular chain complexes and connected sums
by wedging the codimension-one skeleta and gluing a single top cell, then
everything goes through :func:`topochange.homology.homology`.
"""

from __future__ import annotations

from .errors import DimensionMismatch, NegativeParameter, UnknownName
from .homology import ChainComplex, IntegerMatrix


def point_complex() -> ChainComplex:
    return ChainComplex([], ranks=[1])


def sphere_complex(n: int) -> ChainComplex:
    if n < 0:
        raise NegativeParameter(f"S{n}")
    if n == 0:
        return ChainComplex([], ranks=[2])
    ranks = [1] + [0] * (n - 1) + [1]
    return ChainComplex(_zero_maps(ranks), ranks)


def circle_complex() -> ChainComplex:
    return sphere_complex(1)


def torus_complex(n: int) -> ChainComplex:
    if n < 0:
        raise NegativeParameter(f"T{n}")
    out = point_complex()
    for _ in range(n):
        out = product_complex(out, circle_complex())
    return out


def real_projective_complex(n: int) -> ChainComplex:
    """One cell per dimension; ``d_k`` is multiplication by ``1 + (-1)^k``."""
    if n < 0:
        raise NegativeParameter(f"RP{n}")
    mats = [IntegerMatrix.from_rows([[1 + (-1) ** k]]) for k in range(1, n + 1)]
    return ChainComplex(mats, [1] * (n + 1))


def _even_cells(step: int, k: int) -> ChainComplex:
    dim = step * k
    ranks = [1 if d % step == 0 else 0 for d in range(dim + 1)]
    return ChainComplex(_zero_maps(ranks), ranks)


def complex_projective_complex(k: int) -> ChainComplex:
    if k < 0:
        raise NegativeParameter(f"CP{k}")
    return _even_cells(2, k)


def quaternionic_projective_complex(k: int) -> ChainComplex:
    if k < 0:
        raise NegativeParameter(f"HP{k}")
    return _even_cells(4, k)


def catalog_complex(name: str, param: int | None = None) -> ChainComplex:
    builders = {
        "S": sphere_complex,
        "T": torus_complex,
        "RP": real_projective_complex,
        "CP": complex_projective_complex,
        "HP": quaternionic_projective_complex,
    }
    if name == "point":
        return point_complex()
    if name not in builders:
        raise UnknownName(f"no explicit cell complex for {name!r}")
    if param is None:
        raise UnknownName(f"{name} needs an integer parameter")
    return builders[name](param)


def _zero_maps(ranks):
    return [IntegerMatrix.zeros(ranks[k - 1], ranks[k]) for k in range(1, len(ranks))]


def _kron(a: IntegerMatrix, b: IntegerMatrix, sign: int = 1) -> list[list[int]]:
    return [
        [sign * x * y for x in ra for y in rb]
        for ra in a.entries
        for rb in b.entries
    ]


def product_complex(a: ChainComplex, b: ChainComplex) -> ChainComplex:
    """Cellular chain complex of ``A x B``: ``d(x (x) y) = dx (x) y + (-1)^|x| x (x) dy``.

    The basis of degree ``k`` lists the blocks ``A_i (x) B_{k-i}`` by
    increasing ``i``, each block in row-major (a-index major) order.
    """
    n = a.dim + b.dim
    blocks: list[list[tuple[int, int]]] = []
    offsets: list[dict[int, int]] = []
    ranks = []
    for k in range(n + 1):
        pairs = [(i, k - i) for i in range(max(0, k - b.dim), min(a.dim, k) + 1)]
        off, total = {}, 0
        for i, j in pairs:
            off[i] = total
            total += a.ranks[i] * b.ranks[j]
        blocks.append(pairs)
        offsets.append(off)
        ranks.append(total)
    mats = []
    for k in range(1, n + 1):
        m = [[0] * ranks[k] for _ in range(ranks[k - 1])]
        for i, j in blocks[k]:
            col0 = offsets[k][i]
            if i >= 1:
                # d_A (x) id lands in block (i-1, j)
                block = _kron(a.boundary(i), IntegerMatrix.identity(b.ranks[j]))
                _paste(m, block, offsets[k - 1][i - 1], col0)
            if j >= 1:
                block = _kron(IntegerMatrix.identity(a.ranks[i]), b.boundary(j), (-1) ** i)
                _paste(m, block, offsets[k - 1][i], col0)
        mats.append(IntegerMatrix.from_rows(m, cols=ranks[k]))
    return ChainComplex(mats, ranks)


def _paste(target, block, r0, c0):
    for r, row in enumerate(block):
        trow = target[r0 + r]
        for c, x in enumerate(row):
            if x:
                trow[c0 + c] += x


def connected_sum_complex(a: ChainComplex, b: ChainComplex) -> ChainComplex:
    """Cellular complex of ``A # B`` for complexes with one 0-cell and one top cell.

    Removing the open top cells leaves the wedge of the codimension-one
    skeleta; a single new top cell is attached along the sum of the two old
    attaching maps, so its boundary column stacks the two old columns.
    """
    n = a.dim
    if b.dim != n:
        raise DimensionMismatch(f"cannot form connected sum of dimensions {a.dim} and {b.dim}")
    for c in (a, b):
        if c.ranks[0] != 1 or c.ranks[n] != 1:
            raise ValueError("connected_sum_complex needs exactly one 0-cell and one top cell")
    if n == 0:
        raise ValueError("connected sum needs positive dimension")
    ranks = [1] + [a.ranks[k] + b.ranks[k] for k in range(1, n)] + [1]
    mats = []
    for k in range(1, n + 1):
        if k == n:
            if n == 1:
                mats.append(IntegerMatrix.zeros(1, 1))
                continue
            col = [r[0] for r in a.boundary(n).entries] + [r[0] for r in b.boundary(n).entries]
            mats.append(IntegerMatrix.from_rows([[x] for x in col], cols=1))
        elif k == 1:
            mats.append(IntegerMatrix.zeros(1, ranks[1]))
        else:
            m = [[0] * ranks[k] for _ in range(ranks[k - 1])]
            _paste(m, a.boundary(k).entries, 0, 0)
            _paste(m, b.boundary(k).entries, a.ranks[k - 1], a.ranks[k])
            mats.append(IntegerMatrix.from_rows(m, cols=ranks[k]))
    return ChainComplex(mats, ranks)


def disjoint_union_complex(a: ChainComplex, b: ChainComplex) -> ChainComplex:
    n = max(a.dim, b.dim)
    ra = list(a.ranks) + [0] * (n - a.dim)
    rb = list(b.ranks) + [0] * (n - b.dim)
    ranks = [x + y for x, y in zip(ra, rb)]
    mats = []
    for k in range(1, n + 1):
        m = [[0] * ranks[k] for _ in range(ranks[k - 1])]
        da = a.boundary(k) if k <= a.dim else IntegerMatrix.zeros(ra[k - 1], 0)
        db = b.boundary(k) if k <= b.dim else IntegerMatrix.zeros(rb[k - 1], 0)
        _paste(m, da.entries, 0, 0)
        _paste(m, db.entries, ra[k - 1], ra[k])
        mats.append(IntegerMatrix.from_rows(m, cols=ranks[k]))
    return ChainComplex(mats, ranks)
