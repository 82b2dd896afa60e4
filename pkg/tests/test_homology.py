import json
import random
from itertools import combinations
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from topochange.cells import (
    catalog_complex,
    real_projective_complex,
    sphere_complex,
    torus_complex,
)
from topochange.errors import NotAComplex
from topochange.homology import (
    ChainComplex,
    IntegerMatrix,
    euler_characteristic_of_complex,
    homology,
    load_chain_complex,
    rank_mod2,
    smith_normal_form,
)


# -- determinantal-divisor oracle -------------------------------------------

def _det(rows):
    """Exact determinant by Bareiss fraction-free elimination."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


def determinantal_factors(rows):
    """Invariant factors as ratios of successive gcds of k x k minors."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    divisors = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for ri in combinations(range(m), k):
            for ci in combinations(range(n), k):
                g = gcd(g, _det([[rows[i][j] for j in ci] for i in ri]))
        if g == 0:
            break
        divisors.append(g)
    return [divisors[i] // divisors[i - 1] for i in range(1, len(divisors))]


def test_oracle_itself_on_known_cases():
    assert determinantal_factors([[2, 0], [0, 3]]) == [1, 6]
    assert determinantal_factors([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]
    assert _det([[0, 1], [1, 0]]) == -1


# -- smith normal form --------------------------------------------------------

def test_snf_diag_2_3():
    assert smith_normal_form(IntegerMatrix.diagonal([2, 3])) == (2, [1, 6])


def test_snf_zero_and_identity():
    assert smith_normal_form(IntegerMatrix.zeros(3, 3)) == (0, [])
    assert smith_normal_form(IntegerMatrix.identity(4)) == (4, [1, 1, 1, 1])


def test_snf_empty_matrix():
    assert smith_normal_form(IntegerMatrix.zeros(0, 5)) == (0, [])
    assert smith_normal_form(IntegerMatrix.zeros(3, 0)) == (0, [])


def test_snf_textbook_example():
    m = IntegerMatrix.from_rows([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert smith_normal_form(m) == (3, [2, 6, 12])


def test_snf_big_entries_stay_exact():
    big = 10**30
    m = IntegerMatrix.from_rows([[big, 0], [0, big * 3]])
    assert smith_normal_form(m) == (2, [big, 3 * big])


small_matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@settings(max_examples=300, deadline=None)
@given(small_matrices)
def test_snf_matches_determinantal_divisors(rows):
    rank, factors = smith_normal_form(IntegerMatrix.from_rows(rows))
    expected = determinantal_factors(rows)
    assert factors == expected
    assert rank == len(expected)


@settings(max_examples=200, deadline=None)
@given(small_matrices)
def test_snf_rank_agrees_with_float_rank(rows):
    rank, factors = smith_normal_form(IntegerMatrix.from_rows(rows))
    assert rank == np.linalg.matrix_rank(np.array(rows, dtype=float))
    assert all(b % a == 0 for a, b in zip(factors, factors[1:]))


def _random_unimodular(n, rng):
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(3 * n):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            m[i] = [-x for x in m[i]]
            continue
        c = rng.randint(-3, 3)
        m[i] = [x + c * y for x, y in zip(m[i], m[j])]
        if rng.random() < 0.3:
            m[i], m[j] = m[j], m[i]
    return IntegerMatrix.from_rows(m)


def test_snf_invariant_under_unimodular_change_of_basis():
    rng = random.Random(20240611)
    for _ in range(200):
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        m = IntegerMatrix.from_rows([[rng.randint(-6, 6) for _ in range(c)] for _ in range(r)])
        p, q = _random_unimodular(r, rng), _random_unimodular(c, rng)
        assert abs(_det(p.entries)) == 1 and abs(_det(q.entries)) == 1
        assert smith_normal_form(p @ m @ q) == smith_normal_form(m)


def test_snf_independent_of_row_and_column_order():
    rng = random.Random(7)
    for _ in range(100):
        rows = [[rng.randint(-5, 5) for _ in range(4)] for _ in range(3)]
        shuffled = [list(r) for r in rows]
        rng.shuffle(shuffled)
        perm = list(range(4))
        rng.shuffle(perm)
        shuffled = [[r[j] for j in perm] for r in shuffled]
        assert smith_normal_form(IntegerMatrix.from_rows(rows)) == smith_normal_form(IntegerMatrix.from_rows(shuffled))


# -- mod 2 rank ---------------------------------------------------------------

def _rank_mod2_oracle(rows):
    # brute force: the row space over F2 has 2^rank elements
    space = {tuple(0 for _ in rows[0])} if rows else {()}
    for r in rows:
        v = tuple(x % 2 for x in r)
        space |= {tuple((a + b) % 2 for a, b in zip(s, v)) for s in space}
    return len(space).bit_length() - 1


@settings(max_examples=200, deadline=None)
@given(small_matrices)
def test_rank_mod2_matches_span_count(rows):
    assert rank_mod2(IntegerMatrix.from_rows(rows)) == _rank_mod2_oracle(rows)


# -- homology examples ---------------------------------------------------------

def test_sphere_two():
    h = homology(sphere_complex(2))
    assert h.betti_q == (1, 0, 1)
    assert euler_characteristic_of_complex(sphere_complex(2)) == 2


def test_real_projective_plane():
    c = ChainComplex([IntegerMatrix.from_rows([[0]]), IntegerMatrix.from_rows([[2]])])
    h = homology(c)
    assert h.betti_q == (1, 0, 0)
    assert h.betti_z2 == (1, 1, 1)
    assert h.torsion == ((), (2,), ())
    assert euler_characteristic_of_complex(c) == 1


def test_torus_two():
    c = torus_complex(2)
    assert c.ranks == (1, 2, 1)
    assert homology(c).betti_q == (1, 2, 1)
    assert euler_characteristic_of_complex(c) == 0


def test_klein_bottle():
    # one 0-cell, edges a, b, face a b a^-1 b
    c = ChainComplex([IntegerMatrix.from_rows([[0, 0]]), IntegerMatrix.from_rows([[0], [2]])])
    h = homology(c)
    assert h.betti_q == (1, 1, 0)
    assert h.betti_z2 == (1, 2, 1)
    assert h.torsion == ((), (2,), ())


def test_three_torus():
    assert homology(torus_complex(3)).betti_q == (1, 3, 3, 1)


def test_real_projective_torsion_pattern():
    h = homology(real_projective_complex(5))
    assert h.betti_q == (1, 0, 0, 0, 0, 1)
    assert h.torsion == ((), (2,), (), (2,), (), ())


CATALOG_COMPLEXES = [
    ("point", None), ("S", 0), ("S", 1), ("S", 4), ("T", 1), ("T", 4),
    ("RP", 2), ("RP", 3), ("RP", 6), ("CP", 2), ("CP", 3), ("HP", 2),
]


@pytest.mark.parametrize("name,param", CATALOG_COMPLEXES)
def test_euler_is_field_independent(name, param):
    c = catalog_complex(name, param)
    h = homology(c)
    chi = euler_characteristic_of_complex(c)
    assert h.euler_characteristic("Q") == chi == h.euler_characteristic("Z2")


@pytest.mark.parametrize("name,param", CATALOG_COMPLEXES)
def test_universal_coefficients(name, param):
    h = homology(catalog_complex(name, param))
    for k, b in enumerate(h.betti_q):
        even_torsion = sum(1 for d in h.torsion[k] if d % 2 == 0)
        if k > 0:
            even_torsion += sum(1 for d in h.torsion[k - 1] if d % 2 == 0)
        assert h.betti_z2[k] == b + even_torsion
        assert h.betti_z2[k] >= b


# -- validation and file format ------------------------------------------------

def test_d_squared_nonzero_rejected():
    with pytest.raises(NotAComplex):
        ChainComplex([IntegerMatrix.from_rows([[1]]), IntegerMatrix.from_rows([[1]])])


def test_shape_mismatch_rejected():
    with pytest.raises(NotAComplex):
        ChainComplex([IntegerMatrix.from_rows([[1, 0]]), IntegerMatrix.from_rows([[1]])])


def test_json_round_trip(tmp_path):
    c = torus_complex(3)
    path = tmp_path / "t3.json"
    path.write_text(json.dumps(c.to_json()))
    again = load_chain_complex(path)
    assert again.ranks == c.ranks
    assert homology(again) == homology(c)


def test_json_without_ranks():
    c = ChainComplex.from_json({"dim": 2, "boundaries": [[[0, 0]], [[0], [2]]]})
    assert homology(c).betti_z2 == (1, 2, 1)


def test_json_ambiguous_ranks_need_field():
    with pytest.raises(NotAComplex):
        ChainComplex.from_json({"dim": 2, "boundaries": [[[]], []]})
    c = ChainComplex.from_json({"dim": 2, "boundaries": [[[]], []], "ranks": [1, 0, 1]})
    assert homology(c).betti_q == (1, 0, 1)


def test_json_bad_complex_rejected():
    with pytest.raises(NotAComplex):
        ChainComplex.from_json({"dim": 2, "boundaries": [[[1]], [[1]]]})
