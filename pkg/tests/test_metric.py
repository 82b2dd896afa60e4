import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from topochange.errors import DegenerateBasis, NotPositiveDefinite, WrongSignature, ZeroVector
from topochange.metric import (
    LineField,
    SymmetricForm,
    extract_timelike_line,
    lorentz_from_riemannian,
    orthogonal_complement,
    pullback_is_riemannian,
)

MINKOWSKI = np.diag([-1.0, 1.0, 1.0, 1.0])


def random_spd(rng, d):
    a = rng.normal(size=(d, d))
    return a @ a.T + d * 0.1 * np.eye(d)


@st.composite
def spd_and_vector(draw):
    d = draw(st.integers(2, 8))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    v = rng.normal(size=d)
    assume(np.linalg.norm(v) > 1e-3)
    return random_spd(rng, d), v


# -- construction ----------------------------------------------------------

def test_orthonormal_frame_containing_v():
    g = lorentz_from_riemannian(np.eye(4), [1, 0, 0, 0])
    assert np.array_equal(g.matrix, MINKOWSKI)


def test_two_dimensional_example():
    g = lorentz_from_riemannian(np.eye(2), [1, 1])
    assert np.allclose(g.matrix, [[0, -1], [-1, 0]], atol=1e-15)
    assert np.allclose(np.linalg.eigvalsh(g.matrix), [-1, 1])


def test_construction_errors():
    with pytest.raises(NotPositiveDefinite):
        lorentz_from_riemannian(MINKOWSKI, [1, 0, 0, 0])
    with pytest.raises(ZeroVector):
        lorentz_from_riemannian(np.eye(3), [0, 0, 0])
    with pytest.raises(ValueError):
        SymmetricForm([[1, 2], [0, 1]])


@settings(max_examples=300, deadline=None)
@given(spd_and_vector())
def test_signature_and_timelike(data):
    g_r, v = data
    g = lorentz_from_riemannian(g_r, v)
    assert g.inertia() == (1, 0, g.dim - 1)
    assert g(v, v) < 0
    assert np.isclose(g(v, v), -(v @ g_r @ v), rtol=1e-9)


@settings(max_examples=300, deadline=None)
@given(spd_and_vector(), st.floats(-1e3, 1e3).filter(lambda x: abs(x) > 1e-3))
def test_scale_invariance(data, lam):
    g_r, v = data
    a = lorentz_from_riemannian(g_r, v).matrix
    b = lorentz_from_riemannian(g_r, lam * v).matrix
    assert np.max(np.abs(a - b)) <= 1e-12 * max(1.0, np.max(np.abs(a)))


@settings(max_examples=300, deadline=None)
@given(spd_and_vector())
def test_flips_only_the_line(data):
    g_r, v = data
    g = lorentz_from_riemannian(g_r, v)
    w = orthogonal_complement(g_r, v)
    # g agrees with g_r on the g_r-orthogonal complement of v
    assert np.allclose(w @ g.matrix @ w.T, w @ g_r @ w.T, atol=1e-9 * np.max(np.abs(g_r)))


# -- pullback --------------------------------------------------------------

def test_spacelike_slice():
    e = np.eye(4)
    assert pullback_is_riemannian(MINKOWSKI, e[1:])
    assert not pullback_is_riemannian(MINKOWSKI, e[:3])


def test_pullback_errors():
    with pytest.raises(DegenerateBasis):
        pullback_is_riemannian(MINKOWSKI, [[0, 1, 0, 0], [0, 2, 0, 0], [0, 0, 1, 0]])
    with pytest.raises(DegenerateBasis):
        pullback_is_riemannian(MINKOWSKI, [[0, 1, 0, 0]])


@settings(max_examples=300, deadline=None)
@given(spd_and_vector())
def test_complement_of_v_is_spacelike(data):
    g_r, v = data
    g = lorentz_from_riemannian(g_r, v)
    assert pullback_is_riemannian(g, orthogonal_complement(g_r, v))


# -- extraction ----------------------------------------------------------------

def test_extract_diagonal():
    line = extract_timelike_line(MINKOWSKI, np.eye(4))
    assert np.allclose(line.vector, [1, 0, 0, 0])


def test_extract_two_dimensional():
    line = extract_timelike_line([[0, -1], [-1, 0]], np.eye(2))
    assert np.allclose(line.vector, np.array([1, 1]) / np.sqrt(2))


def test_extract_rejects_riemannian():
    with pytest.raises(WrongSignature):
        extract_timelike_line(np.eye(3), np.eye(3))
    with pytest.raises(WrongSignature):
        extract_timelike_line(np.diag([-1.0, -1.0, 1.0]), np.eye(3))
    with pytest.raises(WrongSignature):
        extract_timelike_line(np.diag([-1.0, 0.0, 1.0]), np.eye(3))


@settings(max_examples=300, deadline=None)
@given(spd_and_vector())
def test_round_trip(data):
    g_r, v = data
    line = extract_timelike_line(lorentz_from_riemannian(g_r, v), g_r)
    unit = v / np.sqrt(v @ g_r @ v)
    assert np.isclose(line.vector @ g_r @ line.vector, 1.0, rtol=1e-9)
    assert min(np.max(np.abs(line.vector - unit)), np.max(np.abs(line.vector + unit))) <= 1e-9


def test_line_field_compares_up_to_sign():
    assert LineField([1, 2]).same_line(LineField([-2, -4]))
    assert not LineField([1, 2]).same_line(LineField([2, 1]))
