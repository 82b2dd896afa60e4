import itertools

import pytest

from oracles import SPIN_BY_DIM, cellular_betti, hand_spin_answer
from topochange.errors import DimensionMismatch, NotSpin, UnsupportedDimension
from topochange.expr import manifold
from topochange.manifolds import (
    ManifoldDescriptor,
    complex_projective,
    k3,
    product,
    quaternionic_projective,
    real_projective,
    sphere,
    torus,
)
from topochange.rules import (
    Answer,
    Obstruction,
    Verdict,
    classify,
    decide_lorentzian,
    decide_spin_lorentzian,
    decide_weak,
)
from topochange.witness import revalidate


def spin_pairs(n):
    return list(itertools.combinations_with_replacement(SPIN_BY_DIM[n], 2))


# -- Lorentzian ----------------------------------------------------------------

def test_surfaces_with_different_euler():
    v = decide_lorentzian(sphere(2), torus(2))
    assert v.answer is Answer.NO
    assert v.obstruction.values == (2, 0)
    assert str(v.obstruction) == "χ: 2 ≠ 0"


def test_torus_to_torus():
    assert decide_lorentzian(torus(2), torus(2)).answer is Answer.YES


@pytest.mark.parametrize("a,b", list(itertools.combinations(
    ["S3", "T3", "RP3", "S1 x S2", "T3 # RP3", "S1 x S2 # S1 x S2"], 2)))
def test_any_orientable_three_manifolds(a, b):
    v = decide_lorentzian(manifold(a), manifold(b))
    assert v.answer is Answer.YES
    assert v.witness is not None


def test_lorentzian_odd_dimension_uses_bounding_flags():
    assert decide_lorentzian(product(sphere(1), quaternionic_projective(1)), sphere(5)).answer is Answer.YES
    # Betti data of SU(3)/SO(3), registered without cobordism information
    wu = ManifoldDescriptor("W", 5, (1, 0, 0, 0, 0, 1), (1, 0, 1, 1, 0, 1), True, False)
    v = decide_lorentzian(wu, sphere(5))
    assert v.answer is Answer.UNKNOWN
    assert "Stiefel-Whitney" in v.reason


def test_lorentzian_even_dimension():
    assert decide_lorentzian(torus(4), product(sphere(2), sphere(2))).answer is Answer.NO
    assert decide_lorentzian(real_projective(4), real_projective(4)).answer is Answer.YES
    assert decide_lorentzian(k3(), k3()).answer is Answer.YES


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        decide_lorentzian(sphere(2), sphere(3))


# -- spin Lorentzian -------------------------------------------------------

def test_three_sphere_versus_three_torus():
    v = decide_spin_lorentzian(sphere(3), torus(3))
    assert v.answer is Answer.NO
    assert str(v) == "No — obstruction χ̂: 1 ≠ 0 — rule Thm-GibbonsHawking"


def test_seven_sphere_versus_anything():
    for e in SPIN_BY_DIM[7]:
        assert decide_spin_lorentzian(sphere(7), manifold(e)).answer is Answer.YES


def test_four_sphere_versus_k3():
    v = decide_spin_lorentzian(sphere(4), k3())
    assert v.answer is Answer.NO
    assert str(v.obstruction) == "σ: 0 ≠ -16"


def test_spin_required():
    with pytest.raises(NotSpin):
        decide_spin_lorentzian(complex_projective(2), sphere(4))


@pytest.mark.parametrize("n", [3, 5, 6, 7])
def test_decision_matches_hand_rule(n):
    for a, b in spin_pairs(n):
        ba, bb = cellular_betti(a)[1], cellular_betti(b)[1]
        v = decide_spin_lorentzian(manifold(a), manifold(b))
        expected = Answer.YES if hand_spin_answer(n, ba, bb) else Answer.NO
        assert v.answer is expected, (a, b, str(v))


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_spin_decision_is_symmetric(n):
    for a, b in spin_pairs(n):
        x, y = manifold(a), manifold(b)
        v, w = decide_spin_lorentzian(x, y), decide_spin_lorentzian(y, x)
        assert (v.answer, v.rule) == (w.answer, w.rule)


@pytest.mark.parametrize("n", [3, 5, 6, 7])
def test_classification_agrees_with_decision(n):
    for a, b in spin_pairs(n):
        x, y = manifold(a), manifold(b)
        same = classify(x).invariant_tuple == classify(y).invariant_tuple
        assert (decide_spin_lorentzian(x, y).answer is Answer.YES) == same


@pytest.mark.parametrize("n", [4, 6])
def test_spin_yes_refines_lorentzian(n):
    for a, b in spin_pairs(n):
        x, y = manifold(a), manifold(b)
        if decide_spin_lorentzian(x, y).answer is Answer.YES:
            assert decide_lorentzian(x, y).answer is not Answer.NO


@pytest.mark.parametrize("n", [3, 5, 7])
def test_yes_witnesses_revalidate(n):
    for a, b in spin_pairs(n):
        v = decide_spin_lorentzian(manifold(a), manifold(b))
        if v.answer is not Answer.YES:
            continue
        assert v.witness is not None and v.witness.menu.all_spin
        # spin cobordisms with these ends have chi of the template's parity
        for chi in range(-12, 13):
            if v.witness.admissible(chi):
                r = v.witness.instantiate(chi)
                assert revalidate(r) == 0


def test_even_dimension_yes_records_checks():
    v = decide_spin_lorentzian(product(sphere(2), sphere(4)), complex_projective(3))
    assert v.answer is Answer.YES
    assert ("chi", 4, 4) in v.checks


def test_unknown_outside_tabulated_dimensions():
    v = decide_spin_lorentzian(sphere(9), torus(9))
    assert v.answer is Answer.NO  # semi-characteristic 1 vs 0 decides before cobordism
    a, b = torus(9), product(sphere(4), sphere(5))
    v = decide_spin_lorentzian(a, b)
    assert v.answer is Answer.UNKNOWN
    assert "spin_cobordism_known" in v.reason
    assert decide_spin_lorentzian(a, b, True).answer is Answer.YES
    v = decide_spin_lorentzian(a, b, False)
    assert v.answer is Answer.NO


def test_rule_ids_by_residue():
    assert decide_spin_lorentzian(sphere(15), torus(15)).rule == "Thm-General-n≡7 mod 8"
    assert decide_spin_lorentzian(sphere(11), torus(11), True).rule == "Thm-General-n≡1,3,5 mod 8"
    assert decide_spin_lorentzian(sphere(8), torus(8), True).rule == "Thm-General-n≡0 mod 2"
    assert decide_spin_lorentzian(sphere(5), torus(5)).rule == "Cor-SpinLorentz-5D"


def test_no_requires_obstruction():
    with pytest.raises(ValueError):
        Verdict(Answer.NO, "x")
    assert str(Verdict(Answer.NO, "r", Obstruction("chi", (1, 2)))) == "No — obstruction χ: 1 ≠ 2 — rule r"


# -- weak ----------------------------------------------------------------------

def test_weak_spin_five():
    assert decide_weak(sphere(5), product(sphere(2), sphere(3)), require_spin=True).answer is Answer.YES


def test_weak_three():
    assert decide_weak(sphere(3), torus(3)).answer is Answer.YES


def test_weak_spin_four_signature():
    v = decide_weak(sphere(4), k3(), require_spin=True)
    assert v.answer is Answer.NO
    assert v.obstruction.invariant == "signature"


def test_weak_unoriented_parity():
    v = decide_weak(sphere(2), real_projective(2))
    assert v.answer is Answer.NO
    assert decide_weak(torus(2), sphere(2)).answer is Answer.YES


def test_weak_unknown():
    v = decide_weak(quaternionic_projective(3), product(quaternionic_projective(2), sphere(4)))
    assert v.answer is Answer.UNKNOWN


# -- classification ----------------------------------------------------------

@pytest.mark.parametrize("expr,group,tup", [
    ("S3", "Z/2", (1,)), ("T3", "Z/2", (0,)), ("S4", "Z+Z", (2, 0)), ("K3", "Z+Z", (24, -16)),
    ("S5", "Z/2", (1,)), ("T5", "Z/2", (0,)), ("S6", "Z", (2,)), ("S7", "0", ()),
])
def test_classify(expr, group, tup):
    c = classify(manifold(expr))
    assert (c.group, c.invariant_tuple) == (group, tup)


def test_classify_text():
    assert str(classify(sphere(3))) == "Ω^{Spin₀}_{1,3} ≅ ℤ/2, class (1)"
    assert str(classify(sphere(7))) == "Ω^{Spin₀}_{1,7} ≅ 0, class ()"


def test_classify_errors():
    with pytest.raises(UnsupportedDimension):
        classify(sphere(8))
    with pytest.raises(NotSpin):
        classify(complex_projective(2))
