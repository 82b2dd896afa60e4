"""Existence decisions for (spin) Lorentzian and weak Lorentzian cobordisms.

Every decision is total and three-valued. ``Unknown`` is returned whenever
the answer hinges on a cobordism group that the descriptor data cannot
resolve; the verdict then says which fact is missing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .errors import DimensionMismatch, NotSpin, TopologyChangeError, UnsupportedDimension
from .manifolds import ManifoldDescriptor, euler_characteristic, semi_characteristic
from .witness import WitnessTemplate, kink_menu, menu_for_dimension

# dimensions n with vanishing spin cobordism group
SPIN_BORDISM_ZERO = frozenset({3, 5, 6, 7})

LORENTZ_RULE = "Thm-ReinhartSorkin"

SYMBOLS = {
    "chi": "χ",
    "chi_hat_z2": "χ̂",
    "signature": "σ",
    "chi_mod_2": "χ mod 2",
    "components_mod_2": "#components mod 2",
    "null_cobordant": "bounds",
}


class Answer(str, Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Obstruction:
    invariant: str
    values: Optional[tuple] = None
    detail: str = ""

    def __str__(self):
        if self.values is not None:
            a, b = self.values
            return f"{SYMBOLS.get(self.invariant, self.invariant)}: {_fmt(a)} ≠ {_fmt(b)}"
        return self.detail

    def to_json(self) -> dict:
        return {
            "invariant": self.invariant,
            "values": None if self.values is None else list(self.values),
            "detail": self.detail or str(self),
        }


def _fmt(v):
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


@dataclass(frozen=True)
class Verdict:
    answer: Answer
    rule: str
    obstruction: Optional[Obstruction] = None
    witness: Optional[WitnessTemplate] = None
    checks: tuple[tuple[str, object, object], ...] = ()
    reason: str = ""

    def __post_init__(self):
        if self.answer is Answer.NO and self.obstruction is None:
            raise ValueError("a No verdict must carry an obstruction")

    def __str__(self):
        parts = [str(self.answer)]
        if self.obstruction is not None:
            parts.append(f"obstruction {self.obstruction}")
        elif self.reason and self.answer is Answer.UNKNOWN:
            parts.append(self.reason)
        parts.append(f"rule {self.rule}")
        return " — ".join(parts)

    def to_json(self) -> dict:
        return {
            "answer": self.answer.value,
            "rule": self.rule,
            "obstruction": None if self.obstruction is None else self.obstruction.to_json(),
            "checks": [{"invariant": k, "values": [a, b]} for k, a, b in self.checks],
            "reason": self.reason,
            "witness": None if self.witness is None else self.witness.to_json(),
        }


@dataclass(frozen=True)
class GroupClassification:
    n: int
    group: str
    invariant_tuple: tuple[int, ...] = field(default_factory=tuple)

    def __str__(self):
        shown = {"Z/2": "ℤ/2", "Z+Z": "ℤ⊕ℤ", "Z": "ℤ", "0": "0"}[self.group]
        cls = "(" + ", ".join(str(x) for x in self.invariant_tuple) + ")"
        return f"Ω^{{Spin₀}}_{{1,{self.n}}} ≅ {shown}, class {cls}"

    def to_json(self) -> dict:
        return {"n": self.n, "group": self.group, "invariant_tuple": list(self.invariant_tuple)}


GROUPS = {3: "Z/2", 4: "Z+Z", 5: "Z/2", 6: "Z", 7: "0"}
GENERATORS = {3: ("S3",), 4: ("S4", "K3"), 5: ("S5",), 6: ("S6",), 7: ()}


def _same_dim(a: ManifoldDescriptor, b: ManifoldDescriptor) -> int:
    if a.dim != b.dim:
        raise DimensionMismatch(f"{a.name} has dimension {a.dim} but {b.name} has dimension {b.dim}")
    return a.dim


def _require_spin(*ms: ManifoldDescriptor):
    for m in ms:
        if not m.spin:
            raise NotSpin(f"{m.name} does not carry a spin structure")


def unoriented_cobordant(a: ManifoldDescriptor, b: ManifoldDescriptor) -> tuple[Optional[bool], Optional[Obstruction], str]:
    """Whether ``a`` and ``b`` cobound some compact manifold (no orientation required)."""
    n = _same_dim(a, b)
    if a == b and a.name == b.name:
        return True, None, "identical manifolds cobound a cylinder"
    if n == 0:
        if a.components % 2 != b.components % 2:
            return False, Obstruction("components_mod_2", (a.components % 2, b.components % 2)), ""
        return True, None, "point counts agree mod 2"
    if n in (1, 3):
        return True, None, f"every closed {n}-manifold bounds"
    if n % 2 == 0:
        ca, cb = euler_characteristic(a) % 2, euler_characteristic(b) % 2
        if ca != cb:
            # chi mod 2 is the top Stiefel-Whitney number
            return False, Obstruction("chi_mod_2", (ca, cb)), ""
        if n == 2:
            return True, None, "surfaces are classified up to cobordism by chi mod 2"
    if a.null_cobordant is not None and b.null_cobordant is not None:
        if a.null_cobordant and b.null_cobordant:
            return True, None, "both manifolds bound"
        if a.null_cobordant != b.null_cobordant:
            return False, Obstruction(
                "null_cobordant", (a.null_cobordant, b.null_cobordant),
                f"exactly one of {a.name}, {b.name} bounds",
            ), ""
    return None, None, (
        f"cobordism between {a.name} and {b.name} is not decided by Betti data "
        "(needs Stiefel-Whitney numbers)"
    )


def spin_cobordant(
    a: ManifoldDescriptor, b: ManifoldDescriptor, known: Optional[bool] = None
) -> tuple[Optional[bool], Optional[Obstruction], str]:
    n = _same_dim(a, b)
    if n in SPIN_BORDISM_ZERO:
        return True, None, f"the spin cobordism group in dimension {n} vanishes"
    if n == 4:
        if a.signature is None or b.signature is None:
            return (known, None, "signature unknown") if known is not None else (
                None, None, "signature of a 4-manifold is unknown")
        if a.signature != b.signature:
            return False, Obstruction("signature", (a.signature, b.signature)), ""
        return True, None, "spin 4-manifolds with equal signature are spin cobordant"
    if known is not None:
        if known:
            return True, None, "spin cobordism supplied by caller"
        return False, Obstruction("spin_cobordism", None, "caller states no spin cobordism exists"), ""
    return None, None, f"spin cobordism in dimension {n} is not decided here; pass spin_cobordism_known"


def decide_lorentzian(n1: ManifoldDescriptor, n2: ManifoldDescriptor) -> Verdict:
    """Existence of a Lorentzian cobordism between closed ``n1`` and ``n2``."""
    n = _same_dim(n1, n2)
    rule = LORENTZ_RULE
    cob, obstruction, why = unoriented_cobordant(n1, n2)
    if n % 2 == 0:
        c1, c2 = euler_characteristic(n1), euler_characteristic(n2)
        if c1 != c2:
            return Verdict(Answer.NO, rule, Obstruction("chi", (c1, c2)))
        if cob is False:
            return Verdict(Answer.NO, rule, obstruction)
        if cob is None:
            return Verdict(Answer.UNKNOWN, rule, reason=why)
        return Verdict(Answer.YES, rule, checks=(("chi", c1, c2),), reason=why)
    if cob is False:
        return Verdict(Answer.NO, rule, obstruction)
    if cob is None:
        return Verdict(Answer.UNKNOWN, rule, reason=why)
    witness = WitnessTemplate(kink_menu(n + 1), 0, None) if n >= 3 else None
    return Verdict(Answer.YES, rule, witness=witness, reason=why)


def spin_rule(n: int) -> str:
    if n == 3:
        return "Thm-GibbonsHawking"
    if n in (4, 5, 6, 7):
        return f"Cor-SpinLorentz-{n}D"
    if n % 2 == 0:
        return "Thm-General-n≡0 mod 2"
    if n % 8 == 7:
        return "Thm-General-n≡7 mod 8"
    return "Thm-General-n≡1,3,5 mod 8"


def decide_spin_lorentzian(
    n1: ManifoldDescriptor, n2: ManifoldDescriptor, spin_cobordism_known: Optional[bool] = None
) -> Verdict:
    """Existence of a Lorentzian cobordism whose underlying cobordism is spin.

    Boundary dimension ``n`` even: chi must agree. ``n`` = 1, 3, 5 mod 8: the
    Z/2 semi-characteristics must agree. ``n`` = 7 mod 8: no condition beyond
    a spin cobordism.
    """
    n = _same_dim(n1, n2)
    _require_spin(n1, n2)
    rule = spin_rule(n)
    sc, sc_obstruction, why = spin_cobordant(n1, n2, spin_cobordism_known)
    if sc is False:
        return Verdict(Answer.NO, rule, sc_obstruction)
    checks = []
    if n % 2 == 0:
        c1, c2 = euler_characteristic(n1), euler_characteristic(n2)
        if c1 != c2:
            return Verdict(Answer.NO, rule, Obstruction("chi", (c1, c2)))
        checks.append(("chi", c1, c2))
        if n == 4:
            checks.append(("signature", n1.signature, n2.signature))
    elif n % 8 != 7:
        h1, h2 = semi_characteristic(n1, "Z2"), semi_characteristic(n2, "Z2")
        if h1 != h2:
            return Verdict(Answer.NO, rule, Obstruction("chi_hat_z2", (h1, h2)))
        checks.append(("chi_hat_z2", h1, h2))
    if sc is None:
        return Verdict(Answer.UNKNOWN, rule, checks=tuple(checks), reason=why)
    witness = None
    if n % 2 == 1 and n >= 3:
        # chi of any spin cobordism is even unless n = 7 mod 8
        witness = WitnessTemplate(menu_for_dimension(n), 0, None if n % 8 == 7 else 0)
    return Verdict(Answer.YES, rule, witness=witness, checks=tuple(checks), reason=why)


def decide_weak(
    n1: ManifoldDescriptor,
    n2: ManifoldDescriptor,
    require_spin: bool = False,
    spin_cobordism_known: Optional[bool] = None,
) -> Verdict:
    """Weak Lorentzian cobordisms exist exactly between cobordant manifolds."""
    n = _same_dim(n1, n2)
    if not require_spin:
        rule = "Prop-WeakCobordant"
        cob, obstruction, why = unoriented_cobordant(n1, n2)
    else:
        _require_spin(n1, n2)
        rule = "Cor-SpinWeak" if n in SPIN_BORDISM_ZERO else "Prop-WeakCobordant-Spin"
        cob, obstruction, why = spin_cobordant(n1, n2, spin_cobordism_known)
    if cob is False:
        return Verdict(Answer.NO, rule, obstruction)
    if cob is None:
        return Verdict(Answer.UNKNOWN, rule, reason=why)
    checks = ()
    if require_spin and n == 4:
        checks = (("signature", n1.signature, n2.signature),)
    return Verdict(Answer.YES, rule, checks=checks, reason=why)


def classify(m: ManifoldDescriptor) -> GroupClassification:
    """Class of a closed spin ``n``-manifold in the spin Lorentzian cobordism group, 3 <= n <= 7.

    The raw invariants are reported: the Z/2 semi-characteristic for n = 3, 5,
    (chi, signature) for n = 4, chi for n = 6, nothing for n = 7.
    """
    if m.dim not in GROUPS:
        raise UnsupportedDimension(f"groups are only tabulated for n in 3..7, not {m.dim}")
    _require_spin(m)
    n = m.dim
    if n in (3, 5):
        inv = (semi_characteristic(m, "Z2"),)
    elif n == 4:
        if m.signature is None:
            raise TopologyChangeError(f"signature of {m.name} is unknown")
        inv = (euler_characteristic(m), m.signature)
    elif n == 6:
        inv = (euler_characteristic(m),)
    else:
        inv = ()
    return GroupClassification(n, GROUPS[n], inv)
