"""Gravitational kink numbers from Euler characteristics.

With stably parallelizable boundary the kink number of a weak Lorentzian
cobordism is ``chi(M)`` when ``dim M`` is even and ``(chi(N2) - chi(N1)) / 2``
when it is odd. Kink zero characterizes Lorentzian cobordisms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import (
    EvenBoundaryDimension,
    NotSpin,
    NotStablyParallelizableBoundary,
    OddDifference,
    UnsupportedDimension,
)
from .manifolds import CobordismDescriptor, euler_characteristic

EVEN_DIM_CHI = "even_dim_chi"
ODD_DIM_HALF_DIFFERENCE = "odd_dim_half_difference"


@dataclass(frozen=True)
class KinkReport:
    kink: int
    formula_used: str
    parity_ok: Optional[bool] = None

    def to_json(self) -> dict:
        return {"kink": self.kink, "formula_used": self.formula_used, "parity_ok": self.parity_ok}


def kink_of(cob: CobordismDescriptor) -> KinkReport:
    bad = [b.name for b in cob.boundary if b.stably_parallelizable is not True]
    if bad:
        raise NotStablyParallelizableBoundary(
            f"boundary pieces not known to be stably parallelizable: {', '.join(bad)}"
        )
    if cob.dim % 2 == 0:
        kink = cob.euler
        parity = None
        if cob.spin and parity_rule_applies(cob.dim):
            parity = spin_parity_check(cob, kink)
        return KinkReport(kink, EVEN_DIM_CHI, parity)
    chi_in = euler_characteristic(cob.boundary[0]) if cob.boundary else 0
    chi_out = sum(euler_characteristic(b) for b in cob.boundary[1:])
    diff = chi_out - chi_in
    if diff % 2:
        raise OddDifference(f"chi(N2) - chi(N1) = {diff} is odd")
    return KinkReport(diff // 2, ODD_DIM_HALF_DIFFERENCE)


def parity_rule_applies(dim: int) -> bool:
    """Spin parity ``chi(M) + semi-chi(dM) = 0 mod 2`` holds for ``dim = 2q``, q not 0 mod 4.

    In dimensions divisible by 8 it fails: HP2 minus a disk has chi 2 and
    boundary S7 with semi-characteristic 1.
    """
    return dim % 2 == 0 and (dim // 2) % 4 != 0


def spin_parity_check(cob: CobordismDescriptor, claimed_kink: int) -> bool:
    """Whether ``claimed_kink`` has the parity forced by the boundary semi-characteristic."""
    if not cob.spin:
        raise NotSpin(f"{cob.name} is not a spin cobordism")
    if cob.dim % 2:
        raise EvenBoundaryDimension(f"boundary dimension {cob.dim - 1} is even")
    if not parity_rule_applies(cob.dim):
        raise UnsupportedDimension(
            f"no spin parity constraint on kink numbers in cobordism dimension {cob.dim} (divisible by 8)"
        )
    return cob.boundary_semi_characteristic("Z2") == claimed_kink % 2
