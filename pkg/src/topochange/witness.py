"""Connected-sum recipes that move the Euler characteristic of a cobordism.

Summing a closed ``d``-manifold ``X`` into a ``d``-dimensional cobordism
changes its Euler characteristic by ``chi(X) - chi(S^d)``. The menus below
fix which summands are allowed; :func:`solve_counts` finds the smallest
nonnegative counts hitting a target value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterator, Optional, Sequence

from .errors import EvenBoundaryDimension, NoSolution, NotSpin, UnsupportedDimension
from .manifolds import (
    CobordismDescriptor,
    ManifoldDescriptor,
    complex_projective,
    connected_sum,
    connected_sum_cobordism,
    euler_characteristic,
    product,
    quaternionic_projective,
    real_projective,
    sphere,
    torus,
)


@dataclass(frozen=True)
class SummandMenu:
    dim: int
    entries: tuple[tuple[ManifoldDescriptor, int], ...]
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        base = euler_characteristic(sphere(self.dim))
        for m, delta in self.entries:
            if m.dim != self.dim:
                raise ValueError(f"menu entry {m.name} has dimension {m.dim}, menu is {self.dim}")
            if not m.connected:
                raise ValueError(f"menu entry {m.name} is not connected")
            if delta != euler_characteristic(m) - base:
                raise ValueError(f"menu entry {m.name}: delta {delta} disagrees with its Euler characteristic")

    @classmethod
    def of(cls, dim: int, pieces: Sequence[ManifoldDescriptor], label: str = "") -> SummandMenu:
        base = euler_characteristic(sphere(dim))
        return cls(dim, tuple((m, euler_characteristic(m) - base) for m in pieces), label)

    @property
    def deltas(self) -> tuple[int, ...]:
        return tuple(d for _, d in self.entries)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(m.name for m, _ in self.entries)

    @property
    def all_spin(self) -> bool:
        return all(m.spin for m, _ in self.entries)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "label": self.label,
            "entries": [{"summand": m.name, "delta": d, "spin": m.spin} for m, d in self.entries],
        }


@dataclass(frozen=True)
class WitnessRecipe:
    """``M = base # k1 X1 # k2 X2 # ...`` with ``chi(M) = resulting_euler``."""

    dim: int
    base_chi: int
    target: int
    counts: tuple[tuple[ManifoldDescriptor, int], ...]
    resulting_euler: int
    base: Optional[CobordismDescriptor] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(self.counts))
        if any(k < 0 for _, k in self.counts):
            raise ValueError("summand counts must be nonnegative")
        base = euler_characteristic(sphere(self.dim))
        expected = self.base_chi + sum(k * (euler_characteristic(m) - base) for m, k in self.counts)
        if expected != self.resulting_euler:
            raise ValueError(f"recipe arithmetic is off: {expected} != {self.resulting_euler}")

    @property
    def nonzero_counts(self) -> dict[str, int]:
        return {m.name: k for m, k in self.counts if k}

    @property
    def total(self) -> int:
        return sum(k for _, k in self.counts)

    def to_json(self) -> dict:
        return {
            "base_chi": self.base_chi,
            "target": self.target,
            "counts": [{"summand": m.name, "k": k} for m, k in self.counts],
            "resulting_euler": self.resulting_euler,
        }

    def __str__(self):
        parts = [f"{k}({m.name})" if k > 1 else f"({m.name})" for m, k in self.counts if k]
        body = " # ".join(["M̂"] + parts)
        return f"{body}  [chi: {self.base_chi} -> {self.resulting_euler}]"


def menu_for_dimension(n: int) -> SummandMenu:
    """Spin summands for zeroing chi of an (n+1)-dimensional spin cobordism, n odd.

    >>> menu_for_dimension(7).deltas
    (1, -2)
    """
    if n % 2 == 0:
        raise EvenBoundaryDimension(f"boundary dimension {n} is even; no Euler-characteristic witness is needed")
    if n < 3:
        raise UnsupportedDimension(
            "boundary dimension 1 is degenerate (the circle is the only closed 1-manifold); no menu is provided"
        )
    d = n + 1
    s2 = sphere(2)
    if n == 3:
        pieces = [product(sphere(1), sphere(3)), product(s2, s2)]
        label = "S1 x S3, S2 x S2"
    elif n % 8 == 7:
        q = (n - 7) // 8
        pieces = [quaternionic_projective(2 * q + 2), torus(d)]
        label = f"HP{2 * q + 2}, T{d}"
    elif n % 8 == 1:
        q = (n - 1) // 8
        pieces = [product(quaternionic_projective(2 * q), s2), torus(d)]
        label = f"HP{2 * q} x S2, T{d}"
    elif n % 8 == 3:
        q = (n - 3) // 8
        pieces = [product(product(quaternionic_projective(2 * q), s2), s2), torus(d)]
        label = f"HP{2 * q} x S2 x S2, T{d}"
    else:
        q = (n - 5) // 8
        pieces = [product(quaternionic_projective(2 * q + 1), s2), torus(d)]
        label = f"HP{2 * q + 1} x S2, T{d}"
    menu = SummandMenu.of(d, pieces, label)
    assert menu.all_spin
    return menu


def kink_menu(dim: int, spin: bool = False) -> SummandMenu:
    """Summands for prescribing chi of a ``dim``-dimensional cobordism (dim even).

    The unrestricted menu is CP^m, S2 x S^{dim-2} and T^dim; when every one of
    those changes chi by an even amount (m odd) RP^dim is added, which changes
    it by -1. The spin menu keeps S2 x S^{dim-2}, T^dim and, in dimensions
    divisible by 8, HP^{dim/4}.
    """
    if dim % 2 or dim < 2:
        raise EvenBoundaryDimension(f"cobordism dimension {dim} must be even and positive")
    m = dim // 2
    if spin:
        pieces = []
        if dim >= 4:
            pieces.append(product(sphere(2), sphere(dim - 2)))
        pieces.append(torus(dim))
        if dim % 8 == 0:
            pieces.append(quaternionic_projective(dim // 4))
        return SummandMenu.of(dim, pieces, "spin")
    pieces = [complex_projective(m)]
    if dim >= 4:
        pieces.append(product(sphere(2), sphere(dim - 2)))
    pieces.append(torus(dim))
    menu = SummandMenu.of(dim, pieces)
    if all(d % 2 == 0 for d in menu.deltas):
        menu = SummandMenu.of(dim, pieces + [real_projective(dim)])
    return menu


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    # ascending lexicographic order of (k1, k2, ...)
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first, *rest)


def solve_counts(chi_base: int, menu: SummandMenu, target: int = 0) -> WitnessRecipe:
    """Smallest nonnegative counts with ``chi_base + sum(k_i * delta_i) == target``.

    Solutions are ordered by total count, then lexicographically by the counts
    in menu order. Raises :class:`NoSolution` when the gcd of the deltas does
    not divide ``target - chi_base`` or when every delta has the wrong sign.

    >>> solve_counts(5, menu_for_dimension(7)).nonzero_counts
    {'HP2': 1, 'T8': 3}
    """
    if not menu.entries:
        raise ValueError("menu is empty")
    deltas = menu.deltas
    need = target - chi_base
    g = 0
    for d in deltas:
        g = gcd(g, d)
    if need == 0:
        return _recipe(chi_base, target, menu, (0,) * len(deltas))
    if g == 0 or need % g:
        raise NoSolution(
            f"chi must change by {need}, but every summand changes it by a multiple of {g} "
            f"(residue {need % g if g else need})",
            modulus=g,
            residue=need % g if g else need,
        )
    if all(d * need <= 0 for d in deltas):
        raise NoSolution(f"no summand moves chi in the direction of {need:+d}")
    # if one delta of each sign exists, some solution uses at most |need| + p + m
    # summands (p, m the magnitudes); same-sign solutions use at most |need|
    bound = abs(need) + sum(abs(d) for d in deltas)
    for total in range(1, bound + 1):
        for ks in _compositions(total, len(deltas)):
            if sum(k * d for k, d in zip(ks, deltas)) == need:
                return _recipe(chi_base, target, menu, ks)
    raise NoSolution(f"no nonnegative combination of {list(deltas)} equals {need}", modulus=g)


def _recipe(chi_base, target, menu, ks, base=None):
    return WitnessRecipe(
        dim=menu.dim,
        base_chi=chi_base,
        target=target,
        counts=tuple((m, k) for (m, _), k in zip(menu.entries, ks)),
        resulting_euler=chi_base + sum(k * d for k, d in zip(ks, menu.deltas)),
        base=base,
    )


def prescribed_kink_recipe(base: CobordismDescriptor, t: int, spin: bool = False) -> WitnessRecipe:
    """Counts realizing ``chi(M_t) = t``; with stably parallelizable ends the kink number is then ``t``."""
    if t == 0:
        raise ValueError("prescribed kink must be nonzero; kink 0 is the Lorentzian case")
    if base.dim % 2:
        raise EvenBoundaryDimension(
            f"cobordism dimension {base.dim} is odd; its kink number is fixed by the boundary"
        )
    if spin and not base.spin:
        raise NotSpin(f"{base.name} carries no spin structure")
    menu = kink_menu(base.dim, spin=spin)
    r = solve_counts(base.euler, menu, t)
    return WitnessRecipe(r.dim, r.base_chi, r.target, r.counts, r.resulting_euler, base=base)


def realize(recipe: WitnessRecipe, base: Optional[CobordismDescriptor] = None) -> CobordismDescriptor:
    """Assemble ``base # k1 X1 # ...`` as a cobordism descriptor, summand by summand."""
    base = base or recipe.base
    if base is None:
        raise ValueError("recipe has no concrete base cobordism")
    out = base
    for m, k in recipe.counts:
        for _ in range(k):
            out = connected_sum_cobordism(out, m)
    return out


def revalidate(recipe: WitnessRecipe) -> int:
    """Recompute chi of the recipe's manifold through closed connected sums.

    The summands are first assembled into one closed manifold ``S^d # ...``;
    summing that into a base with Euler characteristic ``base_chi`` yields
    the returned value.
    """
    closed = sphere(recipe.dim)
    for m, k in recipe.counts:
        for _ in range(k):
            closed = connected_sum(closed, m, allow_nonorientable=True)
    return recipe.base_chi + euler_characteristic(closed) - euler_characteristic(sphere(recipe.dim))


@dataclass(frozen=True)
class WitnessTemplate:
    """A menu plus target, waiting for the Euler characteristic of a concrete base.

    ``parity`` is ``None`` when every base value can be fixed, otherwise the
    residue mod 2 the base Euler characteristic is guaranteed to have.
    """

    menu: SummandMenu
    target: int = 0
    parity: Optional[int] = None

    def instantiate(self, chi_base: int) -> WitnessRecipe:
        return solve_counts(chi_base, self.menu, self.target)

    def admissible(self, chi_base: int) -> bool:
        return self.parity is None or chi_base % 2 == self.parity

    def to_json(self) -> dict:
        return {"menu": self.menu.to_json(), "target": self.target, "base_chi_parity": self.parity}

    def __str__(self):
        names = " # ".join(f"k{i + 1}({name})" for i, name in enumerate(self.menu.names))
        req = "" if self.parity is None else f", chi(M̂) ≡ {self.parity} mod 2"
        return f"M = M̂ # {names} with chi(M) = {self.target}{req}"

