"""Closed manifolds as invariant records, and the operations that combine them.

A :class:`ManifoldDescriptor` carries Betti numbers over Q and Z/2 plus the
flags the selection rules consume. Connected sum, cartesian product and
disjoint union act on these records directly (Künneth over a field, additivity
for sums); explicit cell complexes live in :mod:`topochange.cells` and are
only used to cross-check these formulas.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field, replace
from math import comb
from pathlib import Path
from typing import Iterable, Optional

from .errors import (
    DimensionMismatch,
    EvenDimension,
    NegativeParameter,
    NonOrientableOperand,
    TopologyChangeError,
    UnknownName,
)

CATALOG_NAMES = ("S", "T", "CP", "HP", "RP", "K3", "point")
CATALOG_ENV = "COBORD_CATALOG"

_PARAMETRIC_NAME = re.compile(r"(S|T|CP|HP|RP)\d+")
_IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


class InvalidDescriptor(TopologyChangeError):
    pass


@dataclass(frozen=True)
class ManifoldDescriptor:
    """Invariant record of a closed smooth manifold.

    ``stably_parallelizable`` and ``null_cobordant`` are tri-state (``None``
    means not known). ``signature`` is ``None`` outside dimensions divisible
    by four, for non-orientable manifolds, and where it cannot be inferred.
    Equality ignores ``name``: two records are equal when all invariants are.
    """

    name: str = field(compare=False)
    dim: int
    betti_q: tuple[int, ...]
    betti_z2: tuple[int, ...]
    orientable: bool
    spin: bool
    stably_parallelizable: Optional[bool] = None
    signature: Optional[int] = None
    null_cobordant: Optional[bool] = None

    def __post_init__(self):
        object.__setattr__(self, "betti_q", tuple(self.betti_q))
        object.__setattr__(self, "betti_z2", tuple(self.betti_z2))
        n = self.dim
        if n < 0:
            raise InvalidDescriptor(f"{self.name}: negative dimension")
        if len(self.betti_q) != n + 1 or len(self.betti_z2) != n + 1:
            raise InvalidDescriptor(f"{self.name}: Betti lists must have length dim + 1 = {n + 1}")
        if min(self.betti_q + self.betti_z2) < 0:
            raise InvalidDescriptor(f"{self.name}: negative Betti number")
        if self.betti_q[0] != self.betti_z2[0] or self.betti_q[0] < 1:
            raise InvalidDescriptor(f"{self.name}: betti_q[0] and betti_z2[0] must both count components")
        if self.betti_z2[n] != self.components:
            raise InvalidDescriptor(f"{self.name}: closed manifold needs betti_z2[{n}] = #components")
        if self.orientable and self.betti_q[n] != self.components:
            raise InvalidDescriptor(f"{self.name}: orientable closed manifold needs betti_q[{n}] = #components")
        if not self.orientable and self.betti_q[n] == self.components:
            raise InvalidDescriptor(f"{self.name}: non-orientable but top rational Betti number is full")
        if any(q > z for q, z in zip(self.betti_q, self.betti_z2)):
            raise InvalidDescriptor(f"{self.name}: betti_z2 must dominate betti_q")
        if self.spin and not self.orientable:
            raise InvalidDescriptor(f"{self.name}: spin implies orientable")
        if self.signature is not None and (n % 4 or not self.orientable):
            raise InvalidDescriptor(f"{self.name}: signature only exists for oriented 4k-manifolds")

    @property
    def components(self) -> int:
        return self.betti_q[0]

    @property
    def connected(self) -> bool:
        return self.components == 1

    @property
    def euler(self) -> int:
        return euler_characteristic(self)

    def renamed(self, name: str) -> ManifoldDescriptor:
        return replace(self, name=name)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "dim": self.dim,
            "betti_q": list(self.betti_q),
            "betti_z2": list(self.betti_z2),
            "orientable": self.orientable,
            "spin": self.spin,
            "stably_parallelizable": self.stably_parallelizable,
            "signature": self.signature,
            "null_cobordant": self.null_cobordant,
        }

    @classmethod
    def from_json(cls, data: dict) -> ManifoldDescriptor:
        try:
            return cls(
                name=str(data["name"]),
                dim=int(data["dim"]),
                betti_q=tuple(data["betti_q"]),
                betti_z2=tuple(data.get("betti_z2", data["betti_q"])),
                orientable=bool(data["orientable"]),
                spin=bool(data.get("spin", False)),
                stably_parallelizable=data.get("stably_parallelizable"),
                signature=data.get("signature"),
                null_cobordant=data.get("null_cobordant"),
            )
        except KeyError as exc:
            raise InvalidDescriptor(f"descriptor is missing field {exc.args[0]!r}") from None

    def __str__(self):
        return self.name


def euler_characteristic(m: ManifoldDescriptor) -> int:
    return sum((-1) ** k * b for k, b in enumerate(m.betti_q))


def semi_characteristic(m: ManifoldDescriptor, field: str = "Z2") -> int:
    """Kervaire semi-characteristic: Betti numbers in degrees ``0..q`` summed mod 2.

    Only defined for ``dim = 2q + 1``. Disjoint unions are handled because
    their Betti numbers add.
    """
    if m.dim % 2 == 0:
        raise EvenDimension(f"{m.name} has even dimension {m.dim}")
    betti = {"Z2": m.betti_z2, "Q": m.betti_q}[_field(field)]
    return sum(betti[: (m.dim - 1) // 2 + 1]) % 2


def _field(name: str) -> str:
    key = name.upper().replace("/", "").replace("ℤ", "Z").replace("ℚ", "Q")
    if key in ("Z2", "F2"):
        return "Z2"
    if key == "Q":
        return "Q"
    raise ValueError(f"unsupported coefficient field {name!r}")


# -- catalog --------------------------------------------------------------

def point() -> ManifoldDescriptor:
    return ManifoldDescriptor("point", 0, (1,), (1,), True, True, True, 1, False)


def sphere(n: int) -> ManifoldDescriptor:
    _nonneg("S", n)
    if n == 0:
        return ManifoldDescriptor("S0", 0, (2,), (2,), True, True, True, None, True)
    betti = (1,) + (0,) * (n - 1) + (1,)
    return ManifoldDescriptor(f"S{n}", n, betti, betti, True, True, True, 0 if n % 4 == 0 else None, True)


def torus(n: int) -> ManifoldDescriptor:
    _nonneg("T", n)
    if n == 0:
        return point().renamed("T0")
    betti = tuple(comb(n, k) for k in range(n + 1))
    return ManifoldDescriptor(f"T{n}", n, betti, betti, True, True, True, 0 if n % 4 == 0 else None, True)


def complex_projective(k: int) -> ManifoldDescriptor:
    _nonneg("CP", k)
    if k == 0:
        return point().renamed("CP0")
    betti = tuple(int(d % 2 == 0) for d in range(2 * k + 1))
    sig = 1 if k % 2 == 0 else None
    # CP1 is the 2-sphere; CP^{odd} is an S2-bundle over HP^j and so bounds
    return ManifoldDescriptor(f"CP{k}", 2 * k, betti, betti, True, k % 2 == 1, k == 1, sig, k % 2 == 1)


def quaternionic_projective(k: int) -> ManifoldDescriptor:
    _nonneg("HP", k)
    if k == 0:
        return point().renamed("HP0")
    betti = tuple(int(d % 4 == 0) for d in range(4 * k + 1))
    # middle cohomology H^{2k} is nonzero only for k even
    sig = 1 if k % 2 == 0 else 0
    # k even: odd Euler characteristic, so some Stiefel-Whitney number is nonzero
    bounds = False if k % 2 == 0 else (True if k == 1 else None)
    return ManifoldDescriptor(f"HP{k}", 4 * k, betti, betti, True, True, k == 1, sig, bounds)


def real_projective(k: int) -> ManifoldDescriptor:
    _nonneg("RP", k)
    if k == 0:
        return point().renamed("RP0")
    betti_z2 = (1,) * (k + 1)
    betti_q = (1,) + (0,) * (k - 1) + (int(k % 2 == 1),)
    orientable = k % 2 == 1
    return ManifoldDescriptor(
        f"RP{k}", k, betti_q, betti_z2, orientable, k % 4 == 3,
        # RP^k is stably parallelizable exactly for k in {1, 3, 7}
        k in (1, 3, 7), None, orientable,
    )


def k3() -> ManifoldDescriptor:
    betti = (1, 0, 22, 0, 1)
    # oriented-cobordant to 16 copies of CP2 up to sign, hence zero in the unoriented group
    return ManifoldDescriptor("K3", 4, betti, betti, True, True, False, -16, True)


_BUILTIN = {
    "S": sphere,
    "T": torus,
    "CP": complex_projective,
    "HP": quaternionic_projective,
    "RP": real_projective,
}


def _nonneg(name, k):
    if not isinstance(k, int) or isinstance(k, bool):
        raise TypeError(f"{name} parameter must be an integer")
    if k < 0:
        raise NegativeParameter(f"{name}{k}: parameter must be nonnegative")


class Catalog:
    """Name resolution for built-in pieces plus user-registered descriptors."""

    def __init__(self, extra: Iterable[ManifoldDescriptor] = ()):
        self._extra: dict[str, ManifoldDescriptor] = {}
        for d in extra:
            self.register(d)

    def register(self, d: ManifoldDescriptor) -> None:
        if d.name in CATALOG_NAMES or _PARAMETRIC_NAME.fullmatch(d.name):
            raise ValueError(f"{d.name!r} shadows a built-in catalog name")
        if not _IDENTIFIER.fullmatch(d.name):
            raise ValueError(f"{d.name!r} is not usable in expressions")
        self._extra[d.name] = d

    @property
    def registered(self) -> dict[str, ManifoldDescriptor]:
        return dict(self._extra)

    def knows(self, name: str) -> bool:
        return name in CATALOG_NAMES or name in self._extra

    def takes_parameter(self, name: str) -> bool:
        return name in _BUILTIN

    def __call__(self, name: str, *params: int) -> ManifoldDescriptor:
        if name in self._extra:
            if params:
                raise UnknownName(f"registered manifold {name!r} takes no parameter")
            return self._extra[name]
        if name == "K3" or name == "point":
            if params:
                raise UnknownName(f"{name} takes no parameter")
            return k3() if name == "K3" else point()
        if name in _BUILTIN:
            if len(params) != 1:
                raise UnknownName(f"{name} needs exactly one integer parameter")
            return _BUILTIN[name](params[0])
        raise UnknownName(f"unknown manifold {name!r}")

    @classmethod
    def from_file(cls, path: str | Path) -> Catalog:
        data = json.loads(Path(path).read_text())
        if isinstance(data, dict):
            data = data.get("manifolds", [data])
        return cls(ManifoldDescriptor.from_json(d) for d in data)

    @classmethod
    def from_environment(cls) -> Catalog:
        path = os.environ.get(CATALOG_ENV)
        return cls.from_file(path) if path else cls()


def catalog(name: str, *params: int) -> ManifoldDescriptor:
    """Look up a built-in piece: ``catalog("HP", 2)``, ``catalog("K3")``."""
    return Catalog()(name, *params)


# -- operations -----------------------------------------------------------

def connected_sum(
    a: ManifoldDescriptor, b: ManifoldDescriptor, *, allow_nonorientable: bool = False
) -> ManifoldDescriptor:
    """Connected sum of closed connected manifolds of equal dimension.

    Betti numbers add in degrees ``0 < k < n``. Operands must be orientable
    unless ``allow_nonorientable`` is set: a sum with a non-orientable operand
    needs no orientation choice and is itself non-orientable.
    """
    if not allow_nonorientable:
        for m in (a, b):
            if not m.orientable:
                raise NonOrientableOperand(f"{m.name} is not orientable")
    if a.dim != b.dim:
        raise DimensionMismatch(f"cannot form {a.name} # {b.name}: dimensions {a.dim} and {b.dim}")
    if a.dim < 1:
        raise DimensionMismatch("connected sum needs dimension at least 1")
    if not (a.connected and b.connected):
        raise InvalidDescriptor("connected sum operands must be connected")
    n = a.dim
    orientable = a.orientable and b.orientable
    mid_q = [x + y for x, y in zip(a.betti_q[1:n], b.betti_q[1:n])]
    mid_z2 = [x + y for x, y in zip(a.betti_z2[1:n], b.betti_z2[1:n])]
    if n == 1:
        mid_q = mid_z2 = []
    betti_q = (1, *mid_q, int(orientable))
    betti_z2 = (1, *mid_z2, 1)
    sig = None
    if orientable and a.signature is not None and b.signature is not None:
        sig = a.signature + b.signature
    sp = True if (a.stably_parallelizable and b.stably_parallelizable) else None
    return ManifoldDescriptor(
        name=_join(a, b, "#"),
        dim=n,
        betti_q=betti_q,
        betti_z2=betti_z2,
        orientable=orientable,
        spin=orientable and a.spin and b.spin,
        stably_parallelizable=sp,
        signature=sig,
        null_cobordant=_bounds_sum(a.null_cobordant, b.null_cobordant, n, betti_q),
    )


def product(a: ManifoldDescriptor, b: ManifoldDescriptor) -> ManifoldDescriptor:
    """Cartesian product; Betti numbers over each field by Künneth convolution."""
    betti_q = _convolve(a.betti_q, b.betti_q)
    betti_z2 = _convolve(a.betti_z2, b.betti_z2)
    orientable = a.orientable and b.orientable
    n = a.dim + b.dim
    sig = None
    if orientable and n % 4 == 0:
        sa, sb = _signature_or_zero(a), _signature_or_zero(b)
        if sa is not None and sb is not None:
            sig = sa * sb
    if a.stably_parallelizable is False or b.stably_parallelizable is False:
        sp = False
    elif a.stably_parallelizable and b.stably_parallelizable:
        sp = True
    else:
        sp = None
    if a.null_cobordant or b.null_cobordant:
        bounds = True
    else:
        bounds = _parity_bounds(n, betti_q, None)
    return ManifoldDescriptor(
        name=_join(a, b, "x"),
        dim=n,
        betti_q=betti_q,
        betti_z2=betti_z2,
        orientable=orientable,
        spin=a.spin and b.spin,
        stably_parallelizable=sp,
        signature=sig,
        null_cobordant=bounds,
    )


def disjoint_union(a: ManifoldDescriptor, b: ManifoldDescriptor) -> ManifoldDescriptor:
    if a.dim != b.dim:
        raise DimensionMismatch(f"cannot form {a.name} ⊔ {b.name}: dimensions {a.dim} and {b.dim}")
    betti_q = tuple(x + y for x, y in zip(a.betti_q, b.betti_q))
    sig = None
    if a.orientable and b.orientable and a.signature is not None and b.signature is not None:
        sig = a.signature + b.signature
    sp = a.stably_parallelizable and b.stably_parallelizable
    if a.stably_parallelizable is False or b.stably_parallelizable is False:
        sp = False
    return ManifoldDescriptor(
        name=f"{a.name} ⊔ {b.name}",
        dim=a.dim,
        betti_q=betti_q,
        betti_z2=tuple(x + y for x, y in zip(a.betti_z2, b.betti_z2)),
        orientable=a.orientable and b.orientable,
        spin=a.spin and b.spin,
        stably_parallelizable=sp,
        signature=sig,
        null_cobordant=_bounds_sum(a.null_cobordant, b.null_cobordant, a.dim, betti_q),
    )


def _signature_or_zero(m: ManifoldDescriptor) -> Optional[int]:
    # signature vanishes by definition outside dimensions 4k
    if m.dim % 4:
        return 0
    return m.signature


def _convolve(x, y):
    out = [0] * (len(x) + len(y) - 1)
    for i, a in enumerate(x):
        for j, b in enumerate(y):
            out[i + j] += a * b
    return tuple(out)


def _bounds_sum(x, y, n, betti_q):
    # A # B and A ⊔ B are cobordant, so null-cobordance behaves like addition mod 2
    if x is not None and y is not None and (x or y):
        return x and y
    return _parity_bounds(n, betti_q, None)


def _parity_bounds(n, betti_q, default):
    # Euler characteristic mod 2 is the top Stiefel-Whitney number
    if n % 2 == 0 and sum((-1) ** k * b for k, b in enumerate(betti_q)) % 2:
        return False
    return default


def _join(a, b, op):
    left = f"({a.name})" if _loose(a.name, op) else a.name
    right = f"({b.name})" if _loose(b.name, op) else b.name
    return f"{left} {op} {right}"


def _loose(name: str, op: str) -> bool:
    # a '#'-expression needs parentheses inside a product
    if op == "x":
        return _top_level(name, "#") or _top_level(name, "⊔")
    return _top_level(name, "⊔")


def _top_level(name, op):
    depth = 0
    for ch in name:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == op and depth == 0:
            return True
    return False


# -- cobordisms -----------------------------------------------------------

@dataclass(frozen=True)
class CobordismDescriptor:
    """Compact manifold with boundary, as a record.

    ``boundary[0]`` is the incoming end ``N1``; the remaining entries together
    form the outgoing end ``N2``. The order matters for the odd-dimensional
    kink formula.
    """

    dim: int
    euler: int
    boundary: tuple[ManifoldDescriptor, ...]
    spin: bool = False
    stably_parallelizable: Optional[bool] = None
    name: str = field(default="M", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "boundary", tuple(self.boundary))
        for b in self.boundary:
            if b.dim != self.dim - 1:
                raise DimensionMismatch(
                    f"boundary piece {b.name} has dimension {b.dim}, expected {self.dim - 1}"
                )
            if self.spin and not b.spin:
                raise InvalidDescriptor(f"spin cobordism induces a spin structure on {b.name}")
        if self.dim % 2 == 1:
            total = sum(euler_characteristic(b) for b in self.boundary)
            if total != 2 * self.euler:
                raise InvalidDescriptor(
                    f"odd-dimensional M needs chi(boundary) = 2 chi(M); got {total} vs {self.euler}"
                )

    @property
    def incoming(self) -> Optional[ManifoldDescriptor]:
        return self.boundary[0] if self.boundary else None

    @property
    def outgoing(self) -> tuple[ManifoldDescriptor, ...]:
        return self.boundary[1:]

    def boundary_semi_characteristic(self, field: str = "Z2") -> int:
        return sum(semi_characteristic(b, field) for b in self.boundary) % 2

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "dim": self.dim,
            "euler": self.euler,
            "boundary": [b.to_json() for b in self.boundary],
            "spin": self.spin,
            "stably_parallelizable": self.stably_parallelizable,
        }

    @classmethod
    def from_json(cls, data: dict, resolve=None) -> CobordismDescriptor:
        """Inverse of :meth:`to_json`.

        Boundary entries may be descriptor objects or, when ``resolve`` is
        given, strings that ``resolve`` turns into descriptors.
        """
        def piece(b):
            if isinstance(b, str):
                if resolve is None:
                    raise InvalidDescriptor(f"boundary entry {b!r} needs a resolver")
                return resolve(b)
            return ManifoldDescriptor.from_json(b)

        try:
            return cls(
                dim=int(data["dim"]),
                euler=int(data["euler"]),
                boundary=tuple(piece(b) for b in data["boundary"]),
                spin=bool(data.get("spin", False)),
                stably_parallelizable=data.get("stably_parallelizable"),
                name=str(data.get("name", "M")),
            )
        except KeyError as exc:
            raise InvalidDescriptor(f"cobordism descriptor is missing field {exc.args[0]!r}") from None


def cylinder(n: ManifoldDescriptor) -> CobordismDescriptor:
    """``N x [0, 1]`` with boundary ``N ⊔ N``."""
    return CobordismDescriptor(
        dim=n.dim + 1,
        euler=euler_characteristic(n),
        boundary=(n, n),
        spin=n.spin,
        stably_parallelizable=n.stably_parallelizable,
        name=f"{n.name} x I",
    )


def disk(d: int) -> CobordismDescriptor:
    return CobordismDescriptor(d, 1, (sphere(d - 1),), True, True, name=f"D{d}")


def punctured(x: ManifoldDescriptor) -> CobordismDescriptor:
    """``X`` minus an open disk; boundary ``S^{n-1}``."""
    return CobordismDescriptor(
        dim=x.dim,
        euler=euler_characteristic(x) - 1,
        boundary=(sphere(x.dim - 1),),
        spin=x.spin,
        stably_parallelizable=True if x.stably_parallelizable else None,
        name=f"{x.name} - D{x.dim}",
    )


def disk_product(x: ManifoldDescriptor, k: int) -> CobordismDescriptor:
    """``X x D^k`` with boundary ``X x S^{k-1}``."""
    return CobordismDescriptor(
        dim=x.dim + k,
        euler=euler_characteristic(x),
        boundary=(product(x, sphere(k - 1)),),
        spin=x.spin,
        stably_parallelizable=x.stably_parallelizable,
        name=f"{x.name} x D{k}",
    )


def connected_sum_cobordism(m: CobordismDescriptor, x: ManifoldDescriptor) -> CobordismDescriptor:
    """Interior connected sum ``M # X`` with a closed connected ``X``."""
    if not x.connected:
        raise InvalidDescriptor(f"{x.name} is not connected")
    if x.dim != m.dim:
        raise DimensionMismatch(f"cannot sum a {x.dim}-manifold into a {m.dim}-dimensional cobordism")
    return CobordismDescriptor(
        dim=m.dim,
        euler=m.euler + euler_characteristic(x) - euler_characteristic(sphere(m.dim)),
        boundary=m.boundary,
        spin=m.spin and x.spin,
        stably_parallelizable=True if (m.stably_parallelizable and x.stably_parallelizable) else None,
        name=f"{m.name} # {x.name}",
    )
