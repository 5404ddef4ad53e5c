"""Local pi/2 rotations acting on displacement indices, points, curves and bundles.

On qubit ``j`` the index pair ``(a_j, b_j)`` of ``Z^a X^b`` transforms as

    z: (a, b) -> (a + b, b)
    x: (a, b) -> (a, a + b)
    y: (a, b) -> (b, a)

Phases are not tracked: rotations act on phase-zero displacement labels,
which is all the bundle and basis structure depends on.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Union

from .gf import GF2n
from .pauli import PauliOperator
from .phasespace import Bundle, Curve, Point, canonical_curve

AXES = ("x", "y", "z")

_AXIS_MAPS = {
    "x": lambda a, b: (a, a ^ b),
    "y": lambda a, b: (b, a),
    "z": lambda a, b: (a ^ b, b),
}


def _compose_word(word: str):
    table = {}
    for a, b in itertools.product((0, 1), repeat=2):
        pa, pb = a, b
        for axis in word:
            pa, pb = _AXIS_MAPS[axis](pa, pb)
        table[(a, b)] = (pa, pb)
    return table


# The six invertible maps of Z_2^2, in the fixed order used for tie-breaking.
# Words are read left to right as successive rotations.
MAP_NAMES = ("1", "x", "y", "z", "xz", "zx")
MAP_TABLES = tuple(_compose_word(name if name != "1" else "") for name in MAP_NAMES)


def map_id(word: str) -> int:
    """Id of the map realized by a rotation word such as ``"zxz"`` or ``"1"``."""
    word = word.strip().replace("1", "")
    if any(ch not in AXES for ch in word):
        raise ValueError(f"invalid rotation word {word!r}")
    return MAP_TABLES.index(_compose_word(word))


@dataclass(frozen=True)
class LocalRotation:
    axis: str
    qubit: int

    def __post_init__(self):
        if self.axis not in AXES:
            raise ValueError(f"axis must be one of {AXES}, got {self.axis!r}")
        if self.qubit < 0:
            raise ValueError("qubit index must be nonnegative")

    def as_clifford(self, n: int) -> "LocalClifford":
        self._check_qubit(n)
        ids = [0] * n
        ids[self.qubit] = MAP_NAMES.index(self.axis)
        return LocalClifford(tuple(ids))

    def _check_qubit(self, n: int) -> None:
        if self.qubit >= n:
            raise ValueError(f"qubit {self.qubit} out of range for {n} qubits")


@dataclass(frozen=True, order=True)
class LocalClifford:
    """One invertible index map per qubit, identified by its id in ``MAP_NAMES``."""

    maps: tuple[int, ...]

    @classmethod
    def identity(cls, n: int) -> "LocalClifford":
        return cls((0,) * n)

    @classmethod
    def parse(cls, text: str) -> "LocalClifford":
        """Parse ``"y@z"``; each tensor factor is a rotation word or ``1``."""
        parts = [p for p in re.split(r"@|⊗", text.strip())]
        if not all(parts):
            raise ValueError(f"invalid transformation {text!r}")
        return cls(tuple(map_id(p) for p in parts))

    @property
    def n(self) -> int:
        return len(self.maps)

    def word(self) -> str:
        return "@".join(MAP_NAMES[m] for m in self.maps)

    def __str__(self) -> str:
        return self.word()

    def then(self, other: "LocalClifford") -> "LocalClifford":
        """Apply ``self`` first, then ``other``."""
        if self.n != other.n:
            raise ValueError("qubit count mismatch")
        out = []
        for m1, m2 in zip(self.maps, other.maps):
            t1, t2 = MAP_TABLES[m1], MAP_TABLES[m2]
            out.append(MAP_TABLES.index({k: t2[t1[k]] for k in t1}))
        return LocalClifford(tuple(out))

    def apply_to_indices(self, op: PauliOperator) -> PauliOperator:
        if op.n != self.n:
            raise ValueError(f"operator has {op.n} qubits, transformation {self.n}")
        pairs = [MAP_TABLES[m][f] for m, f in zip(self.maps, op.factors())]
        return PauliOperator(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs), op.phase)

    def apply_to_point(self, point: Point, field: GF2n) -> Point:
        a, b = field.expand(point[0]), field.expand(point[1])
        out = self.apply_to_indices(PauliOperator(a, b))
        return field.combine(out.a), field.combine(out.b)


Transformation = Union[LocalRotation, LocalClifford]


def _as_clifford(t: Transformation, n: int) -> LocalClifford:
    if isinstance(t, LocalRotation):
        return t.as_clifford(n)
    if t.n != n:
        raise ValueError(f"transformation acts on {t.n} qubits, field has {n}")
    return t


def apply_to_indices(t: Transformation, op: PauliOperator) -> PauliOperator:
    return _as_clifford(t, op.n).apply_to_indices(op)


def apply_to_point(rot: LocalRotation, point: Point, field: GF2n) -> Point:
    """Field-level form of a single rotation on qubit ``j`` with basis element ``t``:

    z: alpha += t tr(beta t);  x: beta += t tr(alpha t);
    y: both += t tr((alpha + beta) t).
    """
    rot._check_qubit(field.n)
    if not field.is_self_dual:
        raise ValueError("field-level rotations need a self-dual basis")
    t = field.basis[rot.qubit]
    alpha, beta = point
    if rot.axis == "z":
        return alpha ^ field.mul(t, field.trace(field.mul(beta, t))), beta
    if rot.axis == "x":
        return alpha, beta ^ field.mul(t, field.trace(field.mul(alpha, t)))
    shift = field.mul(t, field.trace(field.mul(alpha ^ beta, t)))
    return alpha ^ shift, beta ^ shift


def apply_to_curve(t: Transformation, curve: Curve) -> Curve:
    field = curve.field
    cl = _as_clifford(t, field.n)
    return canonical_curve(field, (cl.apply_to_point(p, field) for p in curve.points))


def apply_to_bundle(t: Transformation, bundle: Bundle) -> Bundle:
    curves = tuple(apply_to_curve(t, c) for c in bundle.curves)
    return Bundle(curves)


@lru_cache(maxsize=4096)
def point_table(cl: LocalClifford, field: GF2n) -> dict[Point, Point]:
    """The permutation of phase space induced by ``cl``."""
    return {(a, b): cl.apply_to_point((a, b), field) for a in field.elements() for b in field.elements()}


def map_points(t: Transformation, points, field: GF2n) -> frozenset[Point]:
    table = point_table(_as_clifford(t, field.n), field)
    return frozenset(table[p] for p in points)


def all_local_cliffords(n: int):
    """Every per-qubit map tuple in lexicographic id order."""
    return (LocalClifford(ids) for ids in itertools.product(range(len(MAP_NAMES)), repeat=n))


def find_transformation(src: Bundle, dst: Bundle) -> LocalClifford | None:
    """Least local map sending the curves of ``src`` onto those of ``dst``."""
    field = src.field
    target = dst.point_sets
    for cl in all_local_cliffords(field.n):
        table = point_table(cl, field)
        if all(frozenset(table[p] for p in c.points) in target for c in src.curves):
            return cl
    return None


def orbit(bundle: Bundle) -> dict[frozenset, LocalClifford]:
    """Bundles reachable from ``bundle`` by local maps, keyed by point sets, with the least map."""
    field = bundle.field
    out: dict[frozenset, LocalClifford] = {}
    for cl in all_local_cliffords(field.n):
        table = point_table(cl, field)
        image = frozenset(frozenset(table[p] for p in c.points) for c in bundle.curves)
        out.setdefault(image, cl)
    return out


def connectivity(bundles: Sequence[Bundle]) -> list[list[LocalClifford | None]]:
    return [[find_transformation(s, d) for d in bundles] for s in bundles]
