"""Phase-tracked Pauli operators in symplectic (a | b) form.

An operator is stored as ``i**phase * prod_j Z_j**a_j X_j**b_j``, i.e. each
qubit factor is the literal product ``Z^a X^b`` (so ``(1, 1)`` is ``ZX = iY``).
Under this convention the displacement ``Z_alpha X_beta`` always has phase 0.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .gf import GF2n

MAX_MATRIX_QUBITS = 4

_FACTOR_NAMES = {(0, 0): "1", (1, 0): "sz", (0, 1): "sx", (1, 1): "sy"}
_NAME_FACTORS = {v: k for k, v in _FACTOR_NAMES.items()}


@dataclass(frozen=True)
class GaussianMatrix:
    """Exact complex matrix ``re + 1j * im`` with integer entries."""

    re: np.ndarray
    im: np.ndarray

    @classmethod
    def from_complex(cls, m) -> "GaussianMatrix":
        m = np.asarray(m, dtype=complex)
        re, im = np.rint(m.real), np.rint(m.imag)
        if not (np.array_equal(re, m.real) and np.array_equal(im, m.imag)):
            raise ValueError("matrix has non-integer components")
        return cls(re.astype(np.int64), im.astype(np.int64))

    @classmethod
    def identity(cls, dim: int) -> "GaussianMatrix":
        return cls(np.eye(dim, dtype=np.int64), np.zeros((dim, dim), dtype=np.int64))

    @property
    def shape(self):
        return self.re.shape

    def __matmul__(self, other: "GaussianMatrix") -> "GaussianMatrix":
        return GaussianMatrix(
            self.re @ other.re - self.im @ other.im,
            self.re @ other.im + self.im @ other.re,
        )

    def __add__(self, other: "GaussianMatrix") -> "GaussianMatrix":
        return GaussianMatrix(self.re + other.re, self.im + other.im)

    def __neg__(self) -> "GaussianMatrix":
        return GaussianMatrix(-self.re, -self.im)

    def scale(self, k: int) -> "GaussianMatrix":
        return GaussianMatrix(k * self.re, k * self.im)

    def times_i_power(self, k: int) -> "GaussianMatrix":
        re, im = self.re, self.im
        for _ in range(k % 4):
            re, im = -im, re
        return GaussianMatrix(re, im)

    def kron(self, other: "GaussianMatrix") -> "GaussianMatrix":
        return GaussianMatrix(
            np.kron(self.re, other.re) - np.kron(self.im, other.im),
            np.kron(self.re, other.im) + np.kron(self.im, other.re),
        )

    def dagger(self) -> "GaussianMatrix":
        return GaussianMatrix(self.re.T.copy(), -self.im.T)

    def trace(self) -> complex:
        return complex(int(np.trace(self.re)), int(np.trace(self.im)))

    def to_complex(self) -> np.ndarray:
        return self.re + 1j * self.im

    def __eq__(self, other):
        if not isinstance(other, GaussianMatrix):
            return NotImplemented
        return np.array_equal(self.re, other.re) and np.array_equal(self.im, other.im)

    __hash__ = None


_SZ = GaussianMatrix(np.array([[1, 0], [0, -1]]), np.zeros((2, 2), dtype=np.int64))
_SX = GaussianMatrix(np.array([[0, 1], [1, 0]]), np.zeros((2, 2), dtype=np.int64))
_ONE = GaussianMatrix.identity(2)
_SINGLE = {(0, 0): _ONE, (1, 0): _SZ, (0, 1): _SX, (1, 1): _SZ @ _SX}


@dataclass(frozen=True, order=True)
class PauliOperator:
    a: tuple[int, ...]
    b: tuple[int, ...]
    phase: int = 0

    def __post_init__(self):
        if len(self.a) != len(self.b):
            raise ValueError(f"a and b must have equal length, got {len(self.a)} and {len(self.b)}")
        if any(v not in (0, 1) for v in self.a + self.b):
            raise ValueError("a and b must be bit vectors")
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "b", tuple(self.b))
        object.__setattr__(self, "phase", self.phase % 4)

    @classmethod
    def identity(cls, n: int) -> "PauliOperator":
        return cls((0,) * n, (0,) * n, 0)

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def stripped(self) -> "PauliOperator":
        return PauliOperator(self.a, self.b, 0)

    @property
    def is_identity(self) -> bool:
        return not any(self.a) and not any(self.b)

    @property
    def y_count(self) -> int:
        return sum(x & z for x, z in zip(self.a, self.b))

    @property
    def pauli_string_phase(self) -> int:
        """Exponent ``k`` with ``self == i**k * (tensor of I, X, Y, Z)``."""
        return (self.phase + self.y_count) % 4

    def factors(self) -> list[tuple[int, int]]:
        return list(zip(self.a, self.b))

    def tensor_string(self) -> str:
        return "@".join(_FACTOR_NAMES[f] for f in self.factors())

    def to_json(self) -> dict:
        return {"a": list(self.a), "b": list(self.b), "phase": self.phase}

    @classmethod
    def from_json(cls, obj: dict) -> "PauliOperator":
        return cls(tuple(obj["a"]), tuple(obj["b"]), obj.get("phase", 0))

    @classmethod
    def from_tensor_string(cls, s: str) -> "PauliOperator":
        """Parse ``"sz@sx"`` style strings into a phase-0 ``Z^a X^b`` operator."""
        try:
            parts = [_NAME_FACTORS[p.strip()] for p in s.split("@")]
        except KeyError as exc:
            raise ValueError(f"unknown single-qubit factor in {s!r}") from exc
        return cls(tuple(p[0] for p in parts), tuple(p[1] for p in parts))

    def __mul__(self, other: "PauliOperator") -> "PauliOperator":
        return multiply(self, other)


def _check_sizes(p: PauliOperator, q: PauliOperator) -> None:
    if p.n != q.n:
        raise ValueError(f"operators act on {p.n} and {q.n} qubits")


def symplectic_product(p: PauliOperator, q: PauliOperator) -> int:
    _check_sizes(p, q)
    return sum(x * y2 + x2 * y for x, y, x2, y2 in zip(p.a, p.b, q.a, q.b)) % 2


def commutes(p: PauliOperator, q: PauliOperator) -> bool:
    return symplectic_product(p, q) == 0


def multiply(p: PauliOperator, q: PauliOperator) -> PauliOperator:
    """Exact product; moving ``X^b`` past ``Z^a'`` costs ``(-1)**(b . a')``."""
    _check_sizes(p, q)
    swap_sign = sum(b * a2 for b, a2 in zip(p.b, q.a)) % 2
    return PauliOperator(
        tuple(x ^ y for x, y in zip(p.a, q.a)),
        tuple(x ^ y for x, y in zip(p.b, q.b)),
        p.phase + q.phase + 2 * swap_sign,
    )


def matrix(p: PauliOperator) -> GaussianMatrix:
    if p.n > MAX_MATRIX_QUBITS:
        raise ValueError(f"matrix oracle limited to {MAX_MATRIX_QUBITS} qubits, got {p.n}")
    m = GaussianMatrix.identity(1)
    for f in p.factors():
        m = m.kron(_SINGLE[f])
    return m.times_i_power(p.phase)


def displacement(field: GF2n, alpha: int, beta: int) -> PauliOperator:
    """``Z_alpha X_beta`` factorized qubit-by-qubit through the self-dual basis."""
    if not field.is_self_dual:
        raise ValueError("displacement factorization requires a self-dual field basis")
    return PauliOperator(field.expand(alpha), field.expand(beta), 0)


def displacement_label(p: PauliOperator, field: GF2n) -> tuple[int, int]:
    """Inverse of :func:`displacement` on phase-stripped operators."""
    return field.combine(p.a), field.combine(p.b)


def displacement_string(field: GF2n, alpha: int, beta: int) -> str:
    """Render as e.g. ``Z(s)X(s2)``; zero parts are omitted, the identity is ``I``."""
    parts = []
    if alpha:
        parts.append(f"Z({field.label(alpha)})")
    if beta:
        parts.append(f"X({field.label(beta)})")
    return "".join(parts) or "I"


_DISPLACEMENT_RE = re.compile(r"^(?:Z\((?P<z>[^)]+)\))?(?:X\((?P<x>[^)]+)\))?$")


def parse_displacement_string(field: GF2n, s: str) -> tuple[int, int]:
    if s == "I":
        return 0, 0
    m = _DISPLACEMENT_RE.match(s.strip())
    if not m or not (m["z"] or m["x"]):
        raise ValueError(f"cannot parse displacement label {s!r}")
    labels = {field.label(x): x for x in field.elements()}
    try:
        return labels[m["z"]] if m["z"] else 0, labels[m["x"]] if m["x"] else 0
    except KeyError as exc:
        raise ValueError(f"unknown field element in {s!r}") from exc


def commutes_by_trace(field: GF2n, p: tuple[int, int], q: tuple[int, int]) -> bool:
    """Field-level commutation test ``tr(alpha beta') == tr(alpha' beta)``."""
    (a1, b1), (a2, b2) = p, q
    return field.trace(field.mul(a1, b2)) == field.trace(field.mul(a2, b1))
