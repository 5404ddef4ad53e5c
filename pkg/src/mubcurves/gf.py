"""Arithmetic in GF(2^n) with elements encoded as integers.

Bit ``i`` of an element is the coefficient of ``x**i`` in its polynomial
representation, so addition is XOR and multiplication is carry-less
multiplication reduced modulo an irreducible polynomial.
"""

from __future__ import annotations

import json
from functools import cached_property
from typing import Iterable, Sequence

MIN_DEGREE = 1
MAX_DEGREE = 8

# Fixed per degree so every run produces the same encodings.
DEFAULT_MODULI = {
    1: 0b10,  # x
    2: 0b111,  # x^2 + x + 1
    3: 0b1011,  # x^3 + x + 1
    4: 0b10011,  # x^4 + x + 1
    5: 0b100101,  # x^5 + x^2 + 1
    6: 0b1000011,  # x^6 + x + 1
    7: 0b10000011,  # x^7 + x + 1
    8: 0b100011011,  # x^8 + x^4 + x^3 + x + 1
}


class ReducibleModulusError(ValueError):
    def __init__(self, modulus: int, factor: int):
        self.modulus = modulus
        self.factor = factor
        super().__init__(
            f"modulus {poly_str(modulus)} is reducible: divisible by {poly_str(factor)}"
        )


def poly_degree(p: int) -> int:
    return p.bit_length() - 1


def poly_str(p: int, var: str = "x") -> str:
    if p == 0:
        return "0"
    terms = []
    for i in range(poly_degree(p), -1, -1):
        if p >> i & 1:
            terms.append("1" if i == 0 else var if i == 1 else f"{var}^{i}")
    return " + ".join(terms)


def poly_mod(a: int, m: int) -> int:
    dm = poly_degree(m)
    while a and poly_degree(a) >= dm:
        a ^= m << (poly_degree(a) - dm)
    return a


def clmul(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def find_factor(p: int) -> int | None:
    """Return a nontrivial factor of ``p`` over Z_2, or None if irreducible.

    Trial division by every polynomial of degree <= deg(p) / 2; degree-1
    polynomials are irreducible by definition.
    """
    d = poly_degree(p)
    if d <= 1:
        return None
    for q in range(2, 1 << (d // 2 + 1)):
        if poly_mod(p, q) == 0:
            return q
    return None


def is_irreducible(p: int) -> bool:
    return poly_degree(p) >= 1 and find_factor(p) is None


class GF2n:
    """The field GF(2^n) together with a coordinate basis.

    Instances are immutable; all arithmetic methods are pure and act on
    plain ``int`` elements in ``range(self.order)``.
    """

    def __init__(self, n: int, modulus: int | None = None, basis: Sequence[int] | None = None):
        if not isinstance(n, int) or not MIN_DEGREE <= n <= MAX_DEGREE:
            raise ValueError(f"degree n must be in [{MIN_DEGREE}, {MAX_DEGREE}], got {n!r}")
        if modulus is None:
            modulus = DEFAULT_MODULI[n]
        if poly_degree(modulus) != n:
            raise ValueError(f"modulus {poly_str(modulus)} does not have degree {n}")
        factor = find_factor(modulus)
        if factor is not None:
            raise ReducibleModulusError(modulus, factor)
        self._n = n
        self._modulus = modulus
        self._order = 1 << n
        self._mul_table = [[self._slow_mul(a, b) for b in range(self._order)] for a in range(self._order)]
        self._trace_table = [self._slow_trace(x) for x in range(self._order)]
        if basis is None:
            basis = find_self_dual_basis(self)
        basis = tuple(basis)
        self._check_basis(basis)
        self._basis = basis

    # -- construction helpers -------------------------------------------------

    def _slow_mul(self, a: int, b: int) -> int:
        return poly_mod(clmul(a, b), self._modulus)

    def _slow_trace(self, x: int) -> int:
        t, y = 0, x
        for _ in range(self._n):
            t ^= y
            y = self._slow_mul(y, y)
        if t not in (0, 1):
            raise AssertionError(f"trace of {x} left the prime field: {t}")
        return t

    def _check_basis(self, basis: tuple[int, ...]) -> None:
        if len(basis) != self._n:
            raise ValueError(f"basis must have {self._n} elements, got {len(basis)}")
        if any(not 0 <= b < self._order for b in basis):
            raise ValueError(f"basis elements out of range: {basis}")
        if rank_gf2(basis) != self._n:
            raise ValueError(f"basis elements are linearly dependent: {basis}")

    # -- properties -----------------------------------------------------------

    @property
    def n(self) -> int:
        return self._n

    @property
    def modulus(self) -> int:
        return self._modulus

    @property
    def order(self) -> int:
        return self._order

    @property
    def basis(self) -> tuple[int, ...]:
        return self._basis

    @cached_property
    def is_self_dual(self) -> bool:
        return all(
            self.trace(self.mul(a, b)) == (i == j)
            for i, a in enumerate(self._basis)
            for j, b in enumerate(self._basis)
        )

    @cached_property
    def primitive_element(self) -> int:
        for g in range(2, self._order):
            if len({self.pow(g, k) for k in range(self._order - 1)}) == self._order - 1:
                return g
        return 1  # GF(2)

    def elements(self) -> range:
        return range(self._order)

    def __eq__(self, other):
        return (
            isinstance(other, GF2n)
            and self._modulus == other._modulus
            and self._basis == other._basis
        )

    def __hash__(self):
        return hash((self._modulus, self._basis))

    def __repr__(self):
        return f"GF2n(n={self._n}, modulus={poly_str(self._modulus)}, basis={self._basis})"

    # -- arithmetic -----------------------------------------------------------

    def check(self, x: int) -> int:
        if not isinstance(x, int) or not 0 <= x < self._order:
            raise ValueError(f"{x!r} is not an element of GF(2^{self._n})")
        return x

    @staticmethod
    def add(x: int, y: int) -> int:
        return x ^ y

    def mul(self, x: int, y: int) -> int:
        return self._mul_table[x][y]

    def pow(self, x: int, k: int) -> int:
        if k < 0:
            raise ValueError("negative exponent; use inv() first")
        r = 1
        while k:
            if k & 1:
                r = self._mul_table[r][x]
            x = self._mul_table[x][x]
            k >>= 1
        return r

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("0 has no inverse in GF(2^n)")
        return self.pow(x, self._order - 2)

    def frobenius(self, x: int, m: int = 1) -> int:
        """Return ``x ** (2 ** m)``; ``m`` is taken modulo n."""
        for _ in range(m % self._n):
            x = self._mul_table[x][x]
        return x

    def trace(self, x: int) -> int:
        return self._trace_table[x]

    def character(self, x: int) -> int:
        return -1 if self._trace_table[x] else 1

    # -- coordinates ----------------------------------------------------------

    def expand(self, x: int) -> tuple[int, ...]:
        """Coefficients ``a`` with ``x = sum(a[i] * basis[i])``."""
        self.check(x)
        if self.is_self_dual:
            return tuple(self.trace(self.mul(x, t)) for t in self._basis)
        return self._expand_table[x]

    @cached_property
    def _expand_table(self) -> dict[int, tuple[int, ...]]:
        table = {}
        for bits in range(self._order):
            coeffs = tuple(bits >> i & 1 for i in range(self._n))
            table[self.combine(coeffs)] = coeffs
        return table

    def combine(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) != self._n:
            raise ValueError(f"expected {self._n} coefficients, got {len(coeffs)}")
        x = 0
        for c, t in zip(coeffs, self._basis):
            if c & 1:
                x ^= t
        return x

    # -- display / serialization ------------------------------------------------

    def label(self, x: int) -> str:
        """Short display name: powers of the generator for GF(4), integers otherwise."""
        if self._n == 2:
            return ("0", "1", "s", "s2")[x]
        return str(x)

    def element_to_json(self, x: int) -> dict:
        return {"n": self._n, "val": self.check(x)}

    def element_from_json(self, obj: dict | str) -> int:
        if isinstance(obj, str):
            obj = json.loads(obj)
        if obj["n"] != self._n:
            raise ValueError(f"element belongs to GF(2^{obj['n']}), not GF(2^{self._n})")
        return self.check(obj["val"])

    def to_json(self) -> dict:
        return {"n": self._n, "modulus": self._modulus, "basis": list(self._basis)}

    @classmethod
    def from_json(cls, obj: dict | str) -> "GF2n":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(obj["n"], obj["modulus"], obj.get("basis"))


def rank_gf2(vectors: Iterable[int]) -> int:
    """Rank over Z_2 of integers read as bit vectors."""
    pivots: dict[int, int] = {}
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            if top not in pivots:
                pivots[top] = v
                break
            v ^= pivots[top]
    return len(pivots)


def find_self_dual_basis(field: GF2n) -> tuple[int, ...]:
    """Lexicographically least ordered basis with trace(t_i * t_j) = delta_ij.

    GF(4) is pinned to (s, s^2) where s is the class of x, so that
    s^2 = s + 1 under the default modulus.
    """
    n = field.n
    if n == 2 and field.modulus == DEFAULT_MODULI[2]:
        return (0b10, 0b11)
    # trace(t*t) = trace(t), so only trace-one elements can appear
    candidates = [x for x in field.elements() if field.trace(x) == 1]

    def extend(chosen: list[int]) -> tuple[int, ...] | None:
        if len(chosen) == n:
            return tuple(chosen)
        for c in candidates:
            if c in chosen:
                continue
            if all(field.trace(field.mul(c, t)) == 0 for t in chosen):
                found = extend(chosen + [c])
                if found is not None:
                    return found
        return None

    basis = extend([])
    if basis is None:
        raise RuntimeError(f"no self-dual basis found for {poly_str(field.modulus)}; this is a bug")
    return basis


def field_new(n: int, modulus: int | None = None) -> GF2n:
    return GF2n(n, modulus)
