"""Operator classes, their exact joint eigenbases, unbiasedness and separability.

Basis vectors are stored as Gaussian-integer vectors ``u`` together with
``norm_sq = <u|u>``; the normalized state is ``u / sqrt(norm_sq)``. Stabilizer
states have amplitudes of equal modulus on a support of size ``2**k``, so
``norm_sq`` is a power of two and every overlap ``|<psi|phi>|**2`` is an
exact rational.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .pauli import (
    GaussianMatrix,
    PauliOperator,
    commutes,
    displacement,
    displacement_string,
    matrix,
    multiply,
)
from .phasespace import Bundle, Curve

FACTORABLE = "factorable"
MAX_ENTANGLED = "maximally-entangled"


@dataclass(frozen=True)
class OperatorClass:
    curve: Curve
    operators: tuple[PauliOperator, ...]
    hermitian_phases: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.curve.field.n

    @property
    def hermitian(self) -> tuple[PauliOperator, ...]:
        return tuple(PauliOperator(p.a, p.b, p.phase + k) for p, k in zip(self.operators, self.hermitian_phases))

    @property
    def stripped_set(self) -> frozenset[PauliOperator]:
        return frozenset(p.stripped for p in self.operators)

    def labels(self) -> list[str]:
        f = self.curve.field
        return [displacement_string(f, a, b) for a, b in self.curve.nonzero_points]

    def tensor_strings(self) -> list[str]:
        return [p.tensor_string() for p in self.operators]


def _reversed_order(field, alpha: int, beta: int) -> PauliOperator:
    # X_beta Z_alpha = (-1)**(a . b) Z_alpha X_beta
    p = displacement(field, alpha, beta)
    return PauliOperator(p.a, p.b, 2 * (sum(x & y for x, y in zip(p.a, p.b)) % 2))


def hermitian_correction(p: PauliOperator) -> int:
    """``k`` in {0, 1} such that ``(i**k p)**2 == +I``."""
    return (p.phase + p.y_count) % 2


def class_from_curve(curve: Curve, order: str = "zx") -> OperatorClass:
    """Displacements on the nonzero points of ``curve``.

    ``order`` selects ``Z_alpha X_beta`` ("zx", the default) or
    ``X_beta Z_alpha`` ("xz") as the phase-zero representative.
    """
    field = curve.field
    if order == "zx":
        ops = tuple(displacement(field, a, b) for a, b in curve.nonzero_points)
    elif order == "xz":
        ops = tuple(_reversed_order(field, a, b) for a, b in curve.nonzero_points)
    else:
        raise ValueError(f"order must be 'zx' or 'xz', got {order!r}")
    for i, p in enumerate(ops):
        for q in ops[i + 1:]:
            if not commutes(p, q):
                raise ValueError(f"operators {p} and {q} on curve {curve.equation()} do not commute")
    group = {p.stripped for p in ops} | {PauliOperator.identity(field.n)}
    for p in group:
        for q in group:
            if multiply(p, q).stripped not in group:
                raise ValueError("operator set is not closed under multiplication")
    return OperatorClass(curve, ops, tuple(hermitian_correction(p) for p in ops))


def generators(cls: OperatorClass) -> list[int]:
    """Indices of a minimal generating set, chosen greedily in class order."""
    span = {PauliOperator.identity(cls.n)}
    chosen = []
    for i, p in enumerate(cls.operators):
        s = p.stripped
        if s in span:
            continue
        chosen.append(i)
        span |= {multiply(s, q).stripped for q in span}
    return chosen


# -- bases ---------------------------------------------------------------------


@dataclass(frozen=True)
class Basis:
    """``vectors[i]`` is a pair of integer tuples (re, im); state = u / sqrt(norm_sq[i])."""

    vectors: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    norm_sq: tuple[int, ...]
    labels: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.vectors[0][0])

    def check_normalized(self) -> None:
        for (re, im), ns in zip(self.vectors, self.norm_sq):
            if sum(x * x + y * y for x, y in zip(re, im)) != ns:
                raise ValueError("basis vector norm does not match its stored norm_sq")

    def gram(self) -> list[list[Fraction]]:
        """Exact |<u_i|u_j>|^2 / (N_i N_j); identity for an orthonormal basis."""
        return [[overlap_sq(self, i, self, j) for j in range(len(self.vectors))] for i in range(len(self.vectors))]

    def to_complex(self) -> np.ndarray:
        return np.array([(np.array(re) + 1j * np.array(im)) / np.sqrt(ns) for (re, im), ns in zip(self.vectors, self.norm_sq)])

    def to_json(self) -> dict:
        return {
            "amplitude_rule": "(re + i*im) / sqrt(norm_sq)",
            "vectors": [
                {"re": list(re), "im": list(im), "norm_sq": ns, "label": list(lab)}
                for (re, im), ns, lab in zip(self.vectors, self.norm_sq, self.labels)
            ],
        }


def _inner(u, w) -> tuple[int, int]:
    (ur, ui), (wr, wi) = u, w
    re = sum(a * c + b * d for a, b, c, d in zip(ur, ui, wr, wi))
    im = sum(a * d - b * c for a, b, c, d in zip(ur, ui, wr, wi))
    return re, im


def overlap_sq(b1: Basis, i: int, b2: Basis, j: int) -> Fraction:
    re, im = _inner(b1.vectors[i], b2.vectors[j])
    return Fraction(re * re + im * im, b1.norm_sq[i] * b2.norm_sq[j])


def projector(cls: OperatorClass, signs: Sequence[int]) -> tuple[GaussianMatrix, tuple[int, ...]]:
    """``d * P`` for the joint eigenspace with eigenvalue ``signs[i]`` on generator i.

    The character on every class element follows from the generator signs
    and the sign picked up when the Hermitian generators are multiplied.
    Returns the integer matrix and the eigenvalue of each class operator.
    """
    herm = cls.hermitian
    gens = generators(cls)
    index = {p.stripped: k for k, p in enumerate(herm)}
    d = 1 << cls.n
    total = GaussianMatrix.identity(d)
    eigen = [0] * len(herm)
    for r in range(1, len(gens) + 1):
        for subset in itertools.combinations(range(len(gens)), r):
            prod = PauliOperator.identity(cls.n)
            sign = 1
            for s in subset:
                prod = multiply(prod, herm[gens[s]])
                sign *= signs[s]
            k = index[prod.stripped]
            rel = (prod.phase - herm[k].phase) % 4
            if rel not in (0, 2):
                raise AssertionError("product of commuting Hermitian operators is not Hermitian")
            lam = sign * (1 if rel == 0 else -1)
            eigen[k] = lam
            term = matrix(herm[k])
            total = total + (term if lam == 1 else -term)
    return total, tuple(eigen)


def eigenbasis(cls: OperatorClass) -> Basis:
    d = 1 << cls.n
    vectors, norms, labels = [], [], []
    for signs in itertools.product((1, -1), repeat=cls.n):
        m, eigen = projector(cls, signs)
        if not (m @ m == m.scale(d)) or m.trace() != d:
            raise AssertionError(f"projector for eigenvalues {signs} is not rank one")
        diag = np.diag(m.re)
        k = int(np.flatnonzero(diag)[0])
        pivot = int(diag[k])
        re, im = m.re[:, k], m.im[:, k]
        if np.any(re % pivot) or np.any(im % pivot):
            raise AssertionError("eigenvector is not a Gaussian-integer multiple of its pivot")
        re, im = tuple(int(x) for x in re // pivot), tuple(int(x) for x in im // pivot)
        vectors.append((re, im))
        norms.append(sum(x * x + y * y for x, y in zip(re, im)))
        labels.append(eigen)
    return Basis(tuple(vectors), tuple(norms), tuple(labels))


def verify_unbiased_exact(c1: OperatorClass, c2: OperatorClass) -> bool:
    """Classes give unbiased bases iff they share no nonidentity operator."""
    if c1.n != c2.n:
        raise ValueError("classes act on different numbers of qubits")
    return not (c1.stripped_set & c2.stripped_set)


def verify_unbiased_vectors(b1: Basis, b2: Basis) -> bool:
    if b1.dim != b2.dim:
        raise ValueError("bases have different dimensions")
    b1.check_normalized()
    b2.check_normalized()
    target = Fraction(1, b1.dim)
    return all(
        overlap_sq(b1, i, b2, j) == target
        for i in range(len(b1.vectors))
        for j in range(len(b2.vectors))
    )


# -- separability ----------------------------------------------------------------


@dataclass(frozen=True)
class SeparabilityStructure:
    label: str
    # qubit j factors out of every basis vector
    qubit_factorable: tuple[bool, ...]
    # finest partition of the qubits into blocks the basis vectors factor over
    blocks: tuple[tuple[int, ...], ...]


def _group(cls: OperatorClass) -> set[PauliOperator]:
    return set(cls.stripped_set) | {PauliOperator.identity(cls.n)}


def cut_entropy(cls: OperatorClass, subset: Sequence[int]) -> int:
    """Entanglement entropy (bits) of every basis vector across ``subset | rest``.

    For a stabilizer state it is ``|A| - log2 |G_A|`` with ``G_A`` the
    stabilizer elements supported inside ``A``.
    """
    subset = set(subset)
    inside = sum(
        1
        for p in _group(cls)
        if all(j in subset or (p.a[j] == 0 and p.b[j] == 0) for j in range(cls.n))
    )
    return len(subset) - (inside.bit_length() - 1)


def restrictions_commute(cls: OperatorClass, qubit: int) -> bool:
    facts = [(p.a[qubit], p.b[qubit]) for p in cls.operators]
    return all((a * b2 + a2 * b) % 2 == 0 for a, b in facts for a2, b2 in facts)


def separability_structure(cls: OperatorClass) -> SeparabilityStructure:
    n = cls.n
    per_qubit = tuple(restrictions_commute(cls, j) for j in range(n))
    product_cuts = [
        set(s)
        for r in range(1, n)
        for s in itertools.combinations(range(n), r)
        if cut_entropy(cls, s) == 0
    ]
    signature = {j: tuple(j in s for s in product_cuts) for j in range(n)}
    blocks: dict[tuple[bool, ...], list[int]] = {}
    for j in range(n):
        blocks.setdefault(signature[j], []).append(j)
    blocks_t = tuple(sorted(tuple(b) for b in blocks.values()))
    if n == 1:
        label = FACTORABLE
    elif n == 2:
        label = FACTORABLE if all(per_qubit) else MAX_ENTANGLED
    elif all(len(b) == 1 for b in blocks_t):
        label = FACTORABLE
    else:
        label = "+".join(str(len(b)) for b in sorted(blocks_t, key=len))
    return SeparabilityStructure(label, per_qubit, blocks_t)


def reduced_purity(basis: Basis, index: int, keep: Sequence[int]) -> Fraction:
    """Exact purity of the reduced state on qubits ``keep`` (qubit 0 is the leftmost factor)."""
    n = basis.dim.bit_length() - 1
    keep = list(keep)
    rest = [j for j in range(n) if j not in keep]
    re, im = (np.array(x, dtype=object).reshape((2,) * n) for x in basis.vectors[index])
    shape = (1 << len(keep), 1 << len(rest))
    re = re.transpose(keep + rest).reshape(shape)
    im = im.transpose(keep + rest).reshape(shape)
    # rho = U U^dagger, unnormalized
    rho_re = re @ re.T + im @ im.T
    rho_im = im @ re.T - re @ im.T
    tr_sq = int((rho_re * rho_re.T).sum() - (rho_im * rho_im.T).sum())
    return Fraction(tr_sq, basis.norm_sq[index] ** 2)


# -- reports ------------------------------------------------------------------------


def bundle_report(bundle: Bundle) -> dict:
    """Row-per-curve summary: equation, displacement labels, tensor strings, separability."""
    from .reference import find_table

    ref = None
    if bundle.label is not None:
        try:
            ref = find_table(bundle.label)
        except KeyError:
            ref = None
    rows, flags = [], []
    for i, curve in enumerate(bundle.curves):
        cls = class_from_curve(curve)
        row = {
            "basis": i + 1,
            "curve": curve.equation(),
            "kind": curve.kind.value,
            "operators": cls.labels(),
            "factorized": cls.tensor_strings(),
            "separability": separability_structure(cls).label,
        }
        if ref is not None and i < len(ref.rows):
            r = ref.rows[i]
            if set(r.operators) != set(row["operators"]):
                flags.append(f"row {i + 1}: operator labels differ from reference {list(r.operators)}")
            if set(r.factorized) != set(row["factorized"]):
                flags.append(f"row {i + 1}: factorized operators differ from reference {list(r.factorized)}")
        rows.append(row)
    return {"table_label": bundle.label, "rows": rows, "flags": flags}
