"""The six two-qubit reference tables, used to label GF(4) bundles and as golden data."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .gf import GF2n
from .pauli import parse_displacement_string


@dataclass(frozen=True)
class ReferenceRow:
    curve: str
    operators: tuple[str, ...]
    factorized: tuple[str, ...]


@dataclass(frozen=True)
class ReferenceTable:
    label: str
    name: str
    rows: tuple[ReferenceRow, ...]

    def point_sets(self, field: GF2n) -> list[frozenset[tuple[int, int]]]:
        return [
            frozenset([(0, 0)] + [parse_displacement_string(field, op) for op in row.operators])
            for row in self.rows
        ]


@lru_cache(maxsize=None)
def reference_tables() -> tuple[ReferenceTable, ...]:
    raw = _raw()
    return tuple(
        ReferenceTable(
            t["label"],
            t["name"],
            tuple(ReferenceRow(r["curve"], tuple(r["operators"]), tuple(r["factorized"])) for r in t["rows"]),
        )
        for t in raw["tables"]
    )


def find_table(label: str) -> ReferenceTable:
    for t in reference_tables():
        if label in (t.label, t.name):
            return t
    raise KeyError(label)


def label_bundles(bundles):
    """Attach reference labels to GF(4) bundles and order their curves like the table rows.

    Labeled bundles come first in table order; anything unmatched keeps its
    canonical order and no label.
    """
    from .phasespace import Bundle

    if not bundles:
        return bundles
    field = bundles[0].field
    by_sets = {b.point_sets: b for b in bundles}
    labeled, used = [], set()
    for table in reference_tables():
        sets = table.point_sets(field)
        match = by_sets.get(frozenset(sets))
        if match is None:
            continue
        curve_of = {c.points: c for c in match.curves}
        labeled.append(Bundle(tuple(curve_of[s] for s in sets), table.label))
        used.add(match.point_sets)
    rest = [b for b in bundles if b.point_sets not in used]
    return labeled + rest


@lru_cache(maxsize=None)
def _raw() -> dict:
    return json.loads(resources.files(__package__).joinpath("data/reference_tables.json").read_text())


def transformations_from_rays() -> dict[str, str]:
    """Bundle label -> local map word taking the all-rays bundle onto it."""
    return dict(_raw()["transformations_from_rays"]["entries"])


def curves_from_rays() -> list[dict]:
    """Groups of (source ray, [(target curve coefficients, map word)])."""
    return _raw()["curves_from_rays"]
