"""Equivariant Chevalley coefficients a_{I,J}.

For a Schubert class f_I these are the coefficients in

    f_I * (f_H - f_H(I)) = sum_J a_{I,J} f_J,

which determine every class by downward induction.  For IGr(k, 2n) they are
the integers 0, 1, 2; for I2Gr(2, 2n) some are linear forms.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from functools import lru_cache

from .charring import CharPoly
from .gkm import alpha_neighbors, beta_neighbors
from .subsets import (
    Geometry,
    GrassmannianSpec,
    Subset,
    codim,
    dominates,
    enumerate_admissible,
    is_admissible,
    subset_key,
)


class UnsupportedK(ValueError):
    pass


@dataclass(frozen=True)
class ChevalleyCoefficient:
    source: Subset
    target: Subset
    value: CharPoly

    @property
    def degree(self):
        return self.value.degree()


def _target(a: int, b: int, n: int):
    # an entry that lands on 0 steps past it to -1 (the index below 1)
    a = -1 if a == 0 else a
    b = -1 if b == 0 else b
    if not is_admissible((a, b), n):
        return None
    return tuple(sorted((a, b), reverse=True))


def _explicit_rules(I: Subset, n: int) -> dict:
    """Coefficients fixed by the middle-codimension rules, zeros included."""
    x, y = I
    one = CharPoly.constant(n, 1)
    rules = []
    if x >= 2 and y == -x + 1:
        i = x
        linear = CharPoly.eps(n, i - 1) - CharPoly.eps(n, i)
        rules = [
            ((i, -i - 1), linear),
            ((i - 2, -i + 1), linear),
            ((i - 1, -i - 1), one),
            ((i - 2, -i), one),
            ((i, -i - 2), CharPoly.zero(n)),
            ((i - 3, -i + 1), CharPoly.zero(n)),
        ]
    elif x >= 3 and y == -x + 2:
        i = x
        two = CharPoly.constant(n, 2)
        rules = [
            ((i - 3, -i + 2), one),
            ((i, -i - 1), one),
            ((i - 2, -i + 1), two),
            ((i - 1, -i), two),
        ]
    out = {}
    for (a, b), value in rules:
        J = _target(a, b, n)
        if J is None:
            continue
        if J in out:
            raise AssertionError(f"two rules for a_{I},{J}")
        out[J] = value
    return out


def _spec_for(n: int) -> GrassmannianSpec:
    return GrassmannianSpec(n, 2, Geometry.BISYMPLECTIC)


@lru_cache(maxsize=None)
def _bisym_row(I: Subset, n: int) -> dict:
    spec = _spec_for(n)
    explicit = _explicit_rules(I, n)
    row = {J: v for J, v in explicit.items() if v}
    c = codim(I, spec)
    for J, _ in alpha_neighbors(I, n):
        if J in explicit or J in row:
            continue
        if dominates(I, J) and codim(J, spec) == c + 1:
            row[J] = CharPoly.constant(n, 1)
    return row


@lru_cache(maxsize=None)
def _sympl_row(I: Subset, spec: GrassmannianSpec) -> dict:
    c = codim(I, spec)
    row = {}
    for neighbors, value in ((alpha_neighbors, 1), (beta_neighbors, 2)):
        for J, _ in neighbors(I, spec.n):
            if dominates(I, J) and codim(J, spec) == c + 1:
                row[J] = CharPoly.constant(spec.n, value)
    return row


def chevalley_row(I: Subset, spec: GrassmannianSpec) -> dict:
    """Nonzero coefficients ``{J: a_{I,J}}`` for a fixed source ``I``."""
    if spec.bisymplectic:
        if spec.k != 2:
            raise UnsupportedK(f"bisymplectic Chevalley rule needs k=2, got k={spec.k}")
        return dict(_bisym_row(I, spec.n))
    return dict(_sympl_row(I, spec))


def coeff_bisym(I: Subset, J: Subset, n: int) -> CharPoly:
    if len(I) != 2 or len(J) != 2:
        raise UnsupportedK("bisymplectic Chevalley rule needs k=2")
    return _bisym_row(I, n).get(J, CharPoly.zero(n))


def coeff_sympl(I: Subset, J: Subset, spec: GrassmannianSpec) -> int:
    if spec.bisymplectic:
        raise ValueError("coeff_sympl needs a symplectic spec")
    value = _sympl_row(I, spec).get(J)
    return value.constant_term() if value is not None else 0


def chevalley_table(spec: GrassmannianSpec) -> list:
    """All nonzero coefficients, ordered by (source, target) enumeration order."""
    vertices = enumerate_admissible(spec)
    index = {v: i for i, v in enumerate(vertices)}
    out = []
    for I in vertices:
        row = chevalley_row(I, spec)
        for J in sorted(row, key=index.__getitem__):
            out.append(ChevalleyCoefficient(I, J, row[J]))
    return out


def table_to_csv(table: list) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["source", "target", "value", "degree"])
    for c in table:
        writer.writerow([subset_key(c.source), subset_key(c.target), str(c.value), c.degree])
    return buf.getvalue()


def table_to_json(table: list) -> list:
    return [
        {
            "source": list(c.source),
            "target": list(c.target),
            "value": c.value.to_json(),
            "value_str": str(c.value),
            "degree": c.degree,
        }
        for c in table
    ]
