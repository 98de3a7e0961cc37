"""Localized equivariant Schubert classes.

A class is stored by its restrictions to the torus fixed points.  Schubert
classes are produced by downward induction on codimension from the
Chevalley coefficients, then certified against the GKM conditions.
"""
from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .charring import CharPoly, NonIntegralQuotient, divisible_up_to_sign, product, try_divide_exact
from .chevalley import chevalley_row
from .gkm import build_graph, positive_weights
from .subsets import (
    Geometry,
    GrassmannianSpec,
    Subset,
    codim,
    dominates,
    enumerate_admissible,
    maximal_subset,
    subset_from_key,
    subset_key,
)


class ClassComputationError(RuntimeError):
    """The coefficient table is inconsistent with the induction."""

    def __init__(self, message, source=None, point=None):
        super().__init__(message)
        self.source = source
        self.point = point


class DivisionFailed(ClassComputationError):
    pass


class ZeroDenominator(ClassComputationError):
    pass


class NotInSpan(ValueError):
    pass


@dataclass
class EquivariantClass:
    """Restrictions ``values[J]`` of a class to the fixed points; missing means zero."""

    spec: GrassmannianSpec
    values: dict
    label: object = "custom"

    def __getitem__(self, J: Subset) -> CharPoly:
        v = self.values.get(J)
        return v if v is not None else CharPoly.zero(self.spec.n)

    def support(self) -> list:
        return [J for J, v in self.values.items() if v]

    def __mul__(self, other):
        if isinstance(other, EquivariantClass):
            return multiply(self, other)
        return EquivariantClass(self.spec, {J: v * other for J, v in self.values.items() if v}, "custom")

    __rmul__ = __mul__

    def __add__(self, other: "EquivariantClass"):
        out = dict(self.values)
        for J, v in other.values.items():
            out[J] = out[J] + v if J in out else v
        return EquivariantClass(self.spec, {J: v for J, v in out.items() if v}, "custom")

    def __sub__(self, other: "EquivariantClass"):
        return self + other * -1

    def __eq__(self, other):
        if not isinstance(other, EquivariantClass):
            return NotImplemented
        keys = set(self.values) | set(other.values)
        return self.spec == other.spec and all(self[J] == other[J] for J in keys)


def hyperplane_class(spec: GrassmannianSpec) -> EquivariantClass:
    """f_H(I) = sum_{i in I} -eps_i + sum_{i=1..k} eps_{n-i+1}."""
    n = spec.n
    top = sum((CharPoly.eps(n, n - i) for i in range(spec.k)), CharPoly.zero(n))
    values = {}
    for I in enumerate_admissible(spec):
        v = top - sum((CharPoly.eps(n, i) for i in I), CharPoly.zero(n))
        if v:
            values[I] = v
    from .subsets import hyperplane_subset

    return EquivariantClass(spec, values, hyperplane_subset(spec))


def smooth_point_restriction(I: Subset, spec: GrassmannianSpec) -> CharPoly:
    """Product of the normal characters of the Schubert cell at p_I."""
    return product(positive_weights(I, spec), spec.n)


def build_order(spec: GrassmannianSpec) -> list:
    """Decreasing codimension.

    Ties are broken so that subsets with negative entry sum come first; at
    the middle codimension 2n-3 of I2Gr(2, 2n) this puts (i-1, -i) before
    (i, -i+1), whose coefficients point to the former.
    """
    vertices = enumerate_admissible(spec)
    index = {v: i for i, v in enumerate(vertices)}
    return sorted(vertices, key=lambda I: (-codim(I, spec), sum(I) >= 0, index[I]))


@dataclass
class ClassTable:
    spec: GrassmannianSpec
    classes: dict
    order: list
    _constants: dict = field(default_factory=dict, repr=False)
    _factors: dict = field(default_factory=dict, repr=False)

    def __getitem__(self, I: Subset) -> EquivariantClass:
        return self.classes[I]

    def __iter__(self):
        return iter(self.order)

    def vertices(self) -> list:
        return enumerate_admissible(self.spec)

    def expansion_order(self) -> list:
        return self.order[::-1]

    def normal_factors(self, L: Subset) -> list:
        if L not in self._factors:
            self._factors[L] = positive_weights(L, self.spec)
        return self._factors[L]

    def structure_constants(self, I: Subset, J: Subset) -> dict:
        """``{L: N_{I,J}^L}`` with ``f_I f_J = sum_L N_{I,J}^L f_L``."""
        key = (I, J) if I <= J else (J, I)
        if key not in self._constants:
            self._constants[key] = expand_in_basis(multiply(self[I], self[J]), self)
        return self._constants[key]

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "classes": {
                subset_key(I): {subset_key(J): v.to_json() for J, v in self.classes[I].values.items() if v}
                for I in self.vertices()
            },
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ClassTable":
        spec = GrassmannianSpec.from_json(obj["spec"])
        classes = {}
        for key, values in obj["classes"].items():
            I = subset_from_key(key)
            classes[I] = EquivariantClass(
                spec,
                {subset_from_key(k): CharPoly.from_json(v, spec.n) for k, v in values.items()},
                I,
            )
        for I in enumerate_admissible(spec):
            classes.setdefault(I, EquivariantClass(spec, {}, I))
        return cls(spec, classes, build_order(spec))


def _check_spec(spec: GrassmannianSpec):
    if spec.bisymplectic and spec.k != 2:
        raise ValueError(f"bisymplectic classes need k=2, got k={spec.k}")


def compute_class_table(spec: GrassmannianSpec) -> ClassTable:
    """All Schubert classes by downward induction on codimension.

    For K != I, f_I(K) = (sum_J a_{I,J} f_J(K)) / (f_H(K) - f_H(I)); the
    division must be exact over the integers.
    """
    _check_spec(spec)
    n = spec.n
    f_h = hyperplane_class(spec)
    vertices = enumerate_admissible(spec)
    for I in vertices:
        for K in vertices:
            if K != I and f_h[K] == f_h[I]:
                raise ZeroDenominator(f"f_H({K}) = f_H({I})", I, K)
    order = build_order(spec)
    classes: dict = {}
    for I in order:
        row = chevalley_row(I, spec)
        missing = [J for J in row if J not in classes]
        if missing:
            raise ClassComputationError(f"a_{I},J refers to uncomputed classes {missing}", I)
        values = {I: smooth_point_restriction(I, spec)}
        points = set()
        for J in row:
            points.update(classes[J].values)
        points.discard(I)
        for K in sorted(points):
            numerator = CharPoly.zero(n)
            for J, a in row.items():
                v = classes[J].values.get(K)
                if v is not None:
                    numerator = numerator + a * v
            if not numerator:
                continue
            denominator = f_h[K] - f_h[I]
            try:
                q = try_divide_exact(numerator, denominator)
            except NonIntegralQuotient as exc:
                raise DivisionFailed(f"non-integral value f_{I}({K})", I, K) from exc
            if q is None:
                raise DivisionFailed(f"({numerator}) / ({denominator}) is not exact for f_{I}({K})", I, K)
            values[K] = q
        classes[I] = EquivariantClass(spec, values, I)
    return ClassTable(spec, classes, order)


@dataclass(frozen=True)
class Violation:
    kind: str  # degree, support, smooth-point, divisibility, unknown-point
    label: object
    points: tuple
    detail: str = ""

    def to_json(self) -> dict:
        label = list(self.label) if isinstance(self.label, tuple) else self.label
        return {"kind": self.kind, "class": label, "points": [list(p) for p in self.points], "detail": self.detail}


def check_class(f: EquivariantClass, graph, expected_degree=None, top=None) -> list:
    """GKM violations of a single class.

    ``top`` is the subset whose Schubert class ``f`` claims to be; it enables
    the support and smooth-point checks.
    """
    spec = f.spec
    out = []
    vertex_set = set(graph.vertices)
    for J, v in f.values.items():
        if J not in vertex_set:
            out.append(Violation("unknown-point", f.label, (J,)))
            continue
        if not v:
            continue
        if expected_degree is not None and (not v.is_homogeneous() or v.degree() != expected_degree):
            out.append(Violation("degree", f.label, (J,), f"{v} is not homogeneous of degree {expected_degree}"))
        if top is not None and not dominates(top, J):
            out.append(Violation("support", f.label, (J,), f"nonzero at {J} which {top} does not dominate"))
    if top is not None:
        expected = smooth_point_restriction(top, spec)
        if f[top] != expected:
            out.append(Violation("smooth-point", f.label, (top,), f"{f[top]} != {expected}"))
    for e in graph.edges:
        diff = f[e.source] - f[e.target]
        if not divisible_up_to_sign(diff, e.weight):
            out.append(Violation("divisibility", f.label, (e.source, e.target), f"{e.weight} does not divide {diff}"))
    return out


def verify_gkm(table: ClassTable, threads: int = 1) -> list:
    """Every violation of the localization conditions; empty means certified."""
    spec = table.spec
    graph = build_graph(spec)
    vertices = graph.vertices
    out = []
    missing = [I for I in vertices if I not in table.classes]
    for I in missing:
        out.append(Violation("unknown-point", I, (I,), "class missing from the table"))
    present = [I for I in vertices if I in table.classes]

    def one(I):
        return check_class(table.classes[I], graph, codim(I, spec), I)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(one, present))
    else:
        results = [one(I) for I in present]
    for r in results:
        out.extend(r)
    return out


def report_to_json(violations: list) -> list:
    return [v.to_json() for v in violations]


def multiply(f: EquivariantClass, g: EquivariantClass) -> EquivariantClass:
    if f.spec != g.spec:
        raise ValueError("classes live on different varieties")
    values = {}
    for J, v in f.values.items():
        w = g.values.get(J)
        if v and w:
            values[J] = v * w
    return EquivariantClass(f.spec, values, "product")


def expand_in_basis(g: EquivariantClass, table: ClassTable) -> dict:
    """Coefficients ``{L: c_L}`` with ``g = sum_L c_L f_L``.

    Points are visited in increasing codimension, so the first point with a
    nonzero residual determines its coefficient by exact division.
    """
    if g.spec != table.spec:
        raise ValueError("class and table live on different varieties")
    residual = {J: v for J, v in g.values.items() if v}
    coefficients = {}
    for L in table.expansion_order():
        r = residual.get(L)
        if not r:
            continue
        c = r
        try:
            for w in table.normal_factors(L):
                c = try_divide_exact(c, w)
                if c is None:
                    break
        except NonIntegralQuotient:
            c = None
        if c is None:
            raise NotInSpan(f"residual {r} at {L} is not divisible by f_{L}({L})")
        coefficients[L] = c
        for K, v in table[L].values.items():
            if not v:
                continue
            nv = residual.get(K, CharPoly.zero(table.spec.n)) - c * v
            if nv:
                residual[K] = nv
            else:
                residual.pop(K, None)
    if residual:
        raise NotInSpan(f"residual survives at {sorted(residual)}")
    return coefficients


@dataclass
class LefschetzReport:
    n: int
    bound: int
    classes_checked: list
    class_mismatches: list
    constants_checked: int
    constant_mismatches: list

    @property
    def ok(self) -> bool:
        return not self.class_mismatches and not self.constant_mismatches

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "bound": self.bound,
            "classes_checked": [list(I) for I in self.classes_checked],
            "class_mismatches": [{"class": list(I), "point": list(J)} for I, J in self.class_mismatches],
            "constants_checked": self.constants_checked,
            "constant_mismatches": [
                {"I": list(I), "J": list(J), "L": list(L), "bisym": str(a), "sympl": str(b)}
                for I, J, L, a, b in self.constant_mismatches
            ],
            "ok": self.ok,
        }


def lefschetz_crosscheck(n: int, bisym: ClassTable | None = None, sympl: ClassTable | None = None) -> LefschetzReport:
    """Compare I2Gr(2, 2n) and IGr(2, 2n) below codimension 2n-3."""
    bspec = GrassmannianSpec(n, 2, Geometry.BISYMPLECTIC)
    sspec = GrassmannianSpec(n, 2, Geometry.SYMPLECTIC)
    bisym = bisym or compute_class_table(bspec)
    sympl = sympl or compute_class_table(sspec)
    bound = 2 * n - 3
    low = [I for I in enumerate_admissible(bspec) if codim(I, bspec) < bound]
    class_mismatches = []
    for I in low:
        for J in enumerate_admissible(bspec):
            if bisym[I][J] != sympl[I][J]:
                class_mismatches.append((I, J))
    checked = 0
    constant_mismatches = []
    zero = CharPoly.zero(n)
    for a, I in enumerate(low):
        for J in low[a:]:
            N = bisym.structure_constants(I, J)
            M = sympl.structure_constants(I, J)
            for L in low:
                checked += 1
                x, y = N.get(L, zero), M.get(L, zero)
                if x != y:
                    constant_mismatches.append((I, J, L, x, y))
    return LefschetzReport(n, bound, low, class_mismatches, checked, constant_mismatches)


def dump_table(table: ClassTable) -> str:
    return json.dumps(table.to_json(), sort_keys=False)


def fundamental_class_is_one(table: ClassTable) -> bool:
    top = maximal_subset(table.spec)
    return all(table[top][J] == 1 for J in table.vertices())
