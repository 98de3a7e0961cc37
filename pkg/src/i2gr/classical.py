"""Ordinary cohomology: the specialization eps -> 0 of the equivariant data.

Two independent routes give Schubert degrees: counting weighted paths in the
classical Chevalley graph, and multiplying by the hyperplane class in the
ring whose structure constants come from the equivariant expansion.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from functools import reduce

from .charring import CharPoly, evaluate_at_zero
from .chevalley import chevalley_row
from .classes import ClassTable, compute_class_table, expand_in_basis, multiply
from .subsets import (
    Geometry,
    GrassmannianSpec,
    Subset,
    codim,
    enumerate_admissible,
    hyperplane_subset,
    maximal_subset,
    minimal_subset,
    subset_key,
)


def classical_chevalley(spec: GrassmannianSpec) -> dict:
    """``{I: {J: weight}}``: the nonzero constant terms of the a_{I,J}."""
    graph = {}
    for I in enumerate_admissible(spec):
        row = {}
        for J, a in chevalley_row(I, spec).items():
            w = evaluate_at_zero(a)
            if w:
                row[J] = w
        graph[I] = row
    return graph


def schubert_degree(I: Subset, spec: GrassmannianSpec, graph: dict | None = None, _memo=None) -> int:
    """Weighted number of paths from ``I`` down to the point class."""
    graph = graph if graph is not None else classical_chevalley(spec)
    memo = _memo if _memo is not None else {}
    bottom = minimal_subset(spec)
    # iterative post-order so that large n does not hit the recursion limit
    stack = [I]
    while stack:
        v = stack[-1]
        if v in memo:
            stack.pop()
            continue
        if v == bottom:
            memo[v] = 1
            stack.pop()
            continue
        pending = [J for J in graph[v] if J not in memo]
        if pending:
            stack.extend(pending)
            continue
        memo[v] = sum(w * memo[J] for J, w in graph[v].items())
        stack.pop()
    return memo[I]


def degree_table(spec: GrassmannianSpec) -> list:
    """``[(I, codim, degree)]`` in enumeration order."""
    graph = classical_chevalley(spec)
    memo: dict = {}
    return [(I, codim(I, spec), schubert_degree(I, spec, graph, memo)) for I in enumerate_admissible(spec)]


def degree_table_csv(rows: list) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["subset", "codim", "degree"])
    for I, c, d in rows:
        writer.writerow([subset_key(I), c, d])
    return buf.getvalue()


@dataclass(frozen=True)
class IntClassVector:
    """A classical class ``sum c_I sigma_I``; zero coefficients are dropped."""

    spec: GrassmannianSpec
    coefficients: tuple  # sorted ((I, c), ...)

    @classmethod
    def of(cls, spec: GrassmannianSpec, coefficients: dict) -> "IntClassVector":
        return cls(spec, tuple(sorted((I, int(c)) for I, c in coefficients.items() if c)))

    def as_dict(self) -> dict:
        return dict(self.coefficients)

    def __getitem__(self, I: Subset) -> int:
        return self.as_dict().get(I, 0)

    def __bool__(self):
        return bool(self.coefficients)

    def _combine(self, other: "IntClassVector", sign: int) -> "IntClassVector":
        out = self.as_dict()
        for I, c in other.coefficients:
            out[I] = out.get(I, 0) + sign * c
        return IntClassVector.of(self.spec, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def scale(self, c: int) -> "IntClassVector":
        return IntClassVector.of(self.spec, {I: c * v for I, v in self.coefficients})

    def graded(self) -> dict:
        out: dict = {}
        for I, c in self.coefficients:
            out.setdefault(codim(I, self.spec), {})[I] = c
        return out

    def to_json(self) -> dict:
        return {subset_key(I): str(c) for I, c in self.coefficients}


@dataclass
class ClassicalRing:
    """Integral cohomology ring with the Schubert basis."""

    table: ClassTable
    _constants: dict = field(default_factory=dict, repr=False)

    @property
    def spec(self) -> GrassmannianSpec:
        return self.table.spec

    @classmethod
    def of(cls, spec: GrassmannianSpec) -> "ClassicalRing":
        return cls(compute_class_table(spec))

    def sigma(self, I: Subset) -> IntClassVector:
        return IntClassVector.of(self.spec, {I: 1})

    def one(self) -> IntClassVector:
        return self.sigma(maximal_subset(self.spec))

    def point(self) -> Subset:
        return minimal_subset(self.spec)

    def constants(self, I: Subset, J: Subset) -> dict:
        """``{L: N_{I,J}^L(0)}``, nonzero entries only."""
        key = (I, J) if I <= J else (J, I)
        if key not in self._constants:
            dim = self.spec.dimension
            if codim(I, self.spec) + codim(J, self.spec) > dim:
                self._constants[key] = {}
            else:
                full = self.table.structure_constants(I, J)
                self._constants[key] = {L: evaluate_at_zero(c) for L, c in full.items() if evaluate_at_zero(c)}
        return self._constants[key]

    def mul(self, u: IntClassVector, v: IntClassVector) -> IntClassVector:
        out: dict = {}
        for I, a in u.coefficients:
            for J, b in v.coefficients:
                for L, c in self.constants(I, J).items():
                    out[L] = out.get(L, 0) + a * b * c
        return IntClassVector.of(self.spec, out)

    def power(self, u: IntClassVector, e: int) -> IntClassVector:
        return reduce(self.mul, [u] * e, self.one())

    def point_coefficient(self, u: IntClassVector) -> int:
        return u[self.point()]

    def degree(self, I: Subset) -> int:
        """Point coefficient of sigma_H^(dim - codim I) * sigma_I."""
        h = self.sigma(hyperplane_subset(self.spec))
        u = self.sigma(I)
        for _ in range(self.spec.dimension - codim(I, self.spec)):
            u = self.mul(h, u)
        return self.point_coefficient(u)


def structure_constants_classical(spec: GrassmannianSpec, ring: ClassicalRing | None = None, pairs=None) -> dict:
    """``{(I, J, L): N}`` for ``I <= J`` in enumeration order, nonzero only."""
    ring = ring or ClassicalRing.of(spec)
    vertices = enumerate_admissible(spec)
    if pairs is None:
        pairs = [(I, J) for a, I in enumerate(vertices) for J in vertices[a:]]
    out = {}
    for I, J in pairs:
        for L, c in ring.constants(I, J).items():
            out[(I, J, L)] = c
    return out


def degree_table_via_products(spec: GrassmannianSpec, ring: ClassicalRing | None = None) -> list:
    ring = ring or ClassicalRing.of(spec)
    return [(I, codim(I, spec), ring.degree(I)) for I in enumerate_admissible(spec)]


def bareiss_det(matrix: list) -> int:
    """Exact integer determinant by fraction-free elimination."""
    m = [list(r) for r in matrix]
    size = len(m)
    if size == 0:
        return 1
    sign, prev = 1, 1
    for k in range(size - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, size) if m[r][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[-1][-1]


@dataclass(frozen=True)
class PairingMatrix:
    codim: int
    rows: tuple  # labels of codimension c
    cols: tuple  # labels of codimension dim - c
    entries: tuple

    @property
    def det(self) -> int:
        return bareiss_det(self.entries)

    @property
    def unimodular(self) -> bool:
        return len(self.rows) == len(self.cols) and abs(self.det) == 1

    def is_permutation(self) -> bool:
        """Whether some reordering of rows makes this the identity."""
        if len(self.rows) != len(self.cols):
            return False
        for r in self.entries:
            if sorted(r) != [0] * (len(r) - 1) + [1]:
                return False
        return all(sum(r[j] for r in self.entries) == 1 for j in range(len(self.cols)))

    def nonzero(self) -> dict:
        return {(I, J): v for I, r in zip(self.rows, self.entries) for J, v in zip(self.cols, r) if v}

    def to_json(self) -> dict:
        label = lambda x: x if isinstance(x, str) else list(x)  # noqa: E731
        return {
            "codim": self.codim,
            "rows": [label(I) for I in self.rows],
            "cols": [label(J) for J in self.cols],
            "entries": [[str(v) for v in r] for r in self.entries],
            "det": str(self.det),
        }


def pairing_matrix(spec: GrassmannianSpec, c: int, ring: ClassicalRing | None = None, basis=None, dual_basis=None) -> PairingMatrix:
    """Point coefficients of sigma_I * sigma_J with codim I = c, codim J = dim - c.

    ``basis`` and ``dual_basis`` optionally replace the Schubert classes of
    those codimensions by ``{label: IntClassVector}``.
    """
    dim = spec.dimension
    if not 0 <= c <= dim:
        raise ValueError(f"codimension {c} outside 0..{dim}")
    ring = ring or ClassicalRing.of(spec)

    def schubert(level):
        return {I: ring.sigma(I) for I in enumerate_admissible(spec) if codim(I, spec) == level}

    rows = basis if basis is not None else schubert(c)
    cols = dual_basis if dual_basis is not None else schubert(dim - c)
    entries = tuple(tuple(ring.point_coefficient(ring.mul(u, v)) for v in cols.values()) for u in rows.values())
    return PairingMatrix(c, tuple(rows), tuple(cols), entries)


# The ring presentation of I2Gr(2, 6).  Generators in order s1, s2, s3, s3'.

GENERATORS = ((3, 1), (2, 1), (3, -2), (2, -3))
GENERATOR_NAMES = ("s1", "s2", "s3", "s3'")

SUBSTITUTIONS = (
    ((3, -1), ((1, (2, 0, 0, 0)), (-1, (0, 1, 0, 0)))),
    ((2, -1), ((3, (1, 1, 0, 0)), (-1, (3, 0, 0, 0)), (1, (0, 0, 1, 0)))),
    ((1, -2), ((1, (3, 0, 0, 0)), (-2, (1, 1, 0, 0)), (-1, (0, 0, 1, 0)), (-1, (0, 0, 0, 1)))),
    ((-1, -2), ((1, (4, 0, 0, 0)), (-2, (2, 1, 0, 0)), (-3, (1, 0, 0, 1)))),
    ((1, -3), ((1, (1, 0, 0, 1)),)),
    ((-1, -3), ((1, (2, 0, 0, 1)),)),
    ((-2, -3), ((1, (3, 0, 0, 1)),)),
)

IDEAL_GENERATORS = (
    ((2, (4, 0, 0, 0)), (-2, (2, 1, 0, 0)), (-3, (1, 0, 0, 1))),
    ((1, (0, 1, 0, 1)),),
    ((1, (1, 0, 1, 0)), (-1, (1, 0, 0, 1))),
    ((1, (0, 0, 1, 1)), (-1, (3, 0, 0, 1))),
    ((1, (0, 2, 0, 0)), (-1, (4, 0, 0, 0)), (2, (2, 1, 0, 0)), (2, (1, 0, 0, 1))),
    ((1, (0, 0, 2, 0)),),
    ((1, (5, 0, 0, 0)), (-14, (2, 0, 0, 1))),
    ((1, (0, 0, 0, 2)),),
    ((1, (0, 1, 1, 0)),),
    ((1, (4, 0, 0, 1)),),
)

# The first generator above does not vanish: pairing with sigma(2,1) and
# sigma(3,-1) forces the sigma_1^2 sigma_2 coefficient to be -5, not -2.
AMENDED_IDEAL_GENERATORS = (((2, (4, 0, 0, 0)), (-5, (2, 1, 0, 0)), (-3, (1, 0, 0, 1))),) + IDEAL_GENERATORS[1:]


def render_polynomial(terms) -> str:
    parts = []
    for c, exps in terms:
        mono = "".join(
            name + (f"^{e}" if e > 1 else "") for name, e in zip(GENERATOR_NAMES, exps) if e
        )
        body = (str(abs(c)) if abs(c) != 1 or not mono else "") + mono
        parts.append(("- " if c < 0 else "+ ") + body)
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


def evaluate_polynomial(ring: ClassicalRing, terms) -> IntClassVector:
    gens = [ring.sigma(I) for I in GENERATORS]
    total = IntClassVector.of(ring.spec, {})
    for c, exps in terms:
        mono = ring.one()
        for g, e in zip(gens, exps):
            for _ in range(e):
                mono = ring.mul(mono, g)
        total = total + mono.scale(c)
    return total


@dataclass(frozen=True)
class RelationResult:
    relation: str
    residual: IntClassVector

    @property
    def ok(self) -> bool:
        return not self.residual

    def to_json(self) -> dict:
        return {"relation": self.relation, "residual": self.residual.to_json(), "ok": self.ok}


@dataclass(frozen=True)
class RingCheckReport:
    substitutions: tuple
    ideal: tuple
    generated: tuple  # basis classes reached by the substitutions and generators
    missing: tuple

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.substitutions + self.ideal) and not self.missing

    def to_json(self) -> dict:
        return {
            "substitutions": [r.to_json() for r in self.substitutions],
            "ideal": [r.to_json() for r in self.ideal],
            "generated": [list(I) for I in self.generated],
            "missing": [list(I) for I in self.missing],
            "ok": self.ok,
        }


def ring_check_i2gr26(ring: ClassicalRing | None = None, amended: bool = False) -> RingCheckReport:
    """Check the presentation Z[s1, s2, s3, s3'] / I of H*(I2Gr(2, 6)).

    With ``amended`` the corrected first ideal generator is used.
    """
    spec = GrassmannianSpec(3, 2, Geometry.BISYMPLECTIC)
    ring = ring or ClassicalRing.of(spec)
    subs = []
    for I, terms in SUBSTITUTIONS:
        residual = evaluate_polynomial(ring, terms) - ring.sigma(I)
        subs.append(RelationResult(f"sigma{subset_key(I)} = {render_polynomial(terms)}", residual))
    ideal = []
    for terms in AMENDED_IDEAL_GENERATORS if amended else IDEAL_GENERATORS:
        ideal.append(RelationResult(render_polynomial(terms), evaluate_polynomial(ring, terms)))
    # each listed expression is a polynomial in the generators, so a basis
    # class is generated once its formula checks out
    reached = {maximal_subset(spec), *GENERATORS}
    reached.update(I for (I, _), r in zip(SUBSTITUTIONS, subs) if r.ok)
    order = enumerate_admissible(spec)
    generated = tuple(I for I in order if I in reached)
    missing = tuple(I for I in order if I not in reached)
    return RingCheckReport(tuple(subs), tuple(ideal), generated, missing)


@dataclass(frozen=True)
class IdentityResult:
    label: str
    equivariant: bool
    classical: bool

    def to_json(self) -> dict:
        return {"identity": self.label, "equivariant": self.equivariant, "classical": self.classical}


def equivariant_identities(table: ClassTable | None = None) -> list:
    """Products of generators of H_T^*(I2Gr(2, 6)) against their stated
    expansions; each is checked exactly and after eps -> 0."""
    spec = GrassmannianSpec(3, 2, Geometry.BISYMPLECTIC)
    table = table or compute_class_table(spec)
    e = CharPoly.gens(3)
    f = table.classes
    s2, s3, s3p, s1 = f[(2, 1)], f[(3, -2)], f[(2, -3)], f[(3, 1)]
    checks = [
        (
            "s2^2",
            multiply(s2, s2),
            s2 * ((e[3] - e[1]) * (e[3] - e[2]))
            + f[(1, -2)] * (e[3] - e[1])
            + f[(2, -1)] * (e[3] - e[2])
            + s3p * (e[3] - e[2])
            + multiply(s1, f[(1, -2)]),
        ),
        ("s2 s3", multiply(s2, s3), (f[(1, -2)] * (e[2] - e[3]) + f[(1, -3)]) * (e[2] + e[3])),
        ("s2 s3'", multiply(s2, s3p), (s3p * (e[3] - e[2]) + f[(1, -3)]) * (2 * e[3])),
        ("s3 s3'", multiply(s3, s3p), f[(-2, -3)]),
        (
            "s3^2",
            multiply(s3, s3),
            (
                s3 * ((e[1] + e[2]) * (e[2] - e[1]))
                + f[(1, -2)] * ((e[1] + e[3]) * (e[3] - e[2]))
                - f[(-1, -2)] * (e[3] - e[2])
                - f[(1, -3)] * (e[1] + e[3])
                + f[(-1, -3)]
            )
            * (2 * e[2]),
        ),
        (
            "s3'^2",
            multiply(s3p, s3p),
            (s3p * ((e[3] - e[1]) * (e[3] + e[1])) + f[(1, -3)] * (e[1] + e[2]) - f[(-1, -3)]) * (2 * e[3]),
        ),
    ]
    out = []
    for label, lhs, rhs in checks:
        diff = expand_in_basis(lhs - rhs, table)
        out.append(IdentityResult(label, not diff, all(evaluate_at_zero(c) == 0 for c in diff.values())))
    return out


def expansion_coefficients(table: ClassTable, I: Subset, J: Subset) -> dict:
    return expand_in_basis(multiply(table[I], table[J]), table)
