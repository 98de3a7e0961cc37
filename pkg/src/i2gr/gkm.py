"""Tangent weights at fixed points and the moment graph of T-invariant curves."""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field

from .charring import CharPoly, tau_value
from .subsets import GrassmannianSpec, Subset, enumerate_admissible, outside_indices


class CurveKind(enum.Enum):
    ALPHA = "alpha"  # a line: the subsets differ in one entry
    BETA = "beta"  # a conic: {a1, a2} replaced by {-a2, -a1}; symplectic only


def eps(n: int, i: int) -> CharPoly:
    return CharPoly.eps(n, i)


def tangent_weights(I: Subset, spec: GrassmannianSpec) -> list:
    """Characters of T on the tangent space at p_I, with multiplicity."""
    n = spec.n
    weights = [-2 * eps(n, i) for i in I]
    weights += [eps(n, i) - eps(n, j) for i in outside_indices(I, n) for j in I]
    if not spec.bisymplectic:
        weights += [-eps(n, a) - eps(n, b) for a, b in itertools.combinations(I, 2)]
    return weights


def positive_weights(I: Subset, spec: GrassmannianSpec) -> list:
    """The tau-positive tangent weights, i.e. the normal characters of the cell."""
    return [w for w in tangent_weights(I, spec) if tau_value(w) > 0]


def normalize_weight(w: CharPoly) -> CharPoly:
    return w if tau_value(w) > 0 else -w


@dataclass(frozen=True)
class GkmEdge:
    source: Subset
    target: Subset
    weight: CharPoly
    kind: CurveKind

    def other(self, I: Subset) -> Subset:
        return self.target if I == self.source else self.source


def curve_degree_kind(edge) -> int:
    """Degree of the T-invariant curve: lines for alpha, conics for beta."""
    kind = edge.kind if isinstance(edge, GkmEdge) else CurveKind(edge)
    return 1 if kind is CurveKind.ALPHA else 2


def alpha_neighbors(I: Subset, n: int):
    """Pairs ``(J, weight)`` with J obtained from I by changing one entry."""
    members = set(I)
    for a in I:
        rest = members - {a}
        for b in range(n, -n - 1, -1):
            if b == 0 or b in members or -b in rest:
                continue
            J = tuple(sorted(rest | {b}, reverse=True))
            yield J, normalize_weight(eps(n, a) - eps(n, b))


def beta_neighbors(I: Subset, n: int):
    for a1, a2 in itertools.combinations(I, 2):
        J = tuple(sorted((set(I) - {a1, a2}) | {-a1, -a2}, reverse=True))
        yield J, normalize_weight(eps(n, a1) + eps(n, a2))


@dataclass(frozen=True)
class GkmGraph:
    spec: GrassmannianSpec
    vertices: tuple
    edges: tuple
    _incidence: dict = field(default=None, compare=False, repr=False)

    def incident(self, I: Subset) -> list:
        if self._incidence is None:
            inc: dict = {v: [] for v in self.vertices}
            for e in self.edges:
                inc[e.source].append(e)
                inc[e.target].append(e)
            object.__setattr__(self, "_incidence", inc)
        return self._incidence[I]

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "vertices": [list(v) for v in self.vertices],
            "edges": [
                {
                    "source": list(e.source),
                    "target": list(e.target),
                    "weight": e.weight.to_json(),
                    "weight_str": str(e.weight),
                    "kind": e.kind.value,
                }
                for e in self.edges
            ],
        }

    def to_dot(self) -> str:
        lines = [f'graph "{self.spec.geometry.value}_n{self.spec.n}_k{self.spec.k}" {{']
        name = lambda v: '"' + ",".join(str(i) for i in v) + '"'  # noqa: E731
        for v in self.vertices:
            lines.append(f'  {name(v)} [label="({",".join(str(i) for i in v)})"];')
        for e in self.edges:
            style = "" if e.kind is CurveKind.ALPHA else ", style=dashed"
            lines.append(f'  {name(e.source)} -- {name(e.target)} [label="{e.weight} ({e.kind.value})"{style}];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_graph(spec: GrassmannianSpec) -> GkmGraph:
    vertices = enumerate_admissible(spec)
    index = {v: i for i, v in enumerate(vertices)}
    edges = {}
    for I in vertices:
        found = [(J, w, CurveKind.ALPHA) for J, w in alpha_neighbors(I, spec.n)]
        if not spec.bisymplectic:
            found += [(J, w, CurveKind.BETA) for J, w in beta_neighbors(I, spec.n)]
        for J, w, kind in found:
            a, b = sorted((I, J), key=index.__getitem__)
            edges.setdefault((a, b), GkmEdge(a, b, w, kind))
    ordered = sorted(edges.values(), key=lambda e: (index[e.source], index[e.target]))
    return GkmGraph(spec, tuple(vertices), tuple(ordered))
