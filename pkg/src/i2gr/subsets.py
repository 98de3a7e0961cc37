"""Admissible signed index sets, codimensions, dominance and Betti numbers.

A fixed point of the torus acting on IGr(k, 2n) or I2Gr(k, 2n) is labelled by
a set of ``k`` nonzero integers in ``{-n..-1, 1..n}`` with pairwise distinct
absolute values.  Subsets are plain tuples sorted in descending order, e.g.
``(3, -2)``.
"""
from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from math import comb

MAX_N = 16

Subset = tuple  # descending tuple of signed indices
BettiSequence = tuple


class Geometry(enum.Enum):
    SYMPLECTIC = "sympl"
    BISYMPLECTIC = "bisym"


@dataclass(frozen=True)
class GrassmannianSpec:
    """IGr(k, 2n) or I2Gr(k, 2n)."""

    n: int
    k: int = 2
    geometry: Geometry = Geometry.BISYMPLECTIC

    def __post_init__(self):
        if not isinstance(self.geometry, Geometry):
            object.__setattr__(self, "geometry", Geometry(self.geometry))
        if not 2 <= self.k <= self.n:
            raise ValueError(f"need 2 <= k <= n, got k={self.k}, n={self.n}")
        if self.n > MAX_N:
            raise ValueError(f"n={self.n} exceeds the supported maximum {MAX_N}")

    @property
    def bisymplectic(self) -> bool:
        return self.geometry is Geometry.BISYMPLECTIC

    @property
    def dimension(self) -> int:
        n, k = self.n, self.k
        if self.bisymplectic:
            return 2 * k * (n - k) + k
        return 2 * k * (n - k) + k * (k + 1) // 2

    def with_geometry(self, geometry: Geometry) -> "GrassmannianSpec":
        return GrassmannianSpec(self.n, self.k, geometry)

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "geometry": self.geometry.value}

    @classmethod
    def from_json(cls, obj: dict) -> "GrassmannianSpec":
        return cls(int(obj["n"]), int(obj["k"]), Geometry(obj["geometry"]))


def is_admissible(entries, n: int | None = None) -> bool:
    absvals = [abs(i) for i in entries]
    if 0 in absvals or len(set(absvals)) != len(absvals):
        return False
    return n is None or max(absvals, default=0) <= n


def admissible(*entries) -> Subset:
    """Normalize ``entries`` to a descending admissible subset.

    >>> admissible(-2, 3)
    (3, -2)
    """
    if len(entries) == 1 and not isinstance(entries[0], int):
        entries = tuple(entries[0])
    if not is_admissible(entries):
        raise ValueError(f"not admissible: {entries}")
    return tuple(sorted(entries, reverse=True))


def enumerate_admissible(spec: GrassmannianSpec) -> list:
    """All fixed-point labels in descending lexicographic order."""
    out = []
    for absvals in itertools.combinations(range(1, spec.n + 1), spec.k):
        for signs in itertools.product((1, -1), repeat=spec.k):
            out.append(tuple(sorted((s * a for s, a in zip(signs, absvals)), reverse=True)))
    out.sort(reverse=True)
    return out


def fixed_point_count(n: int, k: int) -> int:
    return 2**k * comb(n, k)


def outside_indices(I: Subset, n: int) -> list:
    """Signed indices i with i not in I and -i not in I."""
    used = {abs(i) for i in I}
    return [s * m for m in range(n, 0, -1) if m not in used for s in (1, -1)]


def codim(I: Subset, spec: GrassmannianSpec) -> int:
    """Codimension of the Schubert variety attached to ``I``.

    This is the number of tangent weights at p_I that are positive under
    eps_i -> i.
    """
    out = outside_indices(I, spec.n)
    c = sum(1 for i in out for j in I if i > j)
    c += sum(1 for j in I if j < 0)
    if not spec.bisymplectic:
        c += sum(1 for a, b in itertools.combinations(I, 2) if a + b < 0)
    return c


def dominates(I: Subset, J: Subset) -> bool:
    """Componentwise comparison of descending entries."""
    if len(I) != len(J):
        raise ValueError("subsets of different sizes")
    return all(a >= b for a, b in zip(I, J))


def maximal_subset(spec: GrassmannianSpec) -> Subset:
    return tuple(range(spec.n, spec.n - spec.k, -1))


def minimal_subset(spec: GrassmannianSpec) -> Subset:
    return tuple(-m for m in range(spec.n - spec.k + 1, spec.n + 1))


def hyperplane_subset(spec: GrassmannianSpec) -> Subset:
    """The label ``(n, n-1, ..., n-k+2, n-k)`` of the codimension one class."""
    n, k = spec.n, spec.k
    return tuple(range(n, n - k + 1, -1)) + (n - k,)


def subsets_by_codim(spec: GrassmannianSpec) -> dict:
    levels: dict = {}
    for I in enumerate_admissible(spec):
        levels.setdefault(codim(I, spec), []).append(I)
    return dict(sorted(levels.items()))


def betti_direct(spec: GrassmannianSpec) -> BettiSequence:
    values = [0] * (spec.dimension + 1)
    for I in enumerate_admissible(spec):
        values[codim(I, spec)] += 1
    if values != values[::-1]:
        raise RuntimeError(f"Betti numbers of {spec} are not palindromic: {values}")
    return tuple(values)


def _shift(seq, h: int) -> list:
    return [0] * h + list(seq)


def _add(*seqs) -> list:
    out = [0] * max(len(s) for s in seqs)
    for s in seqs:
        for i, v in enumerate(s):
            out[i] += v
    return out


@lru_cache(maxsize=None)
def betti_recursive(k: int, n: int) -> BettiSequence:
    """Betti numbers of I2Gr(k, 2n) from the recursion in n.

    S(k, n) = S(k, n-1)[k] + S(k-1, n-1) + S(k-1, n-1)[1 + 2(n-k)],
    where [h] prepends h zeros, with bases S(1, m) (projective space of
    dimension 2m-1) and S(m, m) (product of m projective lines).
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    if k == 1:
        return (1,) * (2 * n)
    if k == n:
        return tuple(comb(n, j) for j in range(n + 1))
    prev = betti_recursive(k, n - 1)
    lower = betti_recursive(k - 1, n - 1)
    return tuple(_add(_shift(prev, k), lower, _shift(lower, 1 + 2 * (n - k))))


def subset_to_json(I: Subset) -> list:
    return list(I)


def subset_key(I: Subset) -> str:
    """Compact JSON string used as an object key, e.g. ``"[3,-2]"``."""
    return json.dumps(list(I), separators=(",", ":"))


def subset_from_key(key: str) -> Subset:
    return admissible(json.loads(key))
