"""Sparse polynomials with integer coefficients in the characters eps_1..eps_n.

Monomials are dense exponent vectors packed into a single Python int,
``_BITS`` bits per variable, so that multiplying monomials is integer
addition.  Coefficients are Python ints (arbitrary precision).

The canonical term order is graded reverse lexicographic with
eps_1 < eps_2 < ... < eps_n.
"""
from __future__ import annotations

import heapq
from math import gcd

_BITS = 8
_MASK = (1 << _BITS) - 1
MAX_DEGREE = _MASK

MINUS_INFINITY = float("-inf")


class DivisorZero(ZeroDivisionError):
    pass


class NotLinear(ValueError):
    pass


class NonIntegralQuotient(ArithmeticError):
    """The quotient exists over the rationals but has non-integer coefficients."""


def _unit(i: int) -> int:
    # packed monomial of eps_{i+1}
    return 1 << (_BITS * i)


def _pack(exps) -> int:
    key = 0
    for i, e in enumerate(exps):
        if not 0 <= e <= _MASK:
            raise ValueError(f"exponent {e} out of range")
        key |= e << (_BITS * i)
    return key


def _unpack(key: int, n: int) -> tuple:
    return tuple((key >> (_BITS * i)) & _MASK for i in range(n))


def _mono_degree(key: int) -> int:
    d = 0
    while key:
        d += key & _MASK
        key >>= _BITS
    return d


def _grevlex_key(key: int, n: int) -> tuple:
    exps = _unpack(key, n)
    return (sum(exps),) + tuple(-e for e in exps)


class CharPoly:
    """Immutable sparse polynomial in eps_1..eps_n over the integers."""

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms=None):
        self.n = n
        self._hash = None
        packed = {}
        if terms:
            for exps, c in dict(terms).items():
                c = int(c)
                if not c:
                    continue
                if len(exps) != n:
                    raise ValueError(f"exponent vector {exps} has wrong length for n={n}")
                key = _pack(exps)
                packed[key] = packed.get(key, 0) + c
                if not packed[key]:
                    del packed[key]
        self._terms = packed

    @classmethod
    def _raw(cls, n: int, packed: dict) -> "CharPoly":
        p = cls.__new__(cls)
        p.n = n
        p._terms = packed
        p._hash = None
        return p

    # constructors

    @classmethod
    def zero(cls, n: int) -> "CharPoly":
        return cls._raw(n, {})

    @classmethod
    def constant(cls, n: int, c: int) -> "CharPoly":
        return cls._raw(n, {0: int(c)} if c else {})

    @classmethod
    def eps(cls, n: int, i: int) -> "CharPoly":
        """The character eps_i; for negative ``i`` this is ``-eps_{-i}``."""
        if i == 0 or abs(i) > n:
            raise ValueError(f"no character eps_{i} for n={n}")
        return cls._raw(n, {_unit(abs(i) - 1): 1 if i > 0 else -1})

    @classmethod
    def gens(cls, n: int) -> list:
        """``[None, eps_1, ..., eps_n]`` so that ``gens(n)[i]`` is eps_i."""
        return [None] + [cls.eps(n, i) for i in range(1, n + 1)]

    @classmethod
    def linear(cls, n: int, coeffs: dict) -> "CharPoly":
        """Sum of ``c * eps_i`` over ``coeffs = {signed i: c}``."""
        packed: dict = {}
        for i, c in coeffs.items():
            key = _unit(abs(i) - 1)
            packed[key] = packed.get(key, 0) + (c if i > 0 else -c)
        return cls._raw(n, {k: v for k, v in packed.items() if v})

    # inspection

    def terms(self) -> dict:
        """``{exponent tuple: coefficient}``."""
        return {_unpack(k, self.n): c for k, c in self._terms.items()}

    def sorted_terms(self) -> list:
        """Terms in descending canonical (grevlex) order."""
        keys = sorted(self._terms, key=lambda k: _grevlex_key(k, self.n), reverse=True)
        return [(_unpack(k, self.n), self._terms[k]) for k in keys]

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self):
        if not self._terms:
            return MINUS_INFINITY
        return max(_mono_degree(k) for k in self._terms)

    def is_homogeneous(self) -> bool:
        return len({_mono_degree(k) for k in self._terms}) <= 1

    def constant_term(self) -> int:
        return self._terms.get(0, 0)

    def content(self) -> int:
        g = 0
        for c in self._terms.values():
            g = gcd(g, c)
        return g

    def leading_term(self):
        if not self._terms:
            return None
        key = max(self._terms, key=lambda k: _grevlex_key(k, self.n))
        return _unpack(key, self.n), self._terms[key]

    def evaluate(self, point) -> int:
        """Value at ``eps = point`` (a sequence of n numbers)."""
        total = 0
        for key, c in self._terms.items():
            v = c
            for i, e in enumerate(_unpack(key, self.n)):
                if e:
                    v *= point[i] ** e
            total += v
        return total

    # arithmetic

    def _coerce(self, other) -> "CharPoly":
        if isinstance(other, CharPoly):
            if other.n != self.n:
                raise ValueError(f"mixing polynomials in {self.n} and {other.n} variables")
            return other
        if isinstance(other, int):
            return CharPoly.constant(self.n, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for k, c in small.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                del out[k]
        return CharPoly._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return CharPoly._raw(self.n, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) - c
            if v:
                out[k] = v
            else:
                del out[k]
        return CharPoly._raw(self.n, out)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return CharPoly.zero(self.n)
            return CharPoly._raw(self.n, {k: c * other for k, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._terms, other._terms
        if not a or not b:
            return CharPoly.zero(self.n)
        if self.degree() + other.degree() > MAX_DEGREE:
            raise OverflowError("product degree exceeds the packed exponent range")
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
        return CharPoly._raw(self.n, {k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = CharPoly.constant(self.n, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = CharPoly.constant(self.n, other)
        if not isinstance(other, CharPoly):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    # formatting and serialization

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            factors = [f"e{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(exps) if e]
            mono = "*".join(factors)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"CharPoly({self.n}, '{self}')"

    def to_json(self) -> dict:
        return {"n": self.n, "terms": [{"c": str(c), "e": list(exps)} for exps, c in self.sorted_terms()]}

    @classmethod
    def from_json(cls, obj: dict, n: int | None = None) -> "CharPoly":
        terms = obj["terms"]
        if n is None:
            n = obj.get("n")
        if n is None:
            if not terms:
                raise ValueError("cannot infer n from the zero polynomial")
            n = len(terms[0]["e"])
        return cls(n, {tuple(t["e"]): int(t["c"]) for t in terms})


def degree(p: CharPoly):
    return p.degree()


def is_homogeneous(p: CharPoly) -> bool:
    return p.is_homogeneous()


def evaluate_at_zero(p: CharPoly) -> int:
    return p.constant_term()


def tau_value(w: CharPoly) -> int:
    """Image of a character under eps_i -> i."""
    if w.is_zero() or not w.is_homogeneous() or w.degree() != 1:
        raise NotLinear(f"{w} is not a nonzero linear form")
    return sum(c * (i + 1) for exps, c in w.terms().items() for i, e in enumerate(exps) if e)


def _div_linear(terms: dict, wterms: dict, n: int):
    """Quotient of ``terms`` by a homogeneous linear form, or None.

    Synthetic division in the largest variable of ``w``; the quotient parts
    are determined from the top power down, and the remainder check is the
    x_m-free part.
    """
    m = max(k.bit_length() for k in wterms)
    m = (m - 1) // _BITS
    lead = _unit(m)
    c = wterms[lead]
    rest = [(k, v) for k, v in wterms.items() if k != lead]
    shift = _BITS * m

    groups: dict = {}
    for key, coef in terms.items():
        e = (key >> shift) & _MASK
        groups.setdefault(e, {})[key - (e << shift)] = coef
    top = max(groups)
    if top == 0:
        return None

    def reduce(t: dict, q: dict):
        for key, coef in q.items():
            for u, cu in rest:
                nk = key + u
                v = t.get(nk, 0) - cu * coef
                if v:
                    t[nk] = v
                else:
                    t.pop(nk, None)

    quotient: dict = {}
    q: dict = {}
    for e in range(top, 0, -1):
        t = dict(groups.get(e, ()))
        reduce(t, q)
        q = {}
        for key, coef in t.items():
            qq, rr = divmod(coef, c)
            if rr:
                return None
            q[key] = qq
        base = (e - 1) << shift
        for key, coef in q.items():
            quotient[key + base] = coef
    t = dict(groups.get(0, ()))
    reduce(t, q)
    if t:
        return None
    return quotient


def _monomial_divides(d: int, key: int, n: int) -> bool:
    for i in range(n):
        s = _BITS * i
        if ((d >> s) & _MASK) > ((key >> s) & _MASK):
            return False
    return True


def _div_general(terms: dict, qterms: dict, n: int):
    """Multivariate long division by a single divisor in grevlex; None if inexact."""
    order = lambda k: _grevlex_key(k, n)  # noqa: E731
    lead = max(qterms, key=order)
    lc = qterms[lead]
    tail = [(k, v) for k, v in qterms.items() if k != lead]
    rem = dict(terms)
    heap = [(tuple(-x for x in order(k)), k) for k in rem]
    heapq.heapify(heap)
    queued = set(rem)
    quotient: dict = {}
    while heap:
        _, key = heapq.heappop(heap)
        queued.discard(key)
        coef = rem.get(key)
        if not coef:
            continue
        if not _monomial_divides(lead, key, n):
            return None
        qc, r = divmod(coef, lc)
        if r:
            return None
        qk = key - lead
        quotient[qk] = qc
        del rem[key]
        for k, v in tail:
            nk = qk + k
            nv = rem.get(nk, 0) - qc * v
            if nv:
                rem[nk] = nv
                if nk not in queued:
                    queued.add(nk)
                    heapq.heappush(heap, (tuple(-x for x in order(nk)), nk))
            else:
                rem.pop(nk, None)
    return quotient


def _primitive_quotient(p: CharPoly, q: CharPoly):
    """``(quotient of p by q/content(q), content(q))`` or ``(None, g)``."""
    g = q.content()
    lead = q.leading_term()[1]
    if lead < 0:
        g = -g
    qterms = {k: c // g for k, c in q._terms.items()}
    if not p._terms:
        return {}, g
    if len(qterms) == 1 and 0 in qterms:
        return dict(p._terms), g
    homogeneous_linear = all(_mono_degree(k) == 1 for k in qterms)
    if homogeneous_linear:
        return _div_linear(p._terms, qterms, p.n), g
    return _div_general(p._terms, qterms, p.n), g


def try_divide_exact(p: CharPoly, q: CharPoly):
    """Exact quotient ``p / q`` or None if ``q`` does not divide ``p``.

    Raises NonIntegralQuotient when the quotient exists over the rationals
    but not over the integers.
    """
    if q.n != p.n:
        raise ValueError("mixing polynomials in different numbers of variables")
    if q.is_zero():
        raise DivisorZero("division by the zero polynomial")
    quotient, g = _primitive_quotient(p, q)
    if quotient is None:
        return None
    out = {}
    for k, c in quotient.items():
        qc, r = divmod(c, g)
        if r:
            raise NonIntegralQuotient(f"({p}) / ({q}) is not integral")
        out[k] = qc
    return CharPoly._raw(p.n, out)


def divisible_up_to_sign(p: CharPoly, w: CharPoly) -> bool:
    """Whether ``w`` (equivalently ``-w``) divides ``p`` over the rationals."""
    if w.is_zero():
        raise DivisorZero("division by the zero polynomial")
    if p.is_zero():
        return True
    quotient, _ = _primitive_quotient(p, w)
    return quotient is not None


def product(polys, n: int) -> CharPoly:
    out = CharPoly.constant(n, 1)
    for p in polys:
        out = out * p
    return out
