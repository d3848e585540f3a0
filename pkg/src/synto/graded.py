"""Exact bigraded-commutative polynomial algebra.

Everything downstream (formal group arithmetic, Bockstein spectral sequence
pages, the syntomic generator table) runs over one data structure: sparse
polynomials in a fixed ordered tuple of generators, each generator carrying
an integer (degree, weight) bidegree and a parity.  Products follow the
Koszul convention: transposing two odd factors costs a sign, and odd
generators square to zero.  Coefficients are exact -- `fractions.Fraction`
in characteristic zero, canonical residues in F_p otherwise.

Monomials are exponent tuples aligned with the catalog, so the zero tuple is
1 and negative exponents are legal (used for Laurent generators like t^{-1}
on the periodic page).  There is deliberately no Groebner machinery: the only
ideals the pipeline quotients by are generated by (p, v1, v2), and the only
multiplicative relations are "this monomial is zero" (e.g. t*mu), so
reduction is a per-monomial filter.

>>> cat = canonical_catalog(3)
>>> lam1, lam2 = cat.unit_mono("lambda1"), cat.unit_mono("lambda2")
>>> P = Poly.from_terms(cat, FP3 := CoeffRing(3), [(lam2, 1)])
>>> Q = Poly.from_terms(cat, FP3, [(lam1, 1)])
>>> print(format_poly(P * Q))
2*lambda1*lambda2
>>> (P * P).is_zero()
True
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional

Mono = tuple[int, ...]


class VerificationError(Exception):
    """An internal exactness or consistency check failed (hard error)."""


@dataclass(frozen=True)
class GeneratorSymbol:
    name: str
    degree: int
    weight: int
    parity: str  # "even" | "odd"

    def __post_init__(self) -> None:
        if self.parity not in ("even", "odd"):
            raise ValueError(f"bad parity {self.parity!r} for generator {self.name}")


@dataclass(frozen=True)
class CoeffRing:
    """Coefficient ring tag: char 0 means Fraction arithmetic, else F_p."""

    char: int = 0

    def normalize(self, c):
        if self.char:
            return c % self.char
        return c if isinstance(c, Fraction) else Fraction(c)

    def add(self, a, b):
        return (a + b) % self.char if self.char else a + b

    def mul(self, a, b):
        return (a * b) % self.char if self.char else a * b

    def neg(self, a):
        return (-a) % self.char if self.char else -a

    def inv(self, a):
        if self.char:
            return pow(a, -1, self.char)
        return Fraction(1) / a


QQ = CoeffRing(0)


class Catalog:
    """Ordered generator list; owns monomial arithmetic and Koszul signs.

    The catalog order is the canonical monomial order everywhere: a monomial
    is its exponent tuple, tuples compare lexicographically, and "smallest
    monomial" always means smallest in this order.
    """

    def __init__(self, symbols: Iterable[GeneratorSymbol]):
        self.symbols: tuple[GeneratorSymbol, ...] = tuple(symbols)
        self.index: dict[str, int] = {s.name: i for i, s in enumerate(self.symbols)}
        if len(self.index) != len(self.symbols):
            raise ValueError("duplicate generator name in catalog")
        self.n = len(self.symbols)
        self._odd = tuple(i for i, s in enumerate(self.symbols) if s.parity == "odd")
        self.one: Mono = (0,) * self.n

    def __len__(self) -> int:
        return self.n

    def names(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.symbols)

    def mono(self, exps: dict[str, int]) -> Mono:
        out = [0] * self.n
        for name, e in exps.items():
            out[self.index[name]] = e
        return tuple(out)

    def unit_mono(self, name: str) -> Mono:
        return self.mono({name: 1})

    def degree(self, m: Mono) -> int:
        return sum(e * s.degree for e, s in zip(m, self.symbols) if e)

    def weight(self, m: Mono) -> int:
        return sum(e * s.weight for e, s in zip(m, self.symbols) if e)

    def bidegree(self, m: Mono) -> tuple[int, int]:
        return self.degree(m), self.weight(m)

    def mono_mul(self, a: Mono, b: Mono) -> Optional[tuple[int, Mono]]:
        """(sign, a*b), or None when an odd generator would square.

        The sign counts the transpositions needed to interleave the odd part
        of b into the odd part of a, i.e. pairs (i in a, j in b) of odd
        generator positions with i > j.
        """
        sign = 1
        for i in self._odd:
            if a[i] and b[i]:
                return None
            if b[i]:
                # moving b's odd factor at i past every odd factor of a
                # sitting at a later catalog position
                swaps = sum(1 for j in self._odd if j > i and a[j])
                if swaps & 1:
                    sign = -sign
        return sign, tuple(x + y for x, y in zip(a, b))

    def mono_str(self, m: Mono, unicode: bool = False) -> str:
        if not any(m):
            return "1"
        parts = []
        for e, s in zip(m, self.symbols):
            if not e:
                continue
            name = UNICODE_NAMES.get(s.name, s.name) if unicode else s.name
            if e == 1:
                parts.append(name)
            elif unicode:
                parts.append(name if s.parity == "odd" else f"{name}{superscript(e)}")
            else:
                parts.append(f"{name}^{e}")
        return "".join(parts) if unicode else "*".join(parts)


UNICODE_NAMES = {
    "lambda1": "λ₁",
    "lambda2": "λ₂",
    "mu": "μ",
    "sigma2t1": "σ²t₁",
    "sigma2v2": "σ²v₂",
    "del": "∂",
    "t1": "t₁",
    "t2": "t₂",
    "t3": "t₃",
    "v1": "v₁",
    "v2": "v₂",
    "v3": "v₃",
}

_SUPS = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")


def superscript(e: int) -> str:
    return str(e).translate(_SUPS)


def canonical_catalog(p: int, depth: int = 2, orientations: tuple[str, ...] = ("t",)) -> Catalog:
    """The fixed generator catalog for the Adams summand pipeline at p.

    Orientation variables (t and any auxiliaries like x, y) sit in degree -2
    and weight 1.  v_i and t_i both sit in degree 2p^i - 2; v_i has weight 0,
    t_i weight 1.  sigma2t1 (degree 2p) and sigma2v2 (degree 2p^2) are the
    weight-0 "suspension" names: multiplication by t recovers t1 and v2 via
    the rewrite rules below.  lambda1, lambda2 are odd; mu is the even degree
    2p^2 class.

    Weight additivity is a *multiplication* invariant; the rewrite
    t*sigma2v2 -> v2 moves weight 1 to weight 0 on purpose (the two sides
    are identified only after quotienting, where the extra grading dies), so
    rewriting is exempt from the additivity check.
    """
    syms = [GeneratorSymbol(o, -2, 1, "even") for o in orientations]
    for i in range(1, depth + 1):
        syms.append(GeneratorSymbol(f"v{i}", 2 * p**i - 2, 0, "even"))
    for i in range(1, depth + 1):
        syms.append(GeneratorSymbol(f"t{i}", 2 * p**i - 2, 1, "even"))
    syms.append(GeneratorSymbol("sigma2t1", 2 * p, 0, "even"))
    syms.append(GeneratorSymbol("sigma2v2", 2 * p**2, 0, "even"))
    syms.append(GeneratorSymbol("lambda1", 2 * p - 1, 1, "odd"))
    syms.append(GeneratorSymbol("lambda2", 2 * p**2 - 1, 1, "odd"))
    syms.append(GeneratorSymbol("mu", 2 * p**2, 0, "even"))
    cat = Catalog(syms)
    for s in cat.symbols:
        if (s.degree % 2 == 0) != (s.parity == "even"):
            raise AssertionError(f"parity/degree mismatch for {s.name}")
    return cat


@dataclass(frozen=True)
class Truncation:
    """Drop monomials whose total exponent over `vars` reaches `bound`.

    Keeping exponents < bound matches the usual O(t^N) convention: a series
    truncated at bound N is exact modulo t^N.
    """

    vars: frozenset[int]
    bound: int

    def keeps(self, m: Mono) -> bool:
        return sum(m[i] for i in self.vars) < self.bound


class Poly:
    """Sparse bigraded polynomial: dict from exponent tuple to coefficient."""

    __slots__ = ("catalog", "ring", "terms", "trunc")

    def __init__(self, catalog: Catalog, ring: CoeffRing,
                 terms: dict[Mono, object], trunc: Optional[Truncation] = None):
        self.catalog = catalog
        self.ring = ring
        self.trunc = trunc
        self.terms = terms  # assumed normalized; use from_terms otherwise

    @classmethod
    def from_terms(cls, catalog: Catalog, ring: CoeffRing,
                   pairs: Iterable[tuple[Mono, object]],
                   trunc: Optional[Truncation] = None) -> "Poly":
        acc: dict[Mono, object] = {}
        for m, c in pairs:
            if trunc is not None and not trunc.keeps(m):
                continue
            c = ring.normalize(c)
            if m in acc:
                c = ring.add(acc[m], c)
            if c:
                acc[m] = c
            else:
                acc.pop(m, None)
        return cls(catalog, ring, acc, trunc)

    @classmethod
    def zero(cls, catalog: Catalog, ring: CoeffRing,
             trunc: Optional[Truncation] = None) -> "Poly":
        return cls(catalog, ring, {}, trunc)

    @classmethod
    def unit(cls, catalog: Catalog, ring: CoeffRing,
             trunc: Optional[Truncation] = None) -> "Poly":
        return cls.from_terms(catalog, ring, [(catalog.one, 1)], trunc)

    @classmethod
    def gen(cls, catalog: Catalog, ring: CoeffRing, name: str,
            trunc: Optional[Truncation] = None) -> "Poly":
        return cls.from_terms(catalog, ring, [(catalog.unit_mono(name), 1)], trunc)

    def is_zero(self) -> bool:
        return not self.terms

    def __iter__(self) -> Iterator[tuple[Mono, object]]:
        return iter(self.terms.items())

    def __eq__(self, other) -> bool:
        return (isinstance(other, Poly) and self.terms == other.terms
                and self.ring == other.ring)

    def __hash__(self):
        raise TypeError("Poly is mutable-ish; not hashable")

    def _wrap(self, terms: dict[Mono, object]) -> "Poly":
        return Poly(self.catalog, self.ring, terms, self.trunc)

    def __add__(self, other: "Poly") -> "Poly":
        ring = self.ring
        acc = dict(self.terms)
        for m, c in other.terms.items():
            s = ring.add(acc.get(m, ring.normalize(0)), c) if m in acc else c
            if s:
                acc[m] = s
            else:
                acc.pop(m, None)
        return self._wrap(acc)

    def __neg__(self) -> "Poly":
        ring = self.ring
        return self._wrap({m: ring.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def scale(self, c) -> "Poly":
        ring = self.ring
        c = ring.normalize(c)
        if not c:
            return self._wrap({})
        out = {}
        for m, a in self.terms.items():
            v = ring.mul(a, c)
            if v:
                out[m] = v
        return self._wrap(out)

    def __mul__(self, other: "Poly") -> "Poly":
        cat, ring, trunc = self.catalog, self.ring, self.trunc
        acc: dict[Mono, object] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                sm = cat.mono_mul(ma, mb)
                if sm is None:
                    continue
                sign, m = sm
                if trunc is not None and not trunc.keeps(m):
                    continue
                c = ring.mul(ca, cb)
                if sign < 0:
                    c = ring.neg(c)
                if m in acc:
                    c = ring.add(acc[m], c)
                if c:
                    acc[m] = c
                else:
                    acc.pop(m, None)
        return self._wrap(acc)

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.unit(self.catalog, self.ring, self.trunc)
        base = self
        while k:
            if k & 1:
                result = result * base
            base_needed = k >> 1
            if base_needed:
                base = base * base
            k = base_needed
        return result

    def with_trunc(self, trunc: Optional[Truncation]) -> "Poly":
        if trunc is None:
            return Poly(self.catalog, self.ring, dict(self.terms), None)
        return Poly.from_terms(self.catalog, self.ring, self.terms.items(), trunc)

    def coefficient(self, m: Mono):
        return self.terms.get(m, self.ring.normalize(0))

    def bidegrees(self) -> set[tuple[int, int]]:
        return {self.catalog.bidegree(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.bidegrees()) <= 1

    def map_coefficients(self, ring: CoeffRing, fn) -> "Poly":
        return Poly.from_terms(self.catalog, ring,
                               ((m, fn(c)) for m, c in self.terms.items()),
                               self.trunc)

    def reduce_mod_p(self, p: int) -> "Poly":
        """Change coefficients to F_p.  Every denominator must be prime to p."""
        def red(c):
            if isinstance(c, Fraction):
                if c.denominator % p == 0:
                    raise VerificationError(
                        f"coefficient {c} is not p-integral at p={p}")
                return c.numerator * pow(c.denominator, -1, p)
            return c
        return self.map_coefficients(CoeffRing(p), red)

    def kill_generators(self, names: Iterable[str]) -> "Poly":
        """Quotient by the monomial ideal (names): drop any monomial with a
        positive exponent on one of them."""
        idxs = [self.catalog.index[n] for n in names]
        return self._wrap({m: c for m, c in self.terms.items()
                           if not any(m[i] > 0 for i in idxs)})

    def assert_p_integral(self, p: int) -> None:
        for m, c in self.terms.items():
            if isinstance(c, Fraction) and c.denominator % p == 0:
                raise VerificationError(
                    f"non p-integral coefficient {c} on "
                    f"{self.catalog.mono_str(m)} at p={p}")


def rewrite(poly: Poly, rules: list[tuple[Mono, Mono]]) -> Poly:
    """Repeatedly replace pattern monomial factors by replacement factors.

    Only even generators may appear in patterns or replacements (no Koszul
    bookkeeping), and each rule must strictly reduce the pattern's own
    exponent support so iteration terminates.  Weight need not be preserved:
    t*sigma2v2 -> v2 is the prototypical rule and drops weight by design.
    """
    cat = poly.catalog
    for pat, rep in rules:
        for i, e in enumerate(pat):
            if e and cat.symbols[i].parity != "even":
                raise ValueError("rewrite patterns must be even")
        for i, e in enumerate(rep):
            if e and cat.symbols[i].parity != "even":
                raise ValueError("rewrite replacements must be even")

    def apply_rules(m: Mono) -> Mono:
        changed = True
        while changed:
            changed = False
            for pat, rep in rules:
                while all(x >= e for x, e in zip(m, pat)):
                    m = tuple(x - e + r for x, e, r in zip(m, pat, rep))
                    changed = True
        return m

    return Poly.from_terms(poly.catalog, poly.ring,
                           ((apply_rules(m), c) for m, c in poly.terms.items()),
                           poly.trunc)


def substitute(poly: Poly, name: str, value: Poly) -> Poly:
    """Substitute a polynomial for an even generator.

    g^e becomes value^e; the remaining factor multiplies on the left.  Signs
    are delegated to Poly.__mul__, which is only correct when `name` is even
    (substituting an odd generator would need orientation bookkeeping that
    nothing here requires).
    """
    cat = poly.catalog
    i = cat.index[name]
    if cat.symbols[i].parity != "even":
        raise ValueError("substitute only handles even generators")
    out = Poly.zero(cat, poly.ring, poly.trunc)
    powers: dict[int, Poly] = {}

    def power(e: int) -> Poly:
        if e not in powers:
            powers[e] = value ** e
        return powers[e]

    for m, c in poly.terms.items():
        e = m[i]
        if e == 0:
            out = out + Poly.from_terms(cat, poly.ring, [(m, c)], poly.trunc)
            continue
        if e < 0:
            raise ValueError("cannot substitute into a negative exponent")
        rest = tuple(0 if j == i else x for j, x in enumerate(m))
        out = out + Poly.from_terms(cat, poly.ring, [(rest, c)], poly.trunc) * power(e)
    return out


def format_poly(poly: Poly, unicode: bool = False, order_index: Optional[int] = None) -> str:
    """Render a polynomial deterministically.

    Terms sort by the exponent of `order_index` if given (series order),
    then by exponent tuple.
    """
    if poly.is_zero():
        return "0"
    cat = poly.catalog

    def key(m: Mono):
        return (m[order_index], m) if order_index is not None else m

    parts = []
    for m in sorted(poly.terms, key=key):
        c = poly.terms[m]
        ms = cat.mono_str(m, unicode=unicode)
        if ms == "1":
            parts.append(str(c))
        elif c == 1:
            parts.append(ms)
        elif c == -1:
            parts.append(f"-{ms}")
        else:
            parts.append(f"{c}*{ms}")
    out = parts[0]
    for part in parts[1:]:
        out += " - " + part[1:] if part.startswith("-") else " + " + part
    return out
