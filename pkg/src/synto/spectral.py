"""Multiplicative monomial-basis spectral sequence engine over F_p.

A page is a finite bidegree window full of monomials in a presented
graded-commutative algebra (polynomial, exterior, Laurent and truncated
generators, monomial relations like t*mu = 0).  Differentials are given on
generators ("d_p(t) = t^{p+1} lambda1", possibly on a power of the
generator, like d_{p^2}(t^p)) and extended to monomials by the graded
Leibniz rule.  Page turning is exact sparse linear algebra over F_p:
per-bidegree homology with canonical RREF representatives, so output is
deterministic down to the choice of basis vectors.

Windowing is honest: classes whose (potential) differentials cross a window
edge that actually cuts the algebra are flagged boundary-uncertain, and
stability beyond the last specified page is certified by checking that no
pair of populated bidegrees sits in d_r position for any larger r.

The bidegree convention is Adams-style: d_r moves (degree, weight) by
(-1, +r).  `BidegreeRule` generalizes this to (n*r + c, a*r + b) so that
other Bockstein-style conventions (e.g. a v2-Bockstein with v2 in bidegree
(2p^2-2, p^2-1)) reuse the same collapse checker.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from synto.graded import Catalog, GeneratorSymbol, Mono, VerificationError
from synto.linalg import Span, Tracker, Vec, kernel_basis, vec_addmul


class WindowInconclusiveError(VerificationError):
    """The window cannot certify the claim (too small or unstable)."""


@dataclass(frozen=True)
class Window:
    deg_min: int
    deg_max: int
    weight_min: int
    weight_max: int

    def __post_init__(self) -> None:
        if self.deg_min > self.deg_max or self.weight_min > self.weight_max:
            raise ValueError("empty window bounds")

    def contains(self, deg: int, weight: int) -> bool:
        return (self.deg_min <= deg <= self.deg_max
                and self.weight_min <= weight <= self.weight_max)


@dataclass(frozen=True)
class BidegreeRule:
    """d_r shifts (degree, weight) by (deg_per_r*r + deg_const, weight_per_r*r + weight_const)."""

    deg_per_r: int = 0
    deg_const: int = -1
    weight_per_r: int = 1
    weight_const: int = 0

    def shift(self, r: int) -> tuple[int, int]:
        return (self.deg_per_r * r + self.deg_const,
                self.weight_per_r * r + self.weight_const)


ADAMS_RULE = BidegreeRule()


@dataclass(frozen=True)
class SSGen:
    name: str
    degree: int
    weight: int
    parity: str = "even"
    invertible: bool = False
    max_exp: Optional[int] = None


class Presentation:
    """Generators with exponent bounds plus monomial-kill relations."""

    def __init__(self, p: int, gens: Sequence[SSGen],
                 relations: Iterable[dict[str, int]] = ()):
        self.p = p
        self.gens = tuple(gens)
        self.catalog = Catalog(
            GeneratorSymbol(g.name, g.degree, g.weight, g.parity) for g in gens)
        for g in gens:
            if g.parity == "odd" and (g.invertible or (g.max_exp or 1) > 1):
                raise ValueError(f"odd generator {g.name} must have exponent <= 1")
        self.relations: tuple[Mono, ...] = tuple(
            self.catalog.mono(r) for r in relations)
        for rel in self.relations:
            if any(e < 0 for e in rel):
                raise ValueError("relations must have non-negative exponents")

    def killed(self, m: Mono) -> bool:
        """Zero in the quotient: divisible by a relation, or over an exponent cap."""
        for i, e in enumerate(m):
            cap = self.gens[i].max_exp
            if cap is not None and e > cap:
                return True
        return any(all(x >= e for x, e in zip(m, rel) if e > 0)
                   for rel in self.relations)

    def _structural_range(self, i: int) -> tuple[Optional[int], Optional[int]]:
        g = self.gens[i]
        if g.parity == "odd":
            return 0, 1
        lo = None if g.invertible else 0
        hi = g.max_exp
        return lo, hi

    def exponent_ranges(self, window: Window) -> list[tuple[int, int]]:
        """Finite per-generator exponent bounds implied by the window.

        Interval-arithmetic fixpoint over the two grading constraints; a
        generator no constraint can bound (e.g. an invertible generator of
        bidegree (0,0)) is an enumeration error.
        """
        n = len(self.gens)
        lo = [self._structural_range(i)[0] for i in range(n)]
        hi = [self._structural_range(i)[1] for i in range(n)]
        gradings = [
            ([g.degree for g in self.gens], window.deg_min, window.deg_max),
            ([g.weight for g in self.gens], window.weight_min, window.weight_max),
        ]

        def contrib(i: int, coeffs) -> tuple[Optional[int], Optional[int]]:
            c = coeffs[i]
            if c == 0:
                return 0, 0
            ends = []
            for e in (lo[i], hi[i]):
                ends.append(None if e is None else e * c)
            a, b = ends
            if c > 0:
                return a, b
            return b, a

        for _ in range(4 * n + 8):
            changed = False
            for coeffs, gmin, gmax in gradings:
                mins = [contrib(i, coeffs)[0] for i in range(n)]
                maxs = [contrib(i, coeffs)[1] for i in range(n)]
                for i in range(n):
                    c = coeffs[i]
                    if c == 0:
                        continue
                    others_min = (None if any(mins[j] is None for j in range(n) if j != i)
                                  else sum(mins[j] for j in range(n) if j != i))
                    others_max = (None if any(maxs[j] is None for j in range(n) if j != i)
                                  else sum(maxs[j] for j in range(n) if j != i))
                    # e_i * c <= gmax - others_min  and  e_i * c >= gmin - others_max
                    # (floor(a/b) = a//b; ceil(a/b) = -((-a)//b) for any sign of b)
                    if others_min is not None:
                        bound = gmax - others_min
                        if c > 0:
                            new = bound // c
                            if hi[i] is None or new < hi[i]:
                                hi[i], changed = new, True
                        else:
                            new = -((-bound) // c)
                            if lo[i] is None or new > lo[i]:
                                lo[i], changed = new, True
                    if others_max is not None:
                        bound = gmin - others_max
                        if c > 0:
                            new = -((-bound) // c)
                            if lo[i] is None or new > lo[i]:
                                lo[i], changed = new, True
                        else:
                            new = bound // c
                            if hi[i] is None or new < hi[i]:
                                hi[i], changed = new, True
            if not changed:
                break
        bad = [self.gens[i].name for i in range(n)
               if lo[i] is None or hi[i] is None]
        if bad:
            raise WindowInconclusiveError(
                f"window does not bound exponents of {', '.join(bad)}")
        return [(lo[i], hi[i]) for i in range(n)]

    def enumerate_basis(self, window: Window) -> list[Mono]:
        """All relation-free monomials in the window, in catalog order."""
        n = len(self.gens)
        ranges = self.exponent_ranges(window)
        degs = [g.degree for g in self.gens]
        wts = [g.weight for g in self.gens]
        # suffix extremes for pruning
        suf_dmin = [0] * (n + 1)
        suf_dmax = [0] * (n + 1)
        suf_wmin = [0] * (n + 1)
        suf_wmax = [0] * (n + 1)
        for i in range(n - 1, -1, -1):
            lo, hi = ranges[i]
            dvals = (lo * degs[i], hi * degs[i])
            wvals = (lo * wts[i], hi * wts[i])
            suf_dmin[i] = suf_dmin[i + 1] + min(dvals)
            suf_dmax[i] = suf_dmax[i + 1] + max(dvals)
            suf_wmin[i] = suf_wmin[i + 1] + min(wvals)
            suf_wmax[i] = suf_wmax[i + 1] + max(wvals)
        out: list[Mono] = []
        exps = [0] * n

        def walk(i: int, d: int, w: int) -> None:
            if d + suf_dmin[i] > window.deg_max or d + suf_dmax[i] < window.deg_min:
                return
            if w + suf_wmin[i] > window.weight_max or w + suf_wmax[i] < window.weight_min:
                return
            if i == n:
                m = tuple(exps)
                if not self.killed(m):
                    out.append(m)
                return
            lo, hi = ranges[i]
            for e in range(lo, hi + 1):
                exps[i] = e
                walk(i + 1, d + e * degs[i], w + e * wts[i])
            exps[i] = 0

        walk(0, 0, 0)
        out.sort()
        return out

    def grading_extremes(self) -> dict[str, Optional[int]]:
        """Structural sup/inf of degree and weight over all monomials (None = unbounded)."""
        tot: dict[str, Optional[int]] = {
            "deg_min": 0, "deg_max": 0, "weight_min": 0, "weight_max": 0}
        for i, g in enumerate(self.gens):
            lo, hi = self._structural_range(i)
            for key, coeff in (("deg", g.degree), ("weight", g.weight)):
                if coeff == 0:
                    continue
                if coeff > 0:
                    cmin = None if lo is None else lo * coeff
                    cmax = None if hi is None else hi * coeff
                else:
                    cmin = None if hi is None else hi * coeff
                    cmax = None if lo is None else lo * coeff
                for mkey, v in ((f"{key}_min", cmin), (f"{key}_max", cmax)):
                    cur = tot[mkey]
                    tot[mkey] = None if (cur is None or v is None) else cur + v
        return tot

    def binding_edges(self, window: Window) -> set[str]:
        """Window edges that actually cut the algebra."""
        ext = self.grading_extremes()
        edges = set()
        if ext["deg_min"] is None or ext["deg_min"] < window.deg_min:
            edges.add("deg_min")
        if ext["deg_max"] is None or ext["deg_max"] > window.deg_max:
            edges.add("deg_max")
        if ext["weight_min"] is None or ext["weight_min"] < window.weight_min:
            edges.add("weight_min")
        if ext["weight_max"] is None or ext["weight_max"] > window.weight_max:
            edges.add("weight_max")
        return edges


@dataclass(frozen=True)
class DiffEntry:
    """d_{page}(gen^base_exp) = image (terms as (monomial, coefficient))."""

    page: int
    gen: str
    base_exp: int
    image: tuple[tuple[Mono, int], ...]


class DifferentialSpec:
    """Generator-level differentials; anything unlisted at a page is a cycle."""

    def __init__(self, pres: Presentation, entries: Iterable[DiffEntry],
                 rule: BidegreeRule = ADAMS_RULE):
        self.pres = pres
        self.rule = rule
        self.entries = tuple(entries)
        self._by_page: dict[int, dict[int, tuple[int, tuple[tuple[Mono, int], ...]]]] = {}
        cat = pres.catalog
        for e in self.entries:
            if e.page < 1 or e.base_exp < 1:
                raise ValueError("pages and base exponents are positive")
            gi = cat.index[e.gen]
            if e.base_exp > 1 and cat.symbols[gi].parity == "odd":
                raise ValueError(f"odd generator {e.gen} has no power {e.base_exp}")
            base = cat.mono({e.gen: e.base_exp})
            want = (cat.degree(base) + rule.shift(e.page)[0],
                    cat.weight(base) + rule.shift(e.page)[1])
            image = tuple((m, c % pres.p) for m, c in e.image
                          if c % pres.p and not pres.killed(m))
            for m, _ in image:
                if cat.bidegree(m) != want:
                    raise ValueError(
                        f"image term {cat.mono_str(m)} of d_{e.page}({e.gen}^{e.base_exp}) "
                        f"has bidegree {cat.bidegree(m)}, expected {want}")
            page = self._by_page.setdefault(e.page, {})
            if gi in page:
                raise ValueError(f"duplicate differential for {e.gen} at page {e.page}")
            page[gi] = (e.base_exp, image)

    @property
    def pages(self) -> list[int]:
        return sorted(self._by_page)

    def by_page(self, r: int) -> dict[int, tuple[int, tuple[tuple[Mono, int], ...]]]:
        return self._by_page.get(r, {})


def leibniz_extend(spec: DifferentialSpec, r: int, m: Mono) -> Optional[dict[Mono, int]]:
    """d_r(m) by the Leibniz rule, or None when m is outside the derivation's
    domain (a specified generator appears to an exponent not divisible by its
    base power, e.g. d_{p^2} is only defined on multiples of t^p).

    Signs: writing m = f_1 ... f_k in catalog order, differentiating f_i
    costs (-1)^{deg(f_1...f_{i-1})}; re-sorting the image factors costs the
    usual Koszul signs, delegated to monomial multiplication.
    """
    ents = spec.by_page(r)
    if not ents:
        return {}
    pres, cat, p = spec.pres, spec.pres.catalog, spec.pres.p
    n = len(cat)
    total: dict[Mono, int] = {}
    for i, (e0, image) in ents.items():
        a = m[i]
        if not a:
            continue
        if a % e0:
            return None
        q = (a // e0) % p
        if not q:
            continue
        front = tuple(m[j] if j < i else (a - e0 if j == i else 0) for j in range(n))
        back = tuple(m[j] if j > i else 0 for j in range(n))
        pre_deg = sum(m[j] * cat.symbols[j].degree for j in range(i))
        sign = -1 if pre_deg % 2 else 1
        for mono_img, c in image:
            s1 = cat.mono_mul(front, mono_img)
            if s1 is None:
                continue
            sg1, fm = s1
            s2 = cat.mono_mul(fm, back)
            if s2 is None:
                continue
            sg2, full = s2
            if pres.killed(full):
                continue
            coeff = (total.get(full, 0) + q * c * sign * sg1 * sg2) % p
            if coeff:
                total[full] = coeff
            else:
                total.pop(full, None)
    return total


class BidegreeData:
    __slots__ = ("monos", "index", "alive", "boundaries")

    def __init__(self, monos: list[Mono]):
        self.monos = monos
        self.index = {m: i for i, m in enumerate(monos)}
        self.alive: list[Vec] = [{i: 1} for i in range(len(monos))]
        self.boundaries: Optional[Span] = None  # lazily created

    def clone(self) -> "BidegreeData":
        c = BidegreeData.__new__(BidegreeData)
        c.monos = self.monos
        c.index = self.index
        c.alive = [dict(v) for v in self.alive]
        if self.boundaries is None:
            c.boundaries = None
        else:
            c.boundaries = Span(self.boundaries.p)
            c.boundaries.rows = {k: dict(v) for k, v in self.boundaries.rows.items()}
        return c


class SSPage:
    """One page: surviving classes per bidegree, with canonical representatives."""

    def __init__(self, pres: Presentation, window: Window, r: int,
                 data: dict[tuple[int, int], BidegreeData],
                 flags: frozenset[tuple[int, int]] = frozenset()):
        self.pres = pres
        self.window = window
        self.r = r
        self.data = data
        self.flags = flags

    def dims(self) -> dict[tuple[int, int], int]:
        return {b: len(d.alive) for b, d in sorted(self.data.items()) if d.alive}

    def total_dim(self) -> int:
        return sum(len(d.alive) for d in self.data.values())

    def class_reps(self, include_flagged: bool = True) -> list[tuple[tuple[int, int], Mono, Vec]]:
        """(bidegree, representative monomial, vector) for every class, sorted."""
        out = []
        for b in sorted(self.data):
            if not include_flagged and b in self.flags:
                continue
            d = self.data[b]
            for v in d.alive:
                out.append((b, d.monos[min(v)], v))
        return out

    def rep_names(self, include_flagged: bool = True, unicode: bool = False) -> list[str]:
        cat = self.pres.catalog
        return [cat.mono_str(m, unicode) for _, m, _ in self.class_reps(include_flagged)]


def build_page(pres: Presentation, window: Window) -> SSPage:
    """Page 1: every relation-free window monomial is a class of its own."""
    basis = pres.enumerate_basis(window)
    data: dict[tuple[int, int], list[Mono]] = {}
    cat = pres.catalog
    for m in basis:
        data.setdefault(cat.bidegree(m), []).append(m)
    return SSPage(pres, window, 1,
                  {b: BidegreeData(ms) for b, ms in sorted(data.items())})


def check_square_zero(page: SSPage, spec: DifferentialSpec, r: int) -> None:
    """d_r(d_r(m)) = 0 for every window monomial in the derivation's domain."""
    cat = page.pres.catalog
    for b in sorted(page.data):
        for m in page.data[b].monos:
            first = leibniz_extend(spec, r, m)
            if first is None:
                continue
            acc: dict[Mono, int] = {}
            for m1, c1 in first.items():
                second = leibniz_extend(spec, r, m1)
                if second is None:
                    raise VerificationError(
                        f"d_{r} image of {cat.mono_str(m)} leaves the "
                        f"derivation's domain at {cat.mono_str(m1)}")
                for m2, c2 in second.items():
                    v = (acc.get(m2, 0) + c1 * c2) % page.pres.p
                    if v:
                        acc[m2] = v
                    else:
                        acc.pop(m2, None)
            if acc:
                bad = cat.mono_str(m)
                raise VerificationError(f"d_{r} squared is nonzero on {bad}")


def turn_page(page: SSPage, spec: DifferentialSpec) -> SSPage:
    """Homology with respect to d_{page.r}; returns page r+1.

    Representatives on the new page are rows of the canonical RREF of
    (boundaries + cycles) that are not in the boundary span, so the result
    is independent of processing order; the representative monomial is the
    row's pivot, i.e. the smallest basis monomial in catalog order.
    """
    r = page.r
    ents = spec.by_page(r)
    if not ents:
        return SSPage(page.pres, page.window, r + 1, page.data, page.flags)
    check_square_zero(page, spec, r)
    p = page.pres.p
    cat = page.pres.catalog
    shift = spec.rule.shift(r)
    data = {b: d.clone() for b, d in page.data.items()}

    # differentials of every alive class, bucketed by source bidegree
    images: dict[tuple[int, int], list[Vec]] = {}
    targets: dict[tuple[int, int], tuple[int, int]] = {}
    for b in sorted(data):
        d = data[b]
        if not d.alive:
            continue
        tb = (b[0] + shift[0], b[1] + shift[1])
        if tb not in data:
            continue  # differential leaves the window (flagged separately)
        if not data[tb].alive:
            continue  # target group is zero, so the induced map is zero
        tindex = data[tb].index
        cols = []
        for v in d.alive:
            dv: dict[int, int] = {}
            for i, c in v.items():
                h = leibniz_extend(spec, r, d.monos[i])
                if h is None:
                    # Boundary-corrupted survivors (a killer fell outside the
                    # window) can sit outside the derivation's domain; they
                    # carry no certificate, so a zero differential is sound.
                    if b in page.flags:
                        dv = {}
                        break
                    raise VerificationError(
                        f"alive class {cat.mono_str(d.monos[i])} is outside "
                        f"the domain of d_{r}")
                for m1, c1 in h.items():
                    j = tindex.get(m1)
                    if j is None:
                        raise VerificationError(
                            f"d_{r} image term {cat.mono_str(m1)} missing from "
                            f"target bidegree {tb}")
                    dv = vec_addmul(p, dv, {j: 1}, c * c1)
            cols.append(dv)
        images[b] = cols
        targets[b] = tb

    # induced matrices in class coordinates, then kernels
    kernels: dict[tuple[int, int], list[Vec]] = {}
    ranks_out: dict[tuple[int, int], int] = {}
    for b in sorted(data):
        d = data[b]
        if not d.alive:
            continue
        if b not in images:
            kernels[b] = [{j: 1} for j in range(len(d.alive))]
            ranks_out[b] = 0
            continue
        tb = targets[b]
        td = data[tb]
        tracker = Tracker(p)
        for k, (_, row) in enumerate(
                [] if td.boundaries is None else td.boundaries.pivot_rows()):
            tracker.insert(-1 - k, row)
        for i, v in enumerate(td.alive):
            if not tracker.insert(i, v):
                raise VerificationError(
                    f"stale representative in bidegree {tb}")
        cols = []
        for dv in images[b]:
            expr = tracker.express(dv)
            if expr is None:
                raise VerificationError(
                    f"d_{r} image not a cycle mod boundaries at {tb}")
            cols.append({i: c for i, c in expr.items() if i >= 0})
        kernels[b] = kernel_basis(p, cols)
        ranks_out[b] = len(d.alive) - len(kernels[b])

    # accumulate new boundaries
    ranks_in: dict[tuple[int, int], int] = {b: 0 for b in data}
    for b, cols in sorted(images.items()):
        tb = targets[b]
        td = data[tb]
        if td.boundaries is None:
            td.boundaries = Span(p)
        before = td.boundaries.dim
        for dv in cols:
            if dv:
                td.boundaries.insert(dv)
        ranks_in[tb] = ranks_in.get(tb, 0) + td.boundaries.dim - before

    # new representatives: RREF(boundaries + cycles) rows outside boundaries
    for b in sorted(data):
        d = data[b]
        if not d.alive:
            continue
        old_dim = len(d.alive)
        cycles = []
        for k in kernels[b]:
            vec: Vec = {}
            for j, c in k.items():
                vec = vec_addmul(p, vec, d.alive[j], c)
            cycles.append(vec)
        if d.boundaries is None or not d.boundaries.rows:
            base = Span(p)
        else:
            base = Span(p)
            base.rows = {k: dict(v) for k, v in d.boundaries.rows.items()}
        pivots = []
        for v in cycles:
            piv = base.insert(v)
            if piv is not None:
                pivots.append(piv)
        d.alive = [base.rows[piv] for piv in sorted(pivots)]
        expect = old_dim - ranks_out[b] - ranks_in.get(b, 0)
        if len(d.alive) != expect:
            raise VerificationError(
                f"rank bookkeeping failed at bidegree {b} page {r}: "
                f"{old_dim} - {ranks_out[b]} - {ranks_in.get(b, 0)} != {len(d.alive)}")
    return SSPage(page.pres, page.window, r + 1, data, page.flags)


def possible_pages(page: SSPage, rule: BidegreeRule,
                   alive_only: bool = True) -> dict[int, int]:
    """r -> number of populated bidegree pairs in d_r position.

    Only rules with weight_per_r > 0 terminate (the weight span bounds r).
    """
    if rule.weight_per_r <= 0:
        raise ValueError("need weight_per_r > 0 to enumerate candidate pages")
    pop = {b for b, d in page.data.items() if (d.alive if alive_only else d.monos)}
    weights = sorted({w for _, w in pop})
    by_r: dict[int, int] = {}
    for d1, w1 in pop:
        for w2 in weights:
            r, rem = divmod(w2 - w1 - rule.weight_const, rule.weight_per_r)
            if rem or r < 1:
                continue
            if (d1 + rule.deg_per_r * r + rule.deg_const, w2) in pop:
                by_r[r] = by_r.get(r, 0) + 1
    return dict(sorted(by_r.items()))


def flag_boundary(page: SSPage, spec: DifferentialSpec) -> frozenset[tuple[int, int]]:
    """Bidegrees whose fate could depend on classes outside the window.

    Seeds: populated bidegrees with a potential d_r (either direction, any
    spec page) crossing a binding window edge.  Flags propagate through the
    populated-bidegree graph, since a wrongly-killed killer falsifies its
    whole differential chain.
    """
    binding = page.pres.binding_edges(page.window)
    if not binding:
        return frozenset()
    w = page.window
    pop = {b for b, d in page.data.items() if d.monos}
    shifts = [spec.rule.shift(r) for r in spec.pages]

    def crosses_binding(deg: int, weight: int) -> bool:
        if w.contains(deg, weight):
            return False
        return ((deg < w.deg_min and "deg_min" in binding)
                or (deg > w.deg_max and "deg_max" in binding)
                or (weight < w.weight_min and "weight_min" in binding)
                or (weight > w.weight_max and "weight_max" in binding))

    seeds = set()
    for (d0, w0) in pop:
        for sd, sw in shifts:
            if crosses_binding(d0 + sd, w0 + sw) or crosses_binding(d0 - sd, w0 - sw):
                seeds.add((d0, w0))
    flagged = set(seeds)
    frontier = list(seeds)
    while frontier:
        d0, w0 = frontier.pop()
        for sd, sw in shifts:
            for nb in ((d0 + sd, w0 + sw), (d0 - sd, w0 - sw)):
                if nb in pop and nb not in flagged:
                    flagged.add(nb)
                    frontier.append(nb)
    return frozenset(flagged)


def run_to_stable(page: SSPage, spec: DifferentialSpec,
                  max_page: Optional[int] = None) -> tuple[SSPage, list[dict]]:
    """Turn every specified page, then certify stability.

    Stability = no pair of surviving populated bidegrees sits in d_r
    position for any r beyond the last specified page; failing that the
    window is inconclusive (hard error), because out-of-spec differentials
    could not be ruled out.
    """
    flags = flag_boundary(page, spec)
    current = SSPage(page.pres, page.window, page.r, page.data, flags)
    log: list[dict] = []
    last = max(spec.pages, default=0)
    if max_page is not None and last > max_page:
        raise ValueError("spec pages exceed max_page")
    while current.r <= last:
        before = current.total_dim()
        nxt = turn_page(current, spec)
        if current.r in spec.pages:
            log.append({"page": current.r, "classes_before": before,
                        "classes_after": nxt.total_dim()})
        current = nxt
    beyond = {r: c for r, c in possible_pages(current, spec.rule).items() if r > last}
    if beyond:
        raise WindowInconclusiveError(
            f"window inconclusive: populated bidegree pairs beyond page {last} "
            f"at pages {sorted(beyond)}")
    log.append({"page": "stable", "classes": current.total_dim()})
    return current, log


@dataclass(frozen=True)
class ChartEntry:
    """A named chart class, optionally a degreewise-periodic family."""

    name: str
    degree: int
    weight: int
    period: Optional[int] = None  # degrees degree + k*period for all k >= 0


@dataclass
class CollapseReport:
    collapses: bool
    rule: BidegreeRule
    r_range: tuple[int, int]
    witnesses: list[tuple[int, str, str]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)


def _degrees_can_match(src: ChartEntry, tgt: ChartEntry, dshift: int) -> bool:
    """Is deg(src) + k_s*P_s + dshift = deg(tgt) + k_t*P_t solvable, k >= 0?"""
    c = src.degree + dshift - tgt.degree
    if src.period is None and tgt.period is None:
        return c == 0
    if src.period is not None and tgt.period is None:
        return c <= 0 and c % src.period == 0
    if src.period is None and tgt.period is not None:
        return c >= 0 and c % tgt.period == 0
    import math
    return c % math.gcd(src.period, tgt.period) == 0


def collapse_check(entries: Sequence[ChartEntry], rule: BidegreeRule,
                   r_min: int = 1, r_max: Optional[int] = None) -> CollapseReport:
    """Bidegree-arithmetic collapse detector.

    For every page r in [r_min, r_max] and every pair of chart entries,
    checks whether a d_r could connect them under the rule; collapse means
    no pair exists.  r_max defaults to the largest r whose weight shift
    still fits inside the chart's weight span (requires weight_per_r > 0).
    """
    notes = []
    if not entries:
        return CollapseReport(True, rule, (r_min, r_min - 1),
                              notes=["empty chart"])
    if r_max is None:
        if rule.weight_per_r <= 0:
            raise ValueError("r_max required when the weight shift does not grow")
        span = (max(e.weight for e in entries) - min(e.weight for e in entries))
        r_max = (span - rule.weight_const) // rule.weight_per_r
        notes.append(f"r_max = {r_max} from weight span {span}")
    witnesses = []
    for r in range(r_min, r_max + 1):
        dshift, wshift = rule.shift(r)
        for src in entries:
            for tgt in entries:
                if tgt.weight - src.weight != wshift:
                    continue
                if _degrees_can_match(src, tgt, dshift):
                    witnesses.append((r, src.name, tgt.name))
    return CollapseReport(not witnesses, rule, (r_min, r_max), witnesses, notes)
