"""Sparse exact linear algebra over F_p.

Vectors are dicts from integer coordinate to nonzero canonical residue.
The workhorse is `Span`, a row space kept in fully reduced RREF with the
pivot of each row at its smallest nonzero coordinate.  RREF is canonical
for a subspace, so spans built from the same vectors in any order agree,
which is what makes page-turning representatives deterministic.

Desk-scale sizes only (hundreds of coordinates); everything is dicts and
single passes, no Markowitz scoring needed beyond the min-pivot rule.
"""

from __future__ import annotations

from typing import Iterable, Optional

Vec = dict[int, int]


def vec_addmul(p: int, u: Vec, v: Vec, c: int) -> Vec:
    """u + c*v, canonicalized."""
    out = dict(u)
    for i, a in v.items():
        b = (out.get(i, 0) + c * a) % p
        if b:
            out[i] = b
        else:
            out.pop(i, None)
    return out


def vec_scale(p: int, v: Vec, c: int) -> Vec:
    c %= p
    return {i: (a * c) % p for i, a in v.items()} if c else {}


class Span:
    """An F_p row space in reduced row echelon form.

    rows maps pivot coordinate -> vector with 1 at the pivot and support
    only on non-pivot coordinates otherwise, so reduction is a single pass.
    """

    def __init__(self, p: int, vectors: Iterable[Vec] = ()):
        self.p = p
        self.rows: dict[int, Vec] = {}
        for v in vectors:
            self.insert(v)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, v: Vec) -> Vec:
        out = dict(v)
        for piv in sorted(set(out) & set(self.rows)):
            c = out.get(piv)
            if c:
                out = vec_addmul(self.p, out, self.rows[piv], -c)
        return out

    def contains(self, v: Vec) -> bool:
        return not self.reduce(v)

    def insert(self, v: Vec) -> Optional[int]:
        """Add v to the span; returns the new pivot, or None if dependent."""
        r = self.reduce(v)
        if not r:
            return None
        piv = min(r)
        r = vec_scale(self.p, r, pow(r[piv], -1, self.p))
        for q, row in self.rows.items():
            c = row.get(piv)
            if c:
                self.rows[q] = vec_addmul(self.p, row, r, -c)
        self.rows[piv] = r
        return piv

    def pivot_rows(self) -> list[tuple[int, Vec]]:
        return sorted(self.rows.items())


class Tracker:
    """Span that remembers how each row was built from inserted vectors.

    Used two ways: expressing a vector in terms of a known generating set
    (matrix columns of an induced differential) and harvesting kernel
    relations between inserted columns.
    """

    def __init__(self, p: int):
        self.p = p
        self.rows: dict[int, tuple[Vec, Vec]] = {}  # pivot -> (vector, expression)

    def _reduce(self, v: Vec) -> tuple[Vec, Vec]:
        out, expr = dict(v), {}
        for piv in sorted(set(out) & set(self.rows)):
            c = out.get(piv)
            if c:
                row, rexpr = self.rows[piv]
                out = vec_addmul(self.p, out, row, -c)
                expr = vec_addmul(self.p, expr, rexpr, c)
        return out, expr

    def insert(self, label: int, v: Vec) -> bool:
        """True if v enlarged the span (recorded as `label`)."""
        r, expr = self._reduce(v)
        if not r:
            return False
        piv = min(r)
        inv = pow(r[piv], -1, self.p)
        r = vec_scale(self.p, r, inv)
        expr = vec_addmul(self.p, vec_scale(self.p, expr, -inv), {label: 1}, inv)
        # keep the vector side in RREF; expressions follow along
        for q, (row, rexpr) in list(self.rows.items()):
            c = row.get(piv)
            if c:
                self.rows[q] = (vec_addmul(self.p, row, r, -c),
                                vec_addmul(self.p, rexpr, expr, -c))
        self.rows[piv] = (r, expr)
        return True

    def express(self, v: Vec) -> Optional[Vec]:
        """Coefficients writing v over inserted labels, or None if outside."""
        r, expr = self._reduce(v)
        return None if r else expr


def kernel_basis(p: int, cols: list[Vec]) -> list[Vec]:
    """Kernel of the matrix with the given columns, over column coordinates.

    One basis vector per dependent column j, with coefficient 1 at j and
    support only on earlier columns: the standard special solutions, in a
    deterministic order.
    """
    tracker = Tracker(p)
    out = []
    for j, col in enumerate(cols):
        if not col:
            out.append({j: 1})
            continue
        if not tracker.insert(j, col):
            expr = tracker.express(col)
            assert expr is not None
            out.append(vec_addmul(p, {j: 1}, expr, -1))
    return out


def rank(p: int, cols: list[Vec]) -> int:
    span = Span(p)
    return sum(1 for c in cols if span.insert(c) is not None)
