"""Shared test utilities: dense F_p linear algebra used as an independent
oracle for the sparse spectral-sequence engine, and a generator of random
square-zero differential specs (square-zero by triangularity: differentials
only hit generators that themselves map to zero)."""

from __future__ import annotations

import random

from synto.spectral import (ADAMS_RULE, DiffEntry, DifferentialSpec,
                            Presentation, SSGen, Window,
                            WindowInconclusiveError, leibniz_extend)


def dense_rank(p: int, cols: list[dict[int, int]], nrows: int) -> int:
    """Rank of the matrix with the given sparse columns, by plain dense
    Gaussian elimination over F_p (no pivoting cleverness on purpose)."""
    mat = [[0] * nrows for _ in cols]
    for j, col in enumerate(cols):
        for i, c in col.items():
            mat[j][i] = c % p
    rank = 0
    row = 0
    for i in range(nrows):
        pivot = None
        for j in range(row, len(mat)):
            if mat[j][i]:
                pivot = j
                break
        if pivot is None:
            continue
        mat[row], mat[pivot] = mat[pivot], mat[row]
        inv = pow(mat[row][i], -1, p)
        mat[row] = [(x * inv) % p for x in mat[row]]
        for j in range(len(mat)):
            if j != row and mat[j][i]:
                c = mat[j][i]
                mat[j] = [(a - c * b) % p for a, b in zip(mat[j], mat[row])]
        row += 1
        rank += 1
    return rank


def dense_matrix(spec, r, src_monos, tgt_index):
    """Columns of d_r from a source monomial list into a target index map."""
    cols = []
    for m in src_monos:
        img = leibniz_extend(spec, r, m)
        assert img is not None, "oracle only handles base_exp = 1 specs"
        cols.append({tgt_index[m1]: c for m1, c in img.items()})
    return cols


def dense_page_dims(pres, window, spec, r):
    """Per-bidegree homology dimensions of (page-1 monomials, d_r), computed
    densely, with the same window convention as the engine: differentials
    whose target bidegree holds no window monomials are zero."""
    basis = pres.enumerate_basis(window)
    cat = pres.catalog
    by_b: dict[tuple[int, int], list] = {}
    for m in basis:
        by_b.setdefault(cat.bidegree(m), []).append(m)
    shift = spec.rule.shift(r)
    kdim: dict[tuple[int, int], int] = {}
    bdim: dict[tuple[int, int], int] = {}
    for b, monos in by_b.items():
        tb = (b[0] + shift[0], b[1] + shift[1])
        if tb not in by_b:
            kdim[b] = len(monos)
            continue
        tindex = {m: i for i, m in enumerate(by_b[tb])}
        cols = dense_matrix(spec, r, monos, tindex)
        rk = dense_rank(pres.p, cols, len(by_b[tb]))
        kdim[b] = len(monos) - rk
        bdim[tb] = bdim.get(tb, 0) + rk
    return {b: kdim[b] - bdim.get(b, 0) for b in by_b}


def random_square_zero_case(rng: random.Random, max_tries: int = 200):
    """(presentation, window, spec, r) with <= 50 window monomials and a
    page-r differential that squares to zero by construction.

    Parity must match degree parity (as in any honestly graded-commutative
    algebra), otherwise the triangular construction does not square to zero:
    the Koszul cancellation in d² runs on degree parity."""
    for _ in range(max_tries):
        n = rng.randint(2, 4)
        gens = []
        for i in range(n):
            deg = rng.randint(-4, 4)
            weight = rng.randint(-2, 2)
            parity = "odd" if deg % 2 else "even"
            if parity == "odd":
                gens.append(SSGen(f"g{i}", deg, weight, "odd"))
            elif rng.random() < 0.15 and (deg, weight) != (0, 0):
                gens.append(SSGen(f"g{i}", deg, weight, "even",
                                  invertible=True))
            else:
                gens.append(SSGen(f"g{i}", deg, weight, "even",
                                  max_exp=rng.randint(1, 3)))
        p = rng.choice((2, 3, 5))
        rels = []
        if n >= 2 and rng.random() < 0.3:
            a, b = rng.sample(range(n), 2)
            if not gens[a].invertible and not gens[b].invertible:
                rels.append({gens[a].name: 1, gens[b].name: 1})
        try:
            pres = Presentation(p, gens, relations=rels)
        except ValueError:
            continue
        d0 = rng.randint(-5, 1)
        w0 = rng.randint(-4, 0)
        window = Window(d0, d0 + rng.randint(4, 8), w0, w0 + rng.randint(3, 6))
        try:
            basis = pres.enumerate_basis(window)
        except WindowInconclusiveError:
            continue
        if not 4 <= len(basis) <= 50:
            continue
        r = rng.randint(1, 3)
        shift = ADAMS_RULE.shift(r)
        cat = pres.catalog
        sources = rng.sample(range(n), rng.randint(1, n - 1))
        entries = []
        for gi in sources:
            g = gens[gi]
            target = (g.degree + shift[0], g.weight + shift[1])
            candidates = [m for m in basis
                          if cat.bidegree(m) == target
                          and all(m[j] == 0 for j in sources)]
            if not candidates:
                continue
            picks = rng.sample(candidates,
                               min(len(candidates), rng.randint(1, 2)))
            image = tuple((m, rng.randint(1, p - 1)) for m in picks)
            entries.append(DiffEntry(r, g.name, 1, image))
        if not entries:
            continue
        spec = DifferentialSpec(pres, entries)
        return pres, window, spec, r
    raise RuntimeError("could not generate a random case")
