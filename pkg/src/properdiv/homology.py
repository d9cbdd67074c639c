"""Exact integer simplicial homology via Smith normal form.

Boundary matrices are eliminated in two phases.  Phase one works on a
sparse column representation and repeatedly pivots on entries equal to
+-1, chosen by an approximate Markowitz (minimum fill) rule; such pivots
need no division and contribute invariant factor 1.  Whatever survives is
densified and finished with a classical Smith normal form (smallest
nonzero pivot, remainder swaps), or with fraction-free Gaussian
elimination when only the rank is needed.  All arithmetic is on Python
integers, so intermediate entry growth is harmless.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from math import gcd

from .complexes import SimplicialComplex


# -- sparse phase ---------------------------------------------------------


def _eliminate_unit_pivots(cols: dict[int, dict[int, int]]) -> int:
    """Destructively eliminate +-1 pivots; returns how many were used."""
    rows: dict[int, set[int]] = {}
    for cid, col in cols.items():
        for r in col:
            rows.setdefault(r, set()).add(cid)
    heap = []
    for cid, col in cols.items():
        width = len(col) - 1
        for r, v in col.items():
            if v == 1 or v == -1:
                heap.append(((len(rows[r]) - 1) * width, r, cid))
    heapq.heapify(heap)
    rank = 0
    while cols:
        pivot = None
        while heap:
            _, r, c = heapq.heappop(heap)
            col = cols.get(c)
            if col is None:
                continue
            v = col.get(r)
            if v == 1 or v == -1:
                pivot = (r, c, v)
                break
        if pivot is None:
            fresh = []
            for cid, col in cols.items():
                width = len(col) - 1
                for r, v in col.items():
                    if v == 1 or v == -1:
                        fresh.append(((len(rows[r]) - 1) * width, r, cid))
            if not fresh:
                break
            heapq.heapify(fresh)
            heap = fresh
            continue
        r, c, v = pivot
        pivcol = cols.pop(c)
        for rr in pivcol:
            support = rows.get(rr)
            if support is not None:
                support.discard(c)
                if not support:
                    del rows[rr]
        rank += 1
        targets = rows.pop(r, None)
        if not targets:
            continue
        for c2 in list(targets):
            col2 = cols[c2]
            f = col2[r] * v
            for rr, vv in pivcol.items():
                if rr == r:
                    del col2[r]
                    continue
                cur = col2.get(rr)
                if cur is None:
                    nv = -f * vv
                    col2[rr] = nv
                    rows.setdefault(rr, set()).add(c2)
                else:
                    nv = cur - f * vv
                    if nv:
                        col2[rr] = nv
                    else:
                        del col2[rr]
                        support = rows.get(rr)
                        if support is not None:
                            support.discard(c2)
                            if not support:
                                del rows[rr]
                        continue
                if nv == 1 or nv == -1:
                    heapq.heappush(
                        heap, ((len(rows[rr]) - 1) * (len(col2) - 1), rr, c2)
                    )
            if not col2:
                del cols[c2]
    return rank


def _densify(cols: dict[int, dict[int, int]]) -> list[list[int]]:
    row_ids = sorted({r for col in cols.values() for r in col})
    rmap = {r: i for i, r in enumerate(row_ids)}
    mat = [[0] * len(cols) for _ in row_ids]
    for j, cid in enumerate(sorted(cols)):
        for r, v in cols[cid].items():
            mat[rmap[r]][j] = v
    return mat


# -- dense phase ----------------------------------------------------------


def _snf_dense(mat: list[list[int]]) -> list[int]:
    """Invariant factors (positive, divisibility-chained) of a dense matrix."""
    m = [list(row) for row in mat]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    factors = []
    t = 0
    while t < nr and t < nc:
        piv = None
        for i in range(t, nr):
            row = m[i]
            for j in range(t, nc):
                v = row[j]
                if v and (piv is None or abs(v) < piv[0]):
                    piv = (abs(v), i, j)
        if piv is None:
            break
        _, pi, pj = piv
        m[t], m[pi] = m[pi], m[t]
        if pj != t:
            for row in m:
                row[t], row[pj] = row[pj], row[t]
        while True:
            changed = False
            for i in range(t + 1, nr):
                if m[i][t]:
                    q = m[i][t] // m[t][t]
                    if q:
                        mi, mt = m[i], m[t]
                        for j in range(t, nc):
                            mi[j] -= q * mt[j]
                    if m[i][t]:
                        m[t], m[i] = m[i], m[t]
                        changed = True
            for j in range(t + 1, nc):
                if m[t][j]:
                    q = m[t][j] // m[t][t]
                    if q:
                        for row in m:
                            row[j] -= q * row[t]
                    if m[t][j]:
                        for row in m:
                            row[t], row[j] = row[j], row[t]
                        changed = True
            if not changed:
                break
        factors.append(abs(m[t][t]))
        t += 1
    # one full pass of (gcd, lcm) replacements yields the divisibility chain
    for i in range(len(factors)):
        for j in range(i + 1, len(factors)):
            a, b = factors[i], factors[j]
            if b % a:
                g = gcd(a, b)
                factors[i], factors[j] = g, a * b // g
    return factors


def _rank_dense(mat: list[list[int]]) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination."""
    m = [list(row) for row in mat]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    prev = 1
    t = 0
    while t < nr and t < nc:
        piv = None
        for i in range(t, nr):
            for j in range(t, nc):
                if m[i][j]:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        pi, pj = piv
        m[t], m[pi] = m[pi], m[t]
        if pj != t:
            for row in m:
                row[t], row[pj] = row[pj], row[t]
        p = m[t][t]
        for i in range(t + 1, nr):
            mi, mt = m[i], m[t]
            f = mi[t]
            for j in range(t, nc):
                mi[j] = (mi[j] * p - f * mt[j]) // prev
        prev = p
        t += 1
    return t


def _snf_of_columns(cols, want_factors: bool):
    rank1 = _eliminate_unit_pivots(cols)
    if not cols:
        return rank1, [1] * rank1 if want_factors else None
    dense = _densify(cols)
    if want_factors:
        tail = _snf_dense(dense)
        return rank1 + len(tail), [1] * rank1 + tail
    return rank1 + _rank_dense(dense), None


# -- public matrix operations ----------------------------------------------


def _as_rows(matrix) -> list[list[int]]:
    rows = [[int(v) for v in row] for row in matrix]
    widths = {len(r) for r in rows}
    if len(widths) > 1:
        raise ValueError("matrix rows must have equal length")
    return rows


def _columns_of(rows: list[list[int]]) -> dict[int, dict[int, int]]:
    cols: dict[int, dict[int, int]] = {}
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if v:
                cols.setdefault(j, {})[i] = v
    return cols


def smith_normal_form(matrix) -> tuple[list[int], int]:
    """Invariant factors d1 | d2 | ... | dr and the rank r of an integer matrix."""
    rows = _as_rows(matrix)
    rank, factors = _snf_of_columns(_columns_of(rows), want_factors=True)
    return factors, rank


def rational_rank(matrix) -> int:
    """Rank over the rationals, by fraction-free elimination only."""
    rows = _as_rows(matrix)
    return _rank_dense(rows) if rows else 0


# -- chain complexes ---------------------------------------------------------


Column = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class ChainComplexZ:
    """Simplicial chain complex over the integers.

    ``bases[d]`` lists the dimension-d faces in the order indexing the
    matrices; ``boundary(d)`` returns the columns of the map from d-chains
    to (d-1)-chains as ``((row, coeff), ...)`` tuples.  The augmentation is
    the all-ones row sending every vertex to the empty face.
    """

    bases: tuple[tuple[tuple[int, ...], ...], ...]
    boundaries: tuple[tuple[Column, ...], ...]
    augmentation: tuple[int, ...] | None

    @property
    def dims(self) -> int:
        return len(self.bases) - 1

    def boundary(self, d: int) -> tuple[Column, ...]:
        if not 1 <= d <= self.dims:
            raise ValueError(f"no boundary map in dimension {d}")
        return self.boundaries[d - 1]


def _boundary_columns(lower_index, upper_faces):
    cols = []
    for face in upper_faces:
        col = []
        for j in range(len(face)):
            coeff = 1 if j % 2 == 0 else -1
            col.append((lower_index[face[:j] + face[j + 1 :]], coeff))
        cols.append(tuple(col))
    return cols


def boundary_matrices(
    k: SimplicialComplex, max_faces: int | None = None
) -> ChainComplexZ:
    """Bases and signed boundary maps of every dimension of ``k``."""
    faces = k.faces_by_dim(max_faces)
    if not faces:
        return ChainComplexZ(bases=(), boundaries=(), augmentation=None)
    boundaries = []
    for d in range(1, len(faces)):
        lower_index = {f: i for i, f in enumerate(faces[d - 1])}
        boundaries.append(tuple(_boundary_columns(lower_index, faces[d])))
    return ChainComplexZ(
        bases=tuple(tuple(level) for level in faces),
        boundaries=tuple(boundaries),
        augmentation=(1,) * len(faces[0]),
    )


# -- homology ---------------------------------------------------------------


@dataclass(frozen=True)
class HomologySummary:
    """Betti ranks (and optionally torsion) per degree, reduced or not.

    ``torsion`` is None when the computation was run rank-only.  For the
    empty complex ``empty_complex`` is set; the rank-1 reduced group in
    degree -1 lives in that flag, never as a degree entry.
    """

    reduced: bool
    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...] | None
    empty_complex: bool

    def rank(self, i: int) -> int:
        return self.betti[i] if 0 <= i < len(self.betti) else 0

    def to_json_dict(self) -> dict:
        return {
            "reduced": self.reduced,
            "betti": list(self.betti),
            "torsion": None
            if self.torsion is None
            else [list(t) for t in self.torsion],
            "empty": self.empty_complex,
        }


def homology(
    k: SimplicialComplex,
    reduced: bool = False,
    torsion: bool = True,
    max_faces: int | None = None,
) -> HomologySummary:
    """Integer homology of a simplicial complex.

    ``betti[i]`` is the nullity of the i-th boundary map minus the rank of
    the (i+1)-st; torsion in degree i lists the invariant factors > 1 of
    the (i+1)-st map.  With ``torsion=False`` only ranks are computed
    (fraction-free fallback instead of full Smith form).
    """
    faces = k.faces_by_dim(max_faces)
    if not faces:
        return HomologySummary(
            reduced=reduced,
            betti=(),
            torsion=() if torsion else None,
            empty_complex=True,
        )
    dim = len(faces) - 1
    ranks = [0] * (dim + 2)
    factor_lists: list[list[int] | None] = [None] * (dim + 2)
    if reduced and faces[0]:
        ranks[0] = 1
        factor_lists[0] = [1]
    for d in range(1, dim + 1):
        lower_index = {f: i for i, f in enumerate(faces[d - 1])}
        cols = {}
        for cid, face in enumerate(faces[d]):
            col = {}
            for j in range(len(face)):
                col[lower_index[face[:j] + face[j + 1 :]]] = 1 if j % 2 == 0 else -1
            cols[cid] = col
        del lower_index
        rank_d, factors_d = _snf_of_columns(cols, want_factors=torsion)
        ranks[d] = rank_d
        factor_lists[d] = factors_d
    betti = tuple(
        len(faces[i]) - ranks[i] - ranks[i + 1] for i in range(dim + 1)
    )
    if torsion:
        torsion_lists = tuple(
            tuple(x for x in (factor_lists[i + 1] or []) if x > 1)
            for i in range(dim + 1)
        )
    else:
        torsion_lists = None
    return HomologySummary(
        reduced=reduced, betti=betti, torsion=torsion_lists, empty_complex=False
    )
