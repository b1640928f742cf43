"""Baer subplanes of PG(2,q^2) and their intersections with small point sets.

Two independent routes:

* ``enumerate_subplanes`` lists every Baer subplane as the orbit of PG(2,q)
  under generators of PGL(3,q^2), acting on point ids.
* ``max_subplane_intersection`` computes max |S ∩ B| over all Baer subplanes
  B exactly, without listing them: a subplane meeting S in a quadrangle is the
  one generated by that quadrangle, and a meet without a quadrangle is a
  subline of one line plus at most one further point.
"""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

import numpy as np

from .plane import Plane, subplane_points


def subplane_count(q: int) -> int:
    return q ** 3 * (q ** 3 + 1) * (q ** 2 + 1)


def _point_permutation(plane: Plane, M: Sequence[Sequence[int]]) -> np.ndarray:
    """Image id of every point under X -> M X."""
    T, C = plane.T, plane.coords
    rows = []
    for r in M:
        acc = np.zeros(len(C), dtype=np.int32)
        for k in range(3):
            if r[k]:
                acc = T.add[acc, T.mul[r[k], C[:, k]]]
        rows.append(acc)
    return plane.normalize(*rows)


def generators(plane: Plane) -> list[np.ndarray]:
    """Point permutations of matrices generating PGL(3,q^2)."""
    z = plane.F.zeta
    mats = [
        [[z, 0, 0], [0, 1, 0], [0, 0, 1]],
        [[1, 1, 0], [0, 1, 0], [0, 0, 1]],
        [[0, 1, 0], [1, 0, 0], [0, 0, 1]],
        [[0, 0, 1], [1, 0, 0], [0, 1, 0]],
    ]
    return [_point_permutation(plane, m) for m in mats]


def standard_subplane(plane: Plane) -> np.ndarray:
    return np.sort(np.array([plane.id_of(t) for t in subplane_points(plane.F)]))


def enumerate_subplanes(plane: Plane, limit: int | None = None) -> np.ndarray:
    """All Baer subplanes as a (count, q^2+q+1) array of sorted point ids.

    Breadth-first orbit of the standard subplane, deterministic order.
    """
    gens = generators(plane)
    start = standard_subplane(plane)
    k = len(start)
    seen = {start.tobytes()}
    found = [start[None, :]]
    frontier = start[None, :]
    while len(frontier):
        new = []
        for g in gens:
            img = np.sort(g[frontier], axis=1)
            img = np.unique(img, axis=0)
            keep = []
            for row in img:
                b = row.tobytes()
                if b not in seen:
                    seen.add(b)
                    keep.append(row)
            if keep:
                new.append(np.array(keep))
        frontier = np.concatenate(new) if new else np.empty((0, k), dtype=start.dtype)
        if len(frontier):
            found.append(frontier)
        if limit is not None and len(seen) > limit:
            raise RuntimeError("subplane enumeration exceeded its limit")
    return np.concatenate(found)


def membership_matrix(plane: Plane, subplanes: np.ndarray) -> np.ndarray:
    M = np.zeros((len(subplanes), plane.N), dtype=np.float32)
    rows = np.repeat(np.arange(len(subplanes)), subplanes.shape[1])
    M[rows, subplanes.ravel()] = 1.0
    return M


def max_by_enumeration(plane: Plane, member: np.ndarray, feet: np.ndarray, chunk: int = 4096) -> np.ndarray:
    """max_B |feet_i ∩ B| for each row of ``feet``, against listed subplanes."""
    out = np.zeros(len(feet), dtype=np.int64)
    for s in range(0, len(feet), chunk):
        block = feet[s:s + chunk]
        ind = np.zeros((len(block), plane.N), dtype=np.float32)
        ind[np.repeat(np.arange(len(block)), block.shape[1]), block.ravel()] = 1.0
        counts = member @ ind.T
        out[s:s + chunk] = np.rint(counts.max(axis=0)).astype(np.int64)
    return out


# -- exact reduction -----------------------------------------------------------

def _quadrangle_max(plane: Plane, feet: np.ndarray) -> np.ndarray:
    """Per row, the largest |S ∩ B(quad)| over quadrangles quad of S."""
    T = plane.T
    M, k = feet.shape
    if k < 4:
        return np.zeros(M, dtype=np.int64)
    quads = np.array(list(combinations(range(k), 4)))
    C = plane.coords[feet]                                # (M, k, 3)
    p1, p2, p3, p4 = (C[:, quads[:, i]] for i in range(4))  # (M, nq, 3)
    n = [plane.join_coords(p2, p3), plane.join_coords(p3, p1), plane.join_coords(p1, p2)]

    def dot(a, b):
        return T.add[T.add[T.mul[a[..., 0], b[..., 0]], T.mul[a[..., 1], b[..., 1]]], T.mul[a[..., 2], b[..., 2]]]

    g = [dot(ni, p4) for ni in n]                          # (M, nq)
    general = (g[0] != 0) & (g[1] != 0) & (g[2] != 0) & (dot(n[0], p1) != 0)
    X = C[:, None, :, :]                                   # (M, 1, k, 3)
    r = np.stack([T.mul[dot(ni[:, :, None, :], X), T.inv[np.where(gi == 0, 1, gi)][:, :, None]]
                  for ni, gi in zip(n, g)], axis=-1)      # (M, nq, k, 3)
    nz = r != 0
    first = np.argmax(nz, axis=-1)
    unit = np.take_along_axis(r, first[..., None], axis=-1)
    ratio = T.mul[r, T.inv[unit]]
    inside = T.in_subfield[ratio].all(axis=-1) & nz.any(axis=-1)
    counts = inside.sum(axis=-1)
    counts = np.where(general, counts, 0)
    return counts.max(axis=1)


def _line_max(plane: Plane, feet: Sequence[int]) -> int:
    """Largest subline subset on one line, plus one if S leaves that line."""
    feet = [int(f) for f in feet]
    n = len(feet)
    best = min(n, 3) if not plane.is_collinear(feet) else 0
    lines: dict[int, list[int]] = {}
    for a, b in combinations(feet, 2):
        lines.setdefault(plane.line_through(a, b), [])
    for l in lines:
        on = [f for f in feet if plane.incident(f, l)]
        extra = 1 if len(on) < n else 0
        if len(on) <= 3:
            size = len(on)
        else:
            size = 3
            for a, b, c in combinations(on, 3):
                sub = set(plane.baer_closure(a, b, c))
                size = max(size, sum(1 for f in on if f in sub))
        best = max(best, size + extra)
    return best


def max_subplane_intersection(plane: Plane, feet: np.ndarray, line_sizes: np.ndarray | None = None) -> np.ndarray:
    """Exact max over all Baer subplanes B of |S ∩ B| for each row S.

    ``line_sizes`` (the largest line intersection per row) lets rows whose
    points have no three collinear skip the line scan: their line part is 3.
    """
    feet = np.asarray(feet)
    quad = _quadrangle_max(plane, feet)
    out = np.empty(len(feet), dtype=np.int64)
    for i, row in enumerate(feet):
        if line_sizes is not None and line_sizes[i] <= 2 and len(row) >= 3:
            lm = 3
        else:
            lm = _line_max(plane, row)
        out[i] = max(quad[i], lm)
    return out
