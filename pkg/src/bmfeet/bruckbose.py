"""Bruck-Bose representation of PG(2,q^2) in PG(4,q).

An affine point (x, y, 1) maps to (x0, x1, y0, y1, 1) where x = x0 + x1*tau
in the tower basis.  A point of l_inf with direction (d0, d1) maps to the
spread line {(t*d0, t*d1, 0) : t in GF(q^2)} of the hyperplane x4 = 0, so the
spread is the regular one induced by field multiplication.
"""

from __future__ import annotations

from collections import Counter
from itertools import combinations, product
from typing import Sequence

from . import linalg
from .fields import FieldTower
from .pedal import PedalSet
from .plane import Plane
from .unital import Unital

BBPoint = tuple[int, int, int, int, int]


class BruckBoseError(ValueError):
    pass


def normalize(F: FieldTower, v: Sequence[int]) -> tuple[int, ...]:
    """Scale so the last nonzero coordinate is 1."""
    for c in reversed(v):
        if c:
            inv = F.inv(c)
            return tuple(F.mul(inv, x) for x in v)
    raise BruckBoseError("the zero vector is not a projective point")


def to_bb(plane: Plane, pid: int) -> BBPoint:
    F = plane.F
    x, y, z = plane.triple(pid)
    if z == 0:
        raise BruckBoseError("points of l_inf correspond to spread lines")
    return (*F.decompose(x), *F.decompose(y), 1)


def from_bb(plane: Plane, pt: Sequence[int]) -> int:
    F = plane.F
    pt = normalize(F, pt)
    if pt[4] != 1:
        raise BruckBoseError("point lies in the hyperplane at infinity")
    return plane.id_of((F.recompose(pt[0], pt[1]), F.recompose(pt[2], pt[3]), 1))


def spread_of_point(plane: Plane, pid: int) -> tuple[BBPoint, BBPoint]:
    """Two points spanning the spread line of a point of l_inf."""
    F = plane.F
    d0, d1, z = plane.triple(pid)
    if z != 0:
        raise BruckBoseError("only points of l_inf have spread lines")
    out = []
    for t in (1, F.tau):
        out.append((*F.decompose(F.mul(t, d0)), *F.decompose(F.mul(t, d1)), 0))
    return out[0], out[1]


def span_points(F: FieldTower, basis: Sequence[Sequence[int]]) -> set[tuple[int, ...]]:
    """All normalized points of the projective span of ``basis``."""
    m, piv = linalg.rref(F, basis)
    rows = m[:len(piv)]
    pts = set()
    for coef in product(F.subfield, repeat=len(rows)):
        if not any(coef):
            continue
        v = [0] * len(rows[0])
        for c, r in zip(coef, rows):
            if c:
                v = [F.add(a, F.mul(c, b)) for a, b in zip(v, r)]
        pts.add(normalize(F, v))
    return pts


def spread(plane: Plane) -> list[set[tuple[int, ...]]]:
    """Point sets of the q^2+1 spread lines, in l_inf id order."""
    F, Q = plane.F, plane.Q
    ids = [Q * Q + x for x in range(Q)] + [plane.U_inf]
    return [span_points(F, spread_of_point(plane, i)) for i in ids]


def is_partition_of_infinity(plane: Plane) -> bool:
    q = plane.q
    lines = spread(plane)
    union = set().union(*lines)
    return sum(len(l) for l in lines) == len(union) == q ** 3 + q ** 2 + q + 1


def _transversal(F: FieldTower, X, L2, L3) -> list[int]:
    """Point of L3 on the unique line through X meeting L2 and L3."""
    cols = [X, L2[0], L2[1], [F.neg(c) for c in L3[0]], [F.neg(c) for c in L3[1]]]
    rows = [[col[i] for col in cols] for i in range(len(X))]
    ker = linalg.nullspace(F, rows, 5)
    if len(ker) != 1:
        raise BruckBoseError("spread lines are not pairwise skew")
    d, e = ker[0][3], ker[0][4]
    return [F.add(F.mul(d, a), F.mul(e, b)) for a, b in zip(L3[0], L3[1])]


def regulus_points(F: FieldTower, L1, L2, L3) -> set[tuple[int, ...]]:
    """Points of the hyperbolic quadric through three skew lines of PG(3,q)."""
    pts = set()
    for X in span_points(F, L1):
        Y = _transversal(F, list(X), L2, L3)
        pts |= span_points(F, [list(X), Y])
    return pts


def is_regular_spread(plane: Plane) -> bool:
    """Every regulus through three spread lines consists of spread lines."""
    F = plane.F
    lines = spread(plane)
    bases = []
    for l in lines:
        pts = sorted(l)
        basis = [list(pts[0])]
        for p in pts[1:]:
            if linalg.rank(F, basis + [list(p)]) == 2:
                basis.append(list(p))
                break
        bases.append([b[:4] for b in basis])
    owner = {}
    for i, l in enumerate(lines):
        for p in l:
            owner[p[:4]] = i
    for a, b, c in combinations(range(len(lines)), 3):
        pts = regulus_points(F, bases[a], bases[b], bases[c])
        hit = Counter(owner[p] for p in pts)
        if len(pts) != (plane.q + 1) ** 2 or any(n != plane.q + 1 for n in hit.values()):
            return False
    return True


# -- quadric through the unital image ------------------------------------------

MONOMIALS = [(i, j) for i in range(5) for j in range(i, 5)]


def _monomial_row(F: FieldTower, v) -> list[int]:
    return [F.mul(v[i], v[j]) for i, j in MONOMIALS]


def quadric_value(F: FieldTower, coeffs: Sequence[int], v) -> int:
    s = 0
    for c, (i, j) in zip(coeffs, MONOMIALS):
        if c:
            s = F.add(s, F.mul(c, F.mul(v[i], v[j])))
    return s


def all_points_pg4(F: FieldTower) -> list[tuple[int, ...]]:
    pts = []
    S = F.subfield
    for k in range(5):
        # last nonzero coordinate at position k
        for head in product(S, repeat=k):
            pts.append(tuple(head) + (1,) + (0,) * (4 - k))
    return pts


def unital_image(U: Unital) -> list[tuple[int, ...]]:
    """Images of the affine unital points plus the spread line of T_inf."""
    P, F = U.plane, U.F
    pts = [to_bb(P, int(i)) for i in U.points if i != P.T_inf]
    pts += sorted(span_points(F, spread_of_point(P, P.T_inf)))
    return pts


def fit_quadric_cone(U: Unital) -> dict:
    """Fit quadrics through the image of U and describe the cone structure."""
    F, P = U.F, U.plane
    pts = unital_image(U)
    rows = [_monomial_row(F, v) for v in pts]
    sols = linalg.nullspace(F, rows, len(MONOMIALS))
    out = {"solution_dim": len(sols)}
    if len(sols) != 1:
        return out
    coeffs = sols[0]
    zeros = [v for v in all_points_pg4(F) if quadric_value(F, coeffs, v) == 0]
    out["zero_count"] = len(zeros)
    out["zeros_equal_image"] = set(zeros) == set(pts)
    # radical of the polar form B(x, y) = Q(x+y) - Q(x) - Q(y)
    E = [[1 if i == j else 0 for j in range(5)] for i in range(5)]
    gram = []
    for a in E:
        row = []
        for b in E:
            ab = [F.add(x, y) for x, y in zip(a, b)]
            row.append(F.sub(F.sub(quadric_value(F, coeffs, ab), quadric_value(F, coeffs, a)),
                             quadric_value(F, coeffs, b)))
        gram.append(row)
    rad = linalg.nullspace(F, gram, 5)
    singular = [v for v in span_points(F, rad) if quadric_value(F, coeffs, v) == 0] if rad else []
    out["singular_points"] = len(singular)
    tinf = span_points(F, spread_of_point(P, P.T_inf))
    out["vertex_on_tinf_spread_line"] = len(singular) == 1 and singular[0] in tinf
    if len(singular) == 1:
        vert = singular[0]
        # base quadric: zeros in a hyperplane missing the vertex
        k = next(i for i in range(5) if vert[i])
        base = [v for v in zeros if v[k] == 0]
        out["base_points"] = len(base)
        out["elliptic_base"] = len(base) == F.q ** 2 + 1
    return out


# -- images of pedal sets -------------------------------------------------------

def k_image(plane: Plane, ps: PedalSet) -> list[BBPoint]:
    return [to_bb(plane, f) for f in ps.feet]


def pencil_span(plane: Plane, pencil) -> list[list[int]]:
    """Basis of the PG(4,q) span of the affine points on a pencil's lines.

    An affine line through a point V of l_inf maps to the plane spanned by
    one of its affine points and the spread line of V, so one affine point
    per pencil line plus that spread line spans everything.
    """
    F = plane.F
    vecs = [list(x) for x in spread_of_point(plane, pencil.vertex)] if plane.triple(pencil.vertex)[2] == 0 else []
    for l in pencil.lines:
        if l == plane.l_inf:
            continue
        on = plane.points_on_line[l]
        pid = next(int(x) for x in on if plane.coords[x][2] != 0)
        vecs.append(list(to_bb(plane, pid)))
    m, piv = linalg.rref(F, vecs)
    return m[:len(piv)]


def pedal_pencil_3space(plane: Plane, ps: PedalSet) -> dict:
    """Span of the affine points of the pedal's Baer pencil, and whether K_Q
    lies inside it (affine containment)."""
    F = plane.F
    K = [list(x) for x in k_image(plane, ps)]
    out = {"rank_K": linalg.rank(F, K), "pencil": ps.pencil is not None}
    if ps.pencil is None:
        out["contained"] = None
        return out
    basis = pencil_span(plane, ps.pencil)
    out["rank_pencil"] = len(basis)
    out["threespace"] = basis
    out["contained"] = linalg.rank(F, basis + K) == len(basis)
    return out


def plane_profile(F: FieldTower, pts: Sequence[Sequence[int]]) -> dict:
    """Largest plane intersection of a PG(4,q) point set, by triple spans.

    Each plane meeting the set in >= 3 points in general position is spanned
    by some triple; the histogram counts distinct such planes.  A set lying
    on one line has max equal to its size.
    """
    pts = [list(p) for p in pts]
    n = len(pts)
    if linalg.rank(F, pts) <= 2:
        return {"max": n, "histogram": {}, "all_collinear": True}
    planes = {}
    for tri in combinations(range(n), 3):
        basis = [pts[i] for i in tri]
        if linalg.rank(F, basis) < 3:
            continue
        inside = frozenset(i for i in range(n) if linalg.rank(F, basis + [pts[i]]) == 3)
        planes[inside] = len(inside)
    hist = Counter(planes.values())
    mx = max(hist) if hist else 2
    return {"max": mx, "histogram": dict(sorted(hist.items())), "all_collinear": False}


def plane_profile_KQ(plane: Plane, ps: PedalSet) -> dict:
    return plane_profile(plane.F, k_image(plane, ps))


def bb_report(plane: Plane, ps: PedalSet) -> dict:
    F = plane.F
    pen = pedal_pencil_3space(plane, ps)
    prof = plane_profile_KQ(plane, ps)
    return {
        "q": F.q,
        "base_point": [list(F.coords(c)) for c in plane.triple(ps.base)],
        "threespace_contained": pen["contained"],
        "plane_histogram": {str(k): v for k, v in prof["histogram"].items()},
        "max_plane_intersection": prof["max"],
    }
