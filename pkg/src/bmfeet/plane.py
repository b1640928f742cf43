"""The planes PG(2,q^2) and PG(2,q): incidence, Baer sublines, conics.

Points and lines of PG(2,q^2) are addressed by integer ids.  Coordinates are
normalized so the last nonzero entry is 1, and both points and lines use the
same numbering::

    (x, y, 1) -> x*Q + y        (x, 1, 0) -> Q^2 + x        (1, 0, 0) -> Q^2 + Q

with Q = q^2.  Because incidence is the symmetric dot product, the table of
points on line ``i`` is also the table of lines through point ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .fields import FieldTower

Triple = tuple[int, int, int]

MAX_PLANE_Q = 16


class PlaneError(ValueError):
    pass


class Plane:
    """PG(2,q^2) over the extension field of a tower."""

    def __init__(self, F: FieldTower):
        if F.q > MAX_PLANE_Q:
            raise PlaneError(f"PG(2,q^2) tables are limited to q <= {MAX_PLANE_Q}")
        self.F = F
        self.T = F.np
        self.q = F.q
        self.Q = F.Q
        Q = self.Q
        self.N = Q * Q + Q + 1
        ids = np.arange(self.N)
        c = np.zeros((self.N, 3), dtype=np.int32)
        aff = ids < Q * Q
        c[aff, 0] = ids[aff] // Q
        c[aff, 1] = ids[aff] % Q
        c[aff, 2] = 1
        inf = (ids >= Q * Q) & (ids < Q * Q + Q)
        c[inf, 0] = ids[inf] - Q * Q
        c[inf, 1] = 1
        c[-1] = (1, 0, 0)
        self.coords = c
        self.l_inf = 0              # [0, 0, 1] under the affine rule
        self.T_inf = Q * Q          # (0, 1, 0)
        self.U_inf = Q * Q + Q      # (1, 0, 0)

    # -- ids and coordinates -----------------------------------------------

    def normalize(self, c0, c1, c2) -> np.ndarray:
        """Vectorized canonical ids of coordinate arrays (all-zero -> -1)."""
        T, Q = self.T, self.Q
        c0 = np.asarray(c0)
        c1 = np.asarray(c1)
        c2 = np.asarray(c2)
        out = np.full(np.broadcast(c0, c1, c2).shape, -1, dtype=np.int64)
        c0, c1, c2 = np.broadcast_arrays(c0, c1, c2)
        m = c2 != 0
        inv = T.inv[c2[m]]
        out[m] = T.mul[c0[m], inv].astype(np.int64) * Q + T.mul[c1[m], inv]
        m2 = (~m) & (c1 != 0)
        out[m2] = Q * Q + T.mul[c0[m2], T.inv[c1[m2]]]
        m3 = (~m) & (c1 == 0) & (c0 != 0)
        out[m3] = Q * Q + Q
        return out

    def id_of(self, c: Sequence[int]) -> int:
        """Id of a (not necessarily normalized) coordinate triple."""
        F, Q = self.F, self.Q
        a, b, z = (int(x) for x in c)
        if z:
            iz = F.inv(z)
            return F.mul(a, iz) * Q + F.mul(b, iz)
        if b:
            return Q * Q + F.mul(a, F.inv(b))
        if a:
            return Q * Q + Q
        raise PlaneError("the zero vector is not a projective point")

    def triple(self, i: int) -> Triple:
        c = self.coords[i]
        return int(c[0]), int(c[1]), int(c[2])

    def cross(self, a: Sequence[int], b: Sequence[int]) -> Triple:
        F = self.F
        m, s = F.mul, F.sub
        return (
            s(m(a[1], b[2]), m(a[2], b[1])),
            s(m(a[2], b[0]), m(a[0], b[2])),
            s(m(a[0], b[1]), m(a[1], b[0])),
        )

    def dot(self, a: Sequence[int], b: Sequence[int]) -> int:
        F = self.F
        return F.add(F.add(F.mul(a[0], b[0]), F.mul(a[1], b[1])), F.mul(a[2], b[2]))

    def incident(self, p: int, l: int) -> bool:
        return self.dot(self.triple(p), self.triple(l)) == 0

    # -- vectorized joins --------------------------------------------------

    def join_coords(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        """Row-wise cross products of (..., 3) coordinate arrays."""
        mul, sub = self.T.mul, self.T.sub
        a0, a1, a2 = A[..., 0], A[..., 1], A[..., 2]
        b0, b1, b2 = B[..., 0], B[..., 1], B[..., 2]
        return np.stack(
            [
                sub[mul[a1, b2], mul[a2, b1]],
                sub[mul[a2, b0], mul[a0, b2]],
                sub[mul[a0, b1], mul[a1, b0]],
            ],
            axis=-1,
        )

    def join(self, a_ids, b_ids) -> np.ndarray:
        """Vectorized line through point pairs (or meet of line pairs).

        Equal inputs give -1.
        """
        X = self.join_coords(self.coords[np.asarray(a_ids)], self.coords[np.asarray(b_ids)])
        return self.normalize(X[..., 0], X[..., 1], X[..., 2])

    # -- incidence tables --------------------------------------------------

    @cached_property
    def points_on_line(self) -> np.ndarray:
        """(N, Q+1) table; row i lists the points on line i (equivalently
        the lines through point i)."""
        T, Q, N = self.T, self.Q, self.N
        out = np.empty((N, Q + 1), dtype=np.int32)
        t = np.arange(Q, dtype=np.int32)
        chunk = max(1, 300_000 // Q)
        neg = T.neg
        for start in range(0, N, chunk):
            L = self.coords[start:start + chunk]
            a, b, c = L[:, 0], L[:, 1], L[:, 2]
            zero = np.zeros_like(a)
            one = np.ones_like(a)
            cz = c != 0
            P1 = np.where(cz[:, None], np.stack([zero, c, neg[b]], 1), np.stack([b, neg[a], zero], 1))
            P2 = np.where(cz[:, None], np.stack([neg[c], zero, a], 1), np.stack([zero, zero, one], 1))
            tt = t[None, :]
            pts = [T.add[P1[:, k, None], T.mul[tt, P2[:, k, None]]] for k in range(3)]
            ids = self.normalize(*pts)
            out[start:start + chunk, :Q] = ids
            out[start:start + chunk, Q] = self.normalize(P2[:, 0], P2[:, 1], P2[:, 2])
        return out

    def lines_through(self, p: int) -> np.ndarray:
        return self.points_on_line[p]

    def all_lines_through(self, p: int) -> list[int]:
        """The q^2+1 lines through point ``p``."""
        return [int(x) for x in self.points_on_line[p]]

    def line_through(self, p: int, r: int) -> int:
        if p == r:
            raise PlaneError("a line needs two distinct points")
        return self.id_of(self.cross(self.triple(p), self.triple(r)))

    meet = line_through

    def is_collinear(self, pts: Iterable[int]) -> bool:
        pts = list(dict.fromkeys(int(x) for x in pts))
        if len(pts) <= 2:
            return True
        l = self.line_through(pts[0], pts[1])
        return all(self.incident(x, l) for x in pts[2:])

    # -- Baer sublines -----------------------------------------------------

    def in_common_baer_subline(self, triples: Sequence[Sequence[int]]) -> bool:
        """Whether distinct collinear points lie in one Baer subline.

        Works on any rank-2 family of triples, so it applies verbatim to the
        dual points of a pencil of lines.  Three points fix the projectivity
        onto (inf, 0, 1); the rest must land in GF(q) + {inf}.
        """
        F = self.F
        if len(triples) <= 3:
            return True
        A, B = triples[0], triples[1]
        ij = None
        for i in range(3):
            for j in range(i + 1, 3):
                d = F.sub(F.mul(A[i], B[j]), F.mul(A[j], B[i]))
                if d:
                    ij = (i, j, F.inv(d))
                    break
            if ij:
                break
        if ij is None:
            raise PlaneError("points are not distinct")
        i, j, idet = ij

        def params(X):
            a = F.mul(F.sub(F.mul(X[i], B[j]), F.mul(X[j], B[i])), idet)
            b = F.mul(F.sub(F.mul(A[i], X[j]), F.mul(A[j], X[i])), idet)
            return a, b

        a, b = params(triples[2])
        tc = F.div(a, b)
        itc = F.inv(tc)
        for X in triples[3:]:
            a, b = params(X)
            if b == 0:
                return False  # a second copy of A
            if not F.in_subfield(F.mul(F.div(a, b), itc)):
                return False
        return True

    def is_baer_subline(self, pts: Sequence[int]) -> bool:
        pts = [int(x) for x in pts]
        if len(set(pts)) != len(pts):
            return False
        if not self.is_collinear(pts):
            raise PlaneError("points are not collinear")
        if len(pts) != self.q + 1:
            return False
        return self.in_common_baer_subline([self.triple(x) for x in pts])

    def baer_closure(self, a: int, b: int, c: int) -> list[int]:
        """The unique Baer subline through three distinct collinear points."""
        F = self.F
        A, B, C = self.triple(a), self.triple(b), self.triple(c)
        if not self.is_collinear([a, b, c]) or len({a, b, c}) < 3:
            raise PlaneError("need three distinct collinear points")
        # write C = ka*A + kb*B and scale so the subline is {s*A' + B'}
        sol = _solve2(F, A, B, C)
        ka, kb = sol
        out = [a]
        for s in F.subfield:
            X = [F.add(F.mul(F.mul(s, ka), A[k]), F.mul(kb, B[k])) for k in range(3)]
            out.append(self.id_of(X))
        return out


def _solve2(F: FieldTower, A, B, X) -> tuple[int, int]:
    for i in range(3):
        for j in range(i + 1, 3):
            d = F.sub(F.mul(A[i], B[j]), F.mul(A[j], B[i]))
            if d:
                idet = F.inv(d)
                a = F.mul(F.sub(F.mul(X[i], B[j]), F.mul(X[j], B[i])), idet)
                b = F.mul(F.sub(F.mul(A[i], X[j]), F.mul(A[j], X[i])), idet)
                return a, b
    raise PlaneError("dependent spanning points")


@lru_cache(maxsize=4)
def plane_for(F: FieldTower) -> Plane:
    return Plane(F)


@dataclass(frozen=True)
class BaerPencil:
    """q+1 lines through ``vertex`` meeting ``base_line`` in a Baer subline."""

    vertex: int
    base_line: int
    base: tuple[int, ...]
    lines: tuple[int, ...]


# -- PG(2,q) and conics over the subfield -----------------------------------

def subplane_points(F: FieldTower) -> list[Triple]:
    """Normalized points of PG(2,q) with coordinates in GF(q)."""
    S = F.subfield
    pts = [(x, y, 1) for x in S for y in S]
    pts += [(x, 1, 0) for x in S]
    pts.append((1, 0, 0))
    return pts


@dataclass(frozen=True)
class Conic:
    """Ternary quadratic form c00 x0^2 + c11 x1^2 + c22 x2^2 + c01 x0x1 +
    c02 x0x2 + c12 x1x2 over GF(q)."""

    F: FieldTower
    c00: int = 0
    c11: int = 0
    c22: int = 0
    c01: int = 0
    c02: int = 0
    c12: int = 0

    @classmethod
    def from_matrix(cls, F: FieldTower, A: Sequence[Sequence[int]]) -> "Conic":
        if not F.odd:
            raise PlaneError("symmetric matrices describe conics only for q odd")
        two = F.from_int(2)
        return cls(F, A[0][0], A[1][1], A[2][2],
                   F.mul(two, A[0][1]), F.mul(two, A[0][2]), F.mul(two, A[1][2]))

    def matrix(self) -> list[list[int]]:
        F = self.F
        if not F.odd:
            raise PlaneError("no symmetric matrix in characteristic 2")
        h = F.inv(F.from_int(2))
        a01, a02, a12 = (F.mul(h, c) for c in (self.c01, self.c02, self.c12))
        return [[self.c00, a01, a02], [a01, self.c11, a12], [a02, a12, self.c22]]

    def det(self) -> int:
        return linalg.det3(self.F, self.matrix())

    def coeffs(self) -> tuple[int, ...]:
        return (self.c00, self.c11, self.c22, self.c01, self.c02, self.c12)

    def value(self, x: Sequence[int]) -> int:
        F = self.F
        m, a = F.mul, F.add
        x0, x1, x2 = x
        s = m(self.c00, m(x0, x0))
        s = a(s, m(self.c11, m(x1, x1)))
        s = a(s, m(self.c22, m(x2, x2)))
        s = a(s, m(self.c01, m(x0, x1)))
        s = a(s, m(self.c02, m(x0, x2)))
        return a(s, m(self.c12, m(x1, x2)))

    def polar(self, x: Sequence[int], y: Sequence[int]) -> int:
        """B(x, y) = Q(x+y) - Q(x) - Q(y)."""
        F = self.F
        xy = [F.add(u, v) for u, v in zip(x, y)]
        return F.sub(F.sub(self.value(xy), self.value(x)), self.value(y))

    def plus(self, lam: int, other: "Conic") -> "Conic":
        """self + lam * other."""
        F = self.F
        return Conic(F, *(F.add(u, F.mul(lam, v)) for u, v in zip(self.coeffs(), other.coeffs())))

    def is_zero(self) -> bool:
        return not any(self.coeffs())

    def nucleus(self) -> Triple:
        if self.F.odd:
            raise PlaneError("nucleus is a characteristic-2 notion")
        return (self.c12, self.c02, self.c01)

    def is_degenerate(self) -> bool:
        if self.F.odd:
            return self.det() == 0
        n = self.nucleus()
        if not any(n):
            return True   # a square of a linear form
        return self.value(n) == 0

    def points(self) -> list[Triple]:
        return [x for x in subplane_points(self.F) if self.value(x) == 0]


conic_points = Conic.points


# polynomials in lambda over GF(q), coefficient lists low -> high

def _padd(F, a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return [F.add(x, y) for x, y in zip(a, b)]


def _pmul(F, a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return out


def _pneg(F, a):
    return [F.neg(x) for x in a]


def pencil_cubic(C: Conic, D: Conic) -> list[int]:
    """Coefficients (low -> high) of det(A_C + lam * A_D) via cofactors."""
    F = C.F
    A, B = C.matrix(), D.matrix()
    M = [[[A[i][j], B[i][j]] for j in range(3)] for i in range(3)]

    def minor(r0, r1, c0, c1):
        return _padd(F, _pmul(F, M[r0][c0], M[r1][c1]), _pneg(F, _pmul(F, M[r0][c1], M[r1][c0])))

    t0 = _pmul(F, M[0][0], minor(1, 2, 1, 2))
    t1 = _pmul(F, M[0][1], minor(1, 2, 0, 2))
    t2 = _pmul(F, M[0][2], minor(1, 2, 0, 1))
    poly = _padd(F, _padd(F, t0, _pneg(F, t1)), t2)
    return (poly + [0] * 4)[:4]


def pencil_degenerate_members(C: Conic, D: Conic) -> list[tuple[int | None, Conic]]:
    """Degenerate members of the pencil C + lam*D, lam in GF(q) + {inf}.

    ``None`` stands for lam = inf (the member D itself).
    """
    F = C.F
    if not F.odd:
        raise PlaneError("pencil roots are computed for q odd")
    if C.is_degenerate():
        raise PlaneError("the base conic of the pencil must be non-degenerate")
    poly = pencil_cubic(C, D)
    out: list[tuple[int | None, Conic]] = []
    for lam in F.subfield:
        v = 0
        for c in reversed(poly):
            v = F.add(F.mul(v, lam), c)
        if v == 0:
            out.append((lam, C.plus(lam, D)))
    if poly[3] == 0:
        out.append((None, D))
    return out


def _line_conic_count(C: Conic, V: Sequence[int], R: Sequence[int]) -> int:
    """|C ∩ line VR| from the restricted binary quadratic, no scanning."""
    F = C.F
    a = C.value(R)      # coefficient of t^2 in Q(V + tR)
    b = C.polar(V, R)
    c = C.value(V)
    if a == 0:
        if b == 0:
            return F.q + 1 if c == 0 else 1
        return 2        # t = inf and one finite root
    disc = F.sub(F.mul(b, b), F.mul(F.from_int(4), F.mul(a, c)))
    if disc == 0:
        return 1
    return 2 if F.is_square(disc, subfield=True) else 0


def count_on_degenerate(C: Conic, Dg: Conic) -> int:
    """|C ∩ Dg| for a degenerate conic Dg (q odd), from its line structure.

    Dg splits as a repeated line, two rational lines, or two conjugate lines
    through a vertex; each rational component meets C according to the
    discriminant of C restricted to it.
    """
    F = C.F
    M = Dg.matrix()
    if Dg.is_zero():
        return len(C.points())
    kernel = linalg.nullspace(F, M, 3)
    if len(kernel) == 2:
        # rank one: Dg is the line spanned by the kernel
        return _line_conic_count(C, kernel[0], kernel[1])
    if len(kernel) != 1:
        raise PlaneError("Dg is not degenerate")
    V = kernel[0]
    k = next(i for i in range(3) if V[i])
    # points of the line x_k = 0, which misses V
    base = [e for e in ([1, 0, 0], [0, 1, 0], [0, 0, 1]) if e[k] == 0]
    A, B = base
    # Dg(s*A + B) = 0, (s:1) or (1:0)
    comps = []
    if Dg.value(A) == 0:
        comps.append(A)
    for s in F.subfield:
        X = [F.add(F.mul(s, u), v) for u, v in zip(A, B)]
        if Dg.value(X) == 0:
            comps.append(X)
    v_on = C.value(V) == 0
    if not comps:
        return 1 if v_on else 0
    total = sum(_line_conic_count(C, V, R) for R in comps)
    if len(comps) == 2 and v_on:
        total -= 1
    return total
