"""Feet (pedal sets) of points off a unital.

Two independent routes are provided.  ``pedal_brute`` scans the lines through
a base point for tangents; ``feet_closed_form`` solves the defining equations
for the canonical base points R1, R2 (q odd) and R (q even).  Sweeps over many
base points go through ``PedalBatch``, which vectorizes the same brute-force
geometry across every base point of one unital at once.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Sequence

import numpy as np

from .plane import BaerPencil, Plane
from .unital import Unital


class PedalError(ValueError):
    pass


@dataclass(frozen=True)
class SecantProfile:
    """Line-intersection census of a point set over all lines of the plane."""

    counts: dict[int, int]
    lines_by_size: dict[int, tuple[int, ...]] = field(default_factory=dict)

    @property
    def sizes(self) -> set[int]:
        return {k for k, v in self.counts.items() if v}

    @property
    def max_size(self) -> int:
        return max(self.sizes)

    @property
    def is_arc(self) -> bool:
        return self.max_size <= 2

    @property
    def is_type_0124(self) -> bool:
        return self.sizes <= {0, 1, 2, 4}

    @property
    def is_class_0124(self) -> bool:
        return self.sizes == {0, 1, 2, 4}


@dataclass
class PedalSet:
    base: int
    feet: tuple[int, ...]
    tangents: tuple[int, ...] = ()
    profile: SecantProfile | None = None
    pencil: BaerPencil | None = None

    @property
    def is_collinear(self) -> bool:
        return self.profile is not None and self.profile.max_size == len(self.feet)

    def to_json(self, plane: Plane) -> dict:
        F = plane.F

        def pt(i):
            return [list(F.coords(c)) for c in plane.triple(i)]

        out = {"base": pt(self.base), "feet": [pt(f) for f in self.feet]}
        if self.profile is not None:
            out["profile"] = {str(k): v for k, v in sorted(self.profile.counts.items())}
            out["is_arc"] = self.profile.is_arc
            out["four_secants"] = [pt(l) for l in self.profile.lines_by_size.get(4, ())]
        if self.pencil is not None:
            out["pencil"] = {"vertex": pt(self.pencil.vertex), "base": [pt(b) for b in self.pencil.base]}
        else:
            out["pencil"] = None
        return out


def _k_of_pairs(n: int) -> dict[int, int]:
    return {k * (k - 1) // 2: k for k in range(2, n + 1)}


def classify(plane: Plane, feet: Sequence[int]) -> SecantProfile:
    """Exact intersection profile of ``feet`` over every line of the plane."""
    feet = list(feet)
    n = len(feet)
    if n < 2:
        raise PedalError("need at least two points")
    i, j = np.triu_indices(n, 1)
    arr = np.asarray(feet)
    lines = plane.join(arr[i], arr[j])
    kmap = _k_of_pairs(n)
    mult = Counter(int(l) for l in lines)
    by_size: dict[int, list[int]] = {}
    for l, m in mult.items():
        by_size.setdefault(kmap[m], []).append(l)
    counts = {k: len(v) for k, v in by_size.items()}
    big = sum(k * c for k, c in counts.items())
    counts[1] = n * (plane.Q + 1) - big
    counts[0] = plane.N - counts[1] - sum(c for k, c in counts.items() if k >= 2)
    counts = {k: v for k, v in counts.items() if v}
    return SecantProfile(counts, {k: tuple(sorted(v)) for k, v in by_size.items()})


def pedal_brute(U: Unital, base: int, with_analysis: bool = True) -> PedalSet:
    """Feet of ``base`` from the tangent lines among the q^2+1 lines through it."""
    P = U.plane
    if U.member[base]:
        raise PedalError("base point lies on the unital")
    lines = P.points_on_line[base]
    tangents = lines[U.line_counts[lines] == 1]
    if len(tangents) != U.q + 1:
        raise PedalError(f"found {len(tangents)} tangents through {base}, expected {U.q + 1}")
    feet = []
    for t in tangents:
        on = P.points_on_line[t]
        feet.append(int(on[U.member[on]][0]))
    order = np.argsort(feet)
    ps = PedalSet(base, tuple(feet[i] for i in order), tuple(int(tangents[i]) for i in order))
    if with_analysis:
        ps.profile = classify(P, ps.feet)
        ps.pencil = detect_baer_pencil(P, ps.feet, ps.profile.lines_by_size.get(4, ()))
    return ps


CANONICAL_ODD = ("R1", "R2")
CANONICAL_EVEN = ("R",)


def canonical_base(U: Unital, which: str) -> int:
    F = U.F
    if F.odd:
        if which == "R1":
            y = F.eps
        elif which == "R2":
            y = F.mul(F.w, F.eps)
        else:
            raise PedalError(f"{which} is not a canonical base point for q odd")
    else:
        if which != "R":
            raise PedalError(f"{which} is not a canonical base point for q even")
        y = F.delta
    return U.plane.id_of((0, y, 1))


def closed_form_solutions(U: Unital, which: str) -> list[tuple[int, int]]:
    """(x, foot id) for every x in GF(q^2) solving the feet condition."""
    F = U.F
    al, be = U.params.alpha, U.params.beta
    bq, aq = F.frob(be), F.frob(al)
    canonical_base(U, which)   # parity check
    out = []
    if F.odd:
        c = F.eps if which == "R1" else F.mul(F.w, F.eps)
        two_c = F.mul(F.from_int(2), c)
        two_al = F.mul(F.from_int(2), al)
        bmb = F.sub(be, bq)
        for x in range(F.Q):
            x2 = F.mul(x, x)
            x2q = F.frob(x2)
            xq1 = F.norm(x)
            cond = F.add(F.add(F.sub(F.mul(al, x2), F.mul(aq, x2q)), F.mul(bmb, xq1)), two_c)
            if cond == 0:
                y = F.add(F.add(F.mul(two_al, x2), F.mul(bmb, xq1)), c)
                out.append((x, U.plane.id_of((x, y, 1))))
    else:
        bpb = F.add(be, bq)
        dq = F.frob(F.delta)
        for x in range(F.Q):
            x2 = F.mul(x, x)
            s = F.add(F.mul(al, x2), F.mul(aq, F.frob(x2)))
            cond = F.add(F.add(1, s), F.mul(bpb, F.norm(x)))
            if cond == 0:
                out.append((x, U.plane.id_of((x, F.add(s, dq), 1))))
    return out


def feet_closed_form(U: Unital, which: str) -> PedalSet:
    sols = closed_form_solutions(U, which)
    return PedalSet(canonical_base(U, which), tuple(sorted(f for _, f in sols)))


def _linf_order(plane: Plane) -> list[int]:
    """Vertex candidates: U_inf first, then the other points of l_inf."""
    Q = plane.Q
    return [plane.U_inf] + [Q * Q + x for x in range(Q)]


def detect_baer_pencil(plane: Plane, feet: Sequence[int], prefer_through: Sequence[int] = ()) -> BaerPencil | None:
    """A Baer pencil with vertex on l_inf whose lines cover ``feet``.

    The pencil is required to contain l_inf itself (its base subline passes
    through l_inf on the base line).  Vertices on every line of
    ``prefer_through`` are tried first; ties fall back to U_inf first, then
    l_inf in id order.  Collinear or non-affine feet give None.
    """
    F = plane.F
    feet = list(feet)
    if any(plane.triple(f)[2] == 0 for f in feet) or plane.is_collinear(feet):
        return None
    order = _linf_order(plane)
    if prefer_through:
        first = [v for v in order if all(plane.incident(v, l) for l in prefer_through)]
        order = first + [v for v in order if v not in first]
    linf = plane.triple(plane.l_inf)
    for v in order:
        lines = sorted({plane.line_through(v, f) for f in feet})
        if len(lines) + 1 > F.q + 1:
            continue
        duals = [linf] + [plane.triple(l) for l in lines]
        if plane.in_common_baer_subline(duals):
            return _complete_pencil(plane, v, lines)
    return None


def _complete_pencil(plane: Plane, v: int, lines: Sequence[int]) -> BaerPencil:
    full = plane.baer_closure(plane.l_inf, lines[0], lines[1])
    base_line = plane.id_of((1, 0, 0)) if v != plane.T_inf else plane.id_of((0, 1, 0))
    full = sorted(full)
    base = tuple(plane.meet(l, base_line) for l in full)
    return BaerPencil(v, base_line, base, tuple(full))


def four_secant_report(plane: Plane, ps: PedalSet) -> dict:
    if ps.profile is None:
        ps.profile = classify(plane, ps.feet)
    lines = list(ps.profile.lines_by_size.get(4, ()))
    vertex = ps.pencil.vertex if ps.pencil is not None else None
    through = vertex is not None and all(plane.incident(vertex, l) for l in lines)
    if not lines:
        through = True
    return {"lines": lines, "count": len(lines), "all_through_vertex": through, "vertex": vertex}


# -- vectorized engine ---------------------------------------------------------

def all_feet(U: Unital) -> tuple[np.ndarray, np.ndarray]:
    """Feet of every point off U via the tangent lines of U.

    Returns (base ids ascending, feet array of shape (n, q+1) with rows
    sorted).  Each point off U lies on exactly q+1 tangents; points of U lie
    on none but their own.
    """
    P = U.plane
    tl = U.tangent_lines
    on = P.points_on_line[tl]                       # (n_U, Q+1)
    owner = np.broadcast_to(U.points[:, None], on.shape)
    keep = on != owner
    pts = on[keep].astype(np.int64)
    own = owner[keep]
    order = np.argsort(pts, kind="stable")
    pts, own = pts[order], own[order]
    k = U.q + 1
    if len(pts) % k:
        raise PedalError("tangent incidence count is inconsistent")
    bases = pts[::k]
    if not (pts.reshape(-1, k) == bases[:, None]).all():
        raise PedalError("some point does not have q+1 feet")
    feet = np.sort(own.reshape(-1, k), axis=1)
    return bases, feet


@dataclass
class PedalBatch:
    """Vectorized analysis of many pedal sets of one unital."""

    unital: Unital
    bases: np.ndarray
    feet: np.ndarray
    size_counts: np.ndarray          # (M, q+2): lines meeting the feet in k points
    four_lines: list[np.ndarray]     # per row: line ids of 4-secants
    valid_vertices: np.ndarray       # (M, Q+1) over the l_inf candidate order
    vertex: np.ndarray               # chosen vertex id or -1
    four_through_vertex: np.ndarray  # every 4-secant through one valid vertex

    @property
    def max_size(self) -> np.ndarray:
        nz = self.size_counts > 0
        return nz.shape[1] - 1 - np.argmax(nz[:, ::-1], axis=1)

    @property
    def collinear(self) -> np.ndarray:
        return self.size_counts[:, -1] > 0

    @property
    def is_arc(self) -> np.ndarray:
        return self.max_size <= 2

    @property
    def has_pencil(self) -> np.ndarray:
        return self.vertex >= 0

    @property
    def n_four(self) -> np.ndarray:
        return self.size_counts[:, 4] if self.size_counts.shape[1] > 4 else np.zeros(len(self.bases), int)

    def type_0124(self) -> np.ndarray:
        bad = np.ones(self.size_counts.shape[1], dtype=bool)
        bad[[0, 1, 2]] = False
        if len(bad) > 4:
            bad[4] = False
        return ~(self.size_counts[:, bad] > 0).any(axis=1)

    def profile(self, i: int) -> dict[int, int]:
        return {k: int(v) for k, v in enumerate(self.size_counts[i]) if v}


def analyze_bases(U: Unital, bases: Sequence[int] | None = None) -> PedalBatch:
    """Feet, exact secant profiles and Baer-pencil vertices for many bases.

    ``bases`` defaults to every point off U.
    """
    P, T = U.plane, U.plane.T
    all_b, all_f = _feet_cache(U)
    if bases is None:
        bases = all_b
        feet = all_f
    else:
        bases = np.asarray(bases, dtype=np.int64)
        pos = np.searchsorted(all_b, bases)
        if (pos >= len(all_b)).any() or (all_b[np.minimum(pos, len(all_b) - 1)] != bases).any():
            raise PedalError("some base point lies on the unital")
        feet = all_f[pos]
    M, k = feet.shape
    N, Q = P.N, P.Q
    iu, ju = np.triu_indices(k, 1)
    lines = P.join(feet[:, iu], feet[:, ju])                     # (M, K)
    rows = np.repeat(np.arange(M, dtype=np.int64), len(iu))
    keys = rows * N + lines.ravel()
    uniq, mult = np.unique(keys, return_counts=True)
    kmap = np.zeros(k * (k - 1) // 2 + 1, dtype=np.int64)
    for m, kk in _k_of_pairs(k).items():
        kmap[m] = kk
    urow = uniq // N
    uline = uniq % N
    usize = kmap[mult]
    size_counts = np.zeros((M, k + 1), dtype=np.int64)
    np.add.at(size_counts, (urow, usize), 1)
    big = (size_counts * np.arange(k + 1)).sum(axis=1)
    size_counts[:, 1] = k * (Q + 1) - big
    size_counts[:, 0] = N - size_counts[:, 1:].sum(axis=1)

    is4 = usize == 4
    four_rows, four_lines_ = urow[is4], uline[is4]
    split = np.searchsorted(four_rows, np.arange(M + 1))
    four_lines = [four_lines_[split[i]:split[i + 1]] for i in range(M)]

    # Baer pencil vertex test for every candidate V = (v0, v1, 0) on l_inf:
    # line V-f has dual coords (v1, -v0, k_f) with k_f = v0*y - v1*x, and
    # the lines together with l_inf lie in a Baer subpencil iff the k_f lie
    # on an affine GF(q)-line of GF(q^2).
    C = P.coords[feet]
    X, Y, Z = C[..., 0], C[..., 1], C[..., 2]
    affine = (Z != 0).all(axis=1)
    order = _linf_order(P)
    valid = np.zeros((M, len(order)), dtype=bool)
    for vi, v in enumerate(order):
        v0, v1, _ = P.triple(v)
        K = T.sub[T.mul[v0, Y], T.mul[v1, X]]
        D = T.sub[K, K[:, :1]]
        nz = D != 0
        has = nz.any(axis=1)
        first = np.argmax(nz, axis=1)
        unit = D[np.arange(M), first]
        R = T.mul[D, T.inv[unit][:, None]]
        valid[:, vi] = has & T.in_subfield[R].all(axis=1) & affine

    order_arr = np.array(order)
    col_of = {v: i for i, v in enumerate(order)}
    vertex = np.where(valid.any(axis=1), order_arr[np.argmax(valid, axis=1)], -1)
    four_ok = np.ones(M, dtype=bool)
    if len(four_rows):
        Lc = P.coords[four_lines_]
        W = P.normalize(Lc[:, 1], T.neg[Lc[:, 0]], np.zeros_like(Lc[:, 0]))
        for i in np.unique(four_rows):
            ws = np.unique(W[split[i]:split[i + 1]])
            if len(ws) == 1 and valid[i, col_of[int(ws[0])]]:
                vertex[i] = ws[0]
            else:
                four_ok[i] = False
    return PedalBatch(U, bases, feet, size_counts, four_lines, valid, vertex, four_ok)


_FEET_ATTR = "_all_feet_cache"


def _feet_cache(U: Unital):
    cached = getattr(U, _FEET_ATTR, None)
    if cached is None:
        cached = all_feet(U)
        setattr(U, _FEET_ATTR, cached)
    return cached


def affine_off_unital(U: Unital) -> np.ndarray:
    """Ids of the points not on U and not on l_inf, ascending."""
    Q = U.plane.Q
    ids = np.arange(Q * Q)
    return ids[~U.member[:Q * Q]]


def linf_off_unital(U: Unital) -> np.ndarray:
    Q = U.plane.Q
    ids = np.arange(Q * Q, Q * Q + Q + 1)
    return ids[~U.member[ids]]


# -- conic coordinates for the canonical feet ----------------------------------

def foot_conics(U: Unital, which: str):
    """Conics over GF(q) governing the feet of a canonical base point.

    With x = x0 + x1*tau, the foot Q_x exists iff (x0, x1, 1) lies on the
    returned conic ``C``; it lies on the line y = s + shift through U_inf iff
    (x0, x1, 1) lies on ``D(s)``.  Returns (C, D, shift).
    """
    from .plane import Conic

    F = U.F
    canonical_base(U, which)
    a0, a1 = F.decompose(U.params.alpha)
    b0, b1 = F.decompose(U.params.beta)
    m, add, sub = F.mul, F.add, F.sub
    if F.odd:
        w = F.w
        two, four = F.from_int(2), F.from_int(4)
        top = 1 if which == "R1" else w
        C = Conic(F, c00=add(a1, b1), c11=m(w, sub(a1, b1)), c22=top, c01=m(two, a0))
        shift = F.neg(F.eps if which == "R1" else m(w, F.eps))

        def D(s: int) -> Conic:
            return Conic(F, c00=m(two, a0), c11=m(m(two, w), a0), c22=F.neg(s), c01=m(m(four, w), a1))
    else:
        v = F.v
        C = Conic(F, c00=add(a1, b1), c01=b1, c11=add(add(add(a0, a1), m(a1, v)), m(b1, v)), c22=1)
        shift = F.frob(F.delta)

        def D(s: int) -> Conic:
            return Conic(F, c00=a1, c11=add(add(a0, a1), m(a1, v)), c22=s)
    return C, D, shift


def feet_on_pencil_lines(U: Unital, which: str) -> dict[int, int]:
    """For s in GF(q): number of feet of the canonical base on y = s + shift."""
    F, P = U.F, U.plane
    _, _, shift = foot_conics(U, which)
    feet = pedal_brute(U, canonical_base(U, which), with_analysis=False).feet
    ys = Counter(P.triple(f)[1] for f in feet)
    return {s: ys.get(F.add(s, shift), 0) for s in F.subfield}
