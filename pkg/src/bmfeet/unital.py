"""Orthogonal Buekenhout-Metz unitals U(alpha, beta) in PG(2,q^2)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

import numpy as np

from .fields import FieldTower
from .plane import Plane, plane_for

D_IS_SQUARE = "d is a square"
BETA_IN_SUBFIELD = "beta in subfield"
TRACE_ONE = "trace(d) = 1"


class InvalidParams(ValueError):
    def __init__(self, reason: str, alpha: int, beta: int):
        super().__init__(f"invalid (alpha={alpha}, beta={beta}): {reason}")
        self.reason = reason
        self.alpha = alpha
        self.beta = beta


@dataclass(frozen=True)
class UnitalParams:
    F: FieldTower
    alpha: int
    beta: int
    d: int

    @property
    def odd(self) -> bool:
        return self.F.odd

    @property
    def is_classical(self) -> bool:
        return self.alpha == 0

    @property
    def is_conic_bm(self) -> bool:
        return self.F.in_subfield(self.beta)

    @property
    def alpha_nonzero_square(self) -> bool:
        return self.alpha != 0 and self.F.odd and self.F.is_square(self.alpha)

    def key(self) -> dict:
        F = self.F
        return {"alpha": list(F.coords(self.alpha)), "beta": list(F.coords(self.beta))}


def discriminant(F: FieldTower, alpha: int, beta: int) -> int:
    """The odd-q or even-q discriminant (even case needs beta outside GF(q))."""
    bq = F.frob(beta)
    if F.odd:
        t = F.sub(bq, beta)
        return F.add(F.mul(t, t), F.mul(F.from_int(4), F.norm(alpha)))
    s = F.add(bq, beta)
    return F.div(F.norm(alpha), F.mul(s, s))


def validate_params(F: FieldTower, alpha: int, beta: int) -> UnitalParams:
    if F.odd:
        d = discriminant(F, alpha, beta)
        if F.is_square(d, subfield=True):
            raise InvalidParams(D_IS_SQUARE, alpha, beta)
        return UnitalParams(F, alpha, beta, d)
    if F.in_subfield(beta):
        raise InvalidParams(BETA_IN_SUBFIELD, alpha, beta)
    d = discriminant(F, alpha, beta)
    if F.abs_trace(d) == 1:
        raise InvalidParams(TRACE_ONE, alpha, beta)
    return UnitalParams(F, alpha, beta, d)


def iter_valid_params(F: FieldTower, classical: bool = True) -> Iterator[UnitalParams]:
    """All valid pairs, alpha then beta in field enumeration order."""
    for alpha in range(F.Q):
        if alpha == 0 and not classical:
            continue
        for beta in range(F.Q):
            try:
                yield validate_params(F, alpha, beta)
            except InvalidParams:
                pass


class Unital:
    """The point set {P_{x,r}} + {T_inf} with its tangent lines."""

    def __init__(self, params: UnitalParams, plane: Plane | None = None):
        self.params = params
        self.F = params.F
        self.plane = plane if plane is not None else plane_for(params.F)
        P, T, F = self.plane, self.plane.T, self.F
        Q, q = F.Q, F.q
        x = np.repeat(np.arange(Q, dtype=np.int32), q)
        r = np.tile(np.array(F.subfield, dtype=np.int32), Q)
        x2 = T.mul[x, x]
        xq1 = T.mul[x, T.frob[x]]
        y = T.add[T.add[T.mul[params.alpha, x2], T.mul[params.beta, xq1]], r]
        ids = x.astype(np.int64) * Q + y
        self.points = np.append(ids, P.T_inf)
        self.xs = x
        self.rs = r
        member = np.zeros(P.N, dtype=bool)
        member[self.points] = True
        self.member = member

    @property
    def q(self) -> int:
        return self.F.q

    @property
    def is_classical(self) -> bool:
        return self.params.is_classical

    @property
    def is_conic_bm(self) -> bool:
        return self.params.is_conic_bm

    def __len__(self) -> int:
        return len(self.points)

    def contains(self, pid: int) -> bool:
        return bool(self.member[pid])

    def contains_algebraic(self, c) -> bool:
        """Membership from the defining equation: y - a x^2 - b x^(q+1) in GF(q)."""
        F = self.F
        a, b, z = c
        if z == 0:
            return a == 0 and b != 0
        iz = F.inv(z)
        x, y = F.mul(a, iz), F.mul(b, iz)
        rest = F.sub(
            F.sub(y, F.mul(self.params.alpha, F.mul(x, x))),
            F.mul(self.params.beta, F.norm(x)),
        )
        return F.in_subfield(rest)

    @cached_property
    def line_counts(self) -> np.ndarray:
        """|line ∩ U| for every line id."""
        return self.member[self.plane.points_on_line].sum(axis=1)

    def secant_profile(self) -> dict[int, int]:
        counts = np.bincount(self.line_counts)
        return {int(k): int(v) for k, v in enumerate(counts) if v}

    @cached_property
    def tangent_lines(self) -> np.ndarray:
        """Tangent line of each entry of ``points`` (same order), by formula."""
        P, T, F = self.plane, self.plane.T, self.F
        al, be = self.params.alpha, self.params.beta
        bq = F.frob(be)
        x, r = self.xs, self.rs
        xq = T.frob[x]
        x2 = T.mul[x, x]
        xq1 = T.mul[x, xq]
        if F.odd:
            two_al = F.mul(F.from_int(2), al)
            c0 = T.sub[T.mul[F.sub(bq, be), xq], T.mul[two_al, x]]
            c2 = T.sub[T.sub[T.mul[al, x2], T.mul[bq, xq1]], r]
        else:
            c0 = T.mul[F.add(bq, be), xq]
            c2 = T.add[T.add[T.mul[al, x2], T.mul[bq, xq1]], r]
        lines = P.normalize(c0, np.ones_like(c0), c2)
        return np.append(lines, P.l_inf)

    def tangent_at(self, pid: int) -> int:
        if not self.member[pid]:
            raise ValueError(f"point {pid} is not on the unital")
        if pid == self.plane.T_inf:
            return self.plane.l_inf
        F = self.F
        al, be = self.params.alpha, self.params.beta
        bq = F.frob(be)
        x, y, _ = self.plane.triple(pid)
        xq = F.frob(x)
        x2 = F.mul(x, x)
        xq1 = F.mul(x, xq)
        r = F.sub(F.sub(y, F.mul(al, x2)), F.mul(be, xq1))
        if F.odd:
            c0 = F.sub(F.mul(F.sub(bq, be), xq), F.mul(F.mul(F.from_int(2), al), x))
            c2 = F.sub(F.sub(F.mul(al, x2), F.mul(bq, xq1)), r)
        else:
            c0 = F.mul(F.add(bq, be), xq)
            c2 = F.add(F.add(F.mul(al, x2), F.mul(bq, xq1)), r)
        return self.plane.id_of((c0, 1, c2))

    def summary(self) -> dict:
        F = self.F
        out = {"q": F.q, **self.params.key(), "d": list(F.coords(self.params.d))}
        out["is_classical"] = self.is_classical
        out["is_conic_bm"] = self.is_conic_bm
        out["secant_profile"] = {str(k): v for k, v in self.secant_profile().items()}
        return out


def build_unital(params: UnitalParams, plane: Plane | None = None) -> Unital:
    return Unital(params, plane)
