"""Small dense linear algebra over a FieldTower (Gaussian elimination)."""

from __future__ import annotations

from typing import Sequence

from .fields import FieldTower

Matrix = list[list[int]]


def rref(F: FieldTower, rows: Sequence[Sequence[int]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = F.inv(m[r][c])
        m[r] = [F.mul(inv, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(F: FieldTower, rows: Sequence[Sequence[int]]) -> int:
    return len(rref(F, rows)[1])


def nullspace(F: FieldTower, rows: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Basis of {x : rows @ x = 0}."""
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    m, pivots = rref(F, rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for i, pc in enumerate(pivots):
            x[pc] = F.neg(m[i][f])
        basis.append(x)
    return basis


def det3(F: FieldTower, a: Sequence[Sequence[int]]) -> int:
    mul, add, sub = F.mul, F.add, F.sub
    t0 = mul(a[0][0], sub(mul(a[1][1], a[2][2]), mul(a[1][2], a[2][1])))
    t1 = mul(a[0][1], sub(mul(a[1][0], a[2][2]), mul(a[1][2], a[2][0])))
    t2 = mul(a[0][2], sub(mul(a[1][0], a[2][1]), mul(a[1][1], a[2][0])))
    return add(sub(t0, t1), t2)


def inverse(F: FieldTower, a: Sequence[Sequence[int]]) -> Matrix:
    n = len(a)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(a)]
    m, pivots = rref(F, aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in m]


def matvec(F: FieldTower, a: Sequence[Sequence[int]], x: Sequence[int]) -> list[int]:
    out = []
    for row in a:
        s = 0
        for u, v in zip(row, x):
            if u and v:
                s = F.add(s, F.mul(u, v))
        out.append(s)
    return out
