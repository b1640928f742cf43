"""Exact arithmetic in the tower GF(q) < GF(q^2).

Elements are plain ints.  An int ``e`` encodes the polynomial
``sum(c_i * z**i)`` over GF(p) whose coefficients are the base-p digits of
``e``, reduced modulo a fixed irreducible polynomial of degree 2h.  The
subfield GF(q) is the set of Frobenius-fixed ints, so there is a single
element namespace and no wrapper objects; a ``FieldTower`` interprets them.

Two distinguished bases of GF(q^2) over GF(q) are built:

* q odd:  {1, eps} with eps = zeta**((q+1)/2), w = eps**2, eps**q = -eps.
* q even: {1, delta} with delta**q = delta + 1, delta**2 = v + delta,
  v != 1 and T(v) = 1.
"""

from __future__ import annotations

from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

MAX_Q = 64


class FieldError(ValueError):
    """Raised for unsupported or malformed field requests."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over GF(p), coefficient lists low -> high -----------------

def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _monic_polys(deg: int, p: int):
    """Monic polynomials of exact degree ``deg`` in increasing code order."""
    for code in range(p**deg):
        coeffs = [(code // p**i) % p for i in range(deg)]
        yield coeffs + [1]


def _is_irreducible(m: list[int], p: int) -> bool:
    n = len(m) - 1
    for d in range(1, n // 2 + 1):
        for f in _monic_polys(d, p):
            if not _poly_mod(m, f, p):
                return False
    return True


def lowest_irreducible(deg: int, p: int) -> list[int]:
    """First monic irreducible of degree ``deg``, ordering non-leading
    coefficients by the integer ``sum(c_i * p**i)``."""
    for m in _monic_polys(deg, p):
        if _is_irreducible(m, p):
            return m
    raise FieldError(f"no irreducible polynomial of degree {deg} over GF({p})")


class FieldTower:
    """The pair GF(q) < GF(q^2), q = p^h, with the distinguished basis."""

    def __init__(self, p: int, h: int):
        if not is_prime(p):
            raise FieldError(f"p={p} is not prime")
        if h < 1:
            raise FieldError(f"h={h} must be positive")
        q = p**h
        if q == 2:
            raise FieldError("q=2 is not supported: the even-q basis needs q >= 4")
        if q > MAX_Q:
            raise FieldError(f"q={q} exceeds the supported cap q <= {MAX_Q}")
        self.p = p
        self.h = h
        self.q = q
        self.Q = q * q
        self.n = 2 * h
        self.odd = p != 2
        self.modulus = lowest_irreducible(self.n, p)
        self._pw = [p**i for i in range(self.n)]
        self._build_logs()
        Q, q = self.Q, self.q
        self.neg_table = [self._neg_slow(x) for x in range(Q)]
        self.inv_table = [0] + [self.exp[(Q - 1 - self.log[x]) % (Q - 1)] for x in range(1, Q)]
        self.frob_table = [0] + [self.exp[(self.log[x] * q) % (Q - 1)] for x in range(1, Q)]
        self.subfield = tuple(x for x in range(Q) if self.frob_table[x] == x)
        self._sub_set = frozenset(self.subfield)
        self._build_subfield_coords()
        if self.odd:
            self.eps = self.power(self.zeta, (q + 1) // 2)
            self.w = self.mul(self.eps, self.eps)
            self.tau = self.eps
            self.delta = self.v = None
            self._half = self.inv(self.from_int(2))
            self._inv_2eps = self.inv(self.mul(2 % p, self.eps))
        else:
            self.delta, self.v = self._find_delta()
            self.tau = self.delta
            self.eps = self.w = None

    # -- construction ------------------------------------------------------

    def _digits(self, x: int) -> list[int]:
        return [(x // self._pw[i]) % self.p for i in range(self.n)]

    def _from_digits(self, d: Sequence[int]) -> int:
        return sum((c % self.p) * self._pw[i] for i, c in enumerate(d))

    def _mul_slow(self, a: int, b: int) -> int:
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * self.n - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        r = _poly_mod(prod, self.modulus, self.p)
        return self._from_digits(r)

    def _pow_slow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._mul_slow(r, a)
            a = self._mul_slow(a, a)
            e >>= 1
        return r

    def _neg_slow(self, x: int) -> int:
        return self._from_digits([(-c) % self.p for c in self._digits(x)])

    def _build_logs(self) -> None:
        Q = self.Q
        factors = _prime_factors(Q - 1)
        for g in range(2, Q):
            if all(self._pow_slow(g, (Q - 1) // r) != 1 for r in factors):
                self.zeta = g
                break
        exp = [1] * (2 * (Q - 1))
        x = 1
        for k in range(1, Q - 1):
            x = self._mul_slow(x, self.zeta)
            exp[k] = x
        for k in range(Q - 1, 2 * (Q - 1)):
            exp[k] = exp[k - (Q - 1)]
        self.exp = exp
        log = [-1] * Q
        for k in range(Q - 1):
            log[exp[k]] = k
        self.log = log
        # zech[t] = log(1 + zeta^t), or -1 when 1 + zeta^t = 0
        zech = []
        for t in range(Q - 1):
            x = exp[t]
            d = self._digits(x)
            d[0] = (d[0] + 1) % self.p
            y = self._from_digits(d)
            zech.append(log[y] if y else -1)
        self._zech = zech

    def _build_subfield_coords(self) -> None:
        self.sub_modulus = lowest_irreducible(self.h, self.p)
        roots = [x for x in self.subfield if self._eval_poly(self.sub_modulus, x) == 0]
        self.theta = roots[0]
        coords = {}
        for code in range(self.q):
            c = [(code // self.p**i) % self.p for i in range(self.h)]
            x = 0
            t = 1
            for ci in c:
                x = self.add(x, self.mul(ci, t))
                t = self.mul(t, self.theta)
            coords[x] = tuple(c)
        self._sub_coords = coords
        self._sub_from_coords = {v: k for k, v in coords.items()}

    def _eval_poly(self, coeffs: Sequence[int], x: int) -> int:
        r = 0
        for c in reversed(coeffs):
            r = self.add(self.mul(r, x), c % self.p)
        return r

    def _find_delta(self) -> tuple[int, int]:
        for d in range(self.Q):
            if self.frob(d) != self.add(d, 1):
                continue
            v = self.add(self.mul(d, d), d)
            if v != 1 and self.abs_trace(v) == 1:
                return d, v
        raise FieldError(f"no admissible delta in GF({self.Q})")

    # -- scalar arithmetic -------------------------------------------------

    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime field."""
        return n % self.p

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if a == 0:
            return b
        if b == 0:
            return a
        la = self.log[a]
        z = self._zech[(self.log[b] - la) % (self.Q - 1)]
        if z < 0:
            return 0
        return self.exp[la + z]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg_table[b])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.inv_table[a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def power(self, a: int, e: int) -> int:
        if a == 0:
            return 1 if e == 0 else 0
        return self.exp[(self.log[a] * e) % (self.Q - 1)]

    def frob(self, x: int) -> int:
        """x -> x**q; an involution fixing exactly GF(q)."""
        return self.frob_table[x]

    def norm(self, x: int) -> int:
        """x**(q+1), always in GF(q)."""
        return self.mul(x, self.frob_table[x])

    def in_subfield(self, x: int) -> bool:
        return x in self._sub_set

    def is_square(self, x: int, subfield: bool = False) -> bool:
        """Squareness in GF(q^2), or in GF(q) when ``subfield`` is set.

        Every element is a square in characteristic two, so callers must not
        branch on this for even q.
        """
        if subfield and not self.in_subfield(x):
            raise FieldError(f"{x} is not in GF({self.q})")
        if not self.odd:
            return True
        if x == 0:
            return True
        order = (self.q if subfield else self.Q) - 1
        return self.power(x, order // 2) == 1

    def abs_trace(self, x: int) -> int:
        """Absolute trace GF(2^h) -> GF(2) of a subfield element."""
        if self.odd:
            raise FieldError("absolute trace is only defined here for q even")
        if not self.in_subfield(x):
            raise FieldError(f"{x} is not in GF({self.q})")
        t = 0
        y = x
        for _ in range(self.h):
            t ^= y
            y = self.mul(y, y)
        return t

    # -- basis coordinates -------------------------------------------------

    def decompose(self, x: int) -> tuple[int, int]:
        """Unique (x0, x1) in GF(q)^2 with x = x0 + x1*tau."""
        xq = self.frob_table[x]
        if self.odd:
            x0 = self.mul(self.add(x, xq), self._half)
            x1 = self.mul(self.sub(x, xq), self._inv_2eps)
        else:
            x1 = x ^ xq
            x0 = x ^ self.mul(x1, self.delta)
        return x0, x1

    def recompose(self, x0: int, x1: int) -> int:
        return self.add(x0, self.mul(x1, self.tau))

    def sub_coords(self, x: int) -> tuple[int, ...]:
        """Coordinates of a subfield element over GF(p) in the basis theta^i."""
        return self._sub_coords[x]

    def coords(self, x: int) -> tuple[int, ...]:
        """Length-2h coordinate vector over GF(p): coords(x0) + coords(x1)."""
        x0, x1 = self.decompose(x)
        return self._sub_coords[x0] + self._sub_coords[x1]

    def from_coords(self, vec: Sequence[int]) -> int:
        vec = [int(c) % self.p for c in vec]
        if len(vec) == self.h:
            vec = vec + [0] * self.h
        if len(vec) != self.n:
            raise FieldError(f"expected {self.h} or {self.n} coordinates, got {len(vec)}")
        x0 = self._sub_from_coords[tuple(vec[: self.h])]
        x1 = self._sub_from_coords[tuple(vec[self.h:])]
        return self.recompose(x0, x1)

    def poly_digits(self, x: int) -> list[int]:
        return self._digits(x)

    # -- vectorized tables -------------------------------------------------

    @cached_property
    def np(self) -> "TowerTables":
        return TowerTables(self)

    def to_json(self) -> dict:
        out = {
            "p": self.p,
            "h": self.h,
            "q": self.q,
            "modulus_q2": list(self.modulus),
            "modulus_q": list(self.sub_modulus),
            "zeta": list(self.coords(self.zeta)),
            "zeta_poly": self.poly_digits(self.zeta),
            "basis": "epsilon" if self.odd else "delta",
        }
        if self.odd:
            out["epsilon"] = list(self.coords(self.eps))
            out["w"] = list(self.coords(self.w))
        else:
            out["delta"] = list(self.coords(self.delta))
            out["v"] = list(self.coords(self.v))
        return out

    def __repr__(self) -> str:
        return f"FieldTower(p={self.p}, h={self.h})"


class TowerTables:
    """Full numpy operation tables for vectorized work on GF(q^2)."""

    def __init__(self, F: FieldTower):
        Q = F.Q
        dtype = np.int32
        log = np.array(F.log, dtype=np.int64)
        exp = np.array(F.exp + F.exp[:1], dtype=dtype)
        nz = log >= 0
        mul = np.zeros((Q, Q), dtype=dtype)
        idx = np.nonzero(nz)[0]
        mul[np.ix_(idx, idx)] = exp[(log[idx][:, None] + log[idx][None, :])]
        self.mul = mul
        if F.p == 2:
            ar = np.arange(Q, dtype=dtype)
            self.add = ar[:, None] ^ ar[None, :]
        else:
            digits = np.array([F._digits(x) for x in range(Q)], dtype=np.int64)
            pw = np.array(F._pw, dtype=np.int64)
            add = np.empty((Q, Q), dtype=dtype)
            for a in range(Q):
                add[a] = ((digits[a] + digits) % F.p) @ pw
            self.add = add
        self.neg = np.array(F.neg_table, dtype=dtype)
        self.sub = self.add[:, self.neg]
        self.inv = np.array(F.inv_table, dtype=dtype)
        self.frob = np.array(F.frob_table, dtype=dtype)
        sub = np.zeros(Q, dtype=bool)
        sub[list(F.subfield)] = True
        self.in_subfield = sub


@lru_cache(maxsize=None)
def make_tower(p: int, h: int = 1) -> FieldTower:
    """Deterministic tower for (p, h); cached so repeated calls share tables."""
    return FieldTower(p, h)


def tower_for_q(q: int) -> FieldTower:
    """Tower with the given subfield order q = p^h."""
    for p in range(2, q + 1):
        if is_prime(p):
            h, r = 0, 1
            while r < q:
                r *= p
                h += 1
            if r == q:
                return make_tower(p, h)
    raise FieldError(f"q={q} is not a prime power")
