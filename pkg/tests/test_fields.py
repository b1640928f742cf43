import pytest
from hypothesis import given, settings, strategies as st

from bmfeet.fields import FieldError, MAX_Q, make_tower, tower_for_q

ALL_Q = (3, 4, 5, 7, 8, 9, 16, 25, 27)


def poly_mul_mod(a, b, mod, p):
    """Schoolbook product of digit lists modulo a monic polynomial."""
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    n = len(mod) - 1
    for k in range(len(prod) - 1, n - 1, -1):
        c = prod[k]
        if c:
            for i in range(n + 1):
                prod[k - n + i] = (prod[k - n + i] - c * mod[i]) % p
    return (prod + [0] * n)[:n]


def to_digits(F, x):
    return [(x // F.p ** i) % F.p for i in range(F.n)]


def from_digits(F, d):
    return sum(c * F.p ** i for i, c in enumerate(d))


@pytest.mark.parametrize("q", ALL_Q)
def test_mul_matches_polynomial_oracle(q):
    F = tower_for_q(q)
    import random

    rnd = random.Random(q)
    for _ in range(300):
        a, b = rnd.randrange(F.Q), rnd.randrange(F.Q)
        want = from_digits(F, poly_mul_mod(to_digits(F, a), to_digits(F, b), F.modulus, F.p))
        assert F.mul(a, b) == want


def test_tower_q3():
    F = make_tower(3, 1)
    assert F.eps == F.power(F.zeta, 2)
    assert F.w == F.mul(F.eps, F.eps)
    # w generates GF(3)*
    assert {F.power(F.w, k) for k in range(1, 3)} == set(F.subfield) - {0}
    assert F.coords(F.eps) == (0, 1)


def test_tower_q4_delta_is_first_admissible():
    F = make_tower(2, 2)
    d, v = F.delta, F.v
    assert F.frob(d) == F.add(1, d)
    assert F.mul(d, d) == F.add(v, d)
    assert F.in_subfield(v) and v != 1 and F.abs_trace(v) == 1
    assert not F.in_subfield(d)
    # oracle: scan all 16 elements in order
    first = next(x for x in range(16) if F.frob(x) == F.add(x, 1)
                 and F.add(F.mul(x, x), x) != 1 and F.abs_trace(F.add(F.mul(x, x), x)) == 1)
    assert first == d


@pytest.mark.parametrize("q", [3, 5, 7, 9, 25, 27])
def test_epsilon_basis(q):
    F = tower_for_q(q)
    assert F.frob(F.eps) == F.neg(F.eps)
    assert F.in_subfield(F.w)
    order = next(k for k in range(1, q) if F.power(F.w, k) == 1)
    assert order == q - 1
    assert not F.is_square(F.w, subfield=True)
    # {1, eps} is a basis
    seen = {F.recompose(a, b) for a in F.subfield for b in F.subfield}
    assert len(seen) == F.Q


@pytest.mark.parametrize("q", ALL_Q)
def test_zeta_primitive(q):
    F = tower_for_q(q)
    assert F.power(F.zeta, F.Q - 1) == 1
    x, k = F.zeta, 1
    while x != 1:
        x = F.mul(x, F.zeta)
        k += 1
    assert k == F.Q - 1


@pytest.mark.parametrize("q", ALL_Q)
def test_frobenius(q):
    F = tower_for_q(q)
    fixed = [x for x in range(F.Q) if F.frob(x) == x]
    assert tuple(fixed) == F.subfield and len(fixed) == q
    assert all(F.frob(F.frob(x)) == x for x in range(F.Q))
    assert all(F.frob(x) == F.power(x, q) for x in range(F.Q))
    if not F.odd:
        assert F.frob(F.delta) == F.add(1, F.delta)


@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_squareness_transfer(q):
    F = tower_for_q(q)
    squares = {F.mul(y, y) for y in range(F.Q)}
    for x in range(F.Q):
        assert F.is_square(x) == (x in squares)
        assert F.is_square(x) == F.is_square(F.norm(x), subfield=True)
    sub_sq = {F.mul(y, y) for y in F.subfield} - {0}
    assert len(sub_sq) == (q - 1) // 2
    assert not F.is_square(F.zeta)
    assert F.is_square(1)


@pytest.mark.parametrize("q", [4, 8, 16, 32, 64])
def test_trace(q):
    F = tower_for_q(q)
    S = F.subfield
    assert F.abs_trace(0) == 0
    assert F.abs_trace(F.v) == 1
    assert sum(1 for x in S if F.abs_trace(x) == 0) == q // 2
    for x in S:
        assert F.abs_trace(F.add(x, F.mul(x, x))) == 0
        for y in S[:8]:
            assert F.abs_trace(F.add(x, y)) == F.abs_trace(x) ^ F.abs_trace(y)


def test_trace_rejects_odd():
    with pytest.raises(FieldError):
        tower_for_q(3).abs_trace(1)


@pytest.mark.parametrize("q", ALL_Q)
def test_decompose_roundtrip(q):
    F = tower_for_q(q)
    assert F.decompose(F.tau) == (0, 1)
    for x in F.subfield:
        assert F.decompose(x) == (x, 0)
    pairs = set()
    for x in range(F.Q):
        x0, x1 = F.decompose(x)
        assert F.in_subfield(x0) and F.in_subfield(x1)
        assert F.recompose(x0, x1) == x
        pairs.add((x0, x1))
        assert F.from_coords(F.coords(x)) == x
    assert len(pairs) == F.Q


def test_decompose_zeta_q3_by_linear_system():
    F = make_tower(3, 1)
    # solve zeta = a + b*eps over GF(3) by trying the 9 pairs
    sols = [(a, b) for a in F.subfield for b in F.subfield if F.add(a, F.mul(b, F.eps)) == F.zeta]
    assert sols == [F.decompose(F.zeta)]


@pytest.mark.parametrize("p,h", [(4, 1), (6, 1), (2, 1), (2, 7), (3, 4)])
def test_rejections(p, h):
    with pytest.raises(FieldError):
        make_tower(p, h)


def test_cap():
    assert MAX_Q == 64
    assert tower_for_q(64).Q == 4096


def test_deterministic_json():
    a = make_tower(3, 2).to_json()
    assert a == make_tower(3, 2).to_json()
    assert set(a) >= {"p", "h", "q", "modulus_q", "modulus_q2", "zeta", "epsilon", "w"}


small = st.sampled_from([3, 4, 5, 8, 9])


@settings(max_examples=200, deadline=None)
@given(small, st.data())
def test_field_axioms(q, data):
    F = tower_for_q(q)
    el = st.integers(0, F.Q - 1)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(F.sub(a, b), b) == a
    assert F.norm(F.mul(a, b)) == F.mul(F.norm(a), F.norm(b))
    assert F.in_subfield(F.norm(a))
    if a:
        assert F.mul(a, F.inv(a)) == 1
        assert F.div(F.mul(a, b), a) == b
    assert F.frob(F.mul(a, b)) == F.mul(F.frob(a), F.frob(b))
    assert F.frob(F.add(a, b)) == F.add(F.frob(a), F.frob(b))


@settings(max_examples=100, deadline=None)
@given(small, st.data())
def test_numpy_tables_agree(q, data):
    F = tower_for_q(q)
    T = F.np
    el = st.integers(0, F.Q - 1)
    a, b = data.draw(el), data.draw(el)
    assert T.mul[a, b] == F.mul(a, b)
    assert T.add[a, b] == F.add(a, b)
    assert T.sub[a, b] == F.sub(a, b)
    assert T.frob[a] == F.frob(a)
    if a:
        assert T.inv[a] == F.inv(a)


def poly_rem(a, m, p):
    a = list(a)
    inv = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = a[-1] * inv % p
        shift = len(a) - len(m)
        for i, x in enumerate(m):
            a[shift + i] = (a[shift + i] - c * x) % p
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return a


def reducible(mod, p):
    n = len(mod) - 1
    for d in range(1, n // 2 + 1):
        for k in range(p ** d):
            f = [(k // p ** i) % p for i in range(d)] + [1]
            if not poly_rem(mod, f, p):
                return True
    return False


@pytest.mark.parametrize("q", [3, 4, 5, 8, 9])
def test_modulus_is_first_irreducible(q):
    F = tower_for_q(q)
    p, n = F.p, F.n
    assert len(F.modulus) == n + 1 and F.modulus[-1] == 1
    assert not reducible(F.modulus, p)
    rank = sum(c * p ** i for i, c in enumerate(F.modulus[:-1]))
    for k in range(rank):
        earlier = [(k // p ** i) % p for i in range(n)] + [1]
        assert reducible(earlier, p)
