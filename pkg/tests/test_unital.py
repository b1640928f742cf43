import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bmfeet.fields import tower_for_q
from bmfeet.unital import (BETA_IN_SUBFIELD, D_IS_SQUARE, TRACE_ONE, InvalidParams, Unital,
                           discriminant, iter_valid_params, validate_params)

from conftest import first_params


def brute_points(U):
    """Points of U straight from the defining equation, scanning the plane."""
    P = U.plane
    return sorted(i for i in range(P.N) if U.contains_algebraic(P.triple(i)))


@pytest.mark.parametrize("q,kw", [(3, {}), (3, {"classical": True}), (4, {}), (5, {"square": True}),
                                  (5, {"square": False})])
def test_unital_is_unital(q, kw):
    U = Unital(first_params(q, **kw))
    assert len(U) == q ** 3 + 1
    assert set(U.secant_profile()) == {1, q + 1}
    assert sorted(U.points.tolist()) == brute_points(U)


@pytest.mark.parametrize("q", [3, 4, 5])
def test_tangent_formula(q):
    U = Unital(first_params(q))
    tl = U.tangent_lines
    assert (U.line_counts[tl] == 1).all()
    P = U.plane
    for i in range(0, len(U.points), 7):
        p = int(U.points[i])
        assert P.incident(p, int(tl[i]))
        assert U.tangent_at(p) == int(tl[i])
    with pytest.raises(ValueError):
        U.tangent_at(int(np.flatnonzero(~U.member)[0]))


def test_classical_is_hermitian():
    F = tower_for_q(3)
    p = next(p for p in iter_valid_params(F) if p.is_classical)
    U = Unital(p)
    # with alpha = 0 every affine point has y - beta N(x) in GF(q)
    for pid in U.points[:-1]:
        x, y, _ = U.plane.triple(int(pid))
        assert F.in_subfield(F.sub(y, F.mul(p.beta, F.norm(x))))


def odd_validity_oracle(F, a, b):
    # d = (b^q - b)^2 + 4 a^(q+1) is in GF(q); valid iff d is a nonsquare there
    t = F.sub(F.power(b, F.q), b)
    d = F.add(F.mul(t, t), F.mul(F.from_int(4), F.power(a, F.q + 1)))
    assert F.in_subfield(d)
    return all(F.mul(y, y) != d for y in F.subfield)


def even_validity_oracle(F, a, b):
    bq = F.power(b, F.q)
    if bq == b:
        return False
    d = F.div(F.power(a, F.q + 1), F.power(F.add(b, bq), 2))
    tr, x = 0, d
    for _ in range(F.h):
        tr = F.add(tr, x)
        x = F.mul(x, x)
    return tr == 0


@pytest.mark.parametrize("q", [3, 4, 5])
def test_validity_matches_oracle(q):
    F = tower_for_q(q)
    oracle = odd_validity_oracle if F.odd else even_validity_oracle
    valid = {(p.alpha, p.beta) for p in iter_valid_params(F)}
    for a in range(F.Q):
        for b in range(F.Q):
            assert ((a, b) in valid) == oracle(F, a, b)


def test_rejection_reasons():
    F3 = tower_for_q(3)
    bad = next((a, b) for a in range(F3.Q) for b in range(F3.Q) if not odd_validity_oracle(F3, a, b))
    with pytest.raises(InvalidParams) as e:
        validate_params(F3, *bad)
    assert e.value.reason == D_IS_SQUARE
    F4 = tower_for_q(4)
    with pytest.raises(InvalidParams) as e:
        validate_params(F4, 1, 1)
    assert e.value.reason == BETA_IN_SUBFIELD
    bad = next((a, b) for a in range(16) for b in range(16)
               if not F4.in_subfield(b) and not even_validity_oracle(F4, a, b))
    with pytest.raises(InvalidParams) as e:
        validate_params(F4, *bad)
    assert e.value.reason == TRACE_ONE


def test_discriminant_in_subfield():
    for q in (3, 5, 4):
        F = tower_for_q(q)
        for a in range(F.Q):
            for b in range(F.Q):
                if F.odd or not F.in_subfield(b):
                    assert F.in_subfield(discriminant(F, a, b))


def test_counts_of_valid_pairs():
    # classical pairs: alpha = 0 with d = (b^q - b)^2 a nonsquare (q odd)
    F = tower_for_q(3)
    pairs = list(iter_valid_params(F))
    assert sum(p.is_classical for p in pairs) == sum(odd_validity_oracle(F, 0, b) for b in range(9))
    assert all(not p.is_conic_bm or not F.is_square(p.alpha) for p in pairs)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_membership_agrees(data):
    U = Unital(first_params(3))
    pid = data.draw(st.integers(0, U.plane.N - 1))
    assert U.contains(pid) == U.contains_algebraic(U.plane.triple(pid))


def test_summary_keys():
    U = Unital(first_params(4))
    s = U.summary()
    assert s["q"] == 4 and s["secant_profile"] == {"1": 65, "5": 208}
    assert not s["is_classical"]
