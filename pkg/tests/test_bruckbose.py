import numpy as np
import pytest

from bmfeet import bruckbose as bb
from bmfeet import linalg
from bmfeet.fields import tower_for_q
from bmfeet.pedal import affine_off_unital, pedal_brute
from bmfeet.unital import Unital

from conftest import first_params


def test_roundtrip(plane3):
    P = plane3
    for pid in range(0, P.Q * P.Q, 5):
        assert bb.from_bb(P, bb.to_bb(P, pid)) == pid
    with pytest.raises(bb.BruckBoseError):
        bb.to_bb(P, P.U_inf)


@pytest.mark.parametrize("q", [3, 4])
def test_spread(q, request):
    P = request.getfixturevalue(f"plane{q}")
    lines = bb.spread(P)
    assert len(lines) == q * q + 1
    assert all(len(l) == q + 1 for l in lines)
    assert bb.is_partition_of_infinity(P)


def test_regular_spread(plane3):
    assert bb.is_regular_spread(plane3)


def test_affine_lines_map_to_planes(plane3):
    P, F = plane3, plane3.F
    for l in (1, 7, 40, 55):
        on = [int(x) for x in P.points_on_line[l]]
        aff = [x for x in on if P.triple(x)[2] != 0]
        inf = next(x for x in on if P.triple(x)[2] == 0)
        vecs = [list(bb.to_bb(P, x)) for x in aff] + [list(v) for v in bb.spread_of_point(P, inf)]
        assert linalg.rank(F, vecs) == 3


@pytest.mark.parametrize("q", [3, 4])
def test_quadric_cone(q):
    U = Unital(first_params(q))
    r = bb.fit_quadric_cone(U)
    assert r["solution_dim"] == 1
    # q^3 affine images plus the q+1 points of one spread line
    assert r["zero_count"] == q ** 3 + q + 1
    assert r["zeros_equal_image"] and r["vertex_on_tinf_spread_line"] and r["elliptic_base"]
    assert r["base_points"] == q * q + 1


def test_pencil_threespace(unital4):
    U = unital4
    P = U.plane
    for b in affine_off_unital(U)[:20]:
        ps = pedal_brute(U, int(b))
        r = bb.pedal_pencil_3space(P, ps)
        assert r["pencil"] and r["rank_pencil"] == 4 and r["contained"]


def test_plane_profile_oracle():
    F = tower_for_q(3)
    e = [[1 if i == j else 0 for j in range(5)] for i in range(5)]
    # four points of one plane plus one point off it
    pts = [e[0], e[1], e[2], [1, 1, 1, 0, 0], e[3]]
    r = bb.plane_profile(F, pts)
    assert r["max"] == 4 and not r["all_collinear"]
    line = [e[0], e[1], [1, 1, 0, 0, 0]]
    assert bb.plane_profile(F, line) == {"max": 3, "histogram": {}, "all_collinear": True}


def test_bb_report_bounds(unital4):
    U = unital4
    P = U.plane
    rep = bb.bb_report(P, pedal_brute(U, int(affine_off_unital(U)[0])))
    assert rep["threespace_contained"]
    assert rep["max_plane_intersection"] <= 4


@pytest.mark.parametrize("q", [3, 4])
def test_affine_bijection(q, request):
    P = request.getfixturevalue(f"plane{q}")
    imgs = {bb.to_bb(P, pid) for pid in range(P.Q * P.Q)}
    assert len(imgs) == q ** 4
    assert all(v[4] == 1 for v in imgs)


def test_subline_through_tinf_maps_to_line(plane3):
    P, F = plane3, plane3.F
    for c in (0, 1, F.eps):
        sub = [P.id_of((c, s, 1)) for s in F.subfield]
        assert linalg.rank(F, [list(bb.to_bb(P, x)) for x in sub]) == 2
