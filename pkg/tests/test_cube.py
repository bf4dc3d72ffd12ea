import pytest
from hypothesis import given, strategies as st

from lmqlab.cube import (
    ENUMERATION_CAP,
    CubePoint,
    DimensionMismatch,
    enumerate_cube,
    flip,
    hamming_distance,
    in_ball,
    masks_at_distance,
)


def P(text: str) -> CubePoint:
    return CubePoint.from_string(text)


def test_hamming_identity():
    assert hamming_distance(P("+++"), P("+++")) == 0


def test_hamming_counts_differing_coordinates():
    assert hamming_distance(P("+-+"), P("---")) == 2


def test_hamming_full_complement():
    x = P("+-+-+")
    y = CubePoint.from_bits([-b for b in x.bits])
    assert hamming_distance(x, y) == 5


def test_hamming_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        hamming_distance(P("++"), P("+++"))


def test_flip_definition():
    assert flip(P("++"), 1) == P("-+")


def test_flip_out_of_range():
    with pytest.raises(ValueError):
        flip(P("++"), 3)
    with pytest.raises(ValueError):
        flip(P("++"), 0)


@given(st.integers(1, 12).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, 2 ** n - 1), st.integers(1, n))))
def test_flip_involution_and_distance(case):
    n, mask, j = case
    x = CubePoint(n, mask)
    assert flip(flip(x, j), j) == x
    assert hamming_distance(x, flip(x, j)) == 1


@given(
    st.integers(1, 10).flatmap(
        lambda n: st.tuples(*(st.integers(0, 2 ** n - 1),) * 3).map(
            lambda ms: tuple(CubePoint(n, m) for m in ms)
        )
    )
)
def test_hamming_is_a_metric(points):
    x, y, z = points
    assert hamming_distance(x, y) == hamming_distance(y, x)
    assert (hamming_distance(x, y) == 0) == (x == y)
    assert hamming_distance(x, z) <= hamming_distance(x, y) + hamming_distance(y, z)


def test_in_ball_basic_cases():
    assert in_ball(P("-+"), [P("++")], 1) is True
    assert in_ball(P("-+"), [P("++")], 0) is False
    assert in_ball(P("-+"), [P("--"), P("-+")], 0) is True
    assert in_ball(P("-+"), [], 5) is False


def test_in_ball_matches_min_distance_exhaustively():
    anchors = [P("++-"), P("---")]
    for z in enumerate_cube(3):
        best = min(hamming_distance(z, a) for a in anchors)
        for q in range(4):
            assert in_ball(z, anchors, q) == (best <= q)


def test_enumerate_base_case_and_order():
    assert [p.bits for p in enumerate_cube(1)] == [(-1,), (1,)]
    two = [p.to_string() for p in enumerate_cube(2)]
    assert two == ["--", "-+", "+-", "++"]


def test_enumerate_cardinality():
    points = list(enumerate_cube(6))
    assert len(points) == 64
    assert len(set(points)) == 64


def test_enumerate_large_stream_count():
    assert sum(1 for _ in enumerate_cube(20)) == 1_048_576


def test_enumerate_cap_error_names_cap():
    with pytest.raises(ValueError, match=str(ENUMERATION_CAP)):
        list(enumerate_cube(ENUMERATION_CAP + 1))


def test_string_round_trip():
    for p in enumerate_cube(4):
        assert CubePoint.from_string(p.to_string()) == p


def test_from_bits_validation():
    with pytest.raises(ValueError):
        CubePoint.from_bits([1, 0, -1])
    with pytest.raises(ValueError):
        CubePoint.from_string("+x-")


def test_masks_at_distance_counts():
    masks = set(masks_at_distance(0b1010, 4, 2))
    assert len(masks) == 6
    assert all((m ^ 0b1010).bit_count() == 2 for m in masks)
