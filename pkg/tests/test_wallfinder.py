import random
from fractions import Fraction as F

import pytest

from oracles import naive_walls
from tiltwall.chern import ChernCharacter, line_bundle_ch, validate_integrality
from tiltwall.tilt import bmt_region, hyperbola, lemma22_window, numerical_wall, twist_truncated
from tiltwall.wallfinder import (
    NoWallsError,
    NonPositiveDegreeError,
    OnVerticalWallError,
    brute_force_walls,
    enumerate_walls_on_line,
    largest_wall_bound,
    reports_to_json,
    restrict_to_box,
    scan_all_walls,
    smallest_wall,
    two_line_bundle_class,
)

CUBIC = ChernCharacter.of(1, 0, -3, 5)


def summary(reports):
    return [(rep.wall.center, rep.wall.radius_sq) for rep in reports]


def test_line_minus_two():
    reports = enumerate_walls_on_line(CUBIC, -2)
    assert summary(reports) == [(F(-7, 2), F(25, 4))]
    assert {tuple(w.twisted) for w in reports[0].witnesses} == {(0, 1, F(-3, 2)), (1, 1, F(1, 2))}
    assert reports[0].alpha_sq_on_line == 4


def test_line_minus_five_halves():
    reports = enumerate_walls_on_line(CUBIC, F(-5, 2))
    assert summary(reports) == [(F(-7, 2), F(25, 4)), (F(-5, 2), F(1, 4))]
    assert [rep.alpha_sq_on_line for rep in reports] == [F(21, 4), F(1, 4)]


def test_witness_invariants():
    for b in (F(-2), F(-5, 2), F(-3), F(-13, 3)):
        for rep in enumerate_walls_on_line(CUBIC, b):
            R, C, D = twist_truncated(CUBIC, b)
            for w in rep.witnesses:
                r, c, d = w.twisted
                assert 0 < c < C
                assert lemma22_window(CUBIC, w.untwisted)
                assert w.alpha_sq == 2 * (d * C - D * c) / (r * C - R * c) > 0
                assert rep.wall.contains(w.alpha_sq, b)
                assert numerical_wall(CUBIC, w.untwisted) == rep.wall


def test_preconditions():
    with pytest.raises(OnVerticalWallError):
        enumerate_walls_on_line(CUBIC, 0)
    with pytest.raises(NonPositiveDegreeError):
        enumerate_walls_on_line(CUBIC, 1)
    with pytest.raises(NoWallsError):
        enumerate_walls_on_line(ChernCharacter.of(0, 0, 1, 0), 1)


def test_json_report():
    data = reports_to_json(F(-2), enumerate_walls_on_line(CUBIC, -2))
    assert data["line"] == "-2"
    wall = data["walls"][0]
    assert wall["wall"]["center"] == "-7/2"
    assert wall["alpha_sq_on_line"] == "4"
    assert {"r", "c_twisted", "d_twisted", "c", "d"} <= set(wall["witnesses"][0])


def test_brute_force_examples():
    assert summary(brute_force_walls(CUBIC, -2, 8)) == [(F(-7, 2), F(25, 4))]
    assert brute_force_walls(CUBIC, -2, 0) == []


def _random_lattice_class(rng, bound=6):
    while True:
        r = rng.randint(-bound, bound)
        c = rng.randint(-bound, bound)
        d = F(rng.randint(-2 * bound, 2 * bound), 2)
        e = F(rng.randint(-6 * bound, 6 * bound), 6)
        v = ChernCharacter.of(r, c, d, e)
        if validate_integrality(v) and (r, c) != (0, 0):
            return v


def _oriented(v, b):
    R, C, _ = twist_truncated(v, b)
    if C == 0:
        return None
    return v if C > 0 else -v


@pytest.mark.parametrize("seed", range(10))
def test_enumerate_matches_naive_oracle(seed):
    rng = random.Random(seed)
    w = None
    while w is None:
        v = _random_lattice_class(rng, 4)
        b = F(rng.randint(-9, 9), rng.randint(1, 3))
        w = _oriented(v, b)
    got = {
        (rep.wall.center, rep.wall.radius_sq): {tuple(x.twisted) for x in rep.witnesses}
        for rep in restrict_to_box(enumerate_walls_on_line(w, b), 5)
    }
    assert got == naive_walls(tuple(w), b, 5)


def test_smallest_wall_examples():
    w = smallest_wall(-2, -3, 3, 2)
    assert (w.center, w.radius_sq) == (F(-5, 2), F(1, 4))
    w = smallest_wall(1, 0, 1, 1)
    assert (w.center, w.radius_sq) == (F(1, 2), F(1, 4))
    assert smallest_wall(3, -1, 1, 2) == smallest_wall(3, -1, 3, 1)
    with pytest.raises(ValueError):
        smallest_wall(0, 0, 1, 1)
    assert two_line_bundle_class(-2, -3, 3, 2) == CUBIC
    assert bmt_region(CUBIC) == smallest_wall(-2, -3, 3, 2)


def test_largest_wall_bound_examples():
    w = largest_wall_bound(CUBIC, "left")
    assert (w.x, w.y, w.z) == (1, 7, 6)
    assert (w.center, w.radius_sq) == (F(-7, 2), F(25, 4))
    line = ChernCharacter.of(1, 0, -1, 1)
    assert largest_wall_bound(line, "left") == numerical_wall(line, (1, -1, F(1, 2)))
    dual = ChernCharacter.of(1, 0, -3, -5)
    right = largest_wall_bound(dual, "right")
    assert (right.center, right.radius_sq) == (F(7, 2), F(25, 4))
    with pytest.raises(ValueError):
        largest_wall_bound(ChernCharacter.of(2, 0, -3, 5))


def test_scan_examples():
    assert summary(scan_all_walls(CUBIC, "left")) == [(F(-7, 2), F(25, 4)), (F(-5, 2), F(1, 4))]
    assert scan_all_walls(line_bundle_ch(0), "left") == []
    line = ChernCharacter.of(1, 0, -1, 1)
    assert [r.wall for r in scan_all_walls(line, "left")] == [numerical_wall(line, line_bundle_ch(-1))]


def test_scan_dual_cubic_right_side_mirrors():
    dual = ChernCharacter.of(1, 0, -3, -5)
    assert summary(scan_all_walls(dual, "right")) == [(F(7, 2), F(25, 4)), (F(5, 2), F(1, 4))]


def test_scan_found_walls_agree_with_oracle_on_their_lines():
    line = ChernCharacter.of(1, 0, -1, 1)
    oracle = naive_walls(tuple(line), F(-3, 2), 6)
    assert set(oracle) == {(F(-3, 2), F(1, 4))}


def test_scan_without_bound_uses_fixpoint():
    v = ChernCharacter.of(2, -1, F(-3, 2), F(1, 3))
    walls = scan_all_walls(v, "left")
    for rep in walls:
        assert rep.wall.center < F(-1, 2)
        assert hyperbola(v)(rep.wall.radius_sq, rep.wall.center) == 0


def test_scan_explicit_lines():
    reports = scan_all_walls(CUBIC, "left", lines=[-2])
    assert summary(reports) == [(F(-7, 2), F(25, 4))]
