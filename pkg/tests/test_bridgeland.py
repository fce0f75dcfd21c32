from fractions import Fraction as F

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from oracles import alpha as A, beta as B, sympy_central_charge, sympy_wall_poly
from tiltwall.bridgeland import (
    BridgelandPoint,
    DegenerateHitError,
    Poly,
    bridgeland_wall_function,
    crossings_to_json,
    hyperbola_offset_path,
    lambda_slope,
    q_bridgeland,
    trace_path_crossings,
    z_bridgeland,
)
from tiltwall.chern import ChernCharacter, line_bundle_ch
from tiltwall.tilt import INF, TiltPoint, bmt_coefficients, hyperbola

CUBIC = ChernCharacter.of(1, 0, -3, 5)
PAIRS = [ChernCharacter.of(1, -1, "1/2", "-1/6"), ChernCharacter.of(1, -1, "1/2", "-7/6"), ChernCharacter.of(3, -6, 6, -4)]

small = st.builds(F, st.integers(-12, 12), st.sampled_from([1, 2, 3, 6]))
classes = st.builds(ChernCharacter, small, small, small, small)
pos = st.builds(F, st.integers(1, 40), st.integers(1, 8))


def to_sympy(poly: Poly):
    return sp.Poly(sum(sp.Rational(c.numerator, c.denominator) * A**i * B**j for (i, j), c in poly.terms.items()) + 0 * A, A, B)


def test_central_charge_examples():
    re, im = z_bridgeland(-line_bundle_ch(0), BridgelandPoint(1, -1, 1))
    assert im == 0
    # ch^{-3}(v) = (1, 3, 3/2, 1/2), from ch^beta = (1, -beta, beta^2/2 - 3, -beta^3/6 + 3 beta + 5)
    assert z_bridgeland(CUBIC, BridgelandPoint(1, -3, 1)) == (3, 1)


def test_lambda_examples():
    for s in (F(1, 3), 1, 5):
        assert lambda_slope(-line_bundle_ch(0), BridgelandPoint(1, -1, s)) == INF
    assert lambda_slope(CUBIC, BridgelandPoint(1, -3, 1)) == -3
    with pytest.raises(ValueError):
        lambda_slope(ChernCharacter.of(0, 0, 0, 0), BridgelandPoint(1, 0))


@given(classes, pos, small, pos)
def test_lambda_invariant_under_shift(v, a2, b, s):
    p = BridgelandPoint(a2, b, s)
    if z_bridgeland(v, p) == (0, 0):
        return
    assert lambda_slope(v, p) == lambda_slope(-v, p)


def test_bridgeland_point_validation():
    with pytest.raises(ValueError):
        BridgelandPoint(1, 0, 0)
    with pytest.raises(ValueError):
        BridgelandPoint(-1, 0, 1)


def test_q_bridgeland_examples():
    o = line_bundle_ch(0)
    for a2, b, k in ((1, 0, 1), (F(1, 3), F(-7, 2), 3)):
        assert q_bridgeland(o, o, a2, b, k) == 0
    for a2, b in ((1, -3), (F(1, 4), F(-5, 2)), (7, 2)):
        assert q_bridgeland(CUBIC, CUBIC, a2, b) == 6 * a2 + 6 * b * b + 30 * b + 36


@given(st.integers(-5, 5), pos, small, pos)
def test_q_vanishes_on_line_bundles(n, a2, b, k):
    v = line_bundle_ch(n)
    assert q_bridgeland(v, v, a2, b, k) == 0


@given(classes, classes, pos, small)
def test_q_symmetric(v, w, a2, b):
    assert q_bridgeland(v, w, a2, b) == q_bridgeland(w, v, a2, b)


@given(classes, pos, small)
def test_q_at_k1_is_bmt(v, a2, b):
    q, x, y = bmt_coefficients(v)
    assert q_bridgeland(v, v, a2, b, 1) == q * a2 + q * b * b + x * b + y


@given(classes, classes, st.sampled_from([F(1), F(1, 3), F(5, 2)]))
def test_wall_function_matches_sympy(v, w, s):
    f = bridgeland_wall_function(v, w, s)
    assert to_sympy(f.poly) == sympy_wall_poly(v, w, s)
    assert f.poly.degree() <= 4
    assert all(i % 2 == 0 for i, _ in f.poly.terms)
    assert bridgeland_wall_function(w, v, s).poly == -f.poly


@given(classes, pos, small)
def test_imaginary_part_is_hyperbola(v, a2, b):
    _, im = z_bridgeland(v, BridgelandPoint(a2, b))
    assert 2 * im == -hyperbola(v)(a2, b)


@given(classes)
def test_imaginary_part_is_hyperbola_symbolically(v):
    _, im = sympy_central_charge(v)
    h = hyperbola(v)
    ref = -(sp.Rational(str(h.a)) * A**2 - sp.Rational(str(h.a)) * B**2 + sp.Rational(str(h.b)) * B + sp.Rational(str(h.c0))) / 2
    assert sp.expand(im - ref) == 0


def test_wall_function_examples():
    assert bridgeland_wall_function(CUBIC, 3 * CUBIC, 1).is_zero()
    f = bridgeland_wall_function(CUBIC, 3 * line_bundle_ch(-2), 1)
    values = [f(F(1, 4) - (b + F(5, 2)) ** 2, b) for b in (F(-5, 2), F(-9, 4))]
    assert any(x != 0 for x in values)
    with pytest.raises(ValueError):
        bridgeland_wall_function(CUBIC, CUBIC, 0)


def test_offset_path():
    path = hyperbola_offset_path(CUBIC, F(1, 10), (-6, F(-5, 2)), 16)
    assert len(path) == 17
    assert path[0].beta == -6 and path[-1].beta == F(-5, 2)
    for p in path:
        assert p.alpha_sq == F(81, 100) * (p.beta**2 - 6)
        r, c, d, _ = CUBIC
        assert d - p.beta * c + p.beta**2 / 2 * r - p.alpha_sq / 2 * r > 0


def test_offset_path_rejections():
    with pytest.raises(ValueError):
        hyperbola_offset_path(CUBIC, F(1, 10), (-6, -1), 8)  # leaves the branch
    with pytest.raises(ValueError):
        hyperbola_offset_path(CUBIC, 0, (-6, -3), 8)
    with pytest.raises(ValueError):
        hyperbola_offset_path(ChernCharacter.of(0, 1, 0, 0), F(1, 10), (-6, -3), 8)


def _order(eps, steps=256):
    path = hyperbola_offset_path(CUBIC, eps, (-6, F(-5, 2)), steps)
    return trace_path_crossings(CUBIC, PAIRS, path, 1)


@pytest.mark.parametrize("eps", [F(1, 10), F(1, 50), F(1, 100)])
def test_crossing_order(eps):
    crossings = _order(eps)
    assert [c.pair_index for c in crossings] == [0, 1, 2]
    for c in crossings:
        assert 0 <= c.t_lo <= c.t_hi <= 1
        assert c.t_hi - c.t_lo <= F(1, 2**20)
    assert crossings[0].t_hi < crossings[1].t_lo


def test_crossing_brackets_change_sign():
    path = hyperbola_offset_path(CUBIC, F(1, 50), (-6, F(-5, 2)), 64)
    n = len(path) - 1
    for c in trace_path_crossings(CUBIC, PAIRS, path, 1):
        f = bridgeland_wall_function(CUBIC, PAIRS[c.pair_index], 1)

        def at(t):
            k = min(int(t * n), n - 1)
            u = t * n - k
            p, q = path[k], path[k + 1]
            return f(p.alpha_sq + u * (q.alpha_sq - p.alpha_sq), p.beta + u * (q.beta - p.beta))

        assert at(c.t_lo) * at(c.t_hi) < 0


def test_refinement_is_stable():
    a = [c.pair_index for c in _order(F(1, 50), 256)]
    b = [c.pair_index for c in _order(F(1, 50), 512)]
    assert a == b


def test_trace_rejections():
    path = hyperbola_offset_path(CUBIC, F(1, 10), (-6, -3), 8)
    with pytest.raises(ValueError):
        trace_path_crossings(CUBIC, [CUBIC], path, 1)
    with pytest.raises(ValueError):
        trace_path_crossings(CUBIC, PAIRS, path[:1], 1)
    with pytest.raises(ValueError):
        trace_path_crossings(CUBIC, PAIRS, [path[0], path[0]], 1)


def test_constant_sign_pair_has_no_crossings():
    path = hyperbola_offset_path(CUBIC, F(1, 10), (-6, -3), 32)
    assert trace_path_crossings(CUBIC, [ChernCharacter.of(0, 0, 0, 1)], path, 1) == []


def test_degenerate_hit():
    # w = point class: Re Z(w) = -1, Im Z(w) = 0, so the wall function is Im Z(v),
    # which vanishes on the hyperbola
    w = ChernCharacter.of(0, 0, 0, 1)
    b = F(-4)
    hit = TiltPoint(hyperbola(CUBIC).alpha_sq_at(b), b)
    path = [TiltPoint(1, -5), hit, TiltPoint(1, -3)]
    with pytest.raises(DegenerateHitError):
        trace_path_crossings(CUBIC, [w], path, 1)


def test_crossings_json():
    crossings = _order(F(1, 50), 64)
    data = crossings_to_json(1, F(1, 50), PAIRS, crossings)
    assert set(data) == {"s", "epsilon", "pairs", "crossings"}
    assert data["pairs"][0] == ["1", "-1", "1/2", "-1/6"]
    row = data["crossings"][0]
    assert set(row) == {"pair_index", "t_lo", "t_hi", "beta_mid", "alpha_sq_mid"}
    assert F(row["t_lo"]) == crossings[0].t_lo
