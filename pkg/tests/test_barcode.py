from fractions import Fraction

from hypothesis import given, strategies as st
import pytest

from tamcalc.barcode import (
    EMPTY, Bar, Barcode, Interval, NoFundamentalClass, bar, boundary_depth, from_json, shift,
    spectral_invariants, tau_vanishes, tensor_ray, to_json, torsion_threshold, translate,
)
from tamcalc.scalar import NEG_INF, POS_INF, S, Scalar, get_scale, set_scale

from strategies import any_bars, barcodes, half_open_bars


# scalars ---------------------------------------------------------------------

def test_scalar_exact_arithmetic():
    assert S("0.1") + S("0.2") == S("0.3")
    assert S(Fraction(1, 4)) * 3 == S("0.75")
    assert NEG_INF < S(-10**12) < S(0) < POS_INF
    assert (POS_INF + 5) == POS_INF
    with pytest.raises(ArithmeticError):
        POS_INF + NEG_INF


def test_scalar_rejects_sub_tick_values():
    with pytest.raises(ValueError):
        S(Fraction(1, 3))


def test_scalar_float_rounds_once():
    assert Scalar.from_float(0.5) == S("0.5")
    assert S(1.0000000001) == S(1)


def test_set_scale_roundtrip():
    old = get_scale()
    try:
        set_scale(1000)
        assert S("0.001").num == 1
    finally:
        set_scale(old)


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_scalar_order_matches_integers(a, b):
    assert (S(a) < S(b)) == (a < b)
    assert S(a) - S(b) == S(a - b)


# intervals and barcodes --------------------------------------------------------

def test_empty_interval_is_never_built():
    with pytest.raises(ValueError):
        Interval(S(1), S(1))
    assert Interval.maybe(2, 1) is None


def test_infinite_ends_are_open():
    iv = Interval(NEG_INF, POS_INF, False, False)
    assert iv.lo_open and iv.hi_open


def test_multiplicities_merge():
    B = Barcode([bar(0, 1), bar(0, 1), bar(0, 1, 1)])
    assert len(B) == 2
    assert B.total_multiplicity == 3


def test_shift_examples():
    assert shift(Barcode([bar(0, 1)]), 2) == Barcode([bar(0, 1, 2)])
    assert shift(EMPTY, 5) == EMPTY
    assert shift(Barcode([bar(0, 1), bar(0, 1, 1)]), -1) == Barcode([bar(0, 1, -1), bar(0, 1)])


def test_translate_examples():
    assert translate(Barcode([bar(0, 1)]), 1) == Barcode([bar(1, 2)])
    assert translate(Barcode([bar(0, "inf")]), -2) == Barcode([bar(-2, "inf")])
    got = translate(Barcode([bar(0, 1, 1, lo_open=True)]), S("0.5"))
    assert got == Barcode([bar("0.5", "1.5", 1, lo_open=True)])


def test_tensor_ray_examples():
    assert tensor_ray(Barcode([bar("-inf", 3)])) == Barcode([bar(0, 3)])
    assert tensor_ray(Barcode([bar(-2, -1)])) == EMPTY
    B = Barcode([bar(1, 4, 1, lo_open=True)])
    assert tensor_ray(B) == B


def test_tau_examples():
    assert tau_vanishes(Barcode([bar(0, 1)]), 1)
    assert not tau_vanishes(Barcode([bar(0, "inf")]), 100)
    assert tau_vanishes(EMPTY, 0)
    with pytest.raises(ValueError):
        tau_vanishes(EMPTY, -1)


def test_torsion_threshold_table():
    a, b = S(1), S(4)
    assert torsion_threshold(Interval(a, b)) == S(3)
    assert torsion_threshold(Interval(a, b, True, False)) == S(0)
    assert torsion_threshold(Interval(a, POS_INF, True)) == S(0)
    for iv in (Interval(a, b, True, True), Interval(a, b, False, False), Interval(a, POS_INF),
               Interval(NEG_INF, b), Interval(NEG_INF, b, True, False),
               Interval(NEG_INF, POS_INF)):
        assert torsion_threshold(iv) == POS_INF


def test_boundary_depth_examples():
    assert boundary_depth(Barcode([bar(0, 2), bar(1, 2)])) == S(2)
    assert boundary_depth(EMPTY) == S(0)
    assert boundary_depth(Barcode([bar(0, "inf")])) == POS_INF


def test_spectral_examples():
    sd = spectral_invariants(Barcode([bar(0, "inf"), bar(1, "inf", -1), bar("0.3", "0.7")]))
    assert (sd.c_minus, sd.c_plus, sd.gamma) == (S(0), S(1), S(1))
    sd = spectral_invariants(Barcode([bar(5, "inf")]))
    assert (sd.c_minus, sd.c_plus, sd.gamma) == (S(5), S(5), S(0))
    with pytest.raises(NoFundamentalClass, match="no fundamental classes"):
        spectral_invariants(Barcode([bar(0, 2)]))


# properties ----------------------------------------------------------------

def _candidates(B):
    ends = {S(0)}
    for b in B:
        for x in (b.interval.lo, b.interval.hi):
            for y in (b.interval.lo, b.interval.hi):
                if x.finite and y.finite and x >= y:
                    ends.add(x - y)
    return sorted(ends)


@given(barcodes(any_bars()))
def test_boundary_depth_is_least_vanishing_c(B):
    beta = boundary_depth(B)
    if beta.finite:
        assert tau_vanishes(B, beta)
    hits = [c for c in _candidates(B) if tau_vanishes(B, c)]
    assert (hits[0] if hits else POS_INF) == beta


@given(barcodes(any_bars()), barcodes(any_bars()))
def test_boundary_depth_of_sum_is_max(B1, B2):
    assert boundary_depth(B1 + B2) == max(boundary_depth(B1), boundary_depth(B2))


@given(barcodes(any_bars()), st.integers(0, 20), st.integers(0, 20))
def test_tau_monotone(B, c, extra):
    if tau_vanishes(B, c):
        assert tau_vanishes(B, c + extra)


@given(barcodes(any_bars()), st.integers(-5, 5), st.integers(-3, 3))
def test_boundary_depth_invariant_under_translate_and_shift(B, c, k):
    beta = boundary_depth(B)
    assert boundary_depth(translate(B, c)) == beta
    assert boundary_depth(shift(B, k)) == beta
    assert shift(shift(B, k), -k) == B


@given(barcodes(half_open_bars(lo=-10, hi=10)))
def test_tensor_ray_idempotent(B):
    once = tensor_ray(B)
    assert tensor_ray(once) == once


@given(barcodes(any_bars()))
def test_json_roundtrip_is_byte_identical(B):
    text = to_json(B)
    assert from_json(text) == B
    assert to_json(from_json(text)) == text


def test_json_rejects_endpoints_finer_than_scale():
    with pytest.raises(ValueError, match="finer than the declared scale"):
        from_json('{"scale": 10, "bars": [{"lo": 0.01, "hi": 1}]}')


def test_bar_requires_positive_multiplicity():
    with pytest.raises(ValueError):
        Bar(Interval(S(0), S(1)), 0, 0)
