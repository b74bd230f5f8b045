from hypothesis import given, strategies as st
import pytest

from tamcalc.barcode import EMPTY, Barcode, Interval, bar, shift
from tamcalc.homstar import UncoveredShape, V, hom_dim0, hom_star, hom_star_pair, v
from tamcalc.oracle import oracle_hom_star
from tamcalc.oracle.derived import morphism_dims
from tamcalc.oracle.grid import GridPoset, barcode_to_complex
from tamcalc.scalar import S

from strategies import barcodes, half_open_bars


def B(*bars):
    return Barcode(bars)


def test_pair_formulas():
    assert hom_star_pair(bar(3, "inf"), bar(5, "inf")) == B(bar("-inf", 2, 1))
    assert hom_star_pair(bar(0, 1), bar(0, 1)) == B(bar(-1, 0, 1), bar(0, 1))
    assert hom_star_pair(bar(0, 1), bar(2, 3)) == B(bar(1, 2, 1), bar(2, 3))


def test_ray_against_bounded_bar_is_closed_on_the_left():
    # value frozen from the grid oracle
    assert hom_star_pair(bar(0, "inf"), bar(2, 3)) == B(bar(2, 3))


def test_uncovered_shapes_are_rejected():
    with pytest.raises(UncoveredShape, match="grid oracle"):
        hom_star_pair(bar(0, 1, lo_open=True), bar(0, 1))


def test_hom_star_examples():
    assert hom_star(EMPTY, B(bar(0, 1))).barcode == EMPTY
    n, c = 2, 3
    assert hom_star(B(bar(0, "inf")), B(bar(c, "inf", -n))).barcode == B(bar("-inf", c, 1 - n))
    got = hom_star(B(bar(0, "inf"), bar(1, "inf")), B(bar(0, "inf"))).barcode
    assert got == B(bar("-inf", 0, 1), bar("-inf", -1, 1))


def test_provenance_covers_every_pair():
    F = B(bar(0, 1), bar(0, "inf"))
    G = B(bar(2, 3), bar(1, "inf"))
    res = hom_star(F, G)
    assert len(res.provenance) == 4
    union = Barcode(b for _, out in res.provenance for b in out)
    assert union == res.barcode
    assert res.audit_table().count("\n") == 5


def test_V_and_v_examples():
    ray = B(bar(0, "inf"))
    assert V(ray, ray) == EMPTY
    assert V(ray, B(bar(2, "inf"))) == B(bar(0, 2, 1))
    assert V(B(bar(0, 1)), B(bar(0, 1))) == B(bar(0, 1))
    assert v(ray, ray) == S(0)
    c = S(3)
    FG = B(bar(0, "inf"), bar(c, "inf", -1))
    assert v(FG, FG) == c
    assert v(EMPTY, EMPTY) == S(0)


def test_hom_dim0_examples():
    I = lambda a, b: Interval(S(a), S(b))
    assert hom_dim0(I(0, 2), I(1, 3)) == 1
    assert hom_dim0(I(1, 3), I(0, 2)) == 0
    assert hom_dim0(I(0, 1), I(0, 1)) == 1


@given(half_open_bars(hi=8, degrees=(0,), infinite=False), st.integers(0, 8))
def test_hom_dim0_consistent_with_tau(b, c):
    iv = b.interval
    moved = Interval(iv.lo + c, iv.hi + c)
    assert hom_dim0(iv, moved) == int(S(c) < iv.length)


@given(half_open_bars(hi=8, degrees=(0,)), half_open_bars(hi=8, degrees=(0,)))
def test_hom_dim0_matches_oracle_ext0(x, y):
    grid = GridPoset([t for b in (x, y) for t in (b.interval.lo, b.interval.hi) if t.finite])
    dims = morphism_dims(barcode_to_complex(B(x), grid), barcode_to_complex(B(y), grid))
    assert dims.get(0, 0) == hom_dim0(x.interval, y.interval)


@given(barcodes(min_size=1, max_size=2), barcodes(min_size=1, max_size=2),
       st.integers(-2, 2), st.integers(-2, 2))
def test_shift_covariance(F, G, p, q):
    assert hom_star(shift(F, p), shift(G, q)).barcode == shift(hom_star(F, G).barcode, q - p)


@given(half_open_bars(hi=10), half_open_bars(hi=10))
def test_closed_form_matches_oracle(x, y):
    assert hom_star(B(x), B(y)).barcode == oracle_hom_star(B(x), B(y))


@given(barcodes(half_open_bars(hi=10)), barcodes(half_open_bars(hi=10)),
       barcodes(half_open_bars(hi=10)))
def test_v_monotone_under_direct_sums(F1, F2, G):
    assert v(F1, G) <= v(F1 + F2, G)
    assert v(G, F1) <= v(G, F1 + F2)
