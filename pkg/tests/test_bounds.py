import math

from hypothesis import given, strategies as st
import numpy as np
import pytest

from tamcalc.bounds import (
    BoundRefused, GroupGeometry, chain_bound, chain_thresholds, cone_recursion, devissage,
    group_bound, homogeneous_bound, lacunary_steps, preset, verify_conjecture,
)
from tamcalc.lagrangian import TwoLobe, graph_s1, graph_s3, graph_t2, zero_section
from tamcalc.scalar import S, Scalar

PI = Scalar.from_float(math.pi)


def test_group_bound_instances():
    assert group_bound(1, PI, 0) == PI * 4
    assert group_bound(3, PI, 1) == (PI * 2 + 1) * 4


@given(st.integers(0, 6), st.integers(0, 20), st.integers(0, 20), st.integers(0, 5))
def test_group_bound_monotone(n, l, lm, extra):
    base = group_bound(n, l, lm)
    assert base <= group_bound(n + extra, l, lm)
    assert base <= group_bound(n, l + extra, lm)
    assert base <= group_bound(n, l, lm + extra)


def test_group_bound_rejects_negative():
    with pytest.raises(ValueError):
        group_bound(1, -1, 0)


def test_homogeneous_bound():
    h = homogeneous_bound(2, 3, PI, 0)
    assert h.displayed == PI * 50
    assert homogeneous_bound(1, 3, PI, 0).endpoint == group_bound(3, PI, 0)
    for m in range(11):
        h = homogeneous_bound(m, max(m, 1), PI, 1)
        assert h.endpoint <= h.displayed


def test_chain_bound():
    assert chain_bound([1, 2], S("0.5")) == S("6.5")
    assert chain_bound([], 3) == S(3)
    assert chain_bound([S("1.25")], 0) == S("2.5")


@given(st.lists(st.integers(0, 100), max_size=6), st.integers(0, 100))
def test_chain_bound_is_twice_length_plus_l_max(lengths, l_max):
    assert chain_bound(lengths, l_max) == S(2 * sum(lengths) + l_max)
    steps = chain_thresholds(lengths, l_max, 0)
    assert all(a <= b for a, b in zip(steps, steps[1:]))


def test_devissage():
    assert devissage({0: 1, 1: 1, 2: 1}, 2) == S(3)
    assert devissage({0: 0, 1: 0, 2: 0}, 2) == S(0)
    assert devissage({0: 1, 1: 2, 2: 3}, 2) == S(6)
    with pytest.raises(ValueError, match="missing"):
        devissage({0: 1}, 2)


@given(st.integers(0, 8), st.integers(0, 50))
def test_devissage_constant(n, c):
    assert devissage({k: c for k in range(n + 1)}, n) == S((n + 1) * c)


def test_cone_recursion():
    C = S(7)
    assert cone_recursion(0, 0, C) == C
    assert cone_recursion(1, 1, C) == C * 4
    for i in range(9):
        for j in range(9):
            assert cone_recursion(i, j, C) <= C * ((i + 1) * (j + 1))


def test_lacunary_steps():
    assert lacunary_steps({0: 1}, 5).steps == 0
    r = lacunary_steps({0: 1, 1: 1}, 3)
    assert r.steps == 1
    assert r.trace[1].tail_min_degree >= 3
    assert lacunary_steps({0: 1, 1: 2}, 2).steps == 1
    for m in range(11):
        r = lacunary_steps({0: 1, 1: 1, 3: 2}, m)
        assert r.steps == max(0, math.ceil((m - 1) / 2))
        for step in r.trace:
            assert step.tail_min_degree is None or step.tail_min_degree >= 2 * step.step + 1


def test_lacunary_faster_when_tail_starts_late():
    r = lacunary_steps({0: 1, 3: 1}, 9)
    assert r.steps == 4 and r.needed < r.steps


def test_lacunary_precondition():
    with pytest.raises(ValueError):
        lacunary_steps({0: 2}, 3)
    with pytest.raises(ValueError):
        lacunary_steps({-1: 1, 0: 1}, 3)


def test_presets():
    assert preset("u1").n == 1 and preset("u1").l == PI
    assert preset("t2").l == Scalar.from_float(math.pi * math.sqrt(2))
    s2 = preset("s2")
    assert (s2.dim, s2.n, s2.is_group) == (2, 3, False)
    with pytest.raises(ValueError):
        GroupGeometry("bad", 1, S(1), m=2)


def test_verify_half_sine():
    rep = verify_conjecture(graph_s1(lambda t: 0.5 * np.sin(t)), preset("u1"))
    assert rep.verdict == "PASS"
    assert rep.values["gamma"] == S(1)
    assert rep.values["bound"] == PI * 4


def test_verify_zero_section():
    rep = verify_conjecture(zero_section("s1"), preset("u1"))
    assert rep.verdict == "PASS" and rep.values["gamma"] == S(0)


def test_verify_torus_and_sphere():
    rep = verify_conjecture(graph_t2(lambda a, b: 0.5 * np.cos(a), 16), preset("t2"))
    assert rep.verdict == "PASS" and rep.values["gamma"] == S(1)
    rep = verify_conjecture(graph_s3(lambda p: 0.3 * p[:, 0]), preset("su2"))
    assert rep.verdict == "PASS"


def test_verify_refuses_outside_unit_ball():
    with pytest.raises(BoundRefused, match="⊄"):
        verify_conjecture(graph_s1(lambda t: 2 * np.sin(t)), preset("u1"))


def test_verify_curve_is_conditional():
    rep = verify_conjecture(TwoLobe().model(1024), preset("u1"))
    assert rep.verdict == "CONDITIONAL"
    assert rep.values["l_max"] > S(0)
    assert rep.values["bound"] == group_bound(1, PI, rep.values["l_max"])


def test_report_is_deterministic():
    model = graph_s1(lambda t: 0.5 * np.sin(t))
    a = verify_conjecture(model, preset("u1")).to_markdown()
    b = verify_conjecture(model, preset("u1")).to_markdown()
    assert a == b and "sha256" in a
