import pytest
from hypothesis import given, strategies as st

from modbgg.alcove import affine_reflect
from modbgg.rootdata import (
    UnsupportedGroup,
    build_datum,
    dot_action,
    group,
    is_dominant,
    is_M_dominant,
    mat_apply,
    mat_inv,
    minimal_coset_reps,
    neg,
    pair,
    weyl_length,
)

ints = st.integers(-60, 60)


def test_gl3_datum():
    d = build_datum("GL", 3, "block(2,1)")
    assert d.simple_roots == ((1, -1, 0), (0, 1, -1))
    assert d.levi_simple_roots == ((1, -1, 0),)
    assert len(d.weyl) == 6
    assert mat_apply(d.w0, (1, 2, 3)) == (3, 2, 1)


def test_gsp4_datum():
    d = build_datum("GSp", 4, "siegel")
    a, b = (1, -1), (0, 2)
    assert set(d.positive_roots) == {a, b, (1, 1), (2, 0)}
    assert d.levi_simple_roots == (a,)
    assert d.rho == (2, 1)
    assert mat_apply(d.w0, (3, 5)) == (-3, -5)


def test_unsupported_groups():
    with pytest.raises(UnsupportedGroup):
        build_datum("SO", 5)
    with pytest.raises(UnsupportedGroup):
        build_datum("GL", 3, "block(2,2)")
    with pytest.raises(UnsupportedGroup):
        group("e8")


def test_pairings(gsp4, gl3):
    a, b = 3, 7
    assert pair(gsp4, (a + 2, b + 1), (0, 2)) == b + 1
    assert pair(gl3, (5 + 2, 3 + 1, 1), (1, 0, -1)) == 5 - 1 + 2
    for d in (gsp4, gl3):
        for g in d.roots:
            assert pair(d, g, g) == 2
    with pytest.raises(ValueError):
        pair(gsp4, (1, 0), (1, 0))


def test_dot_action_examples(gsp4, gl3):
    s_alpha = next(w for w, l in zip(gsp4.weyl, gsp4.lengths) if l == 1 and mat_apply(w, (1, -1)) == (-1, 1))
    assert dot_action(gsp4, s_alpha, (5, 2)) == (1, 6)
    for d in (gsp4, gl3):
        for w in d.weyl:
            assert dot_action(d, w, neg(d.rho)) == neg(d.rho)
    assert dot_action(gl3, gl3.w0, (0, 0, 0)) == (-2, 0, 2)


def test_dominance(gsp4, gl3):
    assert is_dominant(gsp4, (3, 1))
    assert not is_dominant(gsp4, (1, 3)) and not is_M_dominant(gsp4, (1, 3))
    p, b = 13, 4
    assert is_M_dominant(gl3, (p - 2, b, 6 - p + 2))
    assert not is_M_dominant(gl3, (p - 2, p - 1, 0))


def test_coset_reps(gsp4, gl3):
    assert sorted(l for _, l in minimal_coset_reps(gsp4)) == [0, 1, 2, 3]
    assert len(minimal_coset_reps(gl3)) == 3
    ident = next(w for w, l in minimal_coset_reps(gsp4) if l == 0)
    assert weyl_length(gsp4, ident) == 0


@given(st.sampled_from(["gl3", "gsp4"]), st.data())
def test_dot_action_inverse(name, data):
    d = group(name)
    lam = tuple(data.draw(ints) for _ in range(d.rank))
    w = data.draw(st.sampled_from(d.weyl))
    assert dot_action(d, w, dot_action(d, mat_inv(w), lam)) == lam


@given(st.sampled_from(["gl3", "gsp4"]), st.data())
def test_pairing_weyl_invariant(name, data):
    d = group(name)
    lam = tuple(data.draw(ints) for _ in range(d.rank))
    w = data.draw(st.sampled_from(d.weyl))
    g = data.draw(st.sampled_from(d.roots))
    assert pair(d, mat_apply(w, lam), mat_apply(w, g)) == pair(d, lam, g)


@given(st.integers(7, 101), ints, ints)
def test_gsp4_closed_form_orbit(p, a, b):
    d = group("gsp4")
    lam1 = affine_reflect(d, p, ((1, 1), 1), (a, b))
    assert lam1 == (p - b - 3, p - a - 3)
    assert affine_reflect(d, p, ((2, 0), 1), lam1) == (p + b - 1, p - a - 3)
