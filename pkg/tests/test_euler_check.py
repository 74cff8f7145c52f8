import pytest
from hypothesis import given, settings, strategies as st

from modbgg.alcove import generic_sweep
from modbgg.charring import exterior_power_character, levi_decomposition, tensor, weyl_character
from modbgg.euler_check import (
    NotGeneric,
    alcove_branch,
    big_computation_n,
    build_ledger,
    floor_case_analysis,
    multiplicity_differences,
    simple_char_mod_p,
)
from modbgg.rootdata import group, pair

ALPHA = (1, -1)
SWEEP = [(p, lam) for p in (11, 13, 17) for lam in generic_sweep(group("gsp4"), p, None)]


def test_n_examples(gsp4):
    assert big_computation_n(gsp4, 13, (4, 2), None) == 1
    assert big_computation_n(gsp4, 17, (5, 2), None) == 1


def test_differences_frozen(gsp4):
    # computed values; the Euler combinations d0-d2 and d1-d3 are what the argument uses
    assert multiplicity_differences(gsp4, 13, (4, 2), None) == (11, 6, 11, 5)
    assert multiplicity_differences(gsp4, 17, (5, 2), None) == (11, 6, 11, 5)


def test_floor_examples(gsp4):
    res = floor_case_analysis(gsp4, 13, (4, 2))
    cases = {c["case"]: c for c in res["cases"]}
    assert res["pass"] and res["branch"] == "C0'"
    assert cases["a"]["formula"] == cases["a"]["brute_force"] == (13 + 2 - 4 - 1) // 2 - 2 == 3
    assert cases["b"]["formula"] == cases["b"]["brute_force"] == (13 - 4 - 2 - 3) // 2 + 1 == 3
    assert cases["final"]["brute_force"] == 1


def test_branches():
    assert alcove_branch(13, (2, 0)) == "C0'"
    assert alcove_branch(13, (5, 0)) == "C0''"
    # 2a = p - 4 needs p even, so only reachable with a non-prime modulus
    assert alcove_branch(14, (5, 0)) == "boundary"
    assert all(alcove_branch(p, lam) != "boundary" for p, lam in SWEEP)


def test_preconditions(gsp4, gl3):
    with pytest.raises(NotGeneric):
        build_ledger(gsp4, 13, (14, 6), None)
    with pytest.raises(NotGeneric):
        build_ledger(gsp4, 13, (4, 2), 2)
    with pytest.raises(ValueError):
        build_ledger(gl3, 13, (5, 3, 1), None)


def test_simple_character_nonnegative(gsp4):
    for p, lam in SWEEP:
        chi = simple_char_mod_p(gsp4, p, lam)
        assert chi.is_nonnegative()


@pytest.mark.parametrize("p,lam", SWEEP)
def test_sweep_identities(gsp4, p, lam):
    led = build_ledger(gsp4, p, lam, None)
    assert big_computation_n(gsp4, p, lam, None, ledger=led) == 1
    d = multiplicity_differences(gsp4, p, lam, None, ledger=led)
    b = lam[1]
    assert d == (4 * b + 3, 2 * b + 2, 4 * b + 3, 2 * b + 1)
    assert (d[0] - d[2], d[1] - d[3]) == (0, 1)
    assert floor_case_analysis(gsp4, p, lam)["pass"]


def _peel_levi(datum, chi):
    """Levi multiplicities by repeatedly removing the top Levi Weyl character."""
    rest = chi
    out = {}
    while rest.mults:
        top = max(rest.mults, key=lambda nu: (pair(datum, nu, ALPHA), nu))
        c = rest[top]
        out[top] = out.get(top, 0) + c
        rest = rest - c * weyl_character(datum, top, for_levi=True)
    return {k: v for k, v in out.items() if v}


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(SWEEP), st.integers(0, 3))
def test_levi_multiplicities_two_ways(cell, k):
    d = group("gsp4")
    p, lam = cell
    chi = tensor(d, exterior_power_character(d, k), simple_char_mod_p(d, p, lam))
    assert levi_decomposition(d, chi) == _peel_levi(d, chi)
