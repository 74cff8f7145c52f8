import pytest
from hypothesis import given, settings, strategies as st

from modbgg.alcove import generic_sweep, orbit_family
from modbgg.charring import verma_character, weyl_character
from modbgg.groth import (
    LM,
    KElement,
    UnsupportedAlcove,
    W,
    K_from_character,
    alcove_index,
    char_of_K,
    decompose_weyl_mod_p,
    simple_char_in_vermas,
    simple_in_weyl,
    window_for,
)
from modbgg.rootdata import group
from modbgg.verify import CLOSED_FORMS, WEYL_ALTERNATING, closed_form_expression


def test_decomposition_table(gsp4, gl3):
    assert decompose_weyl_mod_p(gsp4, 13, (4, 2)) == [((4, 2), 1)]
    assert decompose_weyl_mod_p(gsp4, 13, (14, 6)) == [((14, 6), 1), ((8, 6), 1)]
    assert decompose_weyl_mod_p(gl3, 13, (12, 3, -6)) == [((12, 3, -6), 1), ((5, 3, 1), 1)]
    assert simple_in_weyl(gsp4, 13, (14, 6)) == [((14, 6), 1), ((8, 6), -1), ((4, 2), 1)]
    assert [alcove_index(gsp4, 13, w) for w in [(4, 2), (8, 6), (14, 6)]] == [0, 1, 2]
    with pytest.raises(UnsupportedAlcove):
        decompose_weyl_mod_p(gsp4, 13, (30, 6))


def test_closed_form_expressions(gsp4, gl3):
    fam = orbit_family(gl3, 13, (5, 3, 1))
    expected = KElement([(W(fam["lambda1"]), 1), (W(fam["lambda0"]), -1), (LM(fam["mu1"]), -1),
                         (W(fam["nu1"]), 1), (W(fam["nu0"]), -1)])
    assert simple_char_in_vermas(gl3, 13, fam["lambda1"]) == expected
    fam = orbit_family(gsp4, 13, (4, 2))
    expected = KElement([(W(fam["lambda0"]), 1), (W(fam["mu0"]), -1), (W(fam["nu0"]), 1), (W(fam["eps0"]), -1)])
    assert simple_char_in_vermas(gsp4, 13, fam["lambda0"]) == expected
    assert len(simple_char_in_vermas(gsp4, 13, fam["lambda2"]).coeffs) == 8
    for a in (0, 1, 2):
        assert simple_char_in_vermas(gsp4, 13, fam[f"lambda{a}"]) == closed_form_expression(gsp4, fam, a)


def test_char_of_K_basics(gsp4, gl3):
    fam = orbit_family(gl3, 13, (5, 3, 1))
    win = window_for(gl3, fam["lambda1"], [fam[k] for k in fam.names()])
    assert char_of_K(gl3, KElement(), win).mults == {}
    single = char_of_K(gl3, KElement([(W(fam["lambda0"]), 1)]), win, 13)
    assert single == verma_character(gl3, "W", fam["lambda0"], win, 13)
    chi = char_of_K(gl3, simple_char_in_vermas(gl3, 13, fam["lambda1"]), win, 13)
    assert chi[fam["lambda1"]] == 1
    simple = weyl_character(gl3, fam["lambda1"]) - weyl_character(gl3, fam["lambda0"])
    assert chi[fam["lambda0"]] == simple[fam["lambda0"]]


def test_K_from_character_examples(gl3):
    fam = orbit_family(gl3, 13, (5, 3, 1))
    win = window_for(gl3, fam["lambda1"], [fam[k] for k in fam.names()])
    ver = verma_character(gl3, "W", fam["mu0"], win, 13)
    assert K_from_character(gl3, 13, ver) == KElement([(W(fam["mu0"]), 1)])
    chi = (weyl_character(gl3, fam["lambda1"]) - weyl_character(gl3, fam["lambda0"])).restrict(gl3, win)
    assert K_from_character(gl3, 13, chi) == simple_char_in_vermas(gl3, 13, fam["lambda1"])
    assert K_from_character(gl3, 13, verma_character(gl3, "W", fam["mu0"], win, 13) - ver) == KElement()


@st.composite
def family_element(draw):
    name = draw(st.sampled_from(["gl3", "gsp4"]))
    d = group(name)
    p = draw(st.sampled_from([11, 13, 17]))
    lam0 = draw(st.sampled_from(generic_sweep(d, p, None)))
    fam = orbit_family(d, p, lam0)
    top = fam["lambda1" if name == "gl3" else "lambda2"]
    # third-wall members fall outside the one-wall-crossing range of L_M
    names = [k for k in fam.names() if not k.endswith("'") and not k.endswith("3")]
    chosen = draw(st.lists(st.sampled_from(names), unique=True, max_size=5))
    terms = []
    for k in chosen:
        w = fam[k]
        m = w[0] - w[1]
        terms.append((W(w) if m < p else LM(w), draw(st.integers(-3, 3))))
    return d, p, KElement(terms), window_for(d, top, [fam[k] for k in names])


@settings(max_examples=25, deadline=None)
@given(family_element())
def test_round_trip(args):
    d, p, k, win = args
    assert K_from_character(d, p, char_of_K(d, k, win, p)) == k


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([("gl3", 1), ("gsp4", 0), ("gsp4", 1), ("gsp4", 2)]), st.sampled_from([11, 13, 17]), st.data())
def test_two_routes_agree(case, p, data):
    name, a = case
    d = group(name)
    fam = orbit_family(d, p, data.draw(st.sampled_from(generic_sweep(d, p, None))))
    names = [k for k in fam.names() if not k.endswith("'")]
    win = window_for(d, fam[f"lambda{a}"], [fam[k] for k in names])
    chi = None
    for c, k in WEYL_ALTERNATING[case]:
        term = c * weyl_character(d, fam[k])
        chi = term if chi is None else chi + term
    assert K_from_character(d, p, chi.restrict(d, win)) == simple_char_in_vermas(d, p, fam[f"lambda{a}"])
    assert len(CLOSED_FORMS[case]) == len(simple_char_in_vermas(d, p, fam[f"lambda{a}"]).coeffs)
