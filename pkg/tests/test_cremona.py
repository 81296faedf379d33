import warnings

import pytest

from curvecomp.cremona import (
    CONIC,
    PSI_DISPLAY,
    Q_DISPLAY,
    RationalSelfMap,
    THETA1,
    THETA2,
    affine_swap,
    base_profile,
    compose,
    derive_theta1_inverse,
    identity_map,
    image_degree_of,
    is_involution,
    jonquieres_from_affine,
    jonquieres_inverse,
    line_preimage_is_line,
    passes_pencil_point,
    pullback_factorization,
    quintic_gallery,
)
from curvecomp.errors import Contracted, DegenerateComposition, UnaccountedFactor
from curvecomp.geometry import ProjPoint
from curvecomp.poly import parse

STD = RationalSelfMap(["y*z", "x*z", "x*y"])


def test_normalization_of_components():
    f = RationalSelfMap(["2*x", "4*y", "-6*z"])
    assert f.strings() == ["x", "2*y", "-3*z"]
    assert RationalSelfMap(["-x^2", "-x*y", "-y^2"]).strings() == ["x^2", "x*y", "y^2"]


def test_evaluation_and_indeterminacy():
    assert STD(ProjPoint(1, 2, 3)) == ProjPoint(6, 3, 2)
    assert STD(ProjPoint(1, 0, 0)) is None


def test_standard_quadratic_is_involution():
    assert is_involution(STD)
    assert base_profile(STD).mults == [1, 1, 1]
    assert base_profile(STD).homaloidal()


def test_theta_maps():
    th1, th2 = RationalSelfMap(THETA1), RationalSelfMap(THETA2)
    assert is_involution(th2) and not is_involution(th1)
    inv = derive_theta1_inverse()
    assert inv.strings() == ["x^2", "x*y", "x*z - y^2"]
    assert compose(inv, th1) == identity_map()


def test_psi_composition_matches_display():
    th1, th2 = RationalSelfMap(THETA1), RationalSelfMap(THETA2)
    psi = compose(derive_theta1_inverse(), compose(th2, th1))
    assert psi == RationalSelfMap(PSI_DISPLAY)
    prof = base_profile(psi)
    assert prof.mults == [2] * 6 and prof.tree.is_chain()
    assert prof.proper_points() == [ProjPoint(0, 0, 1)]


def test_psi_pullback_of_quintic():
    psi = RationalSelfMap(PSI_DISPLAY)
    pb = pullback_factorization(psi, Q_DISPLAY, contracted=[CONIC], expected="z")
    assert pb.exponents == {"x*z + y^2": 12}
    assert pb.balanced()
    with pytest.raises(UnaccountedFactor):
        pullback_factorization(psi, Q_DISPLAY, contracted=[CONIC], expected="x")


def test_image_degrees():
    psi = RationalSelfMap(PSI_DISPLAY)
    assert image_degree_of(psi, parse("z")) == 5
    with pytest.raises(Contracted):
        image_degree_of(psi, parse(CONIC))
    assert image_degree_of(STD, parse("x + y + z")) == 2
    with pytest.raises(Contracted):
        image_degree_of(STD, parse("x"))


def test_degenerate_composition():
    const_line = RationalSelfMap(["x", "0", "0"])
    with pytest.raises(DegenerateComposition):
        compose(STD, const_line)


@pytest.mark.parametrize("poly,count", [("x^2", 3), ("x^3 - x", 5), ("x^4 + 2*x", 7)])
def test_jonquieres_base_points(poly, count):
    j = jonquieres_from_affine(1, 0, 1, poly)
    prof = base_profile(j)
    assert len(prof.mults) == count == 2 * j.degree - 1
    assert prof.mults[0] == j.degree - 1
    assert prof.homaloidal()


def test_jonquieres_inverse():
    j = jonquieres_from_affine(3, -1, 2, "x^3 - x + 1")
    assert compose(jonquieres_inverse(j), j) == identity_map()
    assert compose(j, jonquieres_inverse(j)) == identity_map()


def test_degree_multiplicativity():
    j1 = jonquieres_from_affine(1, 0, 1, "x^2")
    j2 = jonquieres_from_affine(1, 1, 1, "x^3")
    sw = affine_swap()
    assert compose(j2, compose(sw, j1)).degree == 6
    # without the swap the pencils line up and degrees do not multiply
    assert compose(j2, j1).degree == 3


@pytest.mark.parametrize("line", ["x", "x - 3*z", "2*x + z", "y", "y - x", "x + y + z", "z"])
def test_line_preimages(line):
    j = jonquieres_from_affine(1, 0, 1, "x^2")
    assert line_preimage_is_line(j, line) == passes_pencil_point(line)


@pytest.mark.parametrize("alpha", [None, 0, 1, -1, 2, "1/3"])
def test_gallery_checks(alpha):
    g = quintic_gallery(alpha)
    assert g.ok(), {k: v for k, v in g.checks.items() if not v}


def test_map_json_round_trip():
    psi = RationalSelfMap(PSI_DISPLAY)
    assert RationalSelfMap.from_json(psi.to_json()) == psi
