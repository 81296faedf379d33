import pytest
from hypothesis import assume, given, settings, strategies as st

from curvecomp.errors import CommonComponent, NotSquarefree
from curvecomp.geometry import (
    ParamCurve,
    PlaneCurve,
    ProjPoint,
    conic_through,
    intersection_multiplicity,
    multiplicity_at,
    rational_intersections,
    tangent_cone,
    very_tangent_lines,
)
from curvecomp.poly import parse

O = ProjPoint(0, 0, 1)
CUSP = PlaneCurve(parse("x^2*z - y^3"), irreducible=True)
NODE = PlaneCurve(parse("x^2*z - y^3 - y^2*z"), irreducible=True)


def test_point_normalization():
    assert ProjPoint(2, 4, 6) == ProjPoint(1, 2, 3)
    assert str(ProjPoint(0, 3, 0)) == "[0 : 1 : 0]"
    with pytest.raises(ValueError):
        ProjPoint(0, 0, 0)


def test_multiplicities_of_cubics():
    assert multiplicity_at(CUSP, O) == 2
    assert multiplicity_at(NODE, O) == 2
    assert multiplicity_at(CUSP, ProjPoint(1, 1, 1)) == 1
    assert multiplicity_at(CUSP, ProjPoint(1, 0, 0)) == 1  # the flex at infinity
    assert multiplicity_at(CUSP, ProjPoint(1, 1, 0)) == 0


def test_cusp_tangent_meets_three_times():
    assert intersection_multiplicity(CUSP, PlaneCurve(parse("x")), O) == 3
    assert intersection_multiplicity(CUSP, PlaneCurve(parse("y")), O) == 2
    assert tangent_cone(CUSP, O).primitive() == parse("x^2").with_vars(("x", "y"))


def test_conic_and_tangent_line():
    conic = PlaneCurve(parse("x*z + y^2"))
    res = rational_intersections(conic, PlaneCurve(parse("x")))
    assert res.complete and res.as_dict() == {O: 2}


def test_common_component_rejected():
    a = PlaneCurve(parse("x*y"))
    b = PlaneCurve(parse("x*z"))
    with pytest.raises(CommonComponent):
        intersection_multiplicity(a, b, O)


def test_not_squarefree():
    with pytest.raises(NotSquarefree):
        PlaneCurve(parse("x^2*y"))


def test_irrational_points_leave_incomplete():
    res = rational_intersections(PlaneCurve(parse("x^2 - 2*z^2")), PlaneCurve(parse("y")))
    assert not res.complete and res.total == 0 and res.expected == 2


def test_very_tangent_line_of_cusp():
    lines = very_tangent_lines(CUSP, O)
    assert [l.equation.primitive() for l in lines] == [parse("x")]


def test_conic_through_five_points():
    pts = [ProjPoint(1, 0, 0), ProjPoint(0, 1, 0), ProjPoint(0, 0, 1), ProjPoint(1, 1, 1), ProjPoint(1, 2, 3)]
    c = conic_through(pts)
    assert all(c.contains(p) for p in pts)
    fam = conic_through(pts[:4])
    assert fam.dimension == 1


def test_param_line():
    L = ParamCurve.of_line(parse("x + y - z"))
    p = L.point(2, 5)
    assert p.coords[0] + p.coords[1] - p.coords[2] == 0


def test_json_round_trip():
    assert PlaneCurve.from_json(CUSP.to_json()) == CUSP


lin = st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)).filter(any)


@settings(max_examples=200, deadline=None)
@given(st.lists(lin, min_size=2, max_size=5, unique=True), st.integers(1, 4))
def test_bezout_for_line_arrangements(coeffs, split):
    split = min(split, len(coeffs) - 1)
    forms = [parse(f"{a}*x + {b}*y + {c}*z") for a, b, c in coeffs]
    prims = {f.primitive() for f in forms} | {(-f).primitive() for f in forms}
    assume(len(prims) == 2 * len(forms) or len({f.primitive() for f in forms}) == len(forms))
    A, B = forms[0], forms[split]
    for f in forms[1:split]:
        A = A * f
    for f in forms[split + 1:]:
        B = B * f
    try:
        a, b = PlaneCurve(A), PlaneCurve(B)
        res = rational_intersections(a, b)
    except (CommonComponent, NotSquarefree):
        return
    # lines always meet in rational points
    assert res.complete
    assert res.total == a.degree * b.degree
