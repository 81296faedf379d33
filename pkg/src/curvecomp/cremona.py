"""Plane rational maps: composition, base points, pullbacks, de Jonquieres maps,
and the quintic gallery built from two quadratic maps.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd as igcd
import warnings

from .errors import (
    Contracted,
    DegenerateComposition,
    InternalLimit,
    MultiplicityAmbiguity,
    NonRationalBasePoint,
    UnaccountedFactor,
    ZeroInput,
)
from .geometry import (
    ParamCurve,
    PlaneCurve,
    ProjPoint,
    image_on_curve_check,
    local_equation,
    rational_linear_factors,
    rational_points_common,
)
from .infnear import (
    ClusterNode,
    InfinitelyNearPoint,
    ProximityTree,
    exceptional_coordinate,
    direction_to_step,
    fmt_step,
    multiplicity_sequence,
    step_transform,
)
from .linalg import nullspace
from .poly import XYZ, Poly, as_fraction, divides, exact_divide, gcd, gcd_list, parse, to_string
from .sequences import homaloidal_check

AUX_WEIGHTS = ((1, 1, 1), (1, 2, 3))


def _ilcm(a, b):
    return a * b // igcd(a, b)


def normalize_components(comps):
    """Divide out the common factor and scale to coprime integers, first lead positive."""
    comps = [c.with_vars(XYZ) for c in comps]
    nz = [c for c in comps if c.terms]
    if not nz:
        raise ZeroInput("all components vanish")
    g = gcd_list(nz)
    if not g.is_constant():
        comps = [exact_divide(c, g) if c.terms else c for c in comps]
    coeffs = [v for c in comps for v in c.terms.values()]
    num = reduce(igcd, (v.numerator for v in coeffs))
    den = reduce(_ilcm, (v.denominator for v in coeffs))
    scale = Fraction(den, num)
    first = next(c for c in comps if c.terms)
    if first.lead_term()[1] < 0:
        scale = -scale
    return tuple(c * scale for c in comps)


class RationalSelfMap:
    def __init__(self, components, name=None):
        comps = [c if isinstance(c, Poly) else parse(c) for c in components]
        if len(comps) != 3:
            raise ValueError("a plane map needs three components")
        degs = {c.degree() for c in comps if c.terms}
        if len(degs) > 1 or not all(c.is_homogeneous() for c in comps):
            raise ValueError("components must be forms of one degree")
        self.components = normalize_components(comps)
        self.degree = max(c.degree() for c in self.components)
        self.name = name

    def __call__(self, p):
        vals = [c.evaluate(p.as_dict()) for c in self.components]
        if not any(vals):
            return None
        return ProjPoint(*vals)

    def __eq__(self, other):
        return isinstance(other, RationalSelfMap) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def strings(self):
        return [to_string(c) for c in self.components]

    def __str__(self):
        return "[" + " : ".join(self.strings()) + "]"

    __repr__ = __str__

    def to_json(self):
        return {"components": self.strings()}

    @classmethod
    def from_json(cls, data):
        return cls(data["components"])

    def pullback(self, f):
        """f composed with this map (not reduced)."""
        f = f.equation if isinstance(f, PlaneCurve) else (parse(f) if isinstance(f, str) else f)
        return f.substitute(dict(zip(XYZ, self.components))).with_vars(XYZ)


def identity_map():
    return RationalSelfMap(["x", "y", "z"], name="id")


def compose(f, g):
    """f after g."""
    sub = dict(zip(XYZ, g.components))
    comps = [c.substitute(sub).with_vars(XYZ) for c in f.components]
    if not any(c.terms for c in comps):
        raise DegenerateComposition("the image of the inner map lies in the indeterminacy of the outer one")
    return RationalSelfMap(comps)


def is_involution(f):
    h = compose(f, f)
    a, b, c = h.components
    x, y, z = (Poly.var(v) for v in XYZ)
    return not (a * y - b * x).terms and not (a * z - c * x).terms and not (b * z - c * y).terms


# -- base points ---------------------------------------------------------------


@dataclass
class BaseMultiplicityProfile:
    tree: ProximityTree
    mults: list
    degree: int
    partial: bool = False
    warnings: list = field(default_factory=list)

    def __len__(self):
        return len(self.mults)

    def homaloidal(self):
        return homaloidal_check(self.degree, self.mults)

    def proper_points(self):
        return [n.point.root for n in self.tree.nodes if n.parent is None]

    def to_json(self):
        return {
            "degree": self.degree,
            "base_points": [
                {
                    "id": n.id + 1,
                    "parent": None if n.parent is None else n.parent + 1,
                    "point": str(n.point.root),
                    "path": [fmt_step(s) for s in n.point.path],
                    "mult": n.mult,
                    "proximate_to": sorted(j + 1 for j in n.prox),
                }
                for n in self.tree.nodes
            ],
            "sum": sum(self.mults),
            "sum_squares": sum(m * m for m in self.mults),
            "homaloidal": self.homaloidal(),
            "partial": self.partial,
        }


def _aux_members(comps):
    out = list(comps)
    for w in AUX_WEIGHTS:
        out.append(sum((c * k for c, k in zip(comps, w)), Poly.const(0)))
    return out


def _mult(g):
    if not g.terms:
        return None
    return g.min_degree() if g.evaluate({"x": 0, "y": 0}) == 0 else 0


def _system_mult(gs, where, notes):
    vals = [_mult(g) for g in gs]
    own = [v for v in vals[:3] if v is not None]
    allv = [v for v in vals if v is not None]
    m3, m5 = min(own), min(allv)
    if m3 != m5:
        msg = f"base multiplicity at {where}: components give {m3}, combinations give {m5}"
        warnings.warn(msg, MultiplicityAmbiguity)
        notes.append(msg)
    return m5


def _base_directions(gs, m):
    forms = [g.homogeneous_part(m) for g in gs if g.terms and g.min_degree() == m]
    h = gcd_list(forms)
    if h.is_constant():
        return [], 0
    factors = rational_linear_factors(h)
    steps = [direction_to_step(a, b) for (a, b), _ in factors]
    irrational = h.degree() - sum(k for _, k in factors)
    return steps, irrational


def base_profile(f, height_bound=10 ** 6):
    """Proper and infinitely near base points of the linear system of f."""
    comps = f.components
    nodes, mults, notes = [], [], []
    partial = False
    budget = [f.degree * f.degree]

    def visit(gs, excs, point, parent):
        nonlocal partial
        m = _system_mult(gs, point, notes)
        if m == 0:
            return
        budget[0] -= m * m
        if budget[0] < -1:
            raise InternalLimit("base multiplicities exceed the degree bound")
        nid = len(nodes)
        prox = [j for j, e in excs if e.evaluate({"x": 0, "y": 0}) == 0]
        nodes.append(ClusterNode(nid, parent, m, prox, point))
        mults.append(m)
        steps, irr = _base_directions(gs, m)
        if irr:
            partial = True
            notes.append(f"{irr} irrational base direction(s) at {point}")
        for step in steps:
            ngs = [step_transform(g, step, m) if g.terms else g for g in gs]
            nexcs = [(j, step_transform(e, step, 1 if e.evaluate({"x": 0, "y": 0}) == 0 else 0))
                     for j, e in excs]
            nexcs.append((nid, exceptional_coordinate(step)))
            visit(ngs, nexcs, point.child(step), nid)

    members = _aux_members(comps)
    for p in rational_points_common(list(comps), height_bound):
        gs = [local_equation(c, p) if c.terms else c.with_vars(("x", "y")) for c in members]
        visit(gs, [], InfinitelyNearPoint(p), None)
    if 3 * f.degree - 3 != sum(mults) and f.degree > 1 and not partial:
        # a missing proper point must be irrational
        partial = sum(mults) < 3 * f.degree - 3
        if partial:
            notes.append("base points missing from the rational search")
    return BaseMultiplicityProfile(ProximityTree(nodes), mults, f.degree, partial, notes)


def require_rational_base(profile):
    if profile.partial:
        raise NonRationalBasePoint("; ".join(profile.warnings) or "irrational base points")
    return profile


def curve_mults_at(profile, curve):
    """Multiplicities of a curve at each base point of a profile."""
    eq = curve.equation if isinstance(curve, PlaneCurve) else curve
    return [n.point.multiplicity(eq) for n in profile.tree.nodes]


def image_degree(f, curve_degree, curve_mults_at_base_points, profile=None):
    if profile is None:
        profile = base_profile(f)
    mults = list(curve_mults_at_base_points)
    if len(mults) < len(profile.mults):
        mults += [0] * (len(profile.mults) - len(mults))
    d = f.degree * curve_degree - sum(a * b for a, b in zip(profile.mults, mults))
    if d <= 0:
        raise Contracted(f"the curve is contracted (formula gives {d})")
    return d


def image_degree_of(f, curve, profile=None):
    profile = profile or base_profile(f)
    eq = curve.equation if isinstance(curve, PlaneCurve) else curve
    return image_degree(f, eq.degree(), curve_mults_at(profile, eq), profile)


@dataclass
class Pullback:
    exponents: dict
    residual: Poly
    total_degree: int

    def balanced(self):
        return self.residual.degree() + sum(
            e * parse(k).degree() for k, e in self.exponents.items()
        ) == self.total_degree

    def to_json(self):
        return {
            "exponents": dict(sorted(self.exponents.items())),
            "residual": to_string(self.residual.primitive()),
            "total_degree": self.total_degree,
        }


def pullback_factorization(f, target, contracted=(), expected=None):
    """Split target after f into powers of known contracted curves and a residual."""
    g = f.pullback(target)
    total = g.degree()
    exps = {}
    for c in contracted:
        c = c.equation if isinstance(c, PlaneCurve) else (parse(c) if isinstance(c, str) else c)
        c = c.with_vars(XYZ).primitive()
        e = 0
        while not g.is_constant() and divides(c, g):
            g = exact_divide(g, c)
            e += 1
        exps[to_string(c)] = e
    res = Pullback(exps, g, total)
    if expected is not None:
        exp = expected.equation if isinstance(expected, PlaneCurve) else expected
        exp = parse(exp) if isinstance(exp, str) else exp
        if g.primitive() != exp.with_vars(XYZ).primitive():
            raise UnaccountedFactor(f"residual {to_string(g.primitive())} is not {to_string(exp)}")
    return res


# -- de Jonquieres maps ------------------------------------------------------------


def _uni_poly(f_poly):
    if isinstance(f_poly, Poly):
        return f_poly.with_vars(("x",))
    if isinstance(f_poly, str):
        return parse(f_poly, ("x",))
    # coefficient list, constant term first
    x = Poly.var("x", ("x",))
    return sum((x ** i * as_fraction(c) for i, c in enumerate(f_poly)), Poly.const(0, ("x",)))


def _projectivize(px, py, d):
    """[z^d P(x/z, y/z), z^d Q(x/z, y/z), z^d] for affine polynomials of degree <= d."""
    comps = [px.with_vars(XYZ).homogenize("z", d), py.with_vars(XYZ).homogenize("z", d),
             Poly.var("z") ** d]
    return comps


def jonquieres_from_affine(a, b, c, f_poly):
    a, b, c = as_fraction(a), as_fraction(b), as_fraction(c)
    if not a or not c:
        raise ValueError("a and c must be nonzero")
    f = _uni_poly(f_poly)
    d = max(f.degree(), 1)
    x, y = Poly.var("x"), Poly.var("y")
    px = x * a + b
    py = y * c + f.with_vars(XYZ)
    j = RationalSelfMap(_projectivize(px, py, d), name="jonquieres")
    j.affine = (a, b, c, f)
    return j


def jonquieres_inverse(j):
    a, b, c, f = j.affine
    x, y = Poly.var("x"), Poly.var("y")
    xi = (x - b) * (1 / a)
    fx = f.with_vars(XYZ).substitute({"x": xi}).with_vars(XYZ)
    yi = (y - fx) * (1 / c)
    d = max(f.degree(), 1)
    inv = RationalSelfMap(_projectivize(xi, yi, d), name="jonquieres_inverse")
    inv.affine = None
    return inv


def affine_swap():
    """(x, y) -> (y, x): an affine map moving the pencil point [0:1:0]."""
    return RationalSelfMap(["y", "x", "z"], name="swap")


def line_preimage_is_line(j, line):
    eq = line.equation if isinstance(line, PlaneCurve) else (parse(line) if isinstance(line, str) else line)
    eq = eq.with_vars(XYZ)
    if eq.primitive() == Poly.var("z"):
        # the complement line is contracted to the pencil point and blown back up
        return True
    inv = jonquieres_inverse(j)
    try:
        return image_degree_of(inv, eq) == 1
    except Contracted:
        return False


def passes_pencil_point(line):
    eq = line.equation if isinstance(line, PlaneCurve) else (parse(line) if isinstance(line, str) else line)
    return eq.evaluate({"x": 0, "y": 1, "z": 0}) == 0


# -- quintic gallery -----------------------------------------------------------------

THETA1 = ["x^2", "x*y", "x*z + y^2"]
THETA2 = ["x*z", "x^2 - y*z", "z^2"]
PSI_DISPLAY = [
    "x*(x*z + y^2)^2",
    "(x*z + y^2)*(x^3 - y*(x*z + y^2))",
    "(x*z + y^2)*(z*(x*z + y^2) + 2*x^2*y) - x^5",
]
Q_DISPLAY = "(x*z + y^2)*((x*z + y^2)*z + 2*x^2*y) - x^5"
CONIC = "x*z + y^2"


def derive_theta1_inverse():
    """Find c with [x^2 : xy : xz + c y^2] inverting theta1, by solving linear conditions."""
    vs = ("x", "y", "z", "c")
    x, y, z, c = (Poly.var(v, vs) for v in vs)
    cand = [x * x, x * y, x * z + c * y * y]
    th = [parse(s, vs) for s in THETA1]
    comp = [p.substitute(dict(zip(XYZ, th))).with_vars(vs) for p in cand]
    # proportional to (x, y, z): all 2x2 minors vanish
    minors = [comp[0] * y - comp[1] * x, comp[0] * z - comp[2] * x, comp[1] * z - comp[2] * y]
    rows = []
    for mnr in minors:
        by_mono = {}
        for e, v in mnr.terms.items():
            row = by_mono.setdefault(e[:3], [Fraction(0), Fraction(0)])
            row[e[3]] += v
        rows.extend(by_mono.values())
    # rows are [const, coeff of c]; homogeneous system in (1, c)
    ns = nullspace(rows, 2)
    sols = [v for v in ns if v[0]]
    if len(sols) != 1:
        raise InternalLimit("no unique quadratic inverse of the form searched")
    cval = sols[0][1] / sols[0][0]
    inv = RationalSelfMap(["x^2", "x*y", f"x*z + ({cval})*y^2"], name="theta1_inv")
    if compose(inv, RationalSelfMap(THETA1)) != identity_map():
        raise InternalLimit("derived inverse does not compose to the identity")
    return inv


def L_alpha(alpha):
    a = as_fraction(alpha)
    return PlaneCurve(parse(f"({a * a})*x + ({2 * a})*y - z"), irreducible=True, name=f"L_{a}")


def Q_alpha(alpha):
    a = as_fraction(alpha)
    txt = f"(x*z + y^2)*((x*z + y^2)*(({a * a})*x - ({2 * a})*y - z) + 2*x^2*(({a})*x - y)) + x^5"
    return PlaneCurve(parse(txt), name=f"Q_{a}")


def normalization_map(alpha):
    a = as_fraction(alpha)
    return RationalSelfMap(["x", f"({a})*x + y", f"({-a * a})*x - ({2 * a})*y + z"], name="normalize")


def substitution_identity(aut, source, target):
    """source(aut(x, y, z)) is a scalar multiple of target.

    Read as a change of coordinates this turns the equation of ``source`` into
    that of ``target``; as a point map, aut sends ``target`` onto ``source``.
    """
    pulled = aut.pullback(source)
    return pulled.primitive() == target.equation.primitive()


@dataclass
class Gallery:
    maps: dict
    curves: dict
    checks: dict
    alpha: Fraction | None

    def ok(self):
        return all(self.checks.values())

    def to_json(self):
        return {
            "alpha": None if self.alpha is None else str(self.alpha),
            "maps": {k: v.to_json() for k, v in sorted(self.maps.items())},
            "curves": {k: str(v) for k, v in sorted(self.curves.items())},
            "checks": dict(sorted(self.checks.items())),
        }


_CACHE = {}


def _core():
    if "core" not in _CACHE:
        th1 = RationalSelfMap(THETA1, name="theta1")
        th2 = RationalSelfMap(THETA2, name="theta2")
        th1_inv = derive_theta1_inverse()
        psi = compose(th1_inv, compose(th2, th1))
        psi.name = "psi"
        _CACHE["core"] = (th1, th2, th1_inv, psi, base_profile(psi))
    return _CACHE["core"]


def quintic_gallery(alpha=None):
    th1, th2, th1_inv, psi, prof = _core()
    golden = RationalSelfMap(PSI_DISPLAY, name="psi_display")
    Q = PlaneCurve(parse(Q_DISPLAY), name="Q")
    conic = PlaneCurve(parse(CONIC), name="conic")
    checks = {
        "psi_matches_display": psi.strings() == golden.strings(),
        "psi_degree_5": psi.degree == 5,
        "psi_involution": is_involution(psi),
        "theta2_involution": is_involution(th2),
        "theta1_not_involution": not is_involution(th1),
        "theta1_inverse": compose(th1_inv, th1) == identity_map() and compose(th1, th1_inv) == identity_map(),
        "psi_base_six_double_points": prof.mults == [2] * 6 and len(prof.proper_points()) == 1
        and prof.proper_points()[0] == ProjPoint(0, 0, 1),
        "psi_homaloidal": prof.homaloidal(),
        "psi_sends_Lz_to_Q": image_on_curve_check(psi, ParamCurve.of_line(parse("z")), Q),
        "Q0_is_Q": Q_alpha(0).equation.primitive() == Q.equation.primitive(),
        "Q_sequence_2x6": multiplicity_sequence(Q, ProjPoint(0, 0, 1)).entries == [2] * 6,
    }
    maps = {"theta1": th1, "theta2": th2, "theta1_inv": th1_inv, "psi": psi}
    curves = {"Q": Q, "conic": conic}
    a = None
    if alpha is not None:
        a = as_fraction(alpha)
        La, Qa, N = L_alpha(a), Q_alpha(a), normalization_map(a)
        maps["normalize"] = N
        curves.update({"L_alpha": La, "Q_alpha": Qa})
        checks["L_alpha_tangent_to_conic"] = _tangent_to_conic(La)
        checks["psi_sends_L_alpha_to_Q_alpha"] = image_on_curve_check(psi, ParamCurve.of_line(La), Qa)
        checks["normalization_sends_Q_alpha_to_Q"] = substitution_identity(N, Qa, Q)
    return Gallery(maps, curves, checks, a)


def _tangent_to_conic(line):
    from .geometry import rational_intersections
    res = rational_intersections(line, PlaneCurve(parse(CONIC)))
    return res.complete and list(res.as_dict().values()) == [2]
