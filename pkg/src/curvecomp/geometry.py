"""Projective points, plane curves and local intersection numbers over Q."""

from dataclasses import dataclass, field
from fractions import Fraction
import re

from .errors import (
    CommonComponent,
    DegenerateConditions,
    InternalLimit,
    MapUndefinedOnCurve,
    NotSquarefree,
    ParseError,
)
from .linalg import nullspace
from .poly import XYZ, Poly, as_fraction, gcd, parse, rational_roots, squarefree_check, to_string

DEFAULT_HEIGHT = 10**6


def fmt_rational(c):
    c = as_fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class ProjPoint:
    """Point of P^2 over Q, normalized so the first nonzero coordinate is 1."""

    __slots__ = ("coords",)

    def __init__(self, *coords):
        if len(coords) == 1:
            coords = tuple(coords[0])
        if len(coords) != 3:
            raise ValueError("a projective point needs three coordinates")
        coords = tuple(as_fraction(c) for c in coords)
        lead = next((c for c in coords if c), None)
        if lead is None:
            raise ValueError("[0:0:0] is not a point")
        self.coords = tuple(c / lead for c in coords)

    @classmethod
    def parse(cls, text):
        m = re.fullmatch(r"\s*\[([^:\]]+):([^:\]]+):([^:\]]+)\]\s*", text)
        if not m:
            raise ParseError(f"bad point syntax: {text!r}")
        return cls(*(Fraction(g.strip().replace(" ", "")) for g in m.groups()))

    def chart(self):
        """Index of the first nonzero coordinate (the affine chart used locally)."""
        return next(i for i, c in enumerate(self.coords) if c)

    def __eq__(self, other):
        return isinstance(other, ProjPoint) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def sort_key(self):
        return self.coords

    def __str__(self):
        return "[" + " : ".join(fmt_rational(c) for c in self.coords) + "]"

    __repr__ = __str__

    def as_dict(self):
        return dict(zip(XYZ, self.coords))


def local_equation(f, p):
    """Affine equation of f in local coordinates (x, y) centred at p.

    The chart is the one where p's first nonzero coordinate is set to 1; the
    other two coordinates (in x, y, z order) become x and y after translation.
    """
    i = p.chart()
    others = [j for j in range(3) if j != i]
    loc = ("x", "y")
    bindings = {XYZ[i]: Poly.const(1, loc)}
    for name, j in zip(loc, others):
        bindings[XYZ[j]] = Poly.var(name, loc) + p.coords[j]
    return f.substitute(bindings).with_vars(loc) if f.terms else Poly.const(0, loc)


def local_to_global_line(p, a, b):
    """Projective line a*u + b*v = 0 where (u, v) are p's local coordinates."""
    i = p.chart()
    j, k = [m for m in range(3) if m != i]
    Xi, Xj, Xk = (Poly.var(XYZ[m]) for m in (i, j, k))
    u = Xj - p.coords[j] * Xi
    v = Xk - p.coords[k] * Xi
    return (u * a + v * b).primitive()


class PlaneCurve:
    """Squarefree homogeneous curve; ``irreducible`` is the caller's assertion."""

    __slots__ = ("equation", "degree", "irreducible", "name")

    def __init__(self, equation, irreducible=None, name=None):
        if isinstance(equation, str):
            equation = parse(equation)
        eq = equation.with_vars(XYZ) if set(equation.used_vars()) <= set(XYZ) else None
        if eq is None:
            raise ValueError("curve equations use only x, y, z")
        if not eq.terms or eq.is_constant():
            raise ValueError("a curve needs a nonconstant equation")
        if not eq.is_homogeneous():
            raise ValueError(f"equation is not homogeneous: {eq}")
        if not squarefree_check(eq):
            raise NotSquarefree(f"equation is not squarefree: {eq}")
        self.equation = eq.primitive()
        self.degree = eq.degree()
        self.irreducible = irreducible
        self.name = name

    def contains(self, p):
        return self.equation.evaluate(p.as_dict()) == 0

    def local(self, p):
        return local_equation(self.equation, p)

    def __eq__(self, other):
        return isinstance(other, PlaneCurve) and self.equation == other.equation

    def __hash__(self):
        return hash(self.equation)

    def __str__(self):
        return to_string(self.equation)

    def __repr__(self):
        return f"PlaneCurve({str(self)!r})"

    def to_json(self):
        return {"equation": str(self), "irreducible": self.irreducible}

    @classmethod
    def from_json(cls, data):
        return cls(data["equation"], data.get("irreducible"), data.get("name"))


def multiplicity_at(curve, p):
    f = curve.local(p) if isinstance(curve, PlaneCurve) else local_equation(curve, p)
    return max(f.min_degree(), 0)


def _ord_x(coeffs):
    return next(i for i, c in enumerate(coeffs) if c)


def local_intersection(F, G, limit=None):
    """Fulton's algorithm for I_0(F, G) with F, G in Q[x, y].

    ``limit`` caps the number of y-factor extractions; each extraction adds at
    least one to the answer, so a Bezout-sized cap is never reached unless
    something is wrong.
    """
    x = Poly.var("x", ("x", "y"))
    F, G = F.with_vars(("x", "y")), G.with_vars(("x", "y"))
    total = 0
    steps = 0
    while True:
        if F.evaluate({"x": 0, "y": 0}) or G.evaluate({"x": 0, "y": 0}):
            return total
        f = F.substitute({"y": 0}).with_vars(("x", "y"))
        g = G.substitute({"y": 0}).with_vars(("x", "y"))
        if not f.terms and not g.terms:
            raise CommonComponent("both curves contain the line y = 0 through the point")
        if not f.terms or not g.terms:
            if not g.terms:
                F, G, f, g = G, F, g, f
            steps += 1
            if limit is not None and steps > limit:
                raise InternalLimit("Fulton recursion exceeded its depth guard")
            total += _ord_x(g.univariate_coeffs("x"))
            F = F / Poly.var("y", ("x", "y"))
            continue
        r, s = f.degree(), g.degree()
        if r > s:
            F, G, f, g, r, s = G, F, g, f, s, r
        G = G * f.lead_term()[1] - F * x ** (s - r) * g.lead_term()[1]


def _check_no_common(a, b):
    g = gcd(a.equation, b.equation)
    if not g.is_constant():
        raise CommonComponent(f"curves share the component {g}")


def intersection_multiplicity(a, b, p):
    _check_no_common(a, b)
    return local_intersection(a.local(p), b.local(p), limit=a.degree * b.degree + 1)


@dataclass
class IntersectionResult:
    points: list
    complete: bool
    total: int
    expected: int

    def as_dict(self):
        return {p: m for p, m in self.points}

    def to_json(self):
        return {
            "complete": self.complete,
            "expected": self.expected,
            "points": [{"point": str(p), "multiplicity": m} for p, m in self.points],
            "total": self.total,
        }


def _uni_common_roots(f, g, v, height):
    """Rational common roots of two univariate polynomials (either may be 0)."""
    if not f.terms and not g.terms:
        raise CommonComponent("both restrictions vanish identically")
    if not f.terms:
        h = g
    elif not g.terms:
        h = f
    else:
        h = gcd(f, g)
    if h.is_constant():
        return []
    return sorted(rational_roots(h, v, height))


def _coprime_pair(fs):
    """Two combinations of fs without a common factor (fs themselves may share one)."""
    fs = [f for f in fs if f.terms]
    combos = list(fs)
    for w in range(1, 4):
        combos.append(sum((f * (w ** i) for i, f in enumerate(fs)), Poly.const(0)))
    for i, a in enumerate(combos):
        for b in combos[i + 1:]:
            if b.terms and a.terms and gcd(a, b).is_constant():
                return a, b
    raise CommonComponent("the polynomials share a common factor")


def rational_points_common(fs, height=DEFAULT_HEIGHT):
    """Rational common zeros of homogeneous polynomials fs (finite set assumed)."""
    from .poly import resultant

    pts = set()
    a, b = _coprime_pair(fs)
    # chart z = 1
    A = a.substitute({"z": 1}).with_vars(("x", "y"))
    B = b.substitute({"z": 1}).with_vars(("x", "y"))
    if A.terms and B.terms:
        R = resultant(A, B, "y").with_vars(("x", "y"))
        if not R.terms:
            raise CommonComponent("affine parts share a factor")
        xs = [] if R.is_constant() else sorted(rational_roots(R.with_vars(("x",)), "x", height))
        for x0 in xs:
            A0 = A.substitute({"x": x0}).with_vars(("y",))
            B0 = B.substitute({"x": x0}).with_vars(("y",))
            for y0 in _uni_common_roots(A0, B0, "y", height):
                pts.add(ProjPoint(x0, y0, 1))
    # line z = 0, chart y = 1
    A = a.substitute({"y": 1, "z": 0}).with_vars(("x",))
    B = b.substitute({"y": 1, "z": 0}).with_vars(("x",))
    for x0 in _uni_common_roots(A, B, "x", height):
        pts.add(ProjPoint(x0, 1, 0))
    p = ProjPoint(1, 0, 0)
    if all(f.evaluate(p.as_dict()) == 0 for f in fs):
        pts.add(p)
    return sorted(q for q in pts if all(f.evaluate(q.as_dict()) == 0 for f in fs[2:]))


def rational_intersections(a, b, height=DEFAULT_HEIGHT):
    _check_no_common(a, b)
    pts = rational_points_common([a.equation, b.equation], height)
    out = [(p, intersection_multiplicity(a, b, p)) for p in pts]
    total = sum(m for _, m in out)
    expected = a.degree * b.degree
    if total > expected:
        raise InternalLimit("local multiplicities exceed the Bezout number")
    return IntersectionResult(out, total == expected, total, expected)


def tangent_cone(curve, p):
    f = curve.local(p) if isinstance(curve, PlaneCurve) else local_equation(curve, p)
    return f.homogeneous_part(f.min_degree())


def rational_linear_factors(form):
    """Rational linear factors (a, b) of a binary form in local x, y, as a*x + b*y."""
    m = form.degree()
    t = form.substitute({"x": 1}).with_vars(("y",))
    out = []
    if t.degree_in("y") < m:
        out.append(((Fraction(1), Fraction(0)), m - max(t.degree_in("y"), 0)))
    if t.terms and not t.is_constant():
        for root, mult in sorted(rational_roots(t, "y").items()):
            # form vanishes on direction (1, root): factor y - root*x
            out.append(((-root, Fraction(1)), mult))
    return out


def very_tangent_lines(curve, through):
    m = multiplicity_at(curve, through)
    if m == 0:
        raise ValueError(f"{through} is not on the curve")
    if m == curve.degree:
        raise ValueError("every line through the point meets the curve only there")
    out = []
    for (a, b), _ in rational_linear_factors(tangent_cone(curve, through)):
        line = PlaneCurve(local_to_global_line(through, a, b))
        if not gcd(line.equation, curve.equation).is_constant():
            continue
        if intersection_multiplicity(curve, line, through) == curve.degree:
            out.append(line)
    return out


CONIC_MONOMIALS = ("x^2", "x*y", "x*z", "y^2", "y*z", "z^2")


@dataclass
class ConicFamily:
    dimension: int
    basis: list = field(default_factory=list)


def conic_through(conditions):
    """Conic(s) through proper points and/or infinitely near points.

    Infinitely near conditions are objects with ``virtual_rows(basis)``
    (see ``infnear.InfinitelyNearPoint``); a condition implies its ancestors.
    """
    if len(conditions) > 5:
        raise ValueError("at most five conditions")
    basis = [parse(m) for m in CONIC_MONOMIALS]
    rows = []
    for c in conditions:
        if isinstance(c, ProjPoint):
            rows.append([b.evaluate(c.as_dict()) for b in basis])
        else:
            rows.extend(c.virtual_rows(basis))
    ns = nullspace(rows, 6)
    polys = [sum((b * c for b, c in zip(basis, v)), Poly.const(0)).primitive() for v in ns]
    if len(ns) != 1:
        return ConicFamily(len(ns) - 1, polys)
    try:
        return PlaneCurve(polys[0])
    except NotSquarefree as exc:
        raise DegenerateConditions(f"conditions force a double line: {polys[0]}") from exc


class ParamCurve:
    """Rational curve [P0(s,t) : P1(s,t) : P2(s,t)] by binary forms."""

    def __init__(self, components):
        comps = [c if isinstance(c, Poly) else parse(c, ("s", "t")) for c in components]
        comps = [c.with_vars(("s", "t")) for c in comps]
        degs = {c.degree() for c in comps if c.terms}
        if len(degs) != 1 or not all(c.is_homogeneous() for c in comps):
            raise ValueError("components must be binary forms of one degree")
        nz = [c for c in comps if c.terms]
        g = nz[0]
        for c in nz[1:]:
            g = gcd(g, c)
        if not g.is_constant():
            raise ValueError("components share a factor")
        self.components = tuple(comps)
        self.degree = degs.pop()

    @classmethod
    def line_through(cls, p, q):
        s, t = Poly.var("s", ("s", "t")), Poly.var("t", ("s", "t"))
        return cls([s * a + t * b for a, b in zip(p.coords, q.coords)])

    @classmethod
    def of_line(cls, line):
        """Parametrize a line given as a PlaneCurve (or linear form)."""
        eq = line.equation if isinstance(line, PlaneCurve) else line
        coeffs = [eq.terms.get(e, Fraction(0)) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
        pts = nullspace([coeffs], 3)
        return cls.line_through(ProjPoint(pts[0]), ProjPoint(pts[1]))

    def point(self, s, t):
        return ProjPoint(c.evaluate({"s": s, "t": t}) for c in self.components)


def image_on_curve_check(f, source, target):
    comps = f.components if hasattr(f, "components") else f
    binding = dict(zip(XYZ, source.components))
    images = [c.substitute(binding).with_vars(("s", "t")) for c in comps]
    if not any(c.terms for c in images):
        raise MapUndefinedOnCurve("every component vanishes on the source curve")
    tgt = target.equation if isinstance(target, PlaneCurve) else target
    return not tgt.substitute(dict(zip(XYZ, images))).terms
