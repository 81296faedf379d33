"""Blow-up charts, infinitely near points, proximity and multiplicity sequences.

Local coordinates at every point are called x, y with the point at the
origin.  Blowing up the origin gives two charts:

* chart 1, ``(x, y) -> (x, x*y)``: exceptional line ``x = 0``; the point of
  direction (1 : t) sits at ``(0, t)`` and is moved to the origin.
* chart 2, ``(x, y) -> (x*y, y)``: exceptional line ``y = 0``; only the
  vertical direction (0 : 1) is taken from this chart, at its origin.

A step is ``(1, t)`` or ``(2, None)``.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    InternalLimit,
    NonRationalCenter,
    NonRationalInfinitelyNearPoint,
    NotDivisible,
)
from .geometry import PlaneCurve, ProjPoint, fmt_rational, local_equation, rational_linear_factors
from .poly import Poly, as_fraction, exact_divide, gcd, rational_roots, squarefree_part_uni

LOC = ("x", "y")
_X = Poly.var("x", LOC)
_Y = Poly.var("y", LOC)


def _loc(p):
    return p.with_vars(LOC)


def _at_origin(g):
    return g.evaluate({"x": 0, "y": 0})


def chart_substitute(g, step):
    chart, t = step
    if chart == 1:
        return _loc(g.substitute({"x": _X, "y": _X * (_Y + t)}))
    return _loc(g.substitute({"x": _X * _Y, "y": _Y}))


def exceptional_coordinate(step):
    return _X if step[0] == 1 else _Y


def step_transform(g, step, k):
    """Substitute the chart of ``step`` into g and divide by the k-th power of E."""
    h = chart_substitute(g, step)
    if k:
        h = exact_divide(h, exceptional_coordinate(step) ** k)
    return h


def blow_up_chart(f, center=(0, 0), m=None):
    """Strict transforms of an affine f(x, y) at ``center`` in both charts.

    Returns a dict with keys ``chart1``, ``chart2`` (strict transforms), and the
    exceptional equations ``exceptional1`` = x, ``exceptional2`` = y.
    """
    try:
        cx, cy = (as_fraction(c) for c in center)
    except TypeError as exc:
        raise NonRationalCenter(f"center {center!r} is not rational") from exc
    g = _loc(f).substitute({"x": _X + cx, "y": _Y + cy})
    g = _loc(g)
    mult = g.min_degree()
    if m is None:
        m = mult
    if mult < m:
        raise NotDivisible(f"multiplicity at the center is {mult}, not {m}")
    return {
        "chart1": step_transform(g, (1, Fraction(0)), m),
        "chart2": step_transform(g, (2, None), m),
        "exceptional1": _X,
        "exceptional2": _Y,
        "multiplicity": m,
    }


def direction_to_step(a, b):
    """Step for the point of E on the line a*x + b*y = 0."""
    if b:
        return (1, Fraction(-a) / b)
    return (2, None)


def tangent_step(g):
    """Step in the direction of a smooth local curve g through the origin."""
    if g.min_degree() != 1:
        raise ValueError("direction is only defined for a curve smooth at the point")
    lin = g.homogeneous_part(1)
    a = lin.terms.get((1, 0), Fraction(0))
    b = lin.terms.get((0, 1), Fraction(0))
    return direction_to_step(a, b)


def fmt_step(step):
    return "chart2" if step[0] == 2 else f"chart1:{fmt_rational(step[1])}"


@dataclass(frozen=True)
class InfinitelyNearPoint:
    """A proper point plus a path of blow-up steps."""

    root: ProjPoint
    path: tuple = ()

    def child(self, step):
        return InfinitelyNearPoint(self.root, self.path + (step,))

    def parent(self):
        if not self.path:
            return None
        return InfinitelyNearPoint(self.root, self.path[:-1])

    @property
    def level(self):
        return len(self.path)

    def local_strict(self, f):
        """Strict transform of a global form f at this point (and its multiplicity)."""
        g = local_equation(f, self.root)
        for step in self.path:
            g = step_transform(g, step, max(g.min_degree(), 0) if _at_origin(g) == 0 else 0)
        return g

    def multiplicity(self, f):
        g = self.local_strict(f)
        return g.min_degree() if g.terms and _at_origin(g) == 0 else 0

    def virtual_rows(self, basis):
        """Linear conditions (one per level) for passing through this point.

        Each level imposes virtual multiplicity one; the transform of every
        basis element is shifted by its value at the centre before dividing,
        which is exact once the earlier conditions hold.
        """
        gs = [local_equation(b, self.root) for b in basis]
        rows = [[_at_origin(g) for g in gs]]
        for step in self.path:
            gs = [step_transform(g - _at_origin(g), step, 1) for g in gs]
            rows.append([_at_origin(g) for g in gs])
        return rows

    def __str__(self):
        return str(self.root) + "".join(" > " + fmt_step(s) for s in self.path)


# -- proximity trees ---------------------------------------------------------


@dataclass
class ClusterNode:
    id: int
    parent: int | None
    mult: int
    prox: list
    point: InfinitelyNearPoint
    label: str = ""

    @property
    def chart_point(self):
        if not self.point.path:
            return None
        chart, t = self.point.path[-1]
        return (chart, (Fraction(0), t if chart == 1 else Fraction(0)))

    def to_json(self):
        return {
            "id": self.id,
            "parent": self.parent,
            "mult": self.mult,
            "prox": sorted(self.prox),
            "point": str(self.point.root),
            "path": [fmt_step(s) for s in self.point.path],
            "label": self.label,
        }


@dataclass
class ProximityTree:
    nodes: list = field(default_factory=list)

    def __len__(self):
        return len(self.nodes)

    def mults(self):
        return [n.mult for n in self.nodes]

    def is_chain(self):
        return all(n.parent == (n.id - 1 if n.id else None) for n in self.nodes)

    def proximate_pairs(self):
        return {(n.id, j) for n in self.nodes for j in n.prox}

    def to_json(self):
        return {"nodes": [n.to_json() for n in self.nodes]}

    @classmethod
    def from_json(cls, data):
        nodes = []
        for d in data["nodes"]:
            nodes.append(
                ClusterNode(d["id"], d["parent"], d.get("mult", 0), list(d.get("prox", [])),
                            InfinitelyNearPoint(ProjPoint(0, 0, 1)), d.get("label", ""))
            )
        return cls(nodes)


def proximity_matrix(tree):
    n = len(tree.nodes)
    P = [[0] * n for _ in range(n)]
    for node in tree.nodes:
        P[node.id][node.id] = 1
        for j in node.prox:
            if j >= node.id:
                raise ValueError("proximity must point to earlier nodes")
            P[node.id][j] = -1
    return P


# -- multiplicity sequences ---------------------------------------------------


@dataclass
class MultiplicitySequence:
    entries: list
    tree: ProximityTree
    branching: bool = False

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __eq__(self, other):
        if isinstance(other, (list, tuple)):
            return list(self.entries) == list(other)
        return isinstance(other, MultiplicitySequence) and self.entries == other.entries


def _points_on_exceptional(g, m):
    """Rational points of E met by the strict transform of g (multiplicity m at 0).

    Returns (list of (step, contact), irrational_degree).  Raises if an
    irrational point could be singular (repeated irrational factor).
    """
    cone = g.homogeneous_part(m)
    factors = rational_linear_factors(cone)
    steps = [(direction_to_step(a, b), k) for (a, b), k in factors]
    rational_degree = sum(k for _, k in factors)
    rest = m - rational_degree
    if rest:
        t = cone.substitute({"x": 1}).with_vars(("y",))
        coeffs = t.univariate_coeffs("y")
        for (a, b), k in factors:
            if b:
                root = Fraction(-a) / b
                for _ in range(k):
                    coeffs = _div_linear(coeffs, root)
        if len(squarefree_part_uni(coeffs)) != len(coeffs):
            raise NonRationalInfinitelyNearPoint(
                "a repeated irrational tangent direction may hide a singular point",
                Poly.from_univariate(coeffs, "y"),
            )
    steps.sort(key=lambda sk: (sk[0][0], sk[0][1] if sk[0][1] is not None else 0))
    return steps, rest


def _div_linear(coeffs, root):
    out = [Fraction(0)] * (len(coeffs) - 1)
    acc = Fraction(0)
    for i in range(len(coeffs) - 1, 0, -1):
        acc = coeffs[i] + acc * root
        out[i - 1] = acc
    return out


def _cap(curve):
    d = curve.degree
    return (d - 1) * (d - 2) // 2 + 1


def multiplicity_sequence(curve, start):
    """Multiplicities at the singular points infinitely near ``start``.

    Singular points at one level are explored depth-first, chart 1 before
    chart 2 and by increasing t; ``branching`` is set when more than one
    singular point occurs at some level.
    """
    if isinstance(curve, str):
        curve = PlaneCurve(curve)
    g0 = curve.local(start)
    if g0.min_degree() < 2 or _at_origin(g0):
        raise ValueError(f"{start} is not a singular point of the curve")
    cap = _cap(curve)
    nodes = []
    branching = False

    def visit(g, point, parent, excs):
        nonlocal branching
        if len(nodes) >= cap:
            raise InternalLimit("chain longer than the genus bound allows")
        m = g.min_degree()
        nid = len(nodes)
        prox = [j for j, e in excs if e.terms and _at_origin(e) == 0]
        nodes.append(ClusterNode(nid, parent, m, prox, point))
        steps, _ = _points_on_exceptional(g, m)
        children = []
        for step, contact in steps:
            if contact < 2:
                continue
            h = step_transform(g, step, m)
            if h.min_degree() >= 2 and _at_origin(h) == 0:
                new_excs = [(j, step_transform(e, step, 1 if _at_origin(e) == 0 else 0)) for j, e in excs]
                new_excs.append((nid, exceptional_coordinate(step)))
                children.append((h, point.child(step), new_excs))
        if len(children) > 1:
            branching = True
        for h, pt, ex in children:
            visit(h, pt, nid, ex)

    visit(g0, InfinitelyNearPoint(start), None, [])
    tree = ProximityTree(nodes)
    return MultiplicitySequence([n.mult for n in nodes], tree, branching)


def branch_count(curve, p):
    """Number of branches of the curve at p (points of the resolution over p)."""
    if isinstance(curve, str):
        curve = PlaneCurve(curve)
    g0 = curve.local(p)
    if _at_origin(g0):
        raise ValueError(f"{p} is not on the curve")
    cap = _cap(curve) + curve.degree
    budget = [cap]

    def count(g):
        m = g.min_degree()
        if m <= 1:
            return 1
        budget[0] -= 1
        if budget[0] < 0:
            raise InternalLimit("resolution longer than expected")
        steps, irrational = _points_on_exceptional(g, m)
        total = irrational
        for step, contact in steps:
            if contact == 1:
                total += 1
            else:
                total += count(step_transform(g, step, m))
        return total

    return count(g0)


# -- clusters of named curves ----------------------------------------------------


class Cluster:
    """Blow-up sequence driven by named global curves.

    Each node records the local strict transforms of every named curve and of
    every earlier exceptional curve, so incidences and proximity come straight
    from the equations.
    """

    def __init__(self, curves):
        self.curves = {k: (v.equation if isinstance(v, PlaneCurve) else v) for k, v in curves.items()}
        self.nodes = []
        self._local = []
        self._excs = []

    def add_root(self, point, label=""):
        local = {k: local_equation(f, point) for k, f in self.curves.items()}
        return self._add(InfinitelyNearPoint(point), None, local, [], label)

    def add_child(self, parent, along=None, step=None, label=""):
        """New node on E_parent, in the direction of curve ``along`` (a name or E index)."""
        pl = self._local[parent]
        if step is None:
            if isinstance(along, int):
                g = dict(self._excs[parent])[along]
            else:
                g = pl[along]
            step = tangent_step(g)
        local = {}
        for k, g in pl.items():
            m = g.min_degree() if _at_origin(g) == 0 else 0
            local[k] = step_transform(g, step, m)
        excs = []
        for j, e in self._excs[parent]:
            excs.append((j, step_transform(e, step, 1 if _at_origin(e) == 0 else 0)))
        excs.append((parent, exceptional_coordinate(step)))
        return self._add(self.nodes[parent].point.child(step), parent, local, excs, label)

    def _add(self, point, parent, local, excs, label):
        nid = len(self.nodes)
        prox = [j for j, e in excs if _at_origin(e) == 0]
        self.nodes.append(ClusterNode(nid, parent, 0, prox, point, label))
        self._local.append(local)
        self._excs.append(excs)
        return nid

    def multiplicity(self, name, node):
        g = self._local[node][name]
        return g.min_degree() if _at_origin(g) == 0 else 0

    def multiplicities(self, name):
        return [self.multiplicity(name, i) for i in range(len(self.nodes))]

    def incidence(self):
        return {k: self.multiplicities(k) for k in self.curves}

    def tree(self):
        return ProximityTree(list(self.nodes))
