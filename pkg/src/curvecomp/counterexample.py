"""Degree-8 curves with isomorphic complements built from three conics.

Pipeline per rational lambda: build the conics and lines, verify their
intersection table, blow up ten (infinitely near) points with incidences
computed from the equations, replay the two contraction orders in the Picard
lattice, and test for a projective swap of the two conics.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import hashlib
import json
from importlib import resources

from .errors import ForbiddenLambda, NotContractible, VerificationFailure
from .geometry import PlaneCurve, ProjPoint, intersection_multiplicity, rational_intersections
from .infnear import Cluster
from .lattice import (
    BlowupLattice,
    ContractionPlan,
    DivisorClass,
    adjunction_genus,
    curve_class,
    exceptional_class,
    replay,
    snc_tree_check,
)
from .poly import Poly, as_fraction, rational_roots, resultant

ORDER_C = ["Delta", "E3", "L_y", "E7", "E6", "E5", "L_lambda", "Lambda", "E8", "E9"]
CURVE_NAMES = ["Lambda", "Gamma", "Delta", "L_y", "L_lambda"]
RIGIDITY_NOTE = (
    "assumes the base points of each contraction are determined by the image curve "
    "(minimal SNC resolution of the curve followed by one further blow-up); not re-proved here"
)


def check_lambda(lam):
    lam = as_fraction(lam)
    if lam in (0, -1):
        raise ForbiddenLambda(f"lambda = {lam} degenerates the configuration")
    return lam


@dataclass
class ConicConfiguration:
    lam: Fraction
    curves: dict
    named_points: dict
    table: list = field(default_factory=list)

    def __getitem__(self, name):
        return self.curves[name]

    def to_json(self):
        return {
            "lambda": _fmt(self.lam),
            "curves": {k: str(v) for k, v in sorted(self.curves.items())},
            "points": {k: str(v) for k, v in sorted(self.named_points.items())},
            "intersection_table": self.table,
        }


def _fmt(c):
    c = as_fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def conic_equations(lam):
    lam = as_fraction(lam)
    x, y, z = Poly.var("x"), Poly.var("y"), Poly.var("z")
    return {
        "Lambda": x * y + x * z + y * z,
        "Gamma": x * x - (1 + lam) * x * y - lam * x * z - (1 + lam) * y * z,
        "Delta": z * z - (1 + 1 / lam) * x * y - (1 / lam) * x * z - (1 + 1 / lam) * y * z,
        "L_y": y,
        "L_lambda": x - lam * z,
    }


def build_configuration(lam):
    lam = check_lambda(lam)
    curves = {k: PlaneCurve(v, irreducible=True, name=k) for k, v in conic_equations(lam).items()}
    p = ProjPoint(0, 1, 0)
    pts = {
        "p": p,
        "p1": ProjPoint(1, 0, 0),
        "p2": ProjPoint(0, 0, 1),
        "p3": ProjPoint(lam, 0, 1),
        "s": ProjPoint(1 + lam, -1, 1 + 1 / lam),
    }
    claims = [
        ("Lambda", "Gamma", {p: 3, pts["p2"]: 1}),
        ("Lambda", "Delta", {p: 3, pts["p1"]: 1}),
        ("Gamma", "Delta", {p: 3, pts["p3"]: 1}),
        ("L_lambda", "Lambda", {p: 1, pts["s"]: 1}),
    ]
    table = []
    for a, b, expected in claims:
        res = rational_intersections(curves[a], curves[b])
        got = res.as_dict()
        ok = res.complete and got == expected
        table.append({
            "curves": [a, b],
            "expected": {str(k): v for k, v in sorted(expected.items())},
            "computed": {str(k): v for k, v in sorted(got.items())},
            "complete": res.complete,
            "ok": ok,
        })
        if not ok:
            raise VerificationFailure(f"intersection claim for {a}, {b} fails: {got}")
    return ConicConfiguration(lam, curves, pts, table)


def resultant_check(lam):
    """Res_x(Lambda, Gamma) on y = 1 has z = 0 as a triple root."""
    eq = conic_equations(lam)
    r = resultant(eq["Lambda"], eq["Gamma"], "x").substitute({"y": 1}).with_vars(("z",))
    return rational_roots(r, "z").get(Fraction(0), 0)


# -- blow-ups ------------------------------------------------------------------


@dataclass
class BlowupData:
    config: ConicConfiguration
    cluster: Cluster
    lattice: BlowupLattice
    classes: dict

    def incidence(self):
        return self.cluster.incidence()

    def self_intersections(self):
        return {k: v.self_intersection() for k, v in self.classes.items()}

    def incidence_hash(self):
        data = {
            "incidence": self.incidence(),
            "proximity": {n.id + 1: sorted(j + 1 for j in n.prox) for n in self.cluster.nodes},
        }
        blob = json.dumps(data, sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()

    def adjacency(self):
        names = sorted(self.classes)
        out = {}
        for i, a in enumerate(names):
            for b in names[i + 1:]:
                c = self.classes[a].dot(self.classes[b])
                if c:
                    out[f"{a}.{b}"] = c
        return out


def blowup_plan(config):
    cl = Cluster({k: config.curves[k] for k in CURVE_NAMES})
    pts = config.named_points
    cl.add_root(pts["p1"], "p1")
    cl.add_root(pts["p2"], "p2")
    p3 = cl.add_root(pts["p3"], "p3")
    cl.add_child(p3, along="L_lambda", label="q")
    p5 = cl.add_root(pts["p"], "p")
    p6 = cl.add_child(p5, along="Lambda", label="p6")
    p7 = cl.add_child(p6, along="Lambda", label="p7")
    r = cl.add_child(p7, along="Lambda", label="r")
    p9 = cl.add_child(r, along=p7, label="p9")
    cl.add_child(p9, along=p7, label="p10")
    tree = cl.tree()
    for node in tree.nodes:
        node.mult = 1
    lat = BlowupLattice(tree)
    classes = {}
    degrees = {"Lambda": 2, "Gamma": 2, "Delta": 2, "L_y": 1, "L_lambda": 1}
    for name in CURVE_NAMES:
        classes[name] = curve_class(lat, degrees[name], cl.multiplicities(name))
    for i in range(lat.n):
        classes[f"E{i + 1}"] = exceptional_class(lat, i)
    return BlowupData(config, cl, lat, classes)


def load_expectation():
    text = resources.files("curvecomp").joinpath("data/figure_expectation.json").read_text()
    return json.loads(text)


def compare_with_figures(data, expectation=None):
    """Differences between computed self-intersections/adjacency and the transcription."""
    exp = expectation or load_expectation()
    diffs = []
    got_self = data.self_intersections()
    for k, v in sorted(exp["self_intersections"].items()):
        if got_self.get(k) != v:
            diffs.append({"what": f"self-intersection of {k}", "figure": v, "computed": got_self.get(k)})
    got_adj = {tuple(sorted(k.split("."))) for k, v in data.adjacency().items() if v == 1}
    other = {k: v for k, v in data.adjacency().items() if v != 1}
    exp_adj = {tuple(sorted(pair)) for pair in exp["meets"]}
    for pair in sorted(exp_adj - got_adj):
        diffs.append({"what": f"{pair[0]} meets {pair[1]}", "figure": 1, "computed": 0})
    for pair in sorted(got_adj - exp_adj):
        diffs.append({"what": f"{pair[0]} meets {pair[1]}", "figure": 0, "computed": 1})
    for k, v in sorted(other.items()):
        diffs.append({"what": f"product {k}", "figure": "0 or 1", "computed": v})
    return diffs


# -- contractions ---------------------------------------------------------------


def order_for(variant):
    if variant == "C":
        return list(ORDER_C), "Gamma"
    if variant == "D":
        return ["Gamma" if k == "Delta" else k for k in ORDER_C], "Delta"
    raise ValueError(f"unknown variant {variant!r}")


def plan_for(data, variant, order=None):
    default, track = order_for(variant)
    return ContractionPlan(data.lattice.tree, dict(data.classes), order or default, track)


def replay_contractions(data, variant, order=None):
    return replay(plan_for(data, variant, order))


def relabel_plan(plan):
    swap = {"Gamma": "Delta", "Delta": "Gamma"}
    return ContractionPlan(
        plan.tree,
        dict(plan.classes),
        [swap.get(k, k) for k in plan.order],
        swap.get(plan.track, plan.track),
    )


# -- projective swap ---------------------------------------------------------------


def _swap_candidate(alpha, beta):
    """Matrix [x:y:z] -> [alpha z : y : beta x] as polynomials (alpha, beta may be symbols)."""
    x, y, z = Poly.var("x"), Poly.var("y"), Poly.var("z")
    if not isinstance(alpha, Poly):
        return (z * alpha, y, x * beta)
    return (alpha * z, y, beta * x)


def solve_swap_parameters():
    """All rational (alpha, beta), both nonzero, for which the swap preserves Lambda.

    Lambda(phi) must be proportional to Lambda: the three cross-products of its
    coefficient vector with (1, 1, 1) vanish.  The system is solved by a
    resultant in beta followed by back substitution.
    """
    a, b = Poly.var("a", ("a", "b")), Poly.var("b", ("a", "b"))
    x, y, z = Poly.var("x"), Poly.var("y"), Poly.var("z")
    lam_eq = x * y + x * z + y * z
    img = lam_eq.substitute(dict(zip("xyz", _swap_candidate(a, b))))
    mons = [(1, 1, 0), (1, 0, 1), (0, 1, 1)]
    full = img.with_vars(("x", "y", "z", "a", "b"))
    coeffs = []
    for mono in mons:
        part = {e[3:]: c for e, c in full.terms.items() if e[:3] == mono}
        coeffs.append(Poly({(e[0], e[1]): c for e, c in part.items()}, ("a", "b")))
    eqs = [coeffs[0] - coeffs[1], coeffs[1] - coeffs[2]]
    res = resultant(eqs[0], eqs[1], "b").with_vars(("a",))
    sols = []
    alphas = sorted(rational_roots(res, "a")) if res.terms else []
    for al in alphas:
        if al == 0:
            continue
        e0 = eqs[0].substitute({"a": al}).with_vars(("b",))
        e1 = eqs[1].substitute({"a": al}).with_vars(("b",))
        cands = set()
        for e in (e0, e1):
            if e.terms and not e.is_constant():
                cands.update(rational_roots(e, "b"))
        for be in sorted(cands):
            if be != 0 and all(q.evaluate({"a": al, "b": be}) == 0 for q in eqs):
                sols.append((al, be))
    return sols


@dataclass
class SwapResult:
    exists: bool
    witness: tuple | None
    parameters: list
    reason: str

    def to_json(self):
        return {
            "exists": self.exists,
            "witness": None if self.witness is None else [str(c) for c in self.witness],
            "parameters": [[_fmt(a), _fmt(b)] for a, b in self.parameters],
            "reason": self.reason,
        }


def swap_automorphism_exists(lam):
    lam = check_lambda(lam)
    eq = conic_equations(lam)
    params = solve_swap_parameters()
    for al, be in params:
        comps = _swap_candidate(al, be)
        img = ProjPoint(*(c.evaluate({"x": lam, "y": 0, "z": 1}) for c in comps))
        if img != ProjPoint(lam, 0, 1):
            continue
        sub = dict(zip("xyz", comps))
        g_img = eq["Gamma"].substitute(sub)
        d_img = eq["Delta"].substitute(sub)
        if g_img.primitive() == eq["Delta"].primitive() and d_img.primitive() == eq["Gamma"].primitive():
            return SwapResult(True, comps, params, "swap preserves Lambda and exchanges Gamma, Delta")
    reason = (
        f"preserving Lambda forces (alpha, beta) in {[(str(a), str(b)) for a, b in params]}; "
        f"fixing [{_fmt(lam)}:0:1] then needs lambda^2 = 1"
    )
    return SwapResult(False, None, params, reason)


# -- report -----------------------------------------------------------------------


@dataclass
class CounterexampleReport:
    lam: Fraction
    config: ConicConfiguration
    data: BlowupData
    replays: dict
    profiles: dict
    errors: dict
    swap: SwapResult
    figure_diffs: list
    snc: tuple
    verdict: str

    @property
    def replays_ok(self):
        return not self.errors

    def to_json(self):
        steps = {}
        for v, res in self.replays.items():
            steps[v] = [
                {"contracted": s.contracted[-1] if s.contracted else None, **s.snapshot()}
                for s in res.states
            ]
        return {
            "lambda": _fmt(self.lam),
            "configuration": self.config.to_json(),
            "incidence": self.data.incidence(),
            "incidence_hash": self.data.incidence_hash(),
            "proximity": {str(n.id + 1): sorted(j + 1 for j in n.prox) for n in self.data.cluster.nodes},
            "self_intersections_X": dict(sorted(self.data.self_intersections().items())),
            "figure_discrepancies": self.figure_diffs,
            "snc_tree": {"ok": self.snc[0], "certificate": self.snc[1]},
            "plans": {v: plan_for(self.data, v).to_json() for v in ("C", "D")},
            "replays": steps,
            "profiles": {k: p.to_json() for k, p in self.profiles.items()},
            "replay_errors": self.errors,
            "swap": self.swap.to_json(),
            "verdict": self.verdict,
            "assumption": RIGIDITY_NOTE,
        }


def counterexample_report(lam):
    lam = check_lambda(lam)
    config = build_configuration(lam)
    data = blowup_plan(config)
    replays, profiles, errors = {}, {}, {}
    for v in ("C", "D"):
        try:
            res = replay_contractions(data, v)
        except NotContractible as exc:
            errors[v] = str(exc)
            continue
        replays[v] = res
        profiles[v] = res.profile
    swap = swap_automorphism_exists(lam)
    contracted = {k: data.classes[k] for k in ORDER_C}
    snc = snc_tree_check(contracted)
    if errors:
        verdict = "inconclusive: a contraction replay failed"
    elif swap.exists:
        verdict = "projectively equivalent configuration: the conic swap exists"
    elif lam in (0, 1, -1):
        verdict = "inconclusive: lambda outside the admissible range"
    else:
        verdict = "projectively non-equivalent with isomorphic complements (" + RIGIDITY_NOTE + ")"
    return CounterexampleReport(
        lam, config, data, replays, profiles, errors, swap, compare_with_figures(data), snc, verdict
    )


def genus_of(data, name):
    return adjunction_genus(data.classes[name])


__all__ = [
    "DivisorClass",
    "build_configuration",
    "blowup_plan",
    "replay_contractions",
    "swap_automorphism_exists",
    "counterexample_report",
]
