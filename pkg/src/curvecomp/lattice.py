"""Picard lattice of an iterated blow-up of P^2 and contraction replays.

A class (d; m_1, ..., m_n) stands for d*H - sum m_i e_i, where H is the pull
back of a line and e_i the total transform of the i-th exceptional curve.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NotContractible, RankNotOne
from .infnear import ProximityTree, proximity_matrix


@dataclass(frozen=True)
class DivisorClass:
    d: int
    m: tuple

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(int(v) for v in self.m))

    @property
    def n(self):
        return len(self.m)

    def dot(self, other):
        if self.n != other.n:
            raise ValueError("classes live on lattices of different rank")
        return self.d * other.d - sum(a * b for a, b in zip(self.m, other.m))

    def self_intersection(self):
        return self.dot(self)

    def __add__(self, other):
        return DivisorClass(self.d + other.d, tuple(a + b for a, b in zip(self.m, other.m)))

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, k):
        return DivisorClass(self.d * k, tuple(a * k for a in self.m))

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def to_json(self):
        return {"d": self.d, "m": list(self.m)}

    @classmethod
    def from_json(cls, data):
        return cls(data["d"], tuple(data["m"]))

    def __str__(self):
        return f"({self.d}; {', '.join(map(str, self.m))})"


def line_class(n):
    return DivisorClass(1, (0,) * n)


def e_class(n, i):
    """Total transform e_i as a class: coefficient of -e_i is -1."""
    return DivisorClass(0, tuple(-1 if j == i else 0 for j in range(n)))


def canonical_class(n):
    return DivisorClass(-3, (-1,) * n)


class BlowupLattice:
    def __init__(self, tree):
        if isinstance(tree, int):
            tree = ProximityTree([])
        self.tree = tree
        self.n = len(tree.nodes)

    @classmethod
    def of_size(cls, n):
        lat = cls(ProximityTree([]))
        lat.n = n
        return lat

    @property
    def H(self):
        return line_class(self.n)

    def e(self, i):
        return e_class(self.n, i)

    @property
    def K(self):
        return canonical_class(self.n)


def exceptional_class(lattice, i):
    """Strict transform of E_i: e_i minus the e_j of nodes proximate to i."""
    m = [0] * lattice.n
    m[i] = -1
    for node in lattice.tree.nodes:
        if i in node.prox:
            m[node.id] += 1
    return DivisorClass(0, tuple(m))


def curve_class(lattice, d, mults):
    mults = tuple(mults)
    if len(mults) != lattice.n:
        raise ValueError("multiplicity vector must have one entry per node")
    return DivisorClass(d, mults)


def pairwise_intersection(a, b):
    return a.dot(b)


def adjunction_genus(D):
    K = canonical_class(D.n)
    return Fraction(D.self_intersection() + D.dot(K), 2) + 1


def plane_genus(d, mults):
    return Fraction((d - 1) * (d - 2) - sum(m * (m - 1) for m in mults), 2)


def exceptional_classes_via_matrix(tree):
    """Rows of the inverse proximity matrix, as a cross-check of exceptional_class.

    With P the proximity matrix, E = P^T e in the e-basis; the class of E_i has
    -e coefficient -P[j][i] at position j.
    """
    P = proximity_matrix(tree)
    n = len(P)
    return [DivisorClass(0, tuple(-P[j][i] for j in range(n))) for i in range(n)]


# -- contractions ----------------------------------------------------------------


@dataclass
class ContractionState:
    classes: dict
    K: DivisorClass
    rank: int
    contracted: list = field(default_factory=list)
    meetings: list = field(default_factory=list)

    def snapshot(self):
        return {
            "classes": {k: v.to_json() for k, v in sorted(self.classes.items())},
            "self_intersections": {k: v.self_intersection() for k, v in sorted(self.classes.items())},
            "rank": self.rank,
            "contracted": list(self.contracted),
        }


def initial_state(classes, n):
    return ContractionState(dict(classes), canonical_class(n), n + 1)


def contract_step(state, name, step=None):
    """Blow down the (-1)-curve ``name``; every other class D goes to D + (D.e)e."""
    if name not in state.classes:
        raise KeyError(f"no class named {name!r} (already contracted?)")
    e = state.classes[name]
    s = e.self_intersection()
    g = adjunction_genus(e)
    if s != -1 or g != 0:
        raise NotContractible(name, s, genus=g, step=step, state=state.snapshot())
    classes = {}
    meet = {}
    for k, D in state.classes.items():
        if k == name:
            continue
        c = D.dot(e)
        meet[k] = c
        classes[k] = D + e * c if c else D
    K = state.K + e * state.K.dot(e)
    return ContractionState(
        classes, K, state.rank - 1, state.contracted + [name], state.meetings + [(name, meet)]
    )


@dataclass
class Profile:
    degree: int
    multiplicities: list

    @property
    def singular(self):
        return [m for m in self.multiplicities if m >= 2]

    def to_json(self):
        return {"degree": self.degree, "multiplicities": self.multiplicities, "singular": self.singular}


def pushforward_multiplicity_profile(state, track):
    """Degree of the tracked class on the terminal P^2 and its multiplicities.

    Multiplicities are intersection numbers with each contracted curve at the
    moment it was contracted, listed in reverse contraction order.
    """
    if state.rank != 1:
        raise RankNotOne(f"lattice still has rank {state.rank}")
    D = state.classes[track]
    dk = D.dot(state.K)
    if dk % 3:
        raise RankNotOne("tracked class is not a multiple of the line class")
    d = -dk // 3
    if D.self_intersection() != d * d:
        raise RankNotOne("terminal lattice is not unimodular of rank one")
    mults = [meet[track] for _, meet in reversed(state.meetings)]
    return Profile(d, mults)


@dataclass
class ContractionPlan:
    tree: ProximityTree
    classes: dict
    order: list
    track: str

    @property
    def n(self):
        return len(self.tree.nodes)

    def to_json(self):
        return {
            "tree": self.tree.to_json(),
            "classes": {k: v.to_json() for k, v in sorted(self.classes.items())},
            "contract": list(self.order),
            "track": self.track,
        }

    @classmethod
    def from_json(cls, data):
        tree = ProximityTree.from_json(data["tree"])
        classes = {k: DivisorClass.from_json(v) for k, v in data["classes"].items()}
        return cls(tree, classes, list(data["contract"]), data["track"])


@dataclass
class ReplayResult:
    states: list
    profile: Profile | None

    @property
    def final(self):
        return self.states[-1]


def replay(plan):
    """Contract the plan's classes in order; raises NotContractible on the first bad step."""
    state = initial_state(plan.classes, plan.n)
    states = [state]
    for i, name in enumerate(plan.order, start=1):
        state = contract_step(state, name, step=i)
        states.append(state)
    profile = pushforward_multiplicity_profile(state, plan.track) if plan.track else None
    return ReplayResult(states, profile)


def verify_minus_one_tower(lattice, curve):
    """Chain-shaped tree whose final strict transform is a (-1)-curve of genus 0."""
    trace = []
    for k in range(1, curve.n + 1):
        trace.append(curve.d ** 2 - sum(m * m for m in curve.m[:k]))
    chain = lattice.tree.is_chain() if lattice.tree.nodes else True
    ok = chain and curve.self_intersection() == -1 and adjunction_genus(curve) == 0
    return ok, trace


def extend_to_minus_one(d, mults):
    """Append simple points until d^2 - sum m^2 = -1 (None if already below)."""
    mults = list(mults)
    s = d * d - sum(m * m for m in mults)
    if s < -1:
        return None
    return mults + [1] * (s + 1)


def snc_tree_check(classes):
    """True iff pairwise products are 0 or 1 and the dual graph is a tree."""
    if isinstance(classes, dict):
        items = sorted(classes.items())
    else:
        items = [(str(i), c) for i, c in enumerate(classes)]
    names = [k for k, _ in items]
    edges = []
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            c = items[i][1].dot(items[j][1])
            if c not in (0, 1):
                return False, {"reason": "not transverse", "pair": [names[i], names[j]], "product": c}
            if c == 1:
                edges.append((names[i], names[j]))
    parent = {k: k for k in names}

    def find(k):
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False, {"reason": "cycle", "edge": [a, b], "edges": edges}
        parent[ra] = rb
    roots = {find(k) for k in names}
    if len(roots) > 1:
        return False, {"reason": "disconnected", "components": len(roots), "edges": edges}
    return True, {"edges": edges}
