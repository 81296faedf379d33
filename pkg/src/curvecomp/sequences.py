"""Arithmetic of multiplicity sequences of rational plane curves.

Genus and square-sum constraints, degree bounds, the quadratic-transform
exclusion, the low-degree table, and the embedding-extension classifiers with
their Diophantine subcases.
"""

from dataclasses import dataclass, field
from importlib import resources
import json

import numpy as np

from .errors import Inadmissible, UnknownCase

TAGS = (
    "ExtendsAlways",
    "NoNonExtendableEmbedding",
    "EmbeddingExistsUnicuspidal",
    "RequiresUnicuspidal",
    "SpecialPunctured",
    "Unknown",
)


@dataclass(frozen=True)
class SequenceCandidate:
    degree: int
    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(m) for m in self.entries))

    @property
    def k(self):
        return len(self.entries)

    def __str__(self):
        return f"{self.degree}: {compress(self.entries)}"


def _cand(d, seq=None):
    if isinstance(d, SequenceCandidate):
        return d
    return SequenceCandidate(d, tuple(seq))


def compress(seq):
    """(4,3,3,2,2,2) -> '(4,3_(2),2_(3))'."""
    parts = []
    i = 0
    seq = list(seq)
    while i < len(seq):
        j = i
        while j < len(seq) and seq[j] == seq[i]:
            j += 1
        n = j - i
        parts.append(str(seq[i]) if n == 1 else f"{seq[i]}_({n})")
        i = j
    return "(" + ",".join(parts) + ")"


def parse_sequence(text):
    """Accepts '3,3,3', '(3,2_(7))', '3_7,2' or a list."""
    if isinstance(text, (list, tuple)):
        return tuple(int(v) for v in text)
    out = []
    body = text.strip().strip("()[] ")
    if not body:
        return ()
    for tok in body.split(","):
        tok = tok.strip().replace("{", "").replace("}", "").replace("(", "").replace(")", "")
        if "_" in tok:
            m, n = tok.split("_")
            out.extend([int(m)] * int(n))
        elif tok:
            out.append(int(tok))
    return tuple(out)


# -- admissibility ---------------------------------------------------------------


def genus_and_squares_check(c, seq=None):
    c = _cand(c, seq)
    d = c.degree
    genus_ok = sum(m * (m - 1) for m in c.entries) == d * d - 3 * d + 2
    slack = d * d + 1 - sum(m * m for m in c.entries)
    return genus_ok, slack


def degree_bounds_check(c, seq=None):
    c = _cand(c, seq)
    if not c.entries:
        return False
    m1 = c.entries[0]
    m2 = c.entries[1] if c.k > 1 else 1
    return m1 + m2 <= c.degree < 3 * m1


def _basic_ok(c):
    g, s = genus_and_squares_check(c)
    return g and s >= 0 and degree_bounds_check(c)


def quadratic_reduction_filter(c, seq=None):
    """Image under the quadratic map based at the first three points, if applicable."""
    c = _cand(c, seq)
    if c.k < 3:
        return None
    m1, m2, m3 = c.entries[:3]
    d = c.degree
    if not (m1 + m2 + m3 > d and m2 + m3 > m1):
        return None
    new = [d - m2 - m3, d - m1 - m3, d - m1 - m2] + list(c.entries[3:])
    new = sorted((m for m in new if m > 1), reverse=True)
    return SequenceCandidate(2 * d - m1 - m2 - m3, tuple(new))


def excluded_by_reduction(c, seq=None, trace=None):
    """True when some chain of quadratic reductions lands on an impossible candidate."""
    c = _cand(c, seq)
    r = quadratic_reduction_filter(c)
    if r is None:
        return False
    if trace is not None:
        trace.append(str(r))
    if not r.entries:
        return r.degree > 2
    if not _basic_ok(r):
        return True
    return excluded_by_reduction(r, trace=trace)


def _partitions(total, maxpart, minpart=2):
    """Non-increasing sequences of parts in [minpart, maxpart] with sum m(m-1) = total."""
    if total == 0:
        yield ()
        return
    for m in range(min(maxpart, total), minpart - 1, -1):
        w = m * (m - 1)
        if w > total:
            continue
        for rest in _partitions(total - w, m, minpart):
            yield (m,) + rest


def enumerate_admissible(d, allow_large=False):
    if not allow_large and not 3 <= d <= 8:
        raise ValueError("degree must lie in 3..8 (pass allow_large for more)")
    out = []
    target = d * d - 3 * d + 2
    for seq in _partitions(target, d - 1):
        c = SequenceCandidate(d, seq)
        if _basic_ok(c) and not excluded_by_reduction(c):
            out.append(c)
    out.sort(key=lambda c: c.entries, reverse=True)
    return out


def load_table1():
    text = resources.files("curvecomp").joinpath("data/table1.json").read_text()
    return {int(k): [tuple(s) for s in v] for k, v in json.loads(text).items()}


def render_table(degrees=range(3, 9)):
    return {str(d): [list(c.entries) for c in enumerate_admissible(d)] for d in degrees}


def homaloidal_check(d, mults):
    return sum(mults) == 3 * d - 3 and sum(m * m for m in mults) == d * d - 1


# -- classifiers -----------------------------------------------------------------


def jump_obstruction(seq):
    """Indices r < s <= k-2 (1-based) satisfying the double-jump inequalities."""
    m = [None] + list(seq)
    k = len(seq)

    def jump(i):
        return m[i + 1] + m[i + 2] > m[i] > m[i + 1]

    for s in range(2, k - 1):
        if not (jump(s) and m[s] + m[s + 1] > m[s - 1]):
            continue
        for r in range(1, s):
            if jump(r):
                return True
    return False


def jump_witness(seq):
    m = [None] + list(seq)
    k = len(seq)
    for s in range(2, k - 1):
        for r in range(1, s):
            if (m[r + 1] + m[r + 2] > m[r] > m[r + 1] and m[s + 1] + m[s + 2] > m[s] > m[s + 1]
                    and m[s] + m[s + 1] > m[s - 1]):
                return {"r": r, "s": s}
    return None


def unicuspidal_embedding_classifier(d, seq):
    seq = list(seq)
    mk = seq[-1]
    mk1 = seq[-2] if len(seq) > 1 else None
    base = d * d - sum(m * m for m in seq)
    if base == -1 and mk1 is not None and mk1 - mk == 1:
        return "Case_i"
    if base - mk == -2 and mk == 2 and mk1 != 3:
        return "Case_ii"
    if base - mk >= -1:
        return "Case_iii"
    return "NoEmbedding"


def unicuspidal_trace(d, seq):
    base = d * d - sum(m * m for m in seq)
    parts = []
    for m in sorted(set(seq), reverse=True):
        k = seq.count(m)
        parts.append(f"{k}*{m}^2" if k > 1 else f"{m}^2")
    return f"{d}^2 - {' - '.join(parts)} - {seq[-1]} = {base - seq[-1]}"


@dataclass
class ClassifierVerdict:
    tag: str
    rule: str
    witness: dict = field(default_factory=dict)
    existence_unknown: bool = False
    note: str = ""

    def to_json(self):
        return {
            "tag": self.tag,
            "rule": self.rule,
            "witness": self.witness,
            "existence_unknown": self.existence_unknown,
            "note": self.note,
        }


SPECIAL_CONSTANT = {(8, 3, 7), (16, 6, 7)}
SPECIAL_ONE_STEP = {(6, (3,) + (2,) * 7), (13, (5,) * 6 + (4,))}
EXISTENCE_OPEN = {(13, (5,) * 6 + (4,)), (16, (6,) * 7)}
NOT_UNICUSPIDAL = {
    (3, 3, 3, 3, 2, 2, 2),
    (4, 3, 3, 3, 3, 3),
    (4, 3, 3, 3, 3, 2, 2, 2),
    (5, 2, 2, 2, 2, 2),
    (3, 2, 2, 2, 2, 2, 2, 2),
}


def constant_sequence_theorem(d, m, k, branches):
    if branches is not None and branches >= 2:
        if (d, m, k) in SPECIAL_CONSTANT:
            return ClassifierVerdict(
                "SpecialPunctured",
                "constant-sequence theorem",
                {"delta": d * d - k * m * m - (m - 1)},
                existence_unknown=(d, (m,) * k) in EXISTENCE_OPEN,
                note="smooth locus isomorphic to A^1 \\ {0}",
            )
        return ClassifierVerdict("ExtendsAlways", "constant-sequence theorem")
    seq = (m,) * k
    return _unicuspidal_verdict(d, seq)


def _unicuspidal_verdict(d, seq):
    case = unicuspidal_embedding_classifier(d, seq)
    w = {"case": case, "trace": unicuspidal_trace(d, seq)}
    if case == "NoEmbedding":
        return ClassifierVerdict("NoNonExtendableEmbedding", "unicuspidal contractibility", w)
    return ClassifierVerdict(
        "EmbeddingExistsUnicuspidal",
        "unicuspidal contractibility",
        w,
        note="a non-extendable embedding exists; the image curve is projectively equivalent",
    )


def _one_step(seq):
    """(m_(k), (m-1)_(l)) with m >= 3, as (m, k, l), else None."""
    m = seq[0]
    k = sum(1 for v in seq if v == m)
    rest = seq[k:]
    if m >= 3 and rest and all(v == m - 1 for v in rest):
        return m, k, len(rest)
    return None


def _all_even(seq):
    if any(v % 2 for v in seq):
        return False
    k = len(seq)
    for l in range(k - 1, -1, -1):
        if all(v == 2 for v in seq[l:]) and l < k:
            if all(seq[j] < sum(seq[j + 1:]) for j in range(l)):
                return True
    return False


def _non_unicuspidal(d, seq):
    if len(set(seq)) == 1:
        if d == 3:
            return ClassifierVerdict(
                "SpecialPunctured", "nodal cubic", note="complement has non-extendable automorphisms"
            )
        return constant_sequence_theorem(d, seq[0], len(seq), 2)
    one = _one_step(seq)
    if one is not None:
        m, k, l = one
        if (d, tuple(seq)) in SPECIAL_ONE_STEP:
            return ClassifierVerdict(
                "SpecialPunctured",
                "one-step theorem",
                {"m": m, "k": k, "l": l},
                existence_unknown=(d, tuple(seq)) in EXISTENCE_OPEN,
            )
        return ClassifierVerdict("ExtendsAlways", "one-step theorem", {"m": m, "k": k, "l": l})
    if _all_even(seq):
        return ClassifierVerdict("ExtendsAlways", "all-even theorem")
    return None


def _unicuspidal(d, seq):
    if tuple(seq) in NOT_UNICUSPIDAL:
        return ClassifierVerdict(
            "NoNonExtendableEmbedding",
            "not-unicuspidal lemma",
            note="no unicuspidal curve carries this sequence",
        )
    return _unicuspidal_verdict(d, seq)


def classify(d, seq, branches=None):
    seq = tuple(parse_sequence(seq))
    c = SequenceCandidate(d, seq)
    g, s = genus_and_squares_check(c)
    if not (g and s >= 0 and degree_bounds_check(c)):
        raise Inadmissible(f"{d}, {compress(seq)} is not admissible")
    v = _classify(d, seq, branches)
    trace = []
    if excluded_by_reduction(c, trace=trace):
        v.note = (v.note + "; " if v.note else "") + "no such curve: quadratic reduction gives " + trace[-1]
    return v


def _classify(d, seq, branches):
    if jump_obstruction(seq):
        return ClassifierVerdict("ExtendsAlways", "double-jump lemma", jump_witness(seq))
    if d == 7 and seq == (5, 2, 2, 2, 2, 2):
        return ClassifierVerdict("ExtendsAlways", "degree-7 (5,2_(5)) lemma")
    if branches is None:
        a, b = _non_unicuspidal(d, seq), _unicuspidal(d, seq)
        if a is not None and a.tag == b.tag:
            return ClassifierVerdict(a.tag, a.rule + "; " + b.rule, {}, a.existence_unknown)
        return ClassifierVerdict(
            "RequiresUnicuspidal",
            "branch count needed",
            {"unicuspidal": b.to_json(), "not_unicuspidal": a.to_json() if a else None},
        )
    if branches == 1:
        return _unicuspidal(d, seq)
    v = _non_unicuspidal(d, seq)
    return v or ClassifierVerdict("Unknown", "no rule applies")


# -- Diophantine registry --------------------------------------------------------------


@dataclass
class DiophantineCase:
    case_id: str
    variables: tuple
    free: str
    delta: object
    genus: object
    fixed: dict = field(default_factory=dict)
    m_min: int = 2
    d_min: int = 1
    output: tuple = ("d", "m", "k")
    reduced: object = None
    note: str = ""


def _one_step_genus(d, m, k, l):
    return d * d - 3 * d + 2 - k * m * (m - 1) - l * (m - 1) * (m - 2)


def _const_genus(d, m, k, l):
    return d * d - 3 * d + 2 - k * m * (m - 1)


def _bi(target):
    return lambda d, m, k, l: d * d - k * m * m - (m - 1) ** 2 - (m - 2) - target


REGISTRY = {
    "constant-delta=-1": DiophantineCase(
        "constant-delta=-1", ("d", "m", "k"), "k",
        lambda d, m, k, l: d * d - k * m * m - (m - 1) + 1, _const_genus,
        d_min=4, reduced=lambda d, m: d * d - 3 * d * m + m * m - m + 2,
    ),
    "constant-delta=0": DiophantineCase(
        "constant-delta=0", ("d", "m"), None,
        lambda d, m, k, l: d * d - k * m * m - (m - 1), _const_genus,
        fixed={"k": "m-1"}, d_min=4, output=("d", "m"),
        reduced=lambda d, m: (m * m + 1) * (m * m + 1 - 9 * m + 9),
    ),
    "one-step-A1": DiophantineCase(
        "one-step-A1", ("d", "m", "l"), "l",
        lambda d, m, k, l: d * d - m * m - l * (m - 1) ** 2 + 1, _one_step_genus,
        fixed={"k": 1}, m_min=3, output=("m", "l"),
        reduced=lambda d, m, l: (d - 3 * (m - 1), (9 - l) * (m - 1) - (m + 1)),
    ),
    "one-step-A2": DiophantineCase(
        "one-step-A2", ("d", "m", "l"), "l",
        lambda d, m, k, l: d * d - m * m - l * (m - 1) ** 2 - (m - 1) + 1, _one_step_genus,
        fixed={"k": 1}, m_min=3, output=("d", "m", "l"),
    ),
    "one-step-A3": DiophantineCase(
        "one-step-A3", ("d", "m"), None,
        lambda d, m, k, l: d * d - m * m - (m - 1) ** 2 - (m - 1), _one_step_genus,
        fixed={"k": 1, "l": 1}, m_min=3, output=("d", "m"),
    ),
    "one-step-B-selfint=-1": DiophantineCase(
        "one-step-B-selfint=-1", ("d", "m", "k"), "k",
        lambda d, m, k, l: d * d - k * m * m - (m - 1) ** 2 + 1, _one_step_genus,
        fixed={"l": 1}, m_min=3,
    ),
    "one-step-Bi-delta=-1": DiophantineCase(
        "one-step-Bi-delta=-1", ("d", "m", "k"), "k", _bi(-1), _one_step_genus,
        fixed={"l": 1}, m_min=3,
    ),
    "one-step-Bi-delta=0": DiophantineCase(
        "one-step-Bi-delta=0", ("d", "m", "k"), "k", _bi(0), _one_step_genus,
        fixed={"l": 1}, m_min=3, output=("d", "m"),
        reduced=lambda d, m: d * d - 3 * d * m + m * m + 1,
    ),
    "one-step-Bi-delta=1": DiophantineCase(
        "one-step-Bi-delta=1", ("d", "m", "k"), "k", _bi(1), _one_step_genus,
        fixed={"l": 1}, m_min=3,
    ),
    "one-step-Bii-delta=0": DiophantineCase(
        "one-step-Bii-delta=0", ("d", "m"), None,
        lambda d, m, k, l: d * d - k * m * m - (m - 1) ** 2 - (m - 1), _one_step_genus,
        fixed={"l": 1, "k": "m-1"}, m_min=3, output=("d", "m"),
        reduced=lambda d, m: d * d - m * (m * m - 1),
    ),
}

ALIASES = {
    "constant-δ=-1": "constant-delta=-1",
    "constant-δ=−1": "constant-delta=-1",
    "constant-δ=0": "constant-delta=0",
    "one-step-B.i.1": "one-step-Bi-delta=-1",
    "one-step-B.i.2": "one-step-Bi-delta=0",
    "one-step-B.i.3": "one-step-Bi-delta=1",
    "one-step-B.ii.2": "one-step-Bii-delta=0",
    "one-step-Bi-δ=0": "one-step-Bi-delta=0",
    "one-step-Bi-δ=-1": "one-step-Bi-delta=-1",
    "one-step-Bi-δ=1": "one-step-Bi-delta=1",
    "one-step-Bii-δ=0": "one-step-Bii-delta=0",
}
# short forms: A.1, B.i.2, ...
ALIASES.update({k[len("one-step-"):]: v for k, v in list(ALIASES.items()) if "." in k})
ALIASES.update({f"A.{i}": f"one-step-A{i}" for i in (1, 2, 3)})


def _fixed_value(spec, m):
    if spec == "m-1":
        return m - 1
    return np.full_like(m, spec)


def diophantine_solutions(case_id, bound=200):
    """Full solution records (d, m, k, l) of the registered system in 1..bound."""
    cid = ALIASES.get(case_id, case_id)
    if cid not in REGISTRY:
        raise UnknownCase(f"unknown case {case_id!r}; known: {', '.join(sorted(REGISTRY))}")
    if bound < 1:
        raise ValueError("bound must be positive")
    case = REGISTRY[cid]
    d, m = np.meshgrid(np.arange(1, bound + 1, dtype=np.int64), np.arange(1, bound + 1, dtype=np.int64),
                       indexing="ij")
    d, m = d.ravel(), m.ravel()
    keep = (m >= case.m_min) & (d >= case.d_min)
    d, m = d[keep], m[keep]
    vals = {"k": None, "l": None}
    for name, spec in case.fixed.items():
        vals[name] = _fixed_value(spec, m)
    if case.free is not None:
        # the delta condition is linear in the free variable
        zero, one = dict(vals), dict(vals)
        zero[case.free] = np.zeros_like(m)
        one[case.free] = np.ones_like(m)
        a = case.delta(d, m, zero["k"], zero["l"])
        b = case.delta(d, m, one["k"], one["l"]) - a
        ok = (b != 0)
        safe_b = np.where(ok, b, 1)
        ok &= (-a) % safe_b == 0
        v = np.where(ok, -a // safe_b, 0)
        ok &= (v >= 1) & (v <= bound)
        vals[case.free] = v
    else:
        ok = np.ones_like(m, dtype=bool)
    k = vals["k"] if vals["k"] is not None else np.zeros_like(m)
    l = vals["l"] if vals["l"] is not None else np.zeros_like(m)
    ok &= (k >= 1) & (k <= bound)
    if "l" in case.fixed or case.free == "l":
        ok &= (l >= 1) & (l <= bound)
    ok &= case.delta(d, m, k, l) == 0
    ok &= case.genus(d, m, k, l) == 0
    idx = np.nonzero(ok)[0]
    return [
        {"d": int(d[i]), "m": int(m[i]), "k": int(k[i]), "l": int(l[i])}
        for i in idx
    ]


def diophantine_case(case_id, bound=200):
    """Solution set projected to the case's reported variables, sorted."""
    cid = ALIASES.get(case_id, case_id)
    sols = diophantine_solutions(cid, bound)
    out = REGISTRY[cid].output
    return sorted({tuple(s[v] for v in out) for s in sols})


def reduced_form_agrees(case_id, bound=200):
    """The stored reduced equation vanishes on every solution found by brute force."""
    cid = ALIASES.get(case_id, case_id)
    case = REGISTRY[cid]
    if case.reduced is None:
        return True
    for s in diophantine_solutions(cid, bound):
        args = [s[v] for v in case.variables if v in ("d", "m", "l")]
        val = case.reduced(*args)
        if isinstance(val, tuple):
            if any(val):
                return False
        elif val != 0:
            return False
    return True
