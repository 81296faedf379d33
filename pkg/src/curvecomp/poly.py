"""Sparse multivariate polynomials with exact rational coefficients.

Coefficients are ``fractions.Fraction``.  Variables are named by strings;
``x``, ``y``, ``z`` always sort first (in that order), anything else follows
alphabetically.  Monomial order for leading terms is graded lex with
x > y > z, which is also the order of the canonical printed form.
"""

from fractions import Fraction
from functools import reduce
from math import gcd as igcd, lcm as ilcm
import re

from .errors import NotDivisible, ParseError, ZeroInput

XYZ = ("x", "y", "z")


def _var_key(v):
    return (XYZ.index(v), "") if v in XYZ else (3, v)


def _sorted_vars(vs):
    return tuple(sorted(set(vs), key=_var_key))


def _grlex(exp):
    return (sum(exp), exp)


def as_fraction(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c.replace(" ", ""))
    raise TypeError(f"not a rational: {c!r}")


class Poly:
    """Immutable sparse polynomial: ``terms`` maps exponent tuples to Fractions."""

    __slots__ = ("vars", "terms")

    def __init__(self, terms=None, vars=XYZ):
        vars = tuple(vars)
        if _sorted_vars(vars) != vars:
            raise ValueError(f"variables must be distinct and in canonical order: {vars}")
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != len(vars):
                raise ValueError("exponent length does not match variables")
            c = as_fraction(c)
            if c:
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        self.vars = vars
        self.terms = clean

    @classmethod
    def _raw(cls, vars, terms):
        p = cls.__new__(cls)
        p.vars = vars
        p.terms = terms
        return p

    # -- construction helpers -------------------------------------------------

    @classmethod
    def const(cls, c, vars=XYZ):
        c = as_fraction(c)
        vars = tuple(vars)
        return cls._raw(vars, {(0,) * len(vars): c} if c else {})

    @classmethod
    def var(cls, name, vars=XYZ):
        vars = _sorted_vars(tuple(vars) + (name,))
        e = tuple(1 if v == name else 0 for v in vars)
        return cls._raw(vars, {e: Fraction(1)})

    @classmethod
    def parse(cls, text, vars=XYZ):
        return parse(text, vars)

    def with_vars(self, vars):
        vars = tuple(vars)
        if vars == self.vars:
            return self
        idx = []
        for v in vars:
            idx.append(self.vars.index(v) if v in self.vars else None)
        for i, v in enumerate(self.vars):
            if v not in vars and any(e[i] for e in self.terms):
                raise ValueError(f"variable {v} is used and cannot be dropped")
        terms = {tuple(e[i] if i is not None else 0 for i in idx): c for e, c in self.terms.items()}
        return Poly._raw(vars, terms)

    def _align(self, other):
        if isinstance(other, Poly):
            if other.vars == self.vars:
                return self, other
            vs = _sorted_vars(self.vars + other.vars)
            return self.with_vars(vs), other.with_vars(vs)
        return self, Poly.const(as_fraction(other), self.vars)

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        a, b = self._align(other)
        terms = dict(a.terms)
        for e, c in b.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return Poly._raw(a.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        a, b = self._align(other)
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = as_fraction(other)
            if not c:
                return Poly._raw(self.vars, {})
            return Poly._raw(self.vars, {e: v * c for e, v in self.terms.items()})
        a, b = self._align(other)
        terms = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(i + j for i, j in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return Poly._raw(a.vars, {e: c for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("power must be a non-negative integer")
        result = Poly.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, Poly):
            return exact_divide(self, other)
        c = as_fraction(other)
        if not c:
            raise ZeroDivisionError("division by zero")
        return self * (1 / c)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other, self.vars)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self._align(other)
        return a.terms == b.terms

    def __hash__(self):
        used = [i for i, v in enumerate(self.vars) if any(e[i] for e in self.terms)]
        key = frozenset(
            (tuple((self.vars[i], e[i]) for i in used if e[i]), c) for e, c in self.terms.items()
        )
        return hash(key)

    def __bool__(self):
        return bool(self.terms)

    # -- inspection -----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()), Fraction(0))

    def used_vars(self):
        return tuple(v for i, v in enumerate(self.vars) if any(e[i] for e in self.terms))

    def degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def min_degree(self):
        """Lowest total degree of a term (the multiplicity at the origin)."""
        if not self.terms:
            return -1
        return min(sum(e) for e in self.terms)

    def degree_in(self, v):
        if v not in self.vars or not self.terms:
            return 0 if self.terms else -1
        i = self.vars.index(v)
        return max(e[i] for e in self.terms)

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_part(self, d):
        return Poly._raw(self.vars, {e: c for e, c in self.terms.items() if sum(e) == d})

    def lead_term(self):
        if not self.terms:
            raise ZeroInput("zero polynomial has no leading term")
        e = max(self.terms, key=_grlex)
        return e, self.terms[e]

    def coefficients(self, v):
        """Map k -> coefficient of v^k (a polynomial not involving v)."""
        if v not in self.vars:
            return {0: self} if self.terms else {}
        i = self.vars.index(v)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            out.setdefault(k, {})[e[:i] + (0,) + e[i + 1:]] = c
        return {k: Poly._raw(self.vars, t) for k, t in out.items()}

    def lead_coeff_in(self, v):
        return self.coefficients(v)[self.degree_in(v)]

    def univariate_coeffs(self, v):
        """Coefficient list (low to high) of a polynomial in the single variable v."""
        extra = [u for u in self.used_vars() if u != v]
        if extra:
            raise ValueError(f"polynomial involves {extra} besides {v}")
        n = self.degree_in(v)
        out = [Fraction(0)] * (n + 1)
        i = self.vars.index(v) if v in self.vars else None
        for e, c in self.terms.items():
            out[e[i] if i is not None else 0] += c
        return out

    @classmethod
    def from_univariate(cls, coeffs, v, vars=None):
        vars = _sorted_vars((vars or ()) + (v,))
        i = vars.index(v)
        terms = {}
        for k, c in enumerate(coeffs):
            if c:
                e = [0] * len(vars)
                e[i] = k
                terms[tuple(e)] = as_fraction(c)
        return cls._raw(vars, terms)

    # -- normalization --------------------------------------------------------

    def content(self):
        """Positive rational c such that self/c has coprime integer coefficients."""
        if not self.terms:
            return Fraction(0)
        nums = [c.numerator for c in self.terms.values()]
        dens = [c.denominator for c in self.terms.values()]
        return Fraction(reduce(igcd, nums), reduce(ilcm, dens))

    def primitive(self):
        """Primitive integer form with positive graded-lex leading coefficient."""
        if not self.terms:
            return self
        c = self.content()
        if self.lead_term()[1] < 0:
            c = -c
        return Poly._raw(self.vars, {e: v / c for e, v in self.terms.items()})

    def monic(self):
        return self * (1 / self.lead_term()[1])

    # -- calculus and substitution -------------------------------------------

    def derivative(self, v):
        if v not in self.vars:
            return Poly._raw(self.vars, {})
        i = self.vars.index(v)
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                terms[e[:i] + (e[i] - 1,) + e[i + 1:]] = c * e[i]
        return Poly._raw(self.vars, terms)

    def substitute(self, bindings):
        return substitute(self, bindings)

    def __call__(self, **values):
        return substitute(self, values)

    def evaluate(self, values):
        """Evaluate at a point given as {var: rational}; returns a Fraction."""
        out = substitute(self, values)
        return out.constant_value()

    def homogenize(self, v, degree=None):
        d = self.degree() if degree is None else degree
        p = self.with_vars(_sorted_vars(self.vars + (v,)))
        i = p.vars.index(v)
        terms = {}
        for e, c in p.terms.items():
            k = d - sum(e)
            if k < 0:
                raise ValueError("degree too small to homogenize")
            terms[e[:i] + (e[i] + k,) + e[i + 1:]] = c
        return Poly._raw(p.vars, terms)

    def drop_unused(self, keep=XYZ):
        vs = _sorted_vars(tuple(v for v in self.vars if v in keep) + self.used_vars())
        return self.with_vars(vs)

    # -- printing -------------------------------------------------------------

    def __str__(self):
        return to_string(self)

    def __repr__(self):
        return f"Poly({to_string(self)!r})"


def _coerce(p, vars=XYZ):
    if isinstance(p, Poly):
        return p
    if isinstance(p, str):
        return parse(p, vars)
    return Poly.const(as_fraction(p), vars)


def substitute(f, bindings):
    """Replace variables of f by polynomials (or rationals); unbound ones stay."""
    bindings = {k: _coerce(v) for k, v in bindings.items()}
    keep = [v for v in f.vars if v not in bindings]
    out_vars = _sorted_vars(tuple(keep) + tuple(u for b in bindings.values() for u in b.vars))
    images = []
    for v in f.vars:
        if v in bindings:
            images.append(bindings[v].with_vars(out_vars))
        else:
            images.append(Poly.var(v, out_vars))
    cache = [dict() for _ in f.vars]

    def power(i, k):
        if k not in cache[i]:
            cache[i][k] = images[i] ** k
        return cache[i][k]

    result = Poly._raw(out_vars, {})
    one = Poly.const(1, out_vars)
    for e, c in f.terms.items():
        term = one * c
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        result = result + term
    return result


# -- division, gcd, resultant --------------------------------------------------


def exact_divide(a, b):
    """Return q with a = q*b, raising NotDivisible if no such polynomial exists."""
    if not b.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    a, b = a._align(b)
    if b.is_constant():
        return a * (1 / b.constant_value())
    be, bc = b.lead_term()
    rem = dict(a.terms)
    quo = {}
    b_items = list(b.terms.items())
    while rem:
        ae = max(rem, key=_grlex)
        ac = rem[ae]
        qe = tuple(i - j for i, j in zip(ae, be))
        if min(qe) < 0:
            raise NotDivisible(f"{to_string(b)} does not divide the dividend")
        qc = ac / bc
        quo[qe] = qc
        for e, c in b_items:
            t = tuple(i + j for i, j in zip(qe, e))
            s = rem.get(t, 0) - qc * c
            if s:
                rem[t] = s
            else:
                rem.pop(t, None)
    return Poly._raw(a.vars, quo)


def divides(b, a):
    try:
        exact_divide(a, b)
    except NotDivisible:
        return False
    return True


def prem(a, b, v):
    """Pseudo-remainder of a by b with respect to v."""
    db = b.degree_in(v)
    lb = b.lead_coeff_in(v)
    xv = Poly.var(v, a.vars) if v in a.vars else Poly.var(v, _sorted_vars(a.vars + (v,)))
    r = a
    while r.terms and r.degree_in(v) >= db:
        dr = r.degree_in(v)
        lr = r.lead_coeff_in(v)
        r = r * lb - lr * xv ** (dr - db) * b
    return r


def _content_in(a, v):
    g = None
    for c in sorted(a.coefficients(v).values(), key=lambda p: len(p.terms)):
        g = c.primitive() if g is None else gcd(g, c)
        if g.is_constant():
            return Poly.const(1, a.vars)
    return g if g is not None else Poly._raw(a.vars, {})


def gcd(a, b):
    """Greatest common divisor, primitive with positive leading coefficient."""
    a, b = a._align(b)
    if not a.terms:
        return b.primitive()
    if not b.terms:
        return a.primitive()
    used = _sorted_vars(a.used_vars() + b.used_vars())
    if not used:
        return Poly.const(1, a.vars)
    # cheap monomial-content shortcut
    if len(a.terms) == 1 or len(b.terms) == 1:
        mono_a = len(a.terms) == 1
        mono, other = (a, b) if mono_a else (b, a)
        e = next(iter(mono.terms))
        low = [min(t[i] for t in other.terms) for i in range(len(e))]
        g = tuple(min(i, j) for i, j in zip(e, low))
        return Poly._raw(a.vars, {g: Fraction(1)})
    v = used[0]
    if v not in a.used_vars():
        return gcd(_content_in(b, v), a).primitive()
    if v not in b.used_vars():
        return gcd(_content_in(a, v), b).primitive()
    ca, cb = _content_in(a, v), _content_in(b, v)
    gc = gcd(ca, cb)
    pa, pb = exact_divide(a, ca), exact_divide(b, cb)
    if pa.degree_in(v) < pb.degree_in(v):
        pa, pb = pb, pa
    while True:
        if pb.degree_in(v) == 0:
            gp = Poly.const(1, a.vars)
            break
        r = prem(pa, pb, v)
        if not r.terms:
            gp = pb
            break
        pa, pb = pb, exact_divide(r, _content_in(r, v)).primitive()
    return (gc * gp).primitive()


def gcd_list(polys):
    polys = list(polys)
    if not polys:
        raise ZeroInput("empty list")
    g = polys[0].primitive()
    for p in sorted(polys[1:], key=lambda q: (q.degree(), len(q.terms))):
        if g.is_constant() and g.terms:
            break
        g = gcd(g, p)
    return g


def squarefree_check(f):
    """True if f has no repeated factor.

    A repeated factor divides f and all its partials, and in characteristic 0
    a common factor of all of them must be repeated, so the joint gcd decides.
    """
    vs = f.used_vars()
    if not vs:
        return True
    return gcd_list([f] + [f.derivative(v) for v in vs]).is_constant()


def _bareiss_det(m):
    n = len(m)
    if n == 0:
        return None
    m = [row[:] for row in m]
    sign = 1
    prev = None
    for k in range(n - 1):
        if not m[k][k].terms:
            for i in range(k + 1, n):
                if m[i][k].terms:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return m[k][k] * 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                t = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = t if prev is None else exact_divide(t, prev)
        prev = m[k][k]
    return m[n - 1][n - 1] * sign


def sylvester_matrix(a, b, v):
    a, b = a._align(b)
    m, n = a.degree_in(v), b.degree_in(v)
    ca, cb = a.coefficients(v), b.coefficients(v)
    zero = Poly._raw(a.vars, {})
    arow = [ca.get(k, zero) for k in range(m, -1, -1)]
    brow = [cb.get(k, zero) for k in range(n, -1, -1)]
    size = m + n
    rows = []
    for i in range(n):
        rows.append([zero] * i + arow + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + brow + [zero] * (size - n - 1 - i))
    return rows


def resultant(a, b, v):
    """Sylvester resultant eliminating v (determinant of the Sylvester matrix)."""
    if not a.terms or not b.terms:
        raise ZeroInput("resultant of a zero polynomial")
    a, b = a._align(b)
    if v not in a.vars:
        a, b = a.with_vars(_sorted_vars(a.vars + (v,))), b.with_vars(_sorted_vars(b.vars + (v,)))
    m, n = a.degree_in(v), b.degree_in(v)
    if m == 0 and n == 0:
        return Poly.const(1, a.vars)
    det = _bareiss_det(sylvester_matrix(a, b, v))
    return det.with_vars(a.vars)


def discriminant(f, v):
    return resultant(f, f.derivative(v), v)


# -- univariate roots -------------------------------------------------------------


def _int_coeffs(coeffs):
    den = reduce(ilcm, (c.denominator for c in coeffs), 1)
    ints = [int(c * den) for c in coeffs]
    g = reduce(igcd, ints, 0) or 1
    return [i // g for i in ints]


def _eval_int(ints, p, q):
    """q^n * P(p/q) for integer coefficient list (low to high)."""
    n = len(ints) - 1
    acc = 0
    for k in range(n, -1, -1):
        acc = acc * p + ints[k] * q ** (n - k)
    return acc


def _divisors(n, limit=10**6):
    n = abs(n)
    if n == 0 or n > limit:
        return None
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i * i != n:
                out.append(n // i)
        i += 1
    return sorted(out)


def _uni_divmod(num, den):
    num = list(num)
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    while len(num) >= len(den) and any(num):
        k = len(num) - len(den)
        c = num[-1] / den[-1]
        q[k] = c
        for i, d in enumerate(den):
            num[i + k] -= c * d
        num.pop()
        while num and not num[-1]:
            num.pop()
    return q, num


def _uni_gcd(a, b):
    a = [Fraction(c) for c in a]
    b = [Fraction(c) for c in b]
    while b and any(b):
        _, r = _uni_divmod(a, b)
        a, b = b, r
    while a and not a[-1]:
        a.pop()
    return [c / a[-1] for c in a] if a else []


def _uni_deriv(a):
    return [a[i] * i for i in range(1, len(a))]


def _candidates_numeric(ints):
    import numpy as np

    roots = np.roots([float(c) for c in reversed(ints)])
    lead = ints[-1]
    out = set()
    for r in roots:
        if abs(r.imag) > 1e-6 * max(1.0, abs(r.real)):
            continue
        y = r.real * lead
        base = round(y)
        for p in (base - 1, base, base + 1):
            out.add(Fraction(int(p), lead))
    return out


def rational_roots(p, v=None, height_bound=10**6):
    """Distinct rational roots of a univariate polynomial with multiplicities.

    Returns a dict root -> multiplicity.  Roots whose numerator or
    denominator exceeds ``height_bound`` are not reported.
    """
    if v is None:
        used = p.used_vars()
        if len(used) > 1:
            raise ValueError("rational_roots needs a univariate polynomial")
        v = used[0] if used else "x"
    coeffs = p.univariate_coeffs(v) if isinstance(p, Poly) else [as_fraction(c) for c in p]
    if not any(coeffs):
        raise ZeroInput("the zero polynomial has every root")
    out = {}
    k = 0
    while not coeffs[k]:
        k += 1
    if k:
        out[Fraction(0)] = k
    coeffs = coeffs[k:]
    if len(coeffs) <= 1:
        return out
    sqf = coeffs
    g = _uni_gcd(coeffs, _uni_deriv(coeffs))
    if len(g) > 1:
        sqf, _ = _uni_divmod(coeffs, g)
    ints = _int_coeffs(sqf)
    if len(ints) == 2:
        cands = {Fraction(-ints[0], ints[1])}
    else:
        dp, dq = _divisors(ints[0]), _divisors(ints[-1])
        if dp is not None and dq is not None and len(dp) * len(dq) <= 4000:
            cands = {Fraction(s * a, b) for a in dp for b in dq for s in (1, -1)}
        else:
            cands = _candidates_numeric(ints)
    for r in sorted(cands):
        if abs(r.numerator) > height_bound or r.denominator > height_bound:
            continue
        if _eval_int(ints, r.numerator, r.denominator) == 0:
            mult = 0
            cur = coeffs
            lin = [-r, Fraction(1)]
            while True:
                q, rem = _uni_divmod(cur, lin)
                if any(rem):
                    break
                mult += 1
                cur = q
            out[r] = mult
    return out


def squarefree_part_uni(coeffs):
    coeffs = [as_fraction(c) for c in coeffs]
    g = _uni_gcd(coeffs, _uni_deriv(coeffs))
    if len(g) <= 1:
        return coeffs
    q, _ = _uni_divmod(coeffs, g)
    return q


# -- text format ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([a-zA-Z])|(\*\*|[-+*/^()]))")


def _tokenize(text):
    pos = 0
    toks = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        num, name, op = m.groups()
        if num is not None:
            toks.append(("num", int(num)))
        elif name is not None:
            toks.append(("var", name))
        else:
            toks.append(("op", "^" if op == "**" else op))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return toks


class _Parser:
    def __init__(self, toks, vars):
        self.toks = toks
        self.i = 0
        self.vars = vars

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def expr(self):
        kind, val = self.peek()
        sign = 1
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term() * sign
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term(self):
        acc = self.power()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = acc * self.power()
            elif kind == "op" and val == "/":
                self.take()
                k2, v2 = self.take()
                if k2 != "num":
                    raise ParseError("only division by integer literals is allowed")
                if v2 == 0:
                    raise ParseError("division by zero")
                acc = acc * Fraction(1, v2)
            elif kind in ("num", "var") or (kind == "op" and val == "("):
                acc = acc * self.power()
            else:
                return acc

    def power(self):
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            k2, v2 = self.take()
            if k2 != "num":
                raise ParseError("exponent must be a non-negative integer literal")
            return base ** v2
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return Poly.const(val, self.vars)
        if kind == "var":
            return Poly.var(val, self.vars)
        if kind == "op" and val == "(":
            inner = self.expr()
            k2, v2 = self.take()
            if (k2, v2) != ("op", ")"):
                raise ParseError("missing closing parenthesis")
            return inner
        if kind == "op" and val == "-":
            return -self.power()
        raise ParseError(f"unexpected token {val!r}")


def parse(text, vars=XYZ):
    """Parse the polynomial text grammar (``p/q`` coefficients, ``*``, ``^``)."""
    toks = _tokenize(text)
    if not toks:
        raise ParseError("empty polynomial")
    p = _Parser(toks, _sorted_vars(tuple(vars)))
    out = p.expr()
    if p.i != len(toks):
        raise ParseError(f"trailing input after token {p.i}")
    return out


def _fmt_coeff(c):
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def to_string(p):
    """Canonical fully expanded form, terms in descending graded-lex order."""
    if not p.terms:
        return "0"
    parts = []
    for e in sorted(p.terms, key=_grlex, reverse=True):
        c = p.terms[e]
        mono = "*".join(
            v if k == 1 else f"{v}^{k}" for v, k in zip(p.vars, e) if k
        )
        a = abs(c)
        if not mono:
            body = _fmt_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_fmt_coeff(a)}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


X = Poly.var("x")
Y = Poly.var("y")
Z = Poly.var("z")
