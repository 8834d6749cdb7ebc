"""Polynomials over Q, monomial orders, Groebner bases and graded quotients."""

import os
import re
from fractions import Fraction
from itertools import combinations

from .kernels import monomials_of_degree, standard_monomials
from .scalar import format_scalar, parse_rational


class ParseError(ValueError):
    """Polynomial text that does not match the grammar; carries a 1-based column."""

    def __init__(self, message, text="", column=0, line=1):
        self.column = column
        self.line = line
        self.text = text
        super().__init__(f"line {line}, column {column}: {message}")


class DegreeLimitExceeded(RuntimeError):
    pass


# ---------------------------------------------------------------- orders

def _grevlex_key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


def _grlex_key(e):
    return (sum(e), e)


def _lex_key(e):
    return e


ORDERS = {"grevlex": _grevlex_key, "grlex": _grlex_key, "lex": _lex_key}


def order_key(order):
    try:
        return ORDERS[order]
    except KeyError:
        raise ValueError(f"unknown monomial order {order!r}") from None


# ---------------------------------------------------------------- polynomials

class Polynomial:
    """Sparse polynomial in ``nvars`` variables with rational coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self.terms = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != nvars:
                    raise ValueError("exponent length does not match variable count")
                c = Fraction(c)
                if c:
                    self.terms[e] = self.terms.get(e, 0) + c
            self.terms = {e: c for e, c in self.terms.items() if c}

    @classmethod
    def _raw(cls, nvars, terms):
        p = object.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    @classmethod
    def constant(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exp, c=1):
        return cls(len(exp), {tuple(exp): c})

    @classmethod
    def variable(cls, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Polynomial._raw(self.nvars, {})
            return Polynomial._raw(self.nvars, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        out = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple([x + y for x, y in zip(ea, eb)])
                out[e] = out.get(e, 0) + ca * cb
        return Polynomial._raw(self.nvars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k):
        result = Polynomial.constant(self.nvars, 1)
        for _ in range(k):
            result = result * self
        return result

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError("variable counts differ")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.nvars, other)
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    def mul_term(self, exp, coeff):
        """self * coeff * x^exp."""
        return Polynomial._raw(
            self.nvars,
            {tuple([x + y for x, y in zip(e, exp)]): c * coeff for e, c in self.terms.items()},
        )

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def is_monomial(self):
        return len(self.terms) == 1

    def sorted_terms(self, order="grevlex"):
        key = order_key(order)
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self, order="grevlex"):
        key = order_key(order)
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def monic(self, order="grevlex"):
        _, c = self.leading_term(order)
        return self * (1 / c)

    def derivative(self, i):
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return Polynomial._raw(self.nvars, out)

    def evaluate(self, point):
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * x ** k
            total = total + v
        return total

    def extend(self, nvars):
        """Same polynomial viewed in more variables (appended at the end)."""
        pad = (0,) * (nvars - self.nvars)
        return Polynomial._raw(nvars, {e + pad: c for e, c in self.terms.items()})

    def variables(self):
        return sorted({i for e in self.terms for i, k in enumerate(e) if k})

    def to_str(self, order="grevlex"):
        return format_polynomial(self, order)

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({self.nvars}, '{self}')"


def format_monomial(exp):
    parts = []
    for i, k in enumerate(exp):
        if k == 1:
            parts.append(f"x{i}")
        elif k > 1:
            parts.append(f"x{i}^{k}")
    return "*".join(parts) if parts else "1"


def format_polynomial(p, order="grevlex"):
    if not p.terms:
        return "0"
    out = []
    for idx, (e, c) in enumerate(p.sorted_terms(order)):
        neg = c < 0
        a = -c if neg else c
        mono = format_monomial(e)
        if mono == "1":
            body = format_scalar(a)
        elif a == 1:
            body = mono
        else:
            body = f"{format_scalar(a)}*{mono}"
        if idx == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>x(?P<idx>\d+))|(?P<op>[-+*^()]))")


def _tokens(text):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            col = pos + 1
            while col <= len(text) and text[col - 1].isspace():
                col += 1
            raise ParseError(f"unexpected character {text[col - 1]!r}", text, col)
        start = m.start() + (len(m.group(0)) - len(m.group(0).lstrip()))
        if m.group("num"):
            out.append(("num", m.group("num"), start + 1))
        elif m.group("var"):
            out.append(("var", int(m.group("idx")), start + 1))
        else:
            out.append((m.group("op"), m.group("op"), start + 1))
        pos = m.end()
    out.append(("end", None, len(text) + 1))
    return out


def parse_polynomial(text, nvars=None):
    """Parse polynomials such as ``x0^3 + 2/3*x1*x2 - (x3 - x0)^2``.

    Grammar: sums and differences of products of factors, each factor a
    rational, a variable ``x<i>`` or a parenthesized expression, optionally
    raised to a non-negative integer power.  ``nvars`` defaults to one more
    than the largest variable index used.
    """
    toks = _tokens(text)
    if toks[0][0] == "end":
        raise ParseError("empty polynomial", text, 1)
    used = max((t[1] for t in toks if t[0] == "var"), default=-1) + 1
    if nvars is None:
        nvars = max(used, 1)
    else:
        for t in toks:
            if t[0] == "var" and t[1] >= nvars:
                raise ParseError(f"variable x{t[1]} exceeds {nvars} variables", text, t[2])
    parser = _Parser(toks, text, nvars)
    out = parser.expr()
    kind, value, col = toks[parser.i]
    if kind != "end":
        raise ParseError(f"unexpected {value!r}", text, col)
    return out


class _Parser:
    def __init__(self, toks, text, nvars):
        self.toks, self.text, self.nvars, self.i = toks, text, nvars, 0

    def peek(self):
        return self.toks[self.i]

    def fail(self, message):
        raise ParseError(message, self.text, self.peek()[2])

    def expr(self):
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.peek()[0] == "-" else 1
            self.i += 1
        out = self.term() * sign
        while self.peek()[0] in ("+", "-"):
            minus = self.peek()[0] == "-"
            self.i += 1
            t = self.term()
            out = out - t if minus else out + t
        return out

    def term(self):
        out = self.power()
        while self.peek()[0] == "*":
            self.i += 1
            out = out * self.power()
        return out

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.i += 1
            kind, value, _ = self.peek()
            if kind != "num" or "/" in value:
                self.fail("expected an integer exponent")
            self.i += 1
            return base ** int(value)
        return base

    def atom(self):
        kind, value, _ = self.peek()
        if kind == "num":
            self.i += 1
            return Polynomial.constant(self.nvars, parse_rational(value))
        if kind == "var":
            self.i += 1
            return Polynomial.variable(self.nvars, value)
        if kind == "(":
            self.i += 1
            inner = self.expr()
            if self.peek()[0] != ")":
                self.fail("expected ')'")
            self.i += 1
            return inner
        found = "end of input" if kind == "end" else value
        self.fail(f"expected a term, found {found!r}")


# ---------------------------------------------------------------- division / Groebner

def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def reduce_by(f, basis, order="grevlex"):
    """Full multivariate division remainder of ``f`` by ``basis``."""
    key = order_key(order)
    heads = [(g.leading_term(order), g) for g in basis if g]
    rem = {}
    work = dict(f.terms)
    nvars = f.nvars
    while work:
        e = max(work, key=key)
        c = work[e]
        for (le, lc), g in heads:
            if _divides(le, e):
                q = c / lc
                shift = tuple(x - y for x, y in zip(e, le))
                for ge, gc in g.terms.items():
                    t = tuple([x + y for x, y in zip(ge, shift)])
                    v = work.get(t, 0) - q * gc
                    if v:
                        work[t] = v
                    else:
                        work.pop(t, None)
                break
        else:
            rem[e] = c
            del work[e]
    return Polynomial._raw(nvars, rem)


def _max_degree_limit():
    raw = os.environ.get("HODGEBALL_MAX_DEGREE")
    return int(raw) if raw else None


def _s_poly(f, g, order):
    (ef, cf), (eg, cg) = f.leading_term(order), g.leading_term(order)
    l = _lcm(ef, eg)
    a = f.mul_term(tuple(x - y for x, y in zip(l, ef)), 1 / cf)
    b = g.mul_term(tuple(x - y for x, y in zip(l, eg)), 1 / cg)
    return a - b


def groebner_basis(generators, order="grevlex", max_degree=None):
    """Reduced Groebner basis (monic, sorted by leading term, descending).

    Monomial generators are returned directly (unit-normalized).  The
    degree cap defaults to ``HODGEBALL_MAX_DEGREE`` when set.
    """
    gens = [g for g in generators if g]
    if not generators:
        raise ValueError("no generators")
    nv = {g.nvars for g in generators}
    if len(nv) != 1:
        raise ValueError("generators have different variable counts")
    if not gens:
        return []
    key = order_key(order)
    if all(g.is_monomial() for g in gens):
        return _sort_basis(_minimal_monomials([next(iter(g.terms)) for g in gens], gens[0].nvars), key)
    if max_degree is None:
        max_degree = _max_degree_limit()
    G = [g.monic(order) for g in gens]
    pairs = list(combinations(range(len(G)), 2))
    while pairs:
        # sugar-free normal strategy: smallest lcm first
        pairs.sort(key=lambda p: key(_lcm(G[p[0]].leading_term(order)[0], G[p[1]].leading_term(order)[0])))
        i, j = pairs.pop(0)
        li, lj = G[i].leading_term(order)[0], G[j].leading_term(order)[0]
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue  # coprime leading terms
        l = _lcm(li, lj)
        if max_degree is not None and sum(l) > max_degree:
            raise DegreeLimitExceeded(f"Groebner computation exceeded degree {max_degree}")
        r = reduce_by(_s_poly(G[i], G[j], order), G, order)
        if r:
            G.append(r.monic(order))
            k = len(G) - 1
            pairs.extend((a, k) for a in range(k))
    return _interreduce(G, order)


def _interreduce(G, order):
    key = order_key(order)
    G = [g for g in G if g]
    lead = [g.leading_term(order)[0] for g in G]
    keep = []
    for i, g in enumerate(G):
        li = lead[i]
        dominated = False
        for j, lj in enumerate(lead):
            if j != i and _divides(lj, li) and (lj != li or j < i):
                dominated = True
                break
        if not dominated:
            keep.append(g)
    out = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        e, c = g.leading_term(order)
        tail = Polynomial._raw(g.nvars, {t: v for t, v in g.terms.items() if t != e})
        r = reduce_by(tail, others, order)
        out.append((r + Polynomial(g.nvars, {e: c})).monic(order))
    return _sort_basis(out, key, order)


def _minimal_monomials(exps, nvars):
    exps = sorted(set(exps), key=sum)
    keep = []
    for e in exps:
        if not any(_divides(k, e) for k in keep):
            keep.append(e)
    return [Polynomial(nvars, {e: 1}) for e in keep]


def _sort_basis(G, key, order="grevlex"):
    return sorted(G, key=lambda g: key(g.leading_term(order)[0]), reverse=True)


# ---------------------------------------------------------------- quotient rings

class GradedQuotientRing:
    """Q[x_0..x_{N-1}] modulo an ideal, with a stored Groebner basis."""

    def __init__(self, generators, order="grevlex", nvars=None, max_degree=None):
        generators = list(generators)
        if nvars is None:
            if not generators:
                raise ValueError("need generators or nvars")
            nvars = generators[0].nvars
        self.nvars = nvars
        self.order = order
        self.generators = [g for g in generators if g]
        self.basis = groebner_basis(self.generators, order, max_degree) if self.generators else []
        self.leads = [g.leading_term(order)[0] for g in self.basis]
        self.is_monomial_ideal = all(g.is_monomial() for g in self.basis)
        self.is_homogeneous = all(g.is_homogeneous() for g in self.generators)
        self._graded = {}

    def normal_form(self, f):
        if f.nvars != self.nvars:
            raise ValueError("variable count does not match the ring")
        if self.is_monomial_ideal:
            return Polynomial._raw(
                self.nvars,
                {e: c for e, c in f.terms.items() if not any(_divides(l, e) for l in self.leads)},
            )
        return reduce_by(f, self.basis, self.order)

    def is_standard(self, exp):
        return not any(_divides(l, exp) for l in self.leads)

    def multiply(self, f, g):
        return self.normal_form(f * g)

    def contains(self, f):
        return not self.normal_form(f)

    def _require_graded(self):
        if not self.is_homogeneous:
            raise ValueError("graded query on non-graded ring")

    def graded_basis(self, degree):
        """Standard monomials of the given degree, descending in the ring's order."""
        self._require_graded()
        if degree < 0:
            return []
        if degree not in self._graded:
            mons = standard_monomials(self.nvars, degree, self.leads)
            key = order_key(self.order)
            self._graded[degree] = sorted(mons, key=key, reverse=True)
        return list(self._graded[degree])

    def graded_dim(self, degree):
        return len(self.graded_basis(degree))

    def is_zero_dimensional(self):
        """Every variable has a pure power among the leading terms."""
        for i in range(self.nvars):
            if not any(l[i] > 0 and sum(l) == l[i] for l in self.leads):
                return False
        return True

    def socle_degree(self):
        """Top degree with a nonzero graded piece (zero-dimensional rings only)."""
        if not self.is_zero_dimensional():
            raise ValueError("quotient is infinite-dimensional")
        self._require_graded()
        bound = sum(
            min(l[i] for l in self.leads if l[i] > 0 and sum(l) == l[i]) - 1 for i in range(self.nvars)
        )
        for deg in range(bound, -1, -1):
            if self.graded_dim(deg):
                return deg
        return -1

    def coordinates(self, f, degree):
        """Coefficient vector of normal_form(f) on graded_basis(degree)."""
        nf = self.normal_form(f)
        basis = self.graded_basis(degree)
        index = {e: i for i, e in enumerate(basis)}
        v = [Fraction(0)] * len(basis)
        for e, c in nf.terms.items():
            if e not in index:
                raise ValueError(f"element is not homogeneous of degree {degree}")
            v[index[e]] = c
        return v

    def extend_by_power(self, d):
        """Ring of ``extend(F) + x_new^d`` given this is a Jacobian ring of F."""
        nv = self.nvars + 1
        gens = [g.extend(nv) for g in self.generators]
        e = [0] * nv
        e[-1] = d - 1
        gens.append(Polynomial(nv, {tuple(e): 1}))
        return GradedQuotientRing(gens, self.order, nv)


def normal_form(f, ring):
    return ring.normal_form(f)


def graded_dim(ring, degree):
    return ring.graded_dim(degree)


def multiply_mod(f, g, ring):
    return ring.multiply(f, g)


__all__ = [
    "ParseError",
    "DegreeLimitExceeded",
    "Polynomial",
    "parse_polynomial",
    "format_polynomial",
    "format_monomial",
    "groebner_basis",
    "reduce_by",
    "GradedQuotientRing",
    "normal_form",
    "graded_dim",
    "multiply_mod",
    "monomials_of_degree",
]
