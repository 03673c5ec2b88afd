"""Exact arithmetic over Q(q, t) and the path-parameter field Q(r).

Polynomials are backed by FLINT (``python-flint``); this module owns the
canonical form, the string grammar and the r -> 1 limit machinery.

Canonical form of a :class:`RatQT`:

* numerator and denominator are integer polynomials with no common factor
  (this also removes the joint integer content),
* the leading coefficient of the denominator in graded-lex order
  (q before t) is positive,
* zero is ``0/1``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from math import lcm

import flint

__all__ = [
    "PolyQT",
    "RatQT",
    "RatR",
    "ParseError",
    "EtaPoleError",
    "poly_gcd",
    "substitute_eta",
    "eta_order",
    "eta_limit",
    "parse",
    "serialize",
    "q",
    "t",
    "ONE",
    "ZERO",
]

_CTX = flint.fmpz_mpoly_ctx.get(("q", "t"), "deglex")
_ZP = _CTX.from_dict({})
_OP = _CTX.from_dict({(0, 0): 1})


class ParseError(ValueError):
    """Malformed rational-function string; ``pos`` is the 0-based offset."""

    def __init__(self, message, pos):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class EtaPoleError(ArithmeticError):
    """Requested r -> 1 limit has a pole at the given normalization."""


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to a rational")


def _fmpz_const(n):
    return _CTX.from_dict({(0, 0): int(n)}) if n else _ZP


def _mpoly_key(p):
    return tuple(sorted((tuple(int(e) for e in m), int(c)) for m, c in p.to_dict().items()))


def _format_terms(items, var_names):
    """Format ``[(exponents, int coeff), ...]`` already sorted descending."""
    if not items:
        return "0"
    out = []
    for k, (exps, c) in enumerate(items):
        c = int(c)
        mono = "*".join(
            name if e == 1 else f"{name}^{e}" for name, e in zip(var_names, exps) if e
        )
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        if k == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


class PolyQT:
    """Element of Q[q, t] stored as an integer polynomial over a positive integer."""

    __slots__ = ("_p", "_d")

    def __init__(self, terms=None):
        terms = {k: _as_fraction(v) for k, v in (terms or {}).items() if v}
        den = reduce(lcm, (c.denominator for c in terms.values()), 1)
        self._p = _CTX.from_dict({k: int(c * den) for k, c in terms.items()}) if terms else _ZP
        self._d = den

    @classmethod
    def _wrap(cls, p, d=1):
        obj = cls.__new__(cls)
        obj._p, obj._d = p, d
        return obj

    def terms(self):
        """Map ``(e_q, e_t) -> Fraction`` with no zero entries."""
        return {
            (int(m[0]), int(m[1])): Fraction(int(c), self._d)
            for m, c in self._p.to_dict().items()
        }

    def is_zero(self):
        return self._p.is_zero()

    def __eq__(self, other):
        if not isinstance(other, PolyQT):
            return NotImplemented
        return self._p * other._d == other._p * self._d

    def __hash__(self):
        return hash(tuple(sorted(self.terms().items())))

    def __add__(self, other):
        return PolyQT._wrap(self._p * other._d + other._p * self._d, self._d * other._d)._reduce()

    def __sub__(self, other):
        return PolyQT._wrap(self._p * other._d - other._p * self._d, self._d * other._d)._reduce()

    def __mul__(self, other):
        return PolyQT._wrap(self._p * other._p, self._d * other._d)._reduce()

    def __neg__(self):
        return PolyQT._wrap(-self._p, self._d)

    def _reduce(self):
        if self._d == 1:
            return self
        g = int(self._p.content()) if not self._p.is_zero() else self._d
        from math import gcd

        g = gcd(g, self._d)
        if g > 1:
            self._p = self._p / g
            self._d //= g
        return self

    def __repr__(self):
        return f"PolyQT({serialize(RatQT._from_fmpz(self._p, _fmpz_const(self._d)))!r})"


def poly_gcd(a, b):
    """Primitive gcd of two polynomials with positive graded-lex leading coefficient.

    ``poly_gcd(0, b)`` is the normalized ``b``; ``poly_gcd(0, 0)`` is 0.
    """
    g = a._p.gcd(b._p)
    if g.is_zero():
        return PolyQT._wrap(_ZP)
    if g.leading_coefficient() < 0:
        g = -g
    c = g.content()
    if c != 1:
        g = g / c
    return PolyQT._wrap(g)


class RatQT:
    """Immutable canonical element of Q(q, t)."""

    __slots__ = ("_n", "_d", "_hash")

    def __init__(self, num=0, den=1):
        n = _coerce_fmpz_pair(num)
        d = _coerce_fmpz_pair(den)
        # each of n, d is (integer poly, integer scale): value = poly / scale
        if d[0].is_zero():
            raise ZeroDivisionError("RatQT with zero denominator")
        self._n, self._d = _canon(n[0] * d[1], d[0] * n[1])
        self._hash = None

    @classmethod
    def _from_fmpz(cls, n, d):
        obj = cls.__new__(cls)
        obj._n, obj._d = _canon(n, d)
        obj._hash = None
        return obj

    @classmethod
    def _raw(cls, n, d):
        obj = cls.__new__(cls)
        obj._n, obj._d = n, d
        obj._hash = None
        return obj

    @property
    def num(self):
        return PolyQT._wrap(self._n)

    @property
    def den(self):
        return PolyQT._wrap(self._d)

    def is_zero(self):
        return self._n.is_zero()

    def is_polynomial(self):
        return self._d.is_constant()

    def __bool__(self):
        return not self._n.is_zero()

    def __eq__(self, other):
        if not isinstance(other, RatQT):
            try:
                other = _to_rat(other)
            except TypeError:
                return NotImplemented
        return self._n == other._n and self._d == other._d

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((_mpoly_key(self._n), _mpoly_key(self._d)))
        return self._hash

    def __add__(self, other):
        other = _to_rat(other)
        if self._n.is_zero():
            return other
        if other._n.is_zero():
            return self
        if self._d == other._d:
            return RatQT._from_fmpz(self._n + other._n, self._d)
        # Henrici: with g = gcd(d1, d2) the new numerator can only share
        # factors with g, so the final gcd runs against g alone
        g = self._d.gcd(other._d)
        a = self._d / g
        b = other._d / g
        n = self._n * b + other._n * a
        if n.is_zero():
            return ZERO
        d = a * b
        if not g.is_one():
            h = n.gcd(g)
            if not h.is_one():
                n = n / h
                g = g / h
            d = d * g
        if d.leading_coefficient() < 0:
            n, d = -n, -d
        return RatQT._raw(n, d)

    __radd__ = __add__

    def __neg__(self):
        return RatQT._raw(-self._n, self._d)

    def __sub__(self, other):
        return self + (-_to_rat(other))

    def __rsub__(self, other):
        return _to_rat(other) + (-self)

    def __mul__(self, other):
        other = _to_rat(other)
        if self._n.is_zero() or other._n.is_zero():
            return ZERO
        # cross-cancel first: keeps intermediate degrees down
        g1 = self._n.gcd(other._d)
        g2 = other._n.gcd(self._d)
        n = (self._n / g1) * (other._n / g2)
        d = (self._d / g2) * (other._d / g1)
        if d.leading_coefficient() < 0:
            n, d = -n, -d
        return RatQT._raw(n, d)

    __rmul__ = __mul__

    def inverse(self):
        if self._n.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        n, d = self._d, self._n
        if d.leading_coefficient() < 0:
            n, d = -n, -d
        return RatQT._raw(n, d)

    def __truediv__(self, other):
        return self * _to_rat(other).inverse()

    def __rtruediv__(self, other):
        return _to_rat(other) * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            raise TypeError("integer exponents only")
        if k < 0:
            return self.inverse() ** (-k)
        n, d = self._n**k, self._d**k
        return RatQT._raw(n, d)

    def subs_q_eq_t(self):
        """The substitution q := t (result lies in Q(t))."""
        return RatQT._from_fmpz(_q_to_t(self._n), _q_to_t(self._d))

    def is_constant(self):
        return self._n.is_constant() and self._d.is_constant()

    def to_fraction(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return Fraction(int(self._n.coefficient(0)) if not self._n.is_zero() else 0,
                        int(self._d.coefficient(0)))

    def evaluate(self, qv, tv):
        """Exact value at rational (q, t); raises ZeroDivisionError on a pole."""
        qv, tv = Fraction(qv), Fraction(tv)
        den = _eval_mpoly(self._d, qv, tv)
        if den == 0:
            raise ZeroDivisionError(f"pole of {self} at q={qv}, t={tv}")
        return _eval_mpoly(self._n, qv, tv) / den

    def __str__(self):
        return serialize(self)

    def __repr__(self):
        return f"RatQT({serialize(self)!r})"

    def __reduce__(self):
        return (parse, (serialize(self),))


def _eval_mpoly(p, qv, tv):
    return sum(
        (Fraction(int(c)) * qv ** int(m[0]) * tv ** int(m[1]) for m, c in p.to_dict().items()),
        Fraction(0),
    )


def _q_to_t(p):
    acc = {}
    for m, c in p.to_dict().items():
        key = (0, int(m[0]) + int(m[1]))
        acc[key] = acc.get(key, 0) + int(c)
    return _CTX.from_dict({k: v for k, v in acc.items() if v})


def _canon(n, d):
    if n.is_zero():
        return _ZP, _OP
    g = n.gcd(d)
    if not g.is_one():
        n = n / g
        d = d / g
    if d.leading_coefficient() < 0:
        n, d = -n, -d
    return n, d


def _coerce_fmpz_pair(x):
    if isinstance(x, PolyQT):
        return x._p, x._d
    if isinstance(x, RatQT):
        raise TypeError("pass RatQT values through arithmetic, not the constructor")
    f = _as_fraction(x)
    return _fmpz_const(f.numerator), f.denominator


def _to_rat(x):
    if isinstance(x, RatQT):
        return x
    if isinstance(x, PolyQT):
        return RatQT._from_fmpz(x._p, _fmpz_const(x._d))
    f = _as_fraction(x)
    return RatQT._from_fmpz(_fmpz_const(f.numerator), _fmpz_const(f.denominator))


def as_ratqt(x):
    """Coerce int / Fraction / PolyQT / RatQT to RatQT."""
    return _to_rat(x)


ZERO = RatQT._raw(_ZP, _OP)
ONE = RatQT._raw(_OP, _OP)
q = RatQT._raw(_CTX.gens()[0], _OP)
t = RatQT._raw(_CTX.gens()[1], _OP)


# ---------------------------------------------------------------------------
# string grammar

def serialize(f):
    """Canonical string: ``num`` or ``(num)/(den)``, terms graded-lex descending."""
    f = _to_rat(f)
    num = _format_terms(list(f._n.terms()), ("q", "t"))
    if f._d.is_one():
        return num
    den = _format_terms(list(f._d.terms()), ("q", "t"))
    return f"({num})/({den})"


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\*\*|[-+*/^()]))")


def _tokenize(s, variables):
    s = s.replace("−", "-")
    toks = []
    pos = 0
    while pos < len(s):
        if s[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(s, pos)
        if not m:
            raise ParseError(f"unexpected character {s[pos]!r}", pos)
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(("int", int(m.group(1)), start))
        elif m.group(2):
            if m.group(2) not in variables:
                raise ParseError(f"unknown symbol {m.group(2)!r}", start)
            toks.append(("var", m.group(2), start))
        else:
            op = "^" if m.group(3) == "**" else m.group(3)
            toks.append(("op", op, start))
        pos = m.end()
    toks.append(("end", None, len(s)))
    return toks


class _Parser:
    def __init__(self, s, gens, one):
        self.toks = _tokenize(s, gens)
        self.i = 0
        self.gens = gens
        self.one = one

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, op):
        tok = self.take()
        if tok[0] != "op" or tok[1] != op:
            raise ParseError(f"expected {op!r}", tok[2])

    def parse(self):
        val = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError("trailing input", tok[2])
        return val

    def expr(self):
        val = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            _, op, pos = self.take()
            rhs = self.unary()
            if op == "*":
                val = val * rhs
            else:
                if not rhs:
                    raise ParseError("division by zero", pos)
                val = val / rhs
        return val

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            val = self.unary()
            return -val if tok[1] == "-" else val
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            sign = 1
            if self.peek()[0] == "op" and self.peek()[1] in "+-":
                sign = -1 if self.take()[1] == "-" else 1
            tok = self.take()
            if tok[0] != "int":
                raise ParseError("expected integer exponent", tok[2])
            e = sign * tok[1]
            if e < 0 and not base:
                raise ParseError("negative power of zero", tok[2])
            return base**e
        return base

    def atom(self):
        tok = self.take()
        kind, val, pos = tok
        if kind == "int":
            return self.one * val
        if kind == "var":
            return self.gens[val]
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError("unexpected token" if kind != "end" else "unexpected end of input", pos)


def parse(s):
    """Parse a rational expression in q, t (integers, + - * / ^, parentheses)."""
    if not isinstance(s, str):
        raise TypeError("parse expects a string")
    return _Parser(s, {"q": q, "t": t}, ONE).parse()


# ---------------------------------------------------------------------------
# univariate path field Q(r)

_R_ONE = flint.fmpz_poly([1])
_ONE_MINUS_R = flint.fmpz_poly([1, -1])


class RatR:
    """Canonical element of Q(r): coprime integer polynomials, den lc > 0."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = flint.fmpz_poly(num) if not isinstance(num, flint.fmpz_poly) else num
        den = _R_ONE if den is None else (
            flint.fmpz_poly(den) if not isinstance(den, flint.fmpz_poly) else den)
        if den.is_zero():
            raise ZeroDivisionError("RatR with zero denominator")
        if num.is_zero():
            self.num, self.den = flint.fmpz_poly([]), _R_ONE
            return
        g = num.gcd(den)
        num, den = num // g, den // g
        if den[den.degree()] < 0:
            num, den = -num, -den
        self.num, self.den = num, den

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        if not isinstance(other, RatR):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((tuple(int(c) for c in self.num.coeffs()), tuple(int(c) for c in self.den.coeffs())))

    def __add__(self, other):
        return RatR(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        return RatR(self.num * other.den - other.num * self.den, self.den * other.den)

    def __mul__(self, other):
        return RatR(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero in Q(r)")
        return RatR(self.num * other.den, self.den * other.num)

    def __str__(self):
        def fmt(p):
            items = [((e,), int(p[e])) for e in range(p.degree(), -1, -1) if p[e] != 0]
            return _format_terms(items, ("r",))

        if self.den == _R_ONE:
            return fmt(self.num)
        return f"({fmt(self.num)})/({fmt(self.den)})"

    __repr__ = __str__


def _subst_mpoly(p, A, B):
    coeffs = {}
    for m, c in p.to_dict().items():
        e = B * int(m[0]) + A * int(m[1])
        coeffs[e] = coeffs.get(e, 0) + int(c)
    if not coeffs:
        return flint.fmpz_poly([])
    top = max(coeffs)
    return flint.fmpz_poly([coeffs.get(i, 0) for i in range(top + 1)])


def substitute_eta(f, A, B):
    """Restrict f(q, t) to the path t = r^A, q = r^B."""
    if A < 1 or B < 1:
        raise ValueError("path exponents must be positive integers")
    f = _to_rat(f)
    return RatR(_subst_mpoly(f._n, A, B), _subst_mpoly(f._d, A, B))


def _strip_one_minus_r(p):
    k = 0
    while not p.is_zero() and p(1) == 0:
        p, rem = divmod(p, _ONE_MINUS_R)
        assert rem.is_zero()
        k += 1
    return k, p


def eta_order(g):
    """Multiplicity of (1 - r) in num minus that in den."""
    if g.is_zero():
        raise ValueError("order of the zero function is undefined")
    kn, _ = _strip_one_minus_r(g.num)
    kd, _ = _strip_one_minus_r(g.den)
    return kn - kd


def eta_limit(g, k):
    """``lim_{r -> 1} g(r) / (1 - r)^k`` as an exact Fraction."""
    if g.is_zero():
        return Fraction(0)
    kn, n = _strip_one_minus_r(g.num)
    kd, d = _strip_one_minus_r(g.den)
    order = kn - kd
    if order < k:
        raise EtaPoleError(f"order {order} < normalization {k}: limit is a pole")
    if order > k:
        return Fraction(0)
    return Fraction(int(n(1)), int(d(1)))
