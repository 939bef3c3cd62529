"""Sparse multivariate polynomials over a :class:`FiniteField`.

A polynomial is a map from exponent tuples to nonzero field codes.  Values are
immutable; every operation returns a new polynomial.
"""

from __future__ import annotations

import re

from .field import FieldElement, FiniteField, embedding, format_code


class PolynomialError(ValueError):
    pass


class ParseError(PolynomialError):
    def __init__(self, message, pos=None, text=None):
        self.pos = pos
        self.text = text
        where = f" at position {pos}" if pos is not None else ""
        super().__init__(f"{message}{where}")


class PolyRing:
    """F[v_1, ..., v_n] with an ordered tuple of variable names."""

    def __init__(self, field: FiniteField, variables):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise PolynomialError(f"repeated variable names in {variables}")
        self.field = field
        self.vars = variables
        self.nvars = len(variables)
        self._index = {v: i for i, v in enumerate(variables)}

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.field is other.field and self.vars == other.vars

    def __hash__(self):
        return hash((id(self.field), self.vars))

    def __repr__(self):
        return f"{self.field!r}[{','.join(self.vars)}]"

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise PolynomialError(f"unknown variable {name!r}; ring has {self.vars}") from None

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.const(1)

    def const(self, c):
        code = _coerce(self.field, c)
        return Polynomial(self, {(0,) * self.nvars: code} if code else {})

    def var(self, name):
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self):
        return tuple(self.var(v) for v in self.vars)

    def monomial(self, exps, c=1):
        code = _coerce(self.field, c)
        return Polynomial(self, {tuple(exps): code} if code else {})

    def parse(self, text):
        return poly_parse(text, self.vars, self.field)

    __call__ = parse

    def with_field(self, field):
        return PolyRing(field, self.vars)

    def subring_without(self, name):
        return PolyRing(self.field, [v for v in self.vars if v != name])


def _coerce(field, c):
    if isinstance(c, FieldElement):
        if c.field is not field:
            raise PolynomialError(f"coefficient from {c.field!r}, ring over {field!r}")
        return c.code
    if isinstance(c, int):
        return field.from_int(c)
    raise TypeError(f"cannot use {c!r} as a coefficient")


class Polynomial:
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- basic protocol --------------------------------------------------
    @property
    def field(self):
        return self.ring.field

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, int):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.vars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        return poly_print(self)

    def _check(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise PolynomialError(f"ring mismatch: {self.ring!r} vs {other.ring!r}")
            return other
        if isinstance(other, (int, FieldElement)):
            return self.ring.const(other)
        return None

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        F = self.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = F.add(out.get(m, 0), c)
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Polynomial(self.ring, {m: F.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return Polynomial(self.ring, mul_terms(self.field, self.terms, other.terms))

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise PolynomialError("exponent must be a natural number")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c):
        code = _coerce(self.field, c)
        if code == 0:
            return self.ring.zero()
        F = self.field
        return Polynomial(self.ring, {m: F.mul(v, code) for m, v in self.terms.items()})

    # -- inspection --------------------------------------------------------
    def degree(self):
        return max((sum(m) for m in self.terms), default=-1)

    def weighted_degrees(self, weights):
        return {sum(w * e for w, e in zip(weights, m)) for m in self.terms}

    def variables_used(self):
        used = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(self.ring.vars[i])
        return used

    def coefficient(self, exps):
        return FieldElement(self.field, self.terms.get(tuple(exps), 0))

    def constant_coefficient(self):
        return self.terms.get((0,) * self.ring.nvars, 0)

    def homogeneous_part(self, d, weights=None):
        w = weights or (1,) * self.ring.nvars
        return Polynomial(self.ring, {m: c for m, c in self.terms.items()
                                      if sum(a * b for a, b in zip(w, m)) == d})

    def order(self):
        """Lowest total degree of a term (-1 for zero)."""
        return min((sum(m) for m in self.terms), default=-1)

    def truncate(self, n):
        """Drop all terms of total degree >= n."""
        return Polynomial(self.ring, {m: c for m, c in self.terms.items() if sum(m) < n})

    def monic(self, order):
        if not self.terms:
            return self
        lead = max(self.terms, key=order.key)
        return self.scale(FieldElement(self.field, self.field.inv(self.terms[lead])))

    def leading_monomial(self, order):
        return max(self.terms, key=order.key)

    # -- calculus and substitution -------------------------------------------
    def derivative(self, name):
        i = self.ring.index(name)
        F = self.field
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if e % F.p == 0:
                continue
            mm = list(m)
            mm[i] = e - 1
            out[tuple(mm)] = F.mul(c, F.from_int(e))
        return Polynomial(self.ring, out)

    def evaluate(self, point):
        """Value at a point given as a sequence of codes (or FieldElements)."""
        F = self.field
        pt = [x.code if isinstance(x, FieldElement) else x for x in point]
        if len(pt) != self.ring.nvars:
            raise PolynomialError("point has wrong length")
        total = 0
        for m, c in self.terms.items():
            v = c
            for x, e in zip(pt, m):
                if e:
                    v = F.mul(v, F.pow(x, e))
                    if not v:
                        break
            total = F.add(total, v)
        return total

    def substitute(self, images, ring=None):
        """Ring homomorphism sending each variable to a polynomial.

        ``images`` maps variable names to polynomials of one common ring (or to
        ints/FieldElements).  Unlisted variables are only allowed when unused.
        """
        target = ring
        for img in images.values():
            if isinstance(img, Polynomial):
                if target is None:
                    target = img.ring
                elif img.ring != target:
                    raise PolynomialError("substitution images live in different rings")
        if target is None:
            target = self.ring
        imgs = []
        for name in self.ring.vars:
            img = images.get(name)
            if img is None:
                imgs.append(None)
            elif isinstance(img, Polynomial):
                imgs.append(img)
            else:
                imgs.append(target.const(img))
        for m in self.terms:
            for i, e in enumerate(m):
                if e and imgs[i] is None:
                    raise PolynomialError(f"no image for variable {self.ring.vars[i]!r}")
        powers = [dict() for _ in imgs]
        F = target.field
        result = {}
        for m, c in self.terms.items():
            term = {(0,) * target.nvars: c}
            for i, e in enumerate(m):
                if not e:
                    continue
                pw = powers[i].get(e)
                if pw is None:
                    pw = (imgs[i] ** e).terms
                    powers[i][e] = pw
                term = mul_terms(F, term, pw)
                if not term:
                    break
            for mm, cc in term.items():
                s = F.add(result.get(mm, 0), cc)
                if s:
                    result[mm] = s
                else:
                    result.pop(mm, None)
        return Polynomial(target, result)

    def translate(self, point):
        """f(v + point): recentre at a point given as codes."""
        R = self.ring
        images = {}
        for name, x in zip(R.vars, point):
            code = x.code if isinstance(x, FieldElement) else x
            images[name] = R.var(name) + R.const(FieldElement(R.field, code))
        return self.substitute(images)

    def change_ring(self, ring, field_map=None):
        """Reinterpret in a ring with the same variables over an extension field."""
        if ring.vars != self.ring.vars:
            raise PolynomialError("variable lists differ")
        if field_map is None:
            field_map = embedding(self.field, ring.field)
        return Polynomial(ring, {m: field_map[c] for m, c in self.terms.items()})

    def to_field(self, field):
        return self.change_ring(PolyRing(field, self.ring.vars))

    def rename(self, ring):
        """Same exponent vectors, interpreted in a ring with other variable names."""
        if ring.nvars != self.ring.nvars or ring.field is not self.field:
            raise PolynomialError("incompatible ring for renaming")
        return Polynomial(ring, dict(self.terms))


def mul_terms(F, a, b):
    if len(a) > len(b):
        a, b = b, a
    out = {}
    add, mul = F.add, F.mul
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            s = add(out.get(m, 0), mul(ca, cb))
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return out


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z])(?:_?(\d+))?|(.))")


def _tokenize(text):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(0) + (len(m.group(0)) - len(m.group(0).lstrip()))
        if m.group(1) is not None:
            tokens.append(("num", int(m.group(1)), start))
        elif m.group(2) is not None:
            name = m.group(2) + (m.group(3) or "")
            tokens.append(("id", name, start))
        elif m.group(4) is not None:
            ch = m.group(4)
            if ch not in "+-*^()":
                raise ParseError(f"unexpected character {ch!r}", start, text)
            tokens.append(("op", ch, start))
        pos = m.end()
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    def __init__(self, text, ring):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], self.text)

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty expression")
        value = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected token {self.peek()[1]!r}")
        return value

    def expr(self):
        sign = None
        if self.peek() == ("op", "-", self.peek()[2]) or self.peek()[:2] == ("op", "+"):
            sign = self.take()[1]
        value = self.term()
        if sign == "-":
            value = -value
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def _starts_factor(self, tok):
        return tok[0] in ("num", "id") or tok[:2] == ("op", "(")

    def term(self):
        value = self.factor()
        while True:
            tok = self.peek()
            if tok[:2] == ("op", "*"):
                self.take()
                value = value * self.factor()
            elif self._starts_factor(tok):
                value = value * self.factor()
            else:
                return value

    def exponent(self):
        tok = self.take()
        if tok[0] != "num":
            self.error("expected a natural-number exponent", tok)
        return tok[1]

    def factor(self):
        tok = self.take()
        R = self.ring
        if tok[0] == "num":
            base = R.const(tok[1])
        elif tok[0] == "id":
            name = tok[1]
            if name in R._index:
                base = R.var(name)
            elif name == "g":
                if self.peek()[:2] == ("op", "^"):
                    self.take()
                    n = self.exponent()
                else:
                    n = 1
                return R.const(FieldElement(R.field, R.field.gen_power(n)))
            else:
                self.error(f"unknown variable {name!r}", tok)
        elif tok[:2] == ("op", "("):
            base = self.expr()
            close = self.take()
            if close[:2] != ("op", ")"):
                self.error("expected ')'", close)
        else:
            self.error(f"unexpected token {tok[1]!r}", tok)
        if self.peek()[:2] == ("op", "^"):
            self.take()
            base = base ** self.exponent()
        return base


def poly_parse(text, variables, field):
    """Parse ``text`` into a polynomial over ``field`` in ``variables``."""
    ring = variables if isinstance(variables, PolyRing) else PolyRing(field, variables)
    return _Parser(text, ring).parse()


def grevlex_key(m):
    return (sum(m),) + tuple(-e for e in reversed(m))


def poly_print(f):
    """Canonical text: terms in descending graded-reverse-lex order."""
    if not f.terms:
        return "0"
    R = f.ring
    parts = []
    for m in sorted(f.terms, key=grevlex_key, reverse=True):
        c = f.terms[m]
        factors = []
        for name, e in zip(R.vars, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        if c != 1 or not factors:
            factors.insert(0, format_code(R.field, c))
        parts.append("*".join(factors))
    return " + ".join(parts)
