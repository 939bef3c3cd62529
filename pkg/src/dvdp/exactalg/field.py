"""Finite fields F_{p^k} with elements stored as integer codes.

An element of F_{p^k} = F_p[t]/(m(t)) is the residue class of
c_0 + c_1 t + ... + c_{k-1} t^{k-1}; its code is sum(c_i * p**i).  Code 0 is
zero and code 1 is one, so the prime subfield occupies codes 0..p-1.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd

SUPPORTED_PRIMES = (2, 3, 5, 7)
MAX_EXTENSION = 8

# fields up to this size get exp/log tables
_TABLE_LIMIT = 1 << 20
# odd-characteristic fields up to this size get a full addition table
_ADD_TABLE_LIMIT = 729


class FieldError(ValueError):
    pass


def _digits(code, p, k):
    out = []
    for _ in range(k):
        code, r = divmod(code, p)
        out.append(r)
    return out


def _undigits(digits, p):
    code = 0
    for d in reversed(digits):
        code = code * p + d
    return code


def _polymod(a, m, p):
    """Remainder of a by the monic polynomial m over F_p (coefficient lists, low first)."""
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return [c % p for c in a[:dm]] + [0] * max(0, dm - len(a))


def _polymul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _is_irreducible(m, p):
    """Trial division by every monic polynomial of degree <= deg(m)/2."""
    k = len(m) - 1
    if k == 1:
        return True
    if m[0] == 0:
        return False
    for d in range(1, k // 2 + 1):
        for tail in range(p ** d):
            cand = _digits(tail, p, d) + [1]
            if not any(_polymod(m, cand, p)):
                return False
    return True


def _lowest_irreducible(p, k):
    """Monic irreducible of degree k minimising sum(c_i p^i) over its lower coefficients."""
    if k == 1:
        return (0, 1)
    for tail in range(p ** k):
        m = _digits(tail, p, k) + [1]
        if _is_irreducible(m, p):
            return tuple(m)
    raise FieldError(f"no irreducible polynomial of degree {k} over F_{p}")  # pragma: no cover


def _is_prime(n):
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


class FiniteField:
    """The field F_{p^k}; use :func:`field_create` rather than the constructor."""

    def __init__(self, p, k, modulus):
        self.p = p
        self.k = k
        self.modulus = tuple(modulus)
        self.q = p ** k
        self._exp = None
        self._log = None
        self._add = None
        self._zech = None
        self._gen = None
        if self.q <= _TABLE_LIMIT:
            self._build_tables()

    # -- construction -------------------------------------------------
    def _slow_mul(self, a, b):
        p, k = self.p, self.k
        if k == 1:
            return a * b % p
        prod = _polymul(_digits(a, p, k), _digits(b, p, k), p)
        return _undigits(_polymod(prod, self.modulus, p), p)

    def _slow_add(self, a, b):
        p = self.p
        if p == 2:
            return a ^ b
        if self.k == 1:
            return (a + b) % p
        da, db = _digits(a, p, self.k), _digits(b, p, self.k)
        return _undigits([(x + y) % p for x, y in zip(da, db)], p)

    def _order(self, a):
        n, x = 1, a
        while x != 1:
            x = self._slow_mul(x, a)
            n += 1
        return n

    def _find_generator(self):
        if self.q == 2:
            return 1
        target = self.q - 1
        primes = [r for r in range(2, target + 1) if target % r == 0 and _is_prime(r)]
        for g in range(2, self.q):
            if all(self._slow_pow(g, target // r) != 1 for r in primes):
                return g
        raise FieldError("no generator found")  # pragma: no cover

    def _slow_pow(self, a, n):
        r = 1
        while n:
            if n & 1:
                r = self._slow_mul(r, a)
            a = self._slow_mul(a, a)
            n >>= 1
        return r

    def _build_tables(self):
        q = self.q
        g = self._find_generator()
        exp = [0] * (2 * (q - 1))
        log = [0] * q
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, g)
        for i in range(q - 1, 2 * (q - 1)):
            exp[i] = exp[i - (q - 1)]
        self._exp, self._log, self._gen = exp, log, g
        if self.p != 2 and self.k > 1:
            if q <= _ADD_TABLE_LIMIT:
                self._add = [self._slow_add(a, b) for a in range(q) for b in range(q)]
            else:
                # log(1 + g^n), -1 when 1 + g^n == 0
                zech = []
                for n in range(q - 1):
                    s = self._slow_add(1, exp[n])
                    zech.append(log[s] if s else -1)
                self._zech = zech

    # -- arithmetic on codes -------------------------------------------
    def add(self, a, b):
        p = self.p
        if p == 2:
            return a ^ b
        if self.k == 1:
            s = a + b
            return s - p if s >= p else s
        if self._add is not None:
            return self._add[a * self.q + b]
        if self._zech is not None:
            if a == 0:
                return b
            if b == 0:
                return a
            la, lb = self._log[a], self._log[b]
            z = self._zech[(lb - la) % (self.q - 1)]
            if z < 0:
                return 0
            return self._exp[(la + z) % (self.q - 1)]
        return self._slow_add(a, b)

    def neg(self, a):
        p = self.p
        if p == 2 or a == 0:
            return a
        if self.k == 1:
            return p - a
        return _undigits([(-d) % p for d in _digits(a, p, self.k)], p)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        if self.k == 1:
            return a * b % self.p
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._slow_mul(a, b)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        if self._exp is not None:
            return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]
        return self._slow_pow(a, self.q - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n):
        if n < 0:
            a, n = self.inv(a), -n
        if n == 0:
            return 1
        if a == 0:
            return 0
        if self._exp is not None:
            return self._exp[(self._log[a] * n) % (self.q - 1)]
        if self.k == 1:
            return pow(a, n, self.p)
        return self._slow_pow(a, n)

    def frobenius(self, a):
        return self.pow(a, self.p)

    def from_int(self, n):
        return n % self.p

    @property
    def generator(self):
        """Least code that generates the multiplicative group."""
        if self._gen is None:
            self._gen = self._find_generator()
        return self._gen

    def log(self, a):
        if a == 0:
            raise ZeroDivisionError("log of zero")
        if self._log is not None:
            return self._log[a]
        g, x, n = self.generator, 1, 0
        while x != a:
            x = self._slow_mul(x, g)
            n += 1
        return n

    def gen_power(self, n):
        return self.pow(self.generator, n)

    def digits(self, a):
        return _digits(a, self.p, self.k)

    def elements(self):
        """All codes in deterministic order: 0, 1, 2, ..."""
        return range(self.q)

    def element(self, code):
        return FieldElement(self, code)

    def sqrt(self, a):
        """A square root of a (exists for every a when p == 2); None if a is a non-square."""
        if a == 0:
            return 0
        if self.p == 2:
            return self.pow(a, self.q // 2)
        la = self.log(a)
        if la % 2:
            return None
        return self.gen_power(la // 2)

    def element_degree(self, a):
        """Smallest d with a in F_{p^d}."""
        for d in range(1, self.k + 1):
            if self.k % d == 0 and self.pow(a, self.p ** d) == a:
                return d
        return self.k  # pragma: no cover

    def contains_subfield(self, other):
        return other.p == self.p and self.k % other.k == 0

    def __repr__(self):
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    def __reduce__(self):
        return (field_create, (self.p, self.k))


class FieldElement:
    """Immutable wrapper around a code, for callers who want operator syntax."""

    __slots__ = ("field", "code")

    def __init__(self, field, code):
        if not 0 <= code < field.q:
            raise FieldError(f"code {code} out of range for {field!r}")
        self.field = field
        self.code = code

    @property
    def coeffs(self):
        return tuple(self.field.digits(self.code))

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise FieldError("elements of different fields")
            return other.code
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(self.code, b))

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(b, self.code))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul(self.code, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.div(self.code, b))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __pow__(self, n):
        return FieldElement(self.field, self.field.pow(self.code, n))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.code))

    def frobenius(self):
        return FieldElement(self.field, self.field.frobenius(self.code))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field is other.field and self.code == other.code
        if isinstance(other, int):
            return self.code == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.code))

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        return f"{self.field!r}({format_code(self.field, self.code)})"


def format_code(field, code):
    """Grammar-compatible rendering: integers for F_p, g^n otherwise."""
    if code < field.p:
        return str(code)
    n = field.log(code)
    return "g" if n == 1 else f"g^{n}"


@lru_cache(maxsize=None)
def field_create(p, k=1):
    """Return the (cached, hence identical) field F_{p^k}."""
    if not isinstance(p, int) or not _is_prime(p):
        raise FieldError(f"p={p!r} is not prime")
    if p not in SUPPORTED_PRIMES:
        raise FieldError(f"p={p} unsupported; expected one of {SUPPORTED_PRIMES}")
    if not isinstance(k, int) or not 1 <= k <= MAX_EXTENSION:
        raise FieldError(f"extension degree k={k!r} outside 1..{MAX_EXTENSION}")
    return FiniteField(p, k, _lowest_irreducible(p, k))


def field_enumerate(field):
    return [FieldElement(field, c) for c in field.elements()]


@lru_cache(maxsize=None)
def _embedding_table(src_p, src_k, dst_k):
    src = field_create(src_p, src_k)
    dst = field_create(src_p, dst_k)
    if dst_k % src_k:
        raise FieldError(f"{src!r} does not embed in {dst!r}")
    if src_k == dst_k:
        return tuple(range(src.q))
    m = src.modulus
    root = None
    for r in dst.elements():
        acc = 0
        for c in reversed(m):
            acc = dst.add(dst.mul(acc, r), c)
        if acc == 0:
            root = r
            break
    table = []
    for code in src.elements():
        acc = 0
        for c in reversed(src.digits(code)):
            acc = dst.add(dst.mul(acc, root), c)
        table.append(acc)
    return tuple(table)


def embedding(src, dst):
    """Code map src -> dst sending the generator of the defining polynomial to the least root in dst."""
    if src.p != dst.p:
        raise FieldError("characteristics differ")
    return _embedding_table(src.p, src.k, dst.k)


def lcm(a, b):
    return a * b // gcd(a, b)
