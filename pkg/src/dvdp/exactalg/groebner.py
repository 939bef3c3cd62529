"""Buchberger's algorithm with Gebauer-Moeller pair elimination, plus the ideal
computations built on top of it: normal forms, quotient dimensions, local
dimensions at the origin and the points of a zero-dimensional variety.
"""

from __future__ import annotations

import math
from .field import FieldElement
from .poly import Polynomial, PolynomialError


INFINITE = math.inf


class MonomialOrder:
    """grevlex, lex, or weighted (weighted degree, ties broken by lex).

    Variables are ordered as in the ring: the first variable is the largest.
    """

    KINDS = ("grevlex", "lex", "weighted")

    def __init__(self, kind="grevlex", weights=None):
        if kind not in self.KINDS:
            raise ValueError(f"unknown monomial order {kind!r}")
        if kind == "weighted":
            if not weights or any(w <= 0 for w in weights):
                raise ValueError("weighted order needs positive weights")
            weights = tuple(weights)
        else:
            weights = None
        self.kind = kind
        self.weights = weights
        self._cache = {}

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and (self.kind, self.weights) == (other.kind, other.weights)

    def __hash__(self):
        return hash((self.kind, self.weights))

    def __repr__(self):
        if self.weights:
            return f"MonomialOrder({self.kind!r}, {self.weights})"
        return f"MonomialOrder({self.kind!r})"

    def key(self, m):
        k = self._cache.get(m)
        if k is None:
            if self.kind == "grevlex":
                k = (sum(m),) + tuple(-e for e in reversed(m))
            elif self.kind == "lex":
                k = m
            else:
                k = (sum(w * e for w, e in zip(self.weights, m)),) + m
            if len(self._cache) > 200000:
                self._cache.clear()
            self._cache[m] = k
        return k


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a, b):
    return all(not (x and y) for x, y in zip(a, b))


class _Basis:
    """Working set of polynomials with cached leading data."""

    def __init__(self, F, order):
        self.F = F
        self.order = order
        self.terms = []
        self.lm = []

    def add(self, terms):
        lm = max(terms, key=self.order.key)
        inv = self.F.inv(terms[lm])
        F = self.F
        monic = {m: F.mul(c, inv) for m, c in terms.items()}
        self.terms.append(monic)
        self.lm.append(lm)
        return len(self.terms) - 1


def _reduce(F, key, terms, reducers, full=True):
    """Normal form of ``terms`` by monic reducers given as (lm, terms) pairs."""
    p = dict(terms)
    r = {}
    add, mul, neg = F.add, F.mul, F.neg
    while p:
        m = max(p, key=key)
        c = p[m]
        for lm, g in reducers:
            if _divides(lm, m):
                shift = tuple(a - b for a, b in zip(m, lm))
                f = neg(c)
                for gm, gc in g.items():
                    mm = tuple(a + b for a, b in zip(gm, shift))
                    s = add(p.get(mm, 0), mul(f, gc))
                    if s:
                        p[mm] = s
                    else:
                        p.pop(mm, None)
                break
        else:
            if not full:
                r.update(p)
                return r
            r[m] = c
            del p[m]
    return r


def _spoly(F, a, lma, b, lmb):
    l = _lcm(lma, lmb)
    sa = tuple(x - y for x, y in zip(l, lma))
    sb = tuple(x - y for x, y in zip(l, lmb))
    out = {}
    for m, c in a.items():
        out[tuple(x + y for x, y in zip(m, sa))] = c
    for m, c in b.items():
        mm = tuple(x + y for x, y in zip(m, sb))
        s = F.sub(out.get(mm, 0), c)
        if s:
            out[mm] = s
        else:
            out.pop(mm, None)
    return out


def _buchberger(F, order, gens):
    key = order.key
    B = _Basis(F, order)
    G = []          # indices of the current non-redundant basis
    pairs = []      # (lcm, i, j)

    def update(h):
        nonlocal G, pairs
        lh = B.lm[h]
        C = [(g, _lcm(lh, B.lm[g])) for g in G]
        D = []
        while C:
            g1, l1 = C.pop()
            if _coprime(lh, B.lm[g1]) or not (
                any(_divides(l2, l1) for _, l2 in C) or any(_divides(l2, l1) for _, l2 in D)
            ):
                D.append((g1, l1))
        E = [(l, h, g) for g, l in D if not _coprime(lh, B.lm[g])]
        kept = []
        for l, i, j in pairs:
            if _divides(lh, l) and _lcm(B.lm[i], lh) != l and _lcm(lh, B.lm[j]) != l:
                continue
            kept.append((l, i, j))
        pairs = kept + E
        G = [g for g in G if not _divides(lh, B.lm[g])] + [h]

    for terms in gens:
        if not terms:
            continue
        reducers = [(B.lm[g], B.terms[g]) for g in G]
        r = _reduce(F, key, terms, reducers)
        if r:
            update(B.add(r))
    while pairs:
        idx = min(range(len(pairs)), key=lambda t: key(pairs[t][0]))
        _, i, j = pairs.pop(idx)
        s = _spoly(F, B.terms[i], B.lm[i], B.terms[j], B.lm[j])
        if not s:
            continue
        reducers = [(B.lm[g], B.terms[g]) for g in G]
        r = _reduce(F, key, s, reducers)
        if r:
            update(B.add(r))
    # minimal then reduced
    lms = [B.lm[g] for g in G]
    minimal = []
    for a, g in enumerate(G):
        if any(b != a and _divides(lms[b], lms[a]) and (lms[b] != lms[a] or b < a) for b in range(len(G))):
            continue
        minimal.append(g)
    out = []
    for g in minimal:
        others = [(B.lm[h], B.terms[h]) for h in minimal if h != g]
        t = B.terms[g]
        lm = B.lm[g]
        rest = {m: c for m, c in t.items() if m != lm}
        rest = _reduce(F, key, rest, others)
        rest[lm] = 1
        out.append(rest)
    out.sort(key=lambda t: key(max(t, key=key)), reverse=True)
    return out


def _ring_of(polys):
    ring = None
    for f in polys:
        if ring is None:
            ring = f.ring
        elif f.ring != ring:
            raise PolynomialError("generators live in different rings")
    return ring


def groebner_basis(gens, order=GREVLEX):
    """Reduced, monic Groebner basis, sorted by decreasing leading monomial."""
    gens = list(gens)
    if not gens:
        return []
    ring = _ring_of(gens)
    return [Polynomial(ring, t) for t in _buchberger(ring.field, order, [g.terms for g in gens])]


def normal_form(f, basis, order=GREVLEX):
    if not basis:
        return f
    key = order.key
    reducers = []
    for g in basis:
        if not g.terms:
            continue
        lm = max(g.terms, key=key)
        inv = f.field.inv(g.terms[lm])
        reducers.append((lm, {m: f.field.mul(c, inv) for m, c in g.terms.items()}))
    return Polynomial(f.ring, _reduce(f.field, key, f.terms, reducers))


def ideal_membership(f, basis, order=GREVLEX):
    return not normal_form(f, basis, order).terms


def leading_monomials(basis, order=GREVLEX):
    return [max(g.terms, key=order.key) for g in basis if g.terms]


def _standard_from_lms(lms, n):
    if not lms:
        return None
    if any(all(e == 0 for e in m) for m in lms):
        return []
    bounds = []
    for i in range(n):
        pure = [m[i] for m in lms if all(e == 0 for j, e in enumerate(m) if j != i) and m[i] > 0]
        if not pure:
            return None
        bounds.append(min(pure))
    out = []

    def walk(i, prefix):
        if i == n:
            out.append(tuple(prefix))
            return
        for e in range(bounds[i]):
            prefix.append(e)
            partial = tuple(prefix) + (0,) * (n - i - 1)
            if any(_divides(m, partial) for m in lms):
                prefix.pop()
                break
            walk(i + 1, prefix)
            prefix.pop()

    walk(0, [])
    return out


def standard_monomials(basis, order=GREVLEX):
    """Monomials outside the leading-term ideal; None if there are infinitely many."""
    basis = [g for g in basis if g.terms]
    if not basis:
        return None
    n = basis[0].ring.nvars
    return _standard_from_lms(leading_monomials(basis, order), n)


def quotient_dimension(basis, order=GREVLEX):
    """dim_F F[x]/I for a Groebner basis of I; math.inf when infinite."""
    sm = standard_monomials(basis, order)
    if sm is None:
        return INFINITE
    return len(sm)


def _pure_powers(ring, n):
    return [ring.monomial(tuple(n if j == i else 0 for j in range(ring.nvars))) for i in range(ring.nvars)]


def _power_of_max_ideal(ring, n):
    out = []
    for m in _exponents_of_degree(ring.nvars, n):
        out.append(ring.monomial(m))
    return out


def _exponents_of_degree(nvars, d):
    if nvars == 0:
        if d == 0:
            yield ()
        return
    if nvars == 1:
        yield (d,)
        return
    for e in range(d, -1, -1):
        for rest in _exponents_of_degree(nvars - 1, d - e):
            yield (e,) + rest


def local_dimension(gens, max_power=64):
    """Length of the local algebra of F[x]/(gens) at the origin.

    When the global quotient is finite of dimension D, the local factor is
    killed by m^D, so adding the pure powers x_i^D isolates it.  Otherwise
    dim F[x]/(I + m^N) is computed for growing N until it stops growing
    (Nakayama), which also detects non-isolated components through 0.  A
    local algebra of length L is killed by m^L, so max_power bounds the
    lengths that can be told apart from INFINITE.
    """
    gens = [g for g in gens if g.terms]
    if not gens:
        raise PolynomialError("local dimension of the zero ideal is infinite")
    ring = gens[0].ring
    if any(g.constant_coefficient() for g in gens):
        return 0
    G = groebner_basis(gens)
    D = quotient_dimension(G)
    if D != INFINITE:
        if D == 0:
            return 0
        G = groebner_basis(list(G) + _pure_powers(ring, D))
        return quotient_dimension(G)
    N = 2
    while N <= max_power:
        d1 = quotient_dimension(groebner_basis(list(G) + _power_of_max_ideal(ring, N)))
        d2 = quotient_dimension(groebner_basis(list(G) + _power_of_max_ideal(ring, N + 1)))
        if d1 == d2:
            return d1
        N *= 2
    return INFINITE


# ---------------------------------------------------------------------------
# zero-dimensional solving
# ---------------------------------------------------------------------------


def _univariate_roots(f, i):
    """Roots in the base field of a polynomial involving only variable i."""
    F = f.field
    coeffs = {}
    for m, c in f.terms.items():
        coeffs[m[i]] = c
    roots = []
    for x in F.elements():
        acc = 0
        for e, c in coeffs.items():
            acc = F.add(acc, F.mul(c, F.pow(x, e)))
        if acc == 0:
            roots.append(x)
    return roots


def variety_points(gens):
    """All points over the coefficient field of V(gens), assumed zero-dimensional.

    Works variable by variable from the last one using lex bases; raises if
    the ideal is not zero-dimensional.
    """
    gens = [g for g in gens if g.terms]
    if not gens:
        raise PolynomialError("zero ideal has a positive-dimensional variety")
    ring = gens[0].ring
    n = ring.nvars
    out = []

    def solve(polys, fixed):
        # fixed: codes for variables n-len(fixed) .. n-1
        i = n - len(fixed) - 1
        if i < 0:
            if not any(g.terms for g in polys):
                out.append(tuple(fixed))
            return
        G = groebner_basis([g for g in polys if g.terms], LEX)
        if not G:
            raise PolynomialError("variety is not zero-dimensional")
        if any(all(e == 0 for e in max(g.terms, key=LEX.key)) for g in G):
            return
        uni = [g for g in G if all(m[j] == 0 for m in g.terms for j in range(n) if j != i)]
        if not uni:
            raise PolynomialError("variety is not zero-dimensional")
        for r in _univariate_roots(uni[0], i):
            sub = {ring.vars[i]: FieldElement(ring.field, r)}
            for j in range(n):
                if j != i:
                    sub[ring.vars[j]] = ring.var(ring.vars[j])
            nxt = [g.substitute(sub) for g in G]
            solve(nxt, [r] + fixed)

    solve(gens, [])
    out.sort()
    return out


def frobenius_rational(gens, q=None):
    """True iff every point of the finite variety V(gens) is rational over F_q.

    Checks that x_i^q - x_i vanishes on V, i.e. lies in the radical, by asking
    whether (x_i^q - x_i)^D is in the ideal, D being the quotient dimension.
    """
    gens = [g for g in gens if g.terms]
    ring = gens[0].ring
    q = q or ring.field.q
    G = groebner_basis(gens)
    D = quotient_dimension(G)
    if D == INFINITE:
        raise PolynomialError("variety is not zero-dimensional")
    if D == 0:
        return True
    for v in ring.gens():
        h = normal_form(v ** q - v, G)
        acc = ring.one()
        for _ in range(D):
            acc = normal_form(acc * h, G)
            if not acc.terms:
                break
        if acc.terms:
            return False
    return True


def brute_quotient_dimension(gens, bound):
    """dim of F[x]/(I + m^bound) by linear algebra on monomials of degree < bound.

    An oracle independent of Buchberger: spans of monomial multiples of the
    generators truncated below ``bound``.
    """
    from .linalg import rank

    gens = [g for g in gens if g.terms]
    ring = gens[0].ring
    n = ring.nvars
    monos = [m for d in range(bound) for m in _exponents_of_degree(n, d)]
    index = {m: i for i, m in enumerate(monos)}
    rows = []
    for g in gens:
        lowest = g.order()
        for m in monos:
            if sum(m) + lowest >= bound:
                continue
            row = {}
            for gm, gc in g.terms.items():
                mm = tuple(a + b for a, b in zip(gm, m))
                if sum(mm) < bound:
                    row[index[mm]] = gc
            if row:
                rows.append(row)
    return len(monos) - rank(ring.field, rows, len(monos))


def brute_local_dimension(gens, start=4, limit=40):
    """Stabilized truncated dimension: oracle for local_dimension."""
    prev = None
    N = start
    while N <= limit:
        d = brute_quotient_dimension(gens, N)
        if d == prev:
            return d
        prev = d
        N += 1
    return INFINITE


__all__ = [
    "MonomialOrder", "GREVLEX", "LEX", "INFINITE", "groebner_basis", "normal_form",
    "ideal_membership", "leading_monomials", "standard_monomials", "quotient_dimension",
    "local_dimension", "variety_points", "frobenius_rational", "brute_quotient_dimension",
    "brute_local_dimension",
]
