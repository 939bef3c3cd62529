"""Resolution of rational double points by repeated point blow-ups.

A double point f = f2 + f3 + ... in A^3 is blown up at the origin.  The
exceptional curve on the strict transform is the conic {f2 = 0} in P^2: a
smooth conic, a pair of lines, or a double line.  Each reduced component is a
node of the dual graph.  Singular points of the strict transform lie on the
conic; they are found chart by chart and resolved recursively.

Incidences are tracked with curve germs.  A component passing through a
singular point P hands its germ (a truncated power-series parametrization) to
the recursion at P.  After the next blow-up the germ's tangent direction picks
out the point where its strict transform meets the new exceptional curve: a
smooth point there yields an edge to the component through it, a singular one
passes the germ further down.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from ..exactalg import (INFINITE, FieldElement, PolyRing, Polynomial, field_create, groebner_basis,
                        local_dimension, nullspace, quotient_dimension, variety_points)

DEFAULT_MAX_DEPTH = 16
SERIES_TERMS = 40


class ResolutionError(ValueError):
    pass


class DepthLimitError(ResolutionError):
    pass


class NeedsExtension(Exception):
    """The working field is too small for some point or line of the resolution."""


# ---------------------------------------------------------------------------
# truncated univariate power series: lists of codes
# ---------------------------------------------------------------------------


def _s_mul(F, a, b, n):
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j in range(min(len(b), n - i)):
                y = b[j]
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return out


def _s_div(F, a, b, n):
    """a / b with b[0] != 0."""
    inv = F.inv(b[0])
    out = [0] * n
    a = list(a[:n]) + [0] * max(0, n - len(a))
    for k in range(n):
        acc = a[k]
        for j in range(1, min(k, len(b) - 1) + 1):
            if b[j] and out[k - j]:
                acc = F.sub(acc, F.mul(b[j], out[k - j]))
        out[k] = F.mul(acc, inv)
    return out


def _s_eval(poly, series, n):
    """poly(series_0, series_1, ...) truncated to n terms."""
    F = poly.field
    total = [0] * n
    cache = {}
    for m, c in poly.terms.items():
        term = [c] + [0] * (n - 1)
        for i, e in enumerate(m):
            if not e:
                continue
            key = (i, e)
            pw = cache.get(key)
            if pw is None:
                pw = [1] + [0] * (n - 1)
                for _ in range(e):
                    pw = _s_mul(F, pw, series[i], n)
                cache[key] = pw
            term = _s_mul(F, term, pw, n)
        total = [F.add(x, y) for x, y in zip(total, term)]
    return total


def _order(s):
    for i, c in enumerate(s):
        if c:
            return i
    return None


# ---------------------------------------------------------------------------
# dual graphs
# ---------------------------------------------------------------------------


@dataclass
class DualGraph:
    nodes: list = dc_field(default_factory=list)     # labels
    edges: set = dc_field(default_factory=set)       # frozenset({i, j})
    field_degree: int = 1
    blowups: int = 0

    def add_node(self, label):
        self.nodes.append(label)
        return len(self.nodes) - 1

    def add_edge(self, a, b):
        if a == b:
            raise ResolutionError("a component meets itself")
        e = frozenset((a, b))
        if e in self.edges:
            raise ResolutionError("two components meet twice: not an ADE configuration")
        self.edges.add(e)

    def neighbours(self):
        nb = {i: set() for i in range(len(self.nodes))}
        for e in self.edges:
            a, b = tuple(e)
            nb[a].add(b)
            nb[b].add(a)
        return nb

    def ade(self):
        """(family, n) of the Dynkin diagram this graph realizes."""
        n = len(self.nodes)
        if n == 0:
            raise ResolutionError("empty dual graph")
        nb = self.neighbours()
        if len(self.edges) != n - 1:
            raise ResolutionError(f"dual graph with {n} nodes and {len(self.edges)} edges is not a tree")
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for u in nb[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        if len(seen) != n:
            raise ResolutionError("dual graph is disconnected")
        branch = [v for v in nb if len(nb[v]) >= 3]
        if not branch:
            return ("A", n)
        if len(branch) > 1 or len(nb[branch[0]]) > 3:
            raise ResolutionError("dual graph is not a Dynkin diagram")
        c = branch[0]
        arms = []
        for start in nb[c]:
            length, prev, cur = 1, c, start
            while True:
                nxt = [u for u in nb[cur] if u != prev]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                length += 1
            arms.append(length)
        arms.sort()
        if arms[0] == 1 and arms[1] == 1:
            return ("D", n)
        if arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
            return ("E", n)
        raise ResolutionError(f"branch arms {arms} match no Dynkin diagram")

    def to_json(self):
        return {
            "nodes": list(self.nodes),
            "edges": sorted(sorted(e) for e in self.edges),
            "field_degree": self.field_degree,
            "blowups": self.blowups,
        }


# ---------------------------------------------------------------------------
# the engine
# ---------------------------------------------------------------------------


def _cross(F, a, b):
    return [
        F.sub(F.mul(a[1], b[2]), F.mul(a[2], b[1])),
        F.sub(F.mul(a[2], b[0]), F.mul(a[0], b[2])),
        F.sub(F.mul(a[0], b[1]), F.mul(a[1], b[0])),
    ]


def _linear_form(R, coeffs):
    F = R.field
    out = R.zero()
    for v, c in zip(R.vars, coeffs):
        if c:
            out = out + R.var(v).scale(FieldElement(F, c))
    return out


def _canonical(F, vec):
    """Chart key of a projective point: first nonzero index i, coordinates scaled so
    that entry i is 1, then entry i replaced by the exceptional coordinate 0."""
    i = next(k for k, c in enumerate(vec) if c)
    inv = F.inv(vec[i])
    return i, tuple(0 if k == i else F.mul(c, inv) for k, c in enumerate(vec))


class _Resolver:
    def __init__(self, F, max_depth, terms):
        self.F = F
        self.max_depth = max_depth
        self.terms = terms
        self.graph = DualGraph(field_degree=F.k)

    # -- exceptional conic ---------------------------------------------------
    def components(self, f2, depth):
        """Reduced components of {f2 = 0} as (node, homogeneous equation) pairs, plus
        the meeting point of two lines (or None)."""
        F = self.F
        R = f2.ring
        rows = []
        for v in R.vars:
            d = f2.derivative(v)
            rows.append({j: d.terms.get(tuple(1 if k == j else 0 for k in range(3)), 0) for j in range(3)})
        N = nullspace(F, rows, 3)
        g = self.graph
        if len(N) == 0 or (len(N) == 1 and f2.evaluate(N[0]) != 0):
            return [(g.add_node(f"conic@{depth}"), f2)], None
        if len(N) == 1:
            r = N[0]
            basis = [[1 if k == j else 0 for k in range(3)] for j in range(3)]
            us = None
            for a in range(3):
                for b in range(a + 1, 3):
                    det = _cross(F, basis[a], basis[b])
                    if _dot(F, det, r):
                        us = (basis[a], basis[b])
                        break
                if us:
                    break
            u1, u2 = us
            c1 = f2.evaluate(u1)
            c3 = f2.evaluate(u2)
            c2 = F.sub(F.sub(f2.evaluate([F.add(x, y) for x, y in zip(u1, u2)]), c1), c3)
            roots = []
            for gam in F.elements():
                # Q(1, gam) = c1 + c2 gam + c3 gam^2
                if F.add(F.add(c1, F.mul(c2, gam)), F.mul(c3, F.mul(gam, gam))) == 0:
                    roots.append((1, gam))
            if c3 == 0:
                roots.append((0, 1))
            if len(roots) == 0:
                raise NeedsExtension("the two exceptional lines are conjugate")
            if len(roots) != 2:
                raise ResolutionError("degenerate line pair in exceptional conic")
            comps = []
            for beta, gam in roots:
                t = [F.add(F.mul(beta, x), F.mul(gam, y)) for x, y in zip(u1, u2)]
                comps.append((g.add_node(f"line@{depth}"), _linear_form(R, _cross(F, r, t))))
            return comps, _canonical(F, r)
        if len(N) == 2:
            return [(g.add_node(f"double-line@{depth}"), _linear_form(R, _cross(F, N[0], N[1])))], None
        # char 2: f2 is the square of a linear form
        coeffs = [F.sqrt(f2.terms.get(tuple(2 if k == j else 0 for k in range(3)), 0)) for j in range(3)]
        return [(g.add_node(f"double-line@{depth}"), _linear_form(R, coeffs))], None

    # -- charts -----------------------------------------------------------------
    @staticmethod
    def chart(f, i):
        """Strict transform in chart i: a_i = c_i, a_j = c_i * c_j, divided by c_i^2."""
        out = {}
        for m, c in f.terms.items():
            total = sum(m)
            mm = tuple(total - 2 if j == i else e for j, e in enumerate(m))
            out[mm] = c
        return Polynomial(f.ring, out)

    def singular_points_on_E(self, charts):
        R = charts[0].ring
        found = []
        for i, fi in enumerate(charts):
            J = [R.var(R.vars[i]), fi] + [fi.derivative(v) for v in R.vars]
            D = quotient_dimension(groebner_basis(J))
            if D == INFINITE:
                raise ResolutionError("strict transform has non-isolated singularities")
            if D == 0:
                continue
            pts = variety_points(J)
            total = sum(local_dimension([g.translate(pt) for g in J]) for pt in pts)
            if total != D:
                raise NeedsExtension("singular points of the strict transform beyond the working field")
            for pt in pts:
                if all(pt[j] == 0 for j in range(i)):
                    found.append((i, tuple(pt)))
        return found

    # -- germs ---------------------------------------------------------------------
    def lift(self, germ):
        """Strict transform of a germ: (chart, lifted series)."""
        F = self.F
        m = min(o for o in (_order(s) for s in germ) if o is not None)
        v = [s[m] for s in germ]
        i = next(k for k, c in enumerate(v) if c)
        n = len(germ[0]) - m
        if n < 3:
            raise ResolutionError("curve germ truncated too far; raise the series length")
        out = []
        for j, s in enumerate(germ):
            if j == i:
                out.append(list(s[:n]))
            else:
                out.append(_s_div(F, s[m:], germ[i][m:], n))
        return i, out

    def component_germ(self, g, i, P):
        """Germ of the component {g = 0} of E at the point P of chart i (e = c_i = 0)."""
        F = self.F
        R = g.ring
        n = self.terms
        others = [j for j in range(3) if j != i]
        images = {R.vars[i]: R.one()}
        for j in others:
            images[R.vars[j]] = R.var(R.vars[j]) + R.const(FieldElement(F, P[j]))
        gl = g.substitute(images)          # in chart coordinates, centred at P
        grad = {j: gl.terms.get(tuple(1 if k == j else 0 for k in range(3)), 0) for j in others}
        solve = next((j for j in others if grad[j]), None)
        if solve is None:
            raise ResolutionError("exceptional component is singular at a singular point of the surface")
        free = next(j for j in others if j != solve)
        series = [[0] * n for _ in range(3)]
        series[free] = [0, 1] + [0] * (n - 2)
        c = grad[solve]
        unit = tuple(1 if k == solve else 0 for k in range(3))
        rest = gl - R.monomial(unit, FieldElement(F, c))
        factor = F.neg(F.inv(c))
        h = [0] * n
        for _ in range(n + 1):
            series[solve] = h
            val = _s_eval(rest, series, n)
            new = [F.mul(factor, x) for x in val]
            if new == h:
                break
            h = new
        series[solve] = h
        return series

    # -- recursion -------------------------------------------------------------
    def resolve(self, f, germs, depth):
        if depth >= self.max_depth:
            raise DepthLimitError(f"more than {self.max_depth} blow-ups: not a rational double point")
        if f.constant_coefficient() or f.homogeneous_part(1).terms:
            raise ResolutionError("origin is not a singular point")
        f2 = f.homogeneous_part(2)
        if not f2.terms:
            raise ResolutionError("multiplicity at least 3: not a rational double point")
        self.graph.blowups += 1
        F = self.F
        comps, meet = self.components(f2, depth)
        charts = [self.chart(f, i) for i in range(3)]
        sing = self.singular_points_on_E(charts)
        sing_set = set(sing)
        child = {s: [] for s in sing}

        def on(eq, i, pt):
            vec = list(pt)
            vec[i] = 1
            return eq.evaluate(vec) == 0

        for owner, germ in germs:
            i, lifted = self.lift(germ)
            P = tuple(s[0] for s in lifted)
            if (i, P) in sing_set:
                child[(i, P)].append((owner, [[F.sub(c, P[j]) if k == 0 else c for k, c in enumerate(s)]
                                              for j, s in enumerate(lifted)]))
                continue
            hits = [node for node, eq in comps if on(eq, i, P)]
            if len(hits) != 1:
                raise ResolutionError(f"curve strict transform meets {len(hits)} components at a smooth point")
            self.graph.add_edge(owner, hits[0])
        for (i, P) in sing:
            for node, eq in comps:
                if on(eq, i, P):
                    child[(i, P)].append((node, self.component_germ(eq, i, P)))
        if meet is not None and meet not in sing_set:
            self.graph.add_edge(comps[0][0], comps[1][0])
        for (i, P) in sing:
            self.resolve(charts[i].translate(P), child[(i, P)], depth + 1)


def _dot(F, a, b):
    acc = 0
    for x, y in zip(a, b):
        acc = F.add(acc, F.mul(x, y))
    return acc


def _candidate_degrees(k0, k_max):
    out = []
    j = 1
    while k0 * j <= 8 and j <= max(k_max, 1):
        out.append(k0 * j)
        j += 1
    return out


def resolve_dual_graph(m, k_max=4, max_depth=DEFAULT_MAX_DEPTH, terms=SERIES_TERMS):
    """Dual graph of the minimal resolution of the double point m.f at the origin."""
    f = m.f if hasattr(m, "f") else m
    if f.ring.nvars != 3:
        raise ResolutionError("resolution engine works in three variables")
    F0 = f.field
    last = None
    for k in _candidate_degrees(F0.k, k_max):
        W = field_create(F0.p, k)
        fw = f.to_field(W)
        R = PolyRing(W, ("a0", "a1", "a2"))
        fw = fw.rename(R)
        engine = _Resolver(W, max_depth, terms)
        try:
            engine.resolve(fw, [], 0)
        except NeedsExtension as exc:
            last = exc
            continue
        engine.graph.ade()
        return engine.graph
    raise ResolutionError(f"resolution needs a field beyond F_{F0.p}^k, k <= {k}: {last}")
