"""Anti-canonical members: hyperplane sections, smoothness, point counts, ordinarity."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from itertools import combinations

from ..exactalg import FieldElement, PolyRing, field_create, groebner_basis


class PencilError(ValueError):
    pass


@dataclass(frozen=True)
class MemberCurve:
    parent: object
    section: tuple           # codes over `field`, one per section variable
    section_vars: tuple
    eliminated: str
    gens: tuple              # one or two polynomials in the remaining variables
    ambient_weights: tuple
    field: object

    @property
    def g(self):
        return self.gens[0]

    @property
    def vars(self):
        return self.gens[0].ring.vars

    def describe(self):
        return {
            "section": {v: _fmt(self.field, c) for v, c in zip(self.section_vars, self.section)},
            "eliminated": self.eliminated,
            "equations": [str(g) for g in self.gens],
            "weights": list(self.ambient_weights),
        }


def _fmt(F, c):
    from ..exactalg import format_code
    return format_code(F, c)


def _codes(F, coeffs):
    out = []
    for c in coeffs:
        if isinstance(c, FieldElement):
            if c.field is not F:
                raise PencilError("section coefficient from a different field")
            out.append(c.code)
        else:
            out.append(int(c))
    return out


def section_variables(X):
    return tuple(v for v, w in zip(X.vars, X.weights) if w == 1)


def member_curve(X, coeffs, field=None):
    """The member {sum c_i v_i = 0} of |-K_X|, with the last variable whose
    coefficient is nonzero solved for and substituted."""
    F = field or X.field
    if F.p != X.field.p or F.k % X.field.k:
        raise PencilError(f"{F!r} does not contain the field of the surface {X.field!r}")
    svars = section_variables(X)
    codes = _codes(F, coeffs)
    if len(codes) != len(svars):
        raise PencilError(f"degree-{X.degree} model takes {len(svars)} section coefficients, got {len(codes)}")
    if not any(codes):
        raise PencilError("zero section")
    XF = X.over(F)
    j = max(i for i, c in enumerate(codes) if c)
    elim = svars[j]
    rest = tuple(v for v in XF.vars if v != elim)
    S = PolyRing(F, rest)
    images = {v: S.var(v) for v in rest}
    inv = F.neg(F.inv(codes[j]))
    expr = S.zero()
    for v, c in zip(svars, codes):
        if v != elim and c:
            expr = expr + S.var(v).scale(FieldElement(F, F.mul(c, inv)))
    images[elim] = expr
    gens = tuple(g.substitute(images, S) for g in XF.gens)
    weights = tuple(w for v, w in zip(XF.vars, XF.weights) if v != elim)
    return MemberCurve(X, tuple(codes), svars, elim, gens, weights, F)


# ---------------------------------------------------------------------------
# smoothness
# ---------------------------------------------------------------------------


def _jacobian_ideal(polys, ring):
    if len(polys) == 1:
        f = polys[0]
        return [f] + [f.derivative(v) for v in ring.vars]
    q1, q2 = polys
    d1 = [q1.derivative(v) for v in ring.vars]
    d2 = [q2.derivative(v) for v in ring.vars]
    minors = [d1[i] * d2[j] - d1[j] * d2[i] for i, j in combinations(range(ring.nvars), 2)]
    return [q1, q2] + minors


def _unit(ideal):
    G = groebner_basis([g for g in ideal if g.terms])
    return len(G) == 1 and all(e == 0 for e in next(iter(G[0].terms)))


def _dehomogenize(C, i):
    R = C.gens[0].ring
    name = R.vars[i]
    local = tuple(v for v in R.vars if v != name)
    S = PolyRing(C.field, local)
    images = {v: S.var(v) for v in local}
    images[name] = S.one()
    return S, [g.substitute(images, S) for g in C.gens]


def _off_chart_points(C):
    """Cone lifts of the points where every weight-1 coordinate vanishes."""
    F = C.field
    R = C.gens[0].ring
    heavy = [i for i, w in enumerate(C.ambient_weights) if w != 1]
    if not heavy:
        return []
    if len(C.gens) != 1:
        raise PencilError("unexpected weighted complete intersection")
    g = C.g
    if [C.ambient_weights[i] for i in heavy] == [2, 3]:
        zi, wi = heavy
        e_w = [0] * R.nvars
        e_w[wi] = 2
        e_z = [0] * R.nvars
        e_z[zi] = 3
        alpha = g.terms.get(tuple(e_w), 0)
        beta = g.terms.get(tuple(e_z), 0)
        r = F.div(alpha, beta)
        pt = [0] * R.nvars
        pt[zi] = F.neg(r)
        pt[wi] = r
        return [tuple(pt)]
    if [C.ambient_weights[i] for i in heavy] == [2]:
        pt = [0] * R.nvars
        pt[heavy[0]] = 1
        return [tuple(pt)] if g.evaluate(pt) == 0 else []
    raise PencilError(f"unsupported member weights {C.ambient_weights}")


def curve_smooth(C):
    """Unit-ideal certificate on every weight-1 chart plus a cone-gradient check
    at the points outside those charts."""
    for i, w in enumerate(C.ambient_weights):
        if w != 1:
            continue
        S, polys = _dehomogenize(C, i)
        if not _unit(_jacobian_ideal(polys, S)):
            return False
    for pt in _off_chart_points(C):
        if not any(C.g.derivative(v).evaluate(pt) for v in C.vars):
            return False
    return True


# ---------------------------------------------------------------------------
# point counting
# ---------------------------------------------------------------------------


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(F, a, m):
    a = list(a)
    dm = len(m) - 1
    inv = F.inv(m[-1])
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            f = F.mul(c, inv)
            for j in range(dm + 1):
                a[i - dm + j] = F.sub(a[i - dm + j], F.mul(f, m[j]))
    return _trim(a[:dm])


def _pmul(F, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return _trim(out)


def _pgcd(F, a, b):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(F, a, b)
    return a


def _x_power_mod(F, n, m):
    result = [1]
    base = _pmod(F, [0, 1], m)
    while n:
        if n & 1:
            result = _pmod(F, _pmul(F, result, base), m)
        n >>= 1
        if n:
            base = _pmod(F, _pmul(F, base, base), m)
    return result


def _count_roots(F, polys):
    """Number of t in F with every univariate polynomial (code lists) vanishing."""
    polys = [_trim(list(h)) for h in polys]
    polys = [h for h in polys if h]
    if not polys:
        return F.q
    g = polys[0]
    for h in polys[1:]:
        g = _pgcd(F, g, h)
    if len(g) == 1:
        return 0
    # distinct roots in F: degree of gcd(g, t^q - t)
    xq = _x_power_mod(F, F.q, g)
    xq = xq + [0] * max(0, 2 - len(xq))
    xq[1] = F.sub(xq[1], 1)
    return len(_pgcd(F, g, _trim(xq))) - 1


def _univariate(F, poly, fixed, free):
    """Coefficient list in variable index ``free`` after fixing the others to codes."""
    out = {}
    for m, c in poly.terms.items():
        v = c
        for i, e in enumerate(m):
            if i != free and e:
                x = fixed[i]
                if x == 0:
                    v = 0
                    break
                v = F.mul(v, F.pow(x, e))
        if v:
            out[m[free]] = F.add(out.get(m[free], 0), v)
    if not out:
        return []
    deg = max(out)
    return [out.get(d, 0) for d in range(deg + 1)]


def _count_affine(F, polys, fixed, free):
    """Solutions with the variables in ``free`` ranging over F, others fixed."""
    if not free:
        return int(all(p.evaluate(fixed) == 0 for p in polys))
    if len(free) == 1:
        i = free[0]
        return _count_roots(F, [_univariate(F, p, fixed, i) for p in polys])
    i, rest = free[0], free[1:]
    total = 0
    for x in F.elements():
        fixed[i] = x
        total += _count_affine(F, polys, fixed, rest)
    fixed[i] = 0
    return total


@dataclass(frozen=True)
class CurveArithmetic:
    q: int
    N: int
    a: int
    smooth: bool
    ordinary: bool | None

    def to_json(self):
        return {"q": self.q, "N": self.N, "a": self.a, "smooth": self.smooth, "ordinary": self.ordinary}


def count_projective_points(C, F):
    polys = [g.to_field(F) for g in C.gens] if F is not C.field else list(C.gens)
    n = polys[0].ring.nvars
    light = [i for i, w in enumerate(C.ambient_weights) if w == 1]
    heavy = [i for i, w in enumerate(C.ambient_weights) if w != 1]
    chart_total = 0
    for pos, i in enumerate(light):
        fixed = [0] * n
        fixed[i] = 1
        free = [j for j in range(n) if j not in light[:pos + 1]]
        chart_total += _count_affine(F, polys, fixed, free)
    cone_rest = 0
    if heavy:
        cone_rest = _count_affine(F, polys, [0] * n, heavy) - 1   # drop the zero vector
    cone = (F.q - 1) * chart_total + cone_rest
    if cone % (F.q - 1):
        raise PencilError(f"cone count {cone} not divisible by q-1={F.q - 1}")
    return cone // (F.q - 1)


def count_points(C, k=None, smooth=None):
    """Rational points over F_{p^k} (default: the curve's field), trace and ordinarity."""
    F0 = C.field
    k = k or F0.k
    if k % F0.k:
        raise PencilError(f"F_{F0.p}^{k} does not contain the field of the curve")
    F = field_create(F0.p, k)
    N = count_projective_points(C, F)
    a = F.q + 1 - N
    if smooth is None:
        smooth = curve_smooth(C)
    ordinary = None
    if smooth:
        if a * a > 4 * F.q:
            raise PencilError(f"Hasse bound violated: a={a}, q={F.q}")
        ordinary = a % F.p != 0
    return CurveArithmetic(F.q, N, a, smooth, ordinary)


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------


@dataclass
class SamplingReport:
    q: int
    trials: int
    seed: int
    smooth_count: int = 0
    ordinary_count: int = 0
    supersingular_count: int = 0
    singular_count: int = 0
    members: list = dc_field(default_factory=list)

    def to_json(self, detail=False):
        out = {
            "q": self.q,
            "trials": self.trials,
            "seed": self.seed,
            "smooth_count": self.smooth_count,
            "ordinary_count": self.ordinary_count,
            "supersingular_count": self.supersingular_count,
            "singular_count": self.singular_count,
        }
        if detail:
            out["members"] = list(self.members)
        return out


def trial_rng(seed, trial):
    """Independent, reproducible stream per (seed, trial)."""
    return random.Random(f"dvdp-pencil:{seed}:{trial}")


def random_section(X, F, rng):
    n = len(section_variables(X))
    while True:
        c = [rng.randrange(F.q) for _ in range(n)]
        if any(c):
            return c


def sample_members(X, k, trials, seed=0):
    """Sample members of |-K_X| over F_{p^k}; k must be a multiple of the base degree."""
    if trials < 1:
        raise PencilError("trials must be at least 1")
    if k % X.field.k:
        raise PencilError(f"F_{X.p}^{k} does not contain {X.field!r}")
    F = field_create(X.p, k)
    rep = SamplingReport(F.q, trials, seed)
    for t in range(trials):
        coeffs = random_section(X, F, trial_rng(seed, t))
        C = member_curve(X, coeffs, F)
        smooth = curve_smooth(C)
        rec = {"trial": t, "section": [_fmt(F, c) for c in coeffs], "smooth": smooth}
        if smooth:
            ar = count_points(C, k, smooth=True)
            rep.smooth_count += 1
            if ar.ordinary:
                rep.ordinary_count += 1
            else:
                rep.supersingular_count += 1
            rec.update(N=ar.N, a=ar.a, ordinary=ar.ordinary)
        else:
            rep.singular_count += 1
        rep.members.append(rec)
    return rep


__all__ = [
    "PencilError", "MemberCurve", "CurveArithmetic", "SamplingReport", "member_curve",
    "curve_smooth", "count_points", "count_projective_points", "sample_members",
    "section_variables", "trial_rng", "random_section",
]
