"""Du Val del Pezzo surface presentations and their singular loci.

Degrees 1-3 are hypersurfaces in P(1,1,2,3), P(1,1,1,2), P^3; degree 4 is a
complete intersection of two quadrics in P^4.  Singular points are searched on
the weight-1 affine charts and certified by comparing the length of the
singular-locus scheme with the sum of local lengths at the points found.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field as dc_field
from functools import reduce
from itertools import combinations

from ..exactalg import (INFINITE, FieldElement, PolyRing, Polynomial, embedding, field_create,
                        groebner_basis, local_dimension, poly_parse, quotient_dimension,
                        variety_points)
from ..exactalg.field import lcm

DEFAULT_K_MAX = 4

HYPERSURFACE_MODELS = {
    (1, 1, 2, 3): (6, 1),
    (1, 1, 1, 2): (4, 2),
    (1, 1, 1, 1): (3, 3),
}
DEFAULT_VARS = {
    "hypersurface": ("x", "y", "z", "w"),
    "ci": ("x0", "x1", "x2", "x3", "x4"),
}


class SurfaceError(ValueError):
    pass


class CertificateError(SurfaceError):
    pass


class NonIsolatedError(SurfaceError):
    pass


def default_k_max():
    raw = os.environ.get("DVDP_EXT_BOUND")
    if raw is None:
        return DEFAULT_K_MAX
    try:
        k = int(raw)
    except ValueError:
        raise SurfaceError(f"DVDP_EXT_BOUND={raw!r} is not an integer") from None
    if k < 1:
        raise SurfaceError("DVDP_EXT_BOUND must be at least 1")
    return k


@dataclass(frozen=True)
class SurfaceModel:
    field: object
    kind: str                  # "hypersurface" or "ci"
    weights: tuple
    degree: int                # anti-canonical degree K^2
    gens: tuple                # one polynomial, or two quadrics

    @property
    def ring(self):
        return self.gens[0].ring

    @property
    def vars(self):
        return self.ring.vars

    @property
    def p(self):
        return self.field.p

    @property
    def f(self):
        if self.kind != "hypersurface":
            raise SurfaceError("complete intersection has two generators")
        return self.gens[0]

    @property
    def weighted_degree(self):
        return HYPERSURFACE_MODELS[self.weights][0] if self.kind == "hypersurface" else 2

    def over(self, field):
        """The same surface with coefficients pushed into an extension field."""
        if field is self.field:
            return self
        ring = PolyRing(field, self.vars)
        fmap = embedding(self.field, field)
        return SurfaceModel(field, self.kind, self.weights, self.degree,
                            tuple(g.change_ring(ring, fmap) for g in self.gens))

    def describe(self):
        return {
            "kind": self.kind,
            "p": self.field.p,
            "field": f"F_{self.field.q}",
            "weights": list(self.weights),
            "degree": self.degree,
            "equations": [str(g) for g in self.gens],
        }


def _coefficient(f, exps):
    return f.terms.get(tuple(exps), 0)


def surface_create(kind, F, polys, weights=None, variables=None):
    """Validate and build a SurfaceModel.

    ``polys`` are Polynomials or strings in the exactalg grammar.  For
    hypersurfaces the weights decide the degree: (1,1,2,3)->1, (1,1,1,2)->2,
    (1,1,1,1)->3.
    """
    if kind not in ("hypersurface", "ci"):
        raise SurfaceError(f"unknown surface kind {kind!r}")
    if isinstance(polys, (str, Polynomial)):
        polys = [polys]
    polys = list(polys)
    if kind == "ci":
        weights = (1, 1, 1, 1, 1)
    elif weights is None:
        raise SurfaceError("hypersurface needs a weight vector")
    weights = tuple(int(w) for w in weights)
    if variables is None:
        for g in polys:
            if isinstance(g, Polynomial):
                variables = g.ring.vars
                break
        else:
            variables = DEFAULT_VARS[kind]
    variables = tuple(variables)
    if len(variables) != len(weights):
        raise SurfaceError(f"{len(variables)} variables but {len(weights)} weights")
    ring = PolyRing(F, variables)
    gens = []
    for g in polys:
        if isinstance(g, str):
            g = poly_parse(g, ring, F)
        elif g.ring != ring:
            if g.ring.vars != ring.vars:
                raise SurfaceError("polynomial variables do not match the model")
            g = g.to_field(F) if g.field is not F else g
        gens.append(g)
    if kind == "hypersurface":
        if len(gens) != 1:
            raise SurfaceError("hypersurface model takes exactly one equation")
        if weights not in HYPERSURFACE_MODELS:
            raise SurfaceError(f"unsupported weights {weights}; expected one of {sorted(HYPERSURFACE_MODELS)}")
        wdeg, degree = HYPERSURFACE_MODELS[weights]
        f = gens[0]
        if not f.terms:
            raise SurfaceError("zero equation")
        bad = f.weighted_degrees(weights) - {wdeg}
        if bad:
            raise SurfaceError(f"equation is not quasi-homogeneous of degree {wdeg} for weights {weights} "
                               f"(found terms of degree {sorted(bad)})")
        if degree == 1:
            if not _coefficient(f, (0, 0, 0, 2)):
                raise SurfaceError("degree-1 model needs a nonzero w^2 coefficient")
            if not _coefficient(f, (0, 0, 3, 0)):
                raise SurfaceError("degree-1 model needs a nonzero z^3 coefficient")
        elif degree == 2:
            if not _coefficient(f, (0, 0, 0, 2)):
                raise SurfaceError("degree-2 model needs a nonzero w^2 coefficient")
    else:
        if len(gens) != 2:
            raise SurfaceError("complete intersection needs exactly two quadrics")
        if len(variables) != 5:
            raise SurfaceError("complete intersection lives in P^4 (five variables)")
        for g in gens:
            if not g.terms or g.weighted_degrees(weights) != {2}:
                raise SurfaceError("complete-intersection generators must be nonzero quadratic forms")
        if len(groebner_basis(gens)) == 1:
            raise SurfaceError("the two quadrics are proportional")
        degree = 4
    return SurfaceModel(F, kind, weights, degree, tuple(gens))


# ---------------------------------------------------------------------------
# charts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AffineChart:
    chart_var: str
    index: int
    local_vars: tuple
    local_polys: tuple
    ambient_ok: bool = True

    @property
    def ring(self):
        return self.local_polys[0].ring

    def singular_ideal(self):
        """Generators cutting out the singular locus of the chart."""
        R = self.ring
        if len(self.local_polys) == 1:
            f = self.local_polys[0]
            return [f] + [f.derivative(v) for v in R.vars]
        q1, q2 = self.local_polys
        d1 = [q1.derivative(v) for v in R.vars]
        d2 = [q2.derivative(v) for v in R.vars]
        minors = [d1[i] * d2[j] - d1[j] * d2[i] for i, j in combinations(range(R.nvars), 2)]
        return [q1, q2] + [m for m in minors if m.terms]

    def over(self, field):
        if field is self.ring.field:
            return self
        ring = PolyRing(field, self.local_vars)
        fmap = embedding(self.ring.field, field)
        return AffineChart(self.chart_var, self.index, self.local_vars,
                           tuple(g.change_ring(ring, fmap) for g in self.local_polys), self.ambient_ok)

    def global_point(self, coords):
        pt = list(coords)
        pt.insert(self.index, 1)
        return tuple(pt)


def charts(X):
    """One chart per weight-1 variable, in variable order."""
    out = []
    for i, (name, w) in enumerate(zip(X.vars, X.weights)):
        if w != 1:
            continue
        local = tuple(v for v in X.vars if v != name)
        ring = PolyRing(X.field, local)
        images = {v: ring.var(v) for v in local}
        images[name] = ring.one()
        polys = tuple(g.substitute(images, ring) for g in X.gens)
        out.append(AffineChart(name, i, local, polys, True))
    return out


# ---------------------------------------------------------------------------
# the degree-1 base point
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BasePoint:
    point: tuple     # homogeneous codes (x, y, z, w) over the surface field
    smooth: bool
    gradient: tuple


def base_point_check(X):
    """Base point of |-K_X| for a degree-1 model: x = y = 0 and alpha w^2 + beta z^3 = 0."""
    if X.kind != "hypersurface" or X.degree != 1:
        raise SurfaceError("base point check applies to degree-1 models only")
    F = X.field
    f = X.f
    alpha = _coefficient(f, (0, 0, 0, 2))
    beta = _coefficient(f, (0, 0, 3, 0))
    if not alpha or not beta:
        raise SurfaceError("f(0,0,z,w) does not have exactly one solution")
    # f(0,0,z,w) has only the monomials w^2 and z^3 in weighted degree 6; with
    # alpha, beta nonzero its zeros form the single orbit of (-alpha/beta, alpha/beta)
    r = F.div(alpha, beta)
    lift = (0, 0, F.neg(r), r)
    if f.evaluate(lift) != 0:
        raise SurfaceError("internal error: base point lift does not lie on X")
    grad = tuple(f.derivative(v).evaluate(lift) for v in X.vars)
    return BasePoint(lift, any(grad), grad)


# ---------------------------------------------------------------------------
# singular points
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SingularPoint:
    chart: AffineChart          # over the working field
    coords: tuple               # codes in the working field, one per local variable
    field: object               # working field the codes live in
    field_degree: int           # minimal k with coords in F_{p^k}
    galois_orbit_size: int      # orbit size under Frobenius of the surface field
    local_length: int           # length of the singular-locus scheme at the point

    @property
    def point(self):
        return self.chart.global_point(self.coords)

    def label(self):
        names = list(self.chart.local_vars)
        parts = [f"{v}={_fmt(self.field, c)}" for v, c in zip(names, self.coords)]
        return f"{self.chart.chart_var}=1: " + ", ".join(parts)

    def to_json(self):
        return {
            "chart": self.chart.chart_var,
            "coords": {v: _fmt(self.field, c) for v, c in zip(self.chart.local_vars, self.coords)},
            "field": f"F_{self.field.q}",
            "field_degree": self.field_degree,
            "galois_orbit_size": self.galois_orbit_size,
            "local_length": self.local_length,
        }


def _fmt(F, c):
    from ..exactalg import format_code
    return format_code(F, c)


@dataclass
class CompletenessCertificate:
    field_degree: int
    chart_lengths: dict = dc_field(default_factory=dict)   # chart var -> global length
    found_lengths: dict = dc_field(default_factory=dict)   # chart var -> sum over points
    attempts: list = dc_field(default_factory=list)

    @property
    def ok(self):
        return self.chart_lengths == self.found_lengths

    def to_json(self):
        return {
            "field_degree": self.field_degree,
            "chart_lengths": dict(self.chart_lengths),
            "found_lengths": dict(self.found_lengths),
            "attempted_degrees": list(self.attempts),
        }


def _point_degree(F, coords):
    return reduce(lcm, (F.element_degree(c) for c in coords), 1)


def _translate_ideal(gens, coords):
    return [g.translate(coords) for g in gens]


def _chart_lengths(X):
    out = {}
    for ch in charts(X):
        G = groebner_basis(ch.singular_ideal())
        D = quotient_dimension(G)
        if D == INFINITE:
            raise NonIsolatedError(f"singular locus is not isolated in chart {ch.chart_var}=1")
        out[ch.chart_var] = D
    return out


def singular_points(X, k_max=None):
    """Singular points of X over F_{p^k}, k <= k_max (a multiple of the base degree).

    Returns (points, certificate).  Raises CertificateError when the points
    found over every allowed field fail to account for the full length of the
    singular-locus scheme.
    """
    if k_max is None:
        k_max = default_k_max()
    if k_max < 1:
        raise SurfaceError("k_max must be at least 1")
    lengths = _chart_lengths(X)
    k0 = X.field.k
    degrees = [k for k in range(k0, 9) if k % k0 == 0 and k <= max(k_max, k0)]
    attempts = []
    for k in degrees:
        attempts.append(k)
        W = field_create(X.p, k)
        found = {}
        points = []
        for ch in charts(X.over(W)):
            ideal = ch.singular_ideal()
            total = 0
            chart_pts = []
            if lengths[ch.chart_var]:
                for coords in variety_points(ideal):
                    ln = local_dimension(_translate_ideal(ideal, coords))
                    total += ln
                    chart_pts.append((coords, ln))
            found[ch.chart_var] = total
            for coords, ln in chart_pts:
                gp = ch.global_point(coords)
                earlier = [j for j, w in enumerate(X.weights) if w == 1 and j < ch.index]
                if any(gp[j] for j in earlier):
                    continue
                deg = _point_degree(W, coords)
                orbit = lcm(deg, k0) // k0
                points.append(SingularPoint(ch, tuple(coords), W, deg, orbit, ln))
        if found == lengths:
            cert = CompletenessCertificate(k, lengths, found, attempts)
            return points, cert
    raise CertificateError(
        f"singular-locus length {lengths} not accounted for by points over F_{X.p}^k, k <= {degrees[-1]}: "
        "points missing beyond k_max - raise k_max")


def singular_point_check(X, sp):
    """Independent re-check: every generator and partial (or 2x2 minor) vanishes at sp."""
    ch = {c.chart_var: c for c in charts(X.over(sp.field))}[sp.chart.chart_var]
    return all(g.evaluate(sp.coords) == 0 for g in ch.singular_ideal())
