"""Explicit rational parametrizations P^2 -> X and their checks.

The 7A_1 and 8A_1 maps come from anti-canonical sections of the blow-up of
P^2.  For 8A_1 the z and w sections need the scalars (a+b+c)^3 and
(a+b+c)^3 (a+b)(b+c)(c+a) to land on the equation in the catalog's
coordinates; both are units on D2, so this is a diagonal automorphism of
P(1,1,2,3).  For 4A_2 (p=3) and 4A_1+D_4 (p=2) we use dominant, purely inseparable
maps instead: the equation is linear in z^3 (resp. w^2) after substituting
Frobenius powers for the other coordinates, so a cube (resp. square) root
can be taken coefficient-wise.

    4A_2:     x=s^3, y=t^3, w=(u s^2)^3, z = (st(s+t))^2 - (u s^2)^2
    4A_1+D_4: x=s^2, y=t^2, z=(su)^2, w = sqrt of the remaining terms,
              written with m^2 = a, n^2 = b
"""

from __future__ import annotations

from dataclasses import dataclass

from ..exactalg import FieldElement, PolyRing, field_create, poly_parse
from ..exactalg.linalg import rank as matrix_rank
from .entries import default_parameters, get_entry

ST = ("s", "t", "u")

PARAMETRIZATIONS = {
    "7A1": {
        "entry": "p2-7A1",
        "p": 2,
        "params": (),
        "maps": {
            "x": "s*t*(s+t)",
            "y": "t*u*(t+u)",
            "z": "u*s*(u+s)",
            "w": "s*t*u*(s+t)*(t+u)*(u+s)",
        },
        "basis": ("x^2", "y^2", "z^2", "x*y", "y*z", "z*x", "w"),
    },
    "8A1": {
        "entry": "p2-8A1",
        "p": 2,
        "params": ("a", "b", "c"),
        "maps": {
            "x": "c*(a+b)*s*t*(s+t)+a*(b+c)*t*u*(t+u)+b*(c+a)*u*s*(u+s)",
            "y": "c^2*s*t*(s+t)+a^2*t*u*(t+u)+b^2*u*s*(u+s)",
            "z": "(a+b+c)^3*((b+c)*s+(c+a)*t+(a+b)*u)^2*s*t*u*(s+t+u)",
            "w": "(a+b+c)^3*(a+b)*(b+c)*(c+a)"
                 "*((b+c)*s+a*(t+u))*((c+a)*t+b*(u+s))*((a+b)*u+c*(s+t))*s*t*u*(s+t)*(t+u)*(u+s)",
        },
        # the sections without the rescaling z -> (a+b+c)^3 z,
        # w -> (a+b+c)^3 (a+b)(b+c)(c+a) w; they do not satisfy the equation
        "unscaled": {
            "z": "((b+c)*s+(c+a)*t+(a+b)*u)^2*s*t*u*(s+t+u)",
            "w": "((b+c)*s+a*(t+u))*((c+a)*t+b*(u+s))*((a+b)*u+c*(s+t))*s*t*u*(s+t)*(t+u)*(u+s)",
        },
        "basis": ("x^3", "x^2*y", "x*y^2", "y^3", "x*z", "y*z", "w"),
    },
    "4A2": {
        "entry": "p3-4A2",
        "p": 3,
        "params": (),
        "maps": {
            "x": "s^3",
            "y": "t^3",
            "z": "s^2*t^2*(s+t)^2-u^2*s^4",
            "w": "u^3*s^6",
        },
        "basis": ("x^3", "x^2*y", "x*y^2", "y^3", "x*z", "y*z", "w"),
    },
    "4A1+D4": {
        "entry": "p2-4A1D4",
        "p": 2,
        "params": ("m", "n"),          # square roots of a and b
        "maps": {
            "x": "s^2",
            "y": "t^2",
            "z": "s^2*u^2",
            "w": "s^3*u^3+m*n*s^4*u^2+s*t^4*u+(m^2+m*n+n^2)*s^3*t^2*u+m*n*(m+n)*s^4*t*u",
        },
        "basis": ("x^3", "x^2*y", "x*y^2", "y^3", "x*z", "y*z", "w"),
    },
}


@dataclass(frozen=True)
class ParametrizationResult:
    which: str
    identity_holds: bool
    independence_holds: bool
    rank: int
    field: str
    symbolic: bool
    unscaled_identity_holds: bool | None = None

    def to_json(self):
        out = {
            "which": self.which,
            "identity_holds": self.identity_holds,
            "independence_holds": self.independence_holds,
            "rank": self.rank,
            "field": self.field,
            "symbolic": self.symbolic,
        }
        if self.unscaled_identity_holds is not None:
            out["unscaled_identity_holds"] = self.unscaled_identity_holds
        return out


def _map_values(pm, params):
    """Values of the map's own parameters, from the entry parameters a, b, c."""
    if pm["params"] == ("m", "n"):
        a, b = params["a"], params["b"]
        F = a.field
        return {"m": FieldElement(F, F.sqrt(a.code)), "n": FieldElement(F, F.sqrt(b.code))}
    return {k: params[k] for k in pm["params"]}


def _symbolic_entry_params(pm, ring):
    """Entry parameters as polynomials in the map's parameters."""
    if pm["params"] == ("m", "n"):
        return {"a": ring.var("m") ** 2, "b": ring.var("n") ** 2}
    return {k: ring.var(k) for k in pm["params"]}


def _map_polys(pm, texts, F, params):
    """The four coordinate polynomials in (s, t, u), or in (params, s, t, u) when symbolic."""
    src = PolyRing(F, tuple(pm["params"]) + ST)
    if params is None:
        return {v: poly_parse(text, src, F) for v, text in texts.items()}, src
    target = PolyRing(F, ST)
    images = {v: target.var(v) for v in ST}
    for k, val in _map_values(pm, params).items():
        images[k] = target.const(val)
    return {v: poly_parse(text, src, F).substitute(images, target) for v, text in texts.items()}, target


def _pullback(pm, entry, texts, F, params):
    maps, target = _map_polys(pm, texts, F, params)
    names = entry.params
    ring = PolyRing(F, tuple(names) + ("x", "y", "z", "w"))
    f = poly_parse(entry.equations[0], ring, F)
    images = dict(maps)
    if params is None:
        images.update(_symbolic_entry_params(pm, target))
    else:
        for k in names:
            images[k] = target.const(params[k])
    return f.substitute(images, target)


def _basis_rank(pm, F, params):
    maps, target = _map_polys(pm, pm["maps"], F, params)
    xyzw = PolyRing(F, ("x", "y", "z", "w"))
    cols = {}
    rows = []
    for text in pm["basis"]:
        poly = poly_parse(text, xyzw, F).substitute(maps, target)
        rows.append({cols.setdefault(m, len(cols)): c for m, c in poly.terms.items()})
    return matrix_rank(F, rows, len(cols))


def verify_parametrization(which, params=None):
    """Identity check (the map lands on the surface) and rank of the stated basis.

    Without parameters the identity is checked symbolically over F_p with the
    parameters as indeterminates, and the rank at the first default domain point.
    """
    if which not in PARAMETRIZATIONS:
        raise KeyError(f"unknown parametrization {which!r}; choose from {sorted(PARAMETRIZATIONS)}")
    pm = PARAMETRIZATIONS[which]
    entry = get_entry(pm["entry"])
    symbolic = params is None
    if symbolic:
        F = field_create(pm["p"], 1)
    elif params:
        F = next(iter(params.values())).field
    else:
        F = field_create(pm["p"], 1)
    identity = not _pullback(pm, entry, pm["maps"], F, params).terms
    unscaled = None
    if "unscaled" in pm:
        texts = dict(pm["maps"], **pm["unscaled"])
        unscaled = not _pullback(pm, entry, texts, F, params).terms
    rank_params = params
    if symbolic and entry.params:
        rank_params = default_parameters(entry)[0]
    rank_field = next(iter(rank_params.values())).field if rank_params else F
    rk = _basis_rank(pm, rank_field, rank_params if rank_params else {})
    return ParametrizationResult(which, identity, rk == len(pm["basis"]), rk, f"F_{rank_field.q}",
                                 symbolic, unscaled)
