"""Fedder's criterion for the surface models.

X = V(f) is F-split iff f^(p-1) is not in (x_1^p, ..., x_n^p).  That ideal is
monomial, so membership is a scan for a term with every exponent below p.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..exactalg.groebner import GREVLEX


@dataclass(frozen=True)
class FedderVerdict:
    fsplit: bool
    witness: tuple | None = None       # exponent vector
    variables: tuple = ()
    extension: bool = False            # complete-intersection variant

    def witness_str(self):
        if self.witness is None:
            return None
        parts = []
        for v, e in zip(self.variables, self.witness):
            if e == 1:
                parts.append(v)
            elif e > 1:
                parts.append(f"{v}^{e}")
        return "*".join(parts) or "1"

    def to_json(self):
        out = {"fsplit": self.fsplit, "witness": self.witness_str()}
        if self.extension:
            out["criterion"] = "complete-intersection extension (not covered by the hypersurface statement)"
        return out


def _scan(power, p):
    """First term, in descending grevlex order, with all exponents <= p-1."""
    for m in sorted(power.terms, key=GREVLEX.key, reverse=True):
        if all(e <= p - 1 for e in m):
            return m
    return None


def fedder_hypersurface(f, p=None):
    p = p or f.field.p
    if p != f.field.p:
        raise ValueError(f"p={p} differs from the characteristic {f.field.p}")
    w = _scan(f ** (p - 1), p)
    return FedderVerdict(w is not None, w, f.ring.vars)


def fedder_ci(q1, q2, p=None):
    p = p or q1.field.p
    if p != q1.field.p:
        raise ValueError(f"p={p} differs from the characteristic {q1.field.p}")
    w = _scan((q1 * q2) ** (p - 1), p)
    return FedderVerdict(w is not None, w, q1.ring.vars, extension=True)


def fedder(X):
    """Verdict for a SurfaceModel."""
    if X.kind == "ci":
        return fedder_ci(X.gens[0], X.gens[1])
    return fedder_hypersurface(X.gens[0])
