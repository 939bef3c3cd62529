"""Local equations at singular points and their Tjurina numbers."""

from __future__ import annotations

from dataclasses import dataclass

from ..exactalg import INFINITE, FieldElement, PolyRing, local_dimension


class LocalModelError(ValueError):
    pass


@dataclass(frozen=True)
class LocalModel:
    f: object           # Polynomial in three variables, singular point at the origin
    note: str = ""

    @property
    def field(self):
        return self.f.field

    @property
    def p(self):
        return self.f.field.p


def local_model(f, note=""):
    if f.ring.nvars != 3:
        raise LocalModelError(f"local model needs 3 variables, got {f.ring.vars}")
    if f.constant_coefficient():
        raise LocalModelError("local equation does not vanish at the origin")
    return LocalModel(f, note)


def _eliminate(q_solve, var, q_other, bound):
    """Solve q_solve = 0 for ``var`` as a power series and substitute into q_other.

    q_solve = c*var + (terms without the linear var part); the fixed point
    var = -(q_solve - c*var)/c converges one degree per step.
    """
    R = q_solve.ring
    F = R.field
    idx = R.index(var)
    unit = tuple(1 if j == idx else 0 for j in range(R.nvars))
    c = q_solve.terms[unit]
    rest = q_solve - R.monomial(unit, FieldElement(F, c))
    others = [v for v in R.vars if v != var]
    S = PolyRing(F, others)
    images = {v: S.var(v) for v in others}
    factor = FieldElement(F, F.neg(F.inv(c)))
    sol = S.zero()
    for _ in range(bound + 1):
        images[var] = sol
        new = rest.substitute(images, S).truncate(bound + 1).scale(factor)
        if new == sol:
            break
        sol = new
    images[var] = sol
    return q_other.substitute(images, S).truncate(bound + 1)


def local_equation(X, sp, bound=None):
    """Local equation at a singular point, translated to the origin.

    For complete intersections one variable is eliminated through a generator
    with a nonzero linear part; the result is a power series truncated at a
    degree past the finite-determinacy bound 2*tau.
    """
    ch = sp.chart
    polys = [g.translate(sp.coords) for g in ch.local_polys]
    if len(polys) == 1:
        return local_model(polys[0], note=f"chart {ch.chart_var}=1")
    R = polys[0].ring
    for a, b in ((0, 1), (1, 0)):
        q = polys[a]
        lin = q.homogeneous_part(1)
        if lin.terms:
            var = next(v for v in R.vars if lin.terms.get(tuple(1 if u == v else 0 for u in R.vars)))
            other = polys[b]
            N = bound or 8
            while True:
                g = _eliminate(q, var, other, N)
                if g.homogeneous_part(1).terms:
                    raise LocalModelError("point is smooth on the complete intersection")
                tau = tjurina_number(LocalModel(g))
                if bound is not None or N >= 2 * tau + 2:
                    return local_model(g, note=f"chart {ch.chart_var}=1, eliminated {var} to degree {N}")
                N = 2 * tau + 2
    raise LocalModelError("no generator has a linear part: embedding dimension 4, not a hypersurface singularity")


def tjurina_ideal(f):
    return [f] + [f.derivative(v) for v in f.ring.vars]


def tjurina_number(m):
    f = m.f if isinstance(m, LocalModel) else m
    tau = local_dimension(tjurina_ideal(f))
    if tau == INFINITE:
        raise LocalModelError("singularity is not isolated (infinite Tjurina number)")
    return tau
