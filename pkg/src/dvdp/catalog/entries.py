"""Catalog of explicit surfaces and the Picard-rank-one type registry."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from itertools import product

from ..exactalg import FieldElement, PolyRing, field_create, poly_parse
from ..exactalg.poly import ParseError
from ..wvariety import SurfaceError, surface_create
from .dynkin import DynkinType

PARAM_NAMES = ("a", "b", "c")
DOMAIN_ARITY = {"D1": 2, "D2": 3}
# smallest extension degree over F_2 on which the domain has points
DOMAIN_MIN_DEGREE = {"D1": 2, "D2": 3}


class CatalogError(ValueError):
    pass


_CONSTRAINT_RE = re.compile(r"^p(=|>)([\d,\s]+)$")


def constraint_holds(constraint, p):
    m = _CONSTRAINT_RE.match(constraint.replace(" ", ""))
    if not m:
        raise CatalogError(f"bad characteristic constraint {constraint!r}")
    if m.group(1) == "=":
        return p in {int(v) for v in m.group(2).split(",") if v}
    return p > int(m.group(2))


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    p_constraint: str
    degree: int
    weights: tuple | None
    equations: tuple            # equation template strings, () for registry rows
    domain: str | None          # "D1", "D2" or None
    expected_dynkin: DynkinType | None
    expected_fsplit: bool | None
    source: str
    classes: float | int | None = None   # registry rows only

    @property
    def is_registry(self):
        return not self.equations

    @property
    def kind(self):
        return "ci" if len(self.equations) == 2 else "hypersurface"

    @property
    def p(self):
        m = _CONSTRAINT_RE.match(self.p_constraint.replace(" ", ""))
        vals = [int(v) for v in m.group(2).split(",") if v]
        if m.group(1) != "=" or len(vals) != 1:
            raise CatalogError(f"{self.id}: no single characteristic")
        return vals[0]

    @property
    def params(self):
        return PARAM_NAMES[:DOMAIN_ARITY[self.domain]] if self.domain else ()

    def to_json(self):
        out = {
            "id": self.id,
            "p": self.p_constraint,
            "degree": self.degree,
            "source": self.source,
        }
        if self.is_registry:
            out["classes"] = "inf" if self.classes == math.inf else self.classes
            out["type"] = str(self.expected_dynkin)
            return out
        out.update(
            weights=list(self.weights),
            equations=list(self.equations),
            domain=self.domain,
            expected_dynkin=str(self.expected_dynkin) if self.expected_dynkin else None,
            expected_fsplit=self.expected_fsplit,
        )
        return out


def _none(s):
    return None if s in ("-", "") else s


def _parse_line(line):
    fields = [f.strip() for f in line.split("|")]
    if len(fields) != 9:
        raise CatalogError(f"expected 9 fields, got {len(fields)}: {line!r}")
    ident, pc, deg, wts, eq, dom, dyn, fs, src = fields
    constraint_holds(pc, 2)
    weights = tuple(int(w) for w in wts.split(",")) if _none(wts) else None
    eqs = tuple(e.strip() for e in eq.split(";")) if _none(eq) else ()
    fsplit = {"-": None, "yes": True, "no": False}[fs]
    dynkin = DynkinType.parse(dyn) if _none(dyn) else None
    classes = None
    domain = None
    if eqs:
        domain = _none(dom)
        if domain is not None and domain not in DOMAIN_ARITY:
            raise CatalogError(f"{ident}: unknown parameter domain {domain!r}")
    else:
        classes = math.inf if dom == "inf" else int(dom)
    return CatalogEntry(ident, pc, int(deg), weights, eqs, domain, dynkin, fsplit, src, classes)


def _validate(e):
    if e.is_registry:
        if e.expected_dynkin is None or e.expected_dynkin.rank != 9 - e.degree:
            raise CatalogError(f"{e.id}: registry degree does not match 9 - rank")
        return
    try:
        p = e.p
        if e.domain and p != 2:
            raise CatalogError(f"{e.id}: parameter domains are defined in characteristic 2")
        build_surface(e, default_parameters(e)[0] if e.domain else None)
    except (SurfaceError, ParseError) as exc:
        raise CatalogError(f"{e.id}: {exc}") from exc


def _read_default():
    return resources.files("dvdp.catalog").joinpath("data/catalog.txt").read_text()


def parse_catalog(text):
    entries = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        entries.append(_parse_line(line))
    ids = [e.id for e in entries]
    dup = sorted({i for i in ids if ids.count(i) > 1})
    if dup:
        raise CatalogError(f"duplicate catalog ids: {dup}")
    for e in entries:
        _validate(e)
    return tuple(entries)


@lru_cache(maxsize=None)
def _load(path=None):
    if path is None:
        return parse_catalog(_read_default())
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CatalogError(f"cannot read catalog {path}: {exc}") from exc
    return parse_catalog(text)


def load_catalog(path=None):
    """Entries from the bundled catalog, or from ``path`` in the same format."""
    return list(_load(path))


def get_entry(ident, path=None):
    for e in _load(path):
        if e.id == ident:
            return e
    raise CatalogError(f"no catalog entry {ident!r}")


def registry():
    return [e for e in _load() if e.is_registry]


def registry_contains(dynkin, p):
    """Whether the type (coindices ignored) is a listed Picard-rank-one type in characteristic p."""
    base = dynkin.base()
    return any(e.expected_dynkin.counter() == base.counter() and constraint_holds(e.p_constraint, p)
               for e in registry())


# ---------------------------------------------------------------------------
# parameters
# ---------------------------------------------------------------------------


def _domain_forms(F, values):
    if len(values) == 2:
        a, b = values
        return [a, b, F.add(a, b)]
    a, b, c = values
    return [a, b, c, F.add(a, b), F.add(b, c), F.add(c, a), F.add(F.add(a, b), c)]


def _codes(values):
    F = None
    out = []
    for v in values:
        if isinstance(v, FieldElement):
            if F is not None and v.field is not F:
                raise CatalogError("parameters from different fields")
            F = v.field
            out.append(v.code)
        else:
            out.append(int(v))
    return F, out


def parameter_domain_check(entry, values, field=None):
    """Membership in D1 (a, b, a+b nonzero) or D2 (all seven F_2-hyperplane forms nonzero)."""
    domain = entry if isinstance(entry, str) else entry.domain
    if domain not in DOMAIN_ARITY:
        raise CatalogError("entry has no parameter domain")
    if isinstance(values, dict):
        values = [values[n] for n in PARAM_NAMES[:DOMAIN_ARITY[domain]]]
    F, codes = _codes(values)
    F = F or field
    if F is None:
        raise CatalogError("parameter field unknown")
    if len(codes) != DOMAIN_ARITY[domain]:
        raise CatalogError(f"{domain} takes {DOMAIN_ARITY[domain]} parameters, got {len(codes)}")
    return all(_domain_forms(F, codes))


def default_parameters(entry, count=1):
    """Deterministic sample of domain points, normalized with a = 1.

    Points are drawn evenly spaced (in code order) from F_{2^k} for the
    smallest k where the domain is nonempty and from the larger fields up to
    F_16, interleaved so successive samples come from different fields.
    """
    if not entry.domain:
        return [None]
    n = DOMAIN_ARITY[entry.domain]
    picks = []
    for k in range(DOMAIN_MIN_DEGREE[entry.domain], 5):
        F = field_create(2, k)
        pts = [(1,) + rest for rest in product(range(1, F.q), repeat=n - 1)
               if parameter_domain_check(entry.domain, (1,) + rest, F)]
        step = max(1, len(pts) // count)
        picks.append([tuple(FieldElement(F, v) for v in pt) for pt in pts[::step]])
    out = []
    for row in range(count):
        for pool in picks:
            if row < len(pool) and len(out) < count:
                out.append(dict(zip(PARAM_NAMES, pool[row])))
    return out


def parse_parameters(entry, text, field):
    """``a=1,b=g^2`` with values written as polynomials in the generator g of ``field``."""
    out = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise CatalogError(f"bad parameter assignment {part!r}")
        name, val = (s.strip() for s in part.split("=", 1))
        if name not in entry.params:
            raise CatalogError(f"{entry.id} has no parameter {name!r}")
        try:
            poly = poly_parse(val, PolyRing(field, ("t",)), field)
        except ParseError as exc:
            raise CatalogError(f"bad value for {name}: {exc}") from exc
        if poly.degree() > 0:
            raise CatalogError(f"value for {name} is not a constant")
        out[name] = FieldElement(field, poly.constant_coefficient())
    missing = [n for n in entry.params if n not in out]
    if missing:
        raise CatalogError(f"missing parameters {missing}")
    return out


def build_surface(entry, params=None, field=None):
    """SurfaceModel for an equation-bearing entry (parameters substituted)."""
    if entry.is_registry:
        raise CatalogError(f"{entry.id} is a registry row without an equation")
    p = entry.p
    if entry.domain:
        if not params:
            raise CatalogError(f"{entry.id} needs parameters {entry.params}")
        F = next(iter(params.values())).field
        if not parameter_domain_check(entry, params):
            raise CatalogError(f"{entry.id}: parameters outside {entry.domain}")
    else:
        F = field or field_create(p, 1)
    kind = entry.kind
    if kind == "ci":
        vars_ = ("x0", "x1", "x2", "x3", "x4")
    else:
        vars_ = ("x", "y", "z", "w")
    polys = []
    if entry.domain:
        big = PolyRing(F, entry.params + vars_)
        small = PolyRing(F, vars_)
        images = {v: small.var(v) for v in vars_}
        for name in entry.params:
            images[name] = small.const(params[name])
        for eq in entry.equations:
            polys.append(poly_parse(eq, big, F).substitute(images, small))
    else:
        R = PolyRing(F, vars_)
        polys = [poly_parse(eq, R, F) for eq in entry.equations]
    weights = entry.weights if kind == "hypersurface" else None
    return surface_create(kind, F, polys, weights, vars_)
