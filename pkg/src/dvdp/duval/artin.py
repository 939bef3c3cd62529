"""ADE types with Artin coindices, and coindex detection by Tjurina matching."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from ..exactalg import PolyRing, field_create, poly_parse
from .local import LocalModel, tjurina_number
from .resolve import DEFAULT_MAX_DEPTH, resolve_dual_graph


class ClassificationError(ValueError):
    pass


_ADE_RE = re.compile(r"^([ADE])_?(\d+)(?:\^(\d+))?$")


@dataclass(frozen=True, order=True)
class ADEType:
    family: str
    n: int
    coindex: int | None = None

    def __post_init__(self):
        ok = (self.family == "A" and self.n >= 1) or (self.family == "D" and self.n >= 4) or \
             (self.family == "E" and self.n in (6, 7, 8))
        if not ok:
            raise ValueError(f"{self.family}_{self.n} is not a Dynkin diagram")
        if self.coindex is not None and (self.family == "A" or self.coindex < 0):
            raise ValueError(f"invalid coindex {self.coindex} for {self.family}_{self.n}")

    @property
    def rank(self):
        return self.n

    def base(self):
        return ADEType(self.family, self.n)

    def __str__(self):
        s = f"{self.family}_{self.n}"
        if self.coindex is not None:
            s += f"^{self.coindex}"
        return s

    @classmethod
    def parse(cls, text):
        m = _ADE_RE.match(text.strip())
        if not m:
            raise ValueError(f"cannot parse ADE type {text!r}")
        r = int(m.group(3)) if m.group(3) is not None else None
        return cls(m.group(1), int(m.group(2)), r)


def needs_coindex(p, family):
    return (p == 2 and family in ("D", "E")) or (p == 3 and family == "E")


@lru_cache(maxsize=None)
def artin_forms():
    """Records (p, family, n, r, equation text) from the bundled data file."""
    text = resources.files("dvdp.duval").joinpath("data/artin_forms.txt").read_text()
    out = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        head, eq = line.split(":", 1)
        p, fam, n, r = head.split()
        out.append((int(p), fam, int(n), int(r), eq.strip()))
    return tuple(out)


def artin_form(p, family, n, r):
    for rec in artin_forms():
        if rec[:4] == (p, family, n, r):
            return poly_parse(rec[4], PolyRing(field_create(p), ("x", "y", "z")), field_create(p))
    raise KeyError((p, family, n, r))


@lru_cache(maxsize=None)
def artin_tau_table(p):
    """(family, n, r) -> Tjurina number, computed from the bundled normal forms."""
    if p not in (2, 3):
        raise ValueError("Artin coindices are tabulated for p = 2 and p = 3 only")
    table = {}
    for q, fam, n, r, _ in artin_forms():
        if q != p:
            continue
        table[(fam, n, r)] = tjurina_number(LocalModel(artin_form(p, fam, n, r)))
    seen = {}
    for (fam, n, r), tau in table.items():
        other = seen.setdefault((fam, n, tau), r)
        if other != r:
            raise ClassificationError(f"{fam}_{n}^{other} and {fam}_{n}^{r} share tau={tau}")
    return dict(table)


@dataclass(frozen=True)
class Classification:
    ade: ADEType
    tau: int
    graph: object

    def to_json(self):
        return {"type": str(self.ade), "tjurina": self.tau, "dual_graph": self.graph.to_json()}


def classify(m, k_max=4, max_depth=DEFAULT_MAX_DEPTH):
    """Full classification record: ADE type (with coindex where needed), tau, dual graph."""
    tau = tjurina_number(m)
    graph = resolve_dual_graph(m, k_max=k_max, max_depth=max_depth)
    fam, n = graph.ade()
    p = m.field.p
    r = None
    if needs_coindex(p, fam):
        table = artin_tau_table(p)
        matches = [rr for (ff, nn, rr), t in table.items() if ff == fam and nn == n and t == tau]
        if not any(ff == fam and nn == n for (ff, nn, _) in table):
            raise ClassificationError(f"no Artin normal forms embedded for {fam}_{n} in p={p}")
        if len(matches) != 1:
            raise ClassificationError(f"tau={tau} matches no Artin normal form of {fam}_{n} in p={p}")
        r = matches[0]
    return Classification(ADEType(fam, n, r), tau, graph)


def classify_ade(m, k_max=4):
    return classify(m, k_max=k_max).ade
