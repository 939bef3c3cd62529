"""Dynkin types of surfaces: multisets of ADE components."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass

from ..duval.artin import ADEType

_TERM_RE = re.compile(r"^(\d*)([ADE])_?(\d+)(?:\^(\d+))?$")


@dataclass(frozen=True)
class DynkinType:
    components: tuple = ()      # sorted ADEType tuple, repeated entries for multiplicity

    def __post_init__(self):
        key = lambda t: (t.family, t.n, -1 if t.coindex is None else t.coindex)
        object.__setattr__(self, "components", tuple(sorted(self.components, key=key)))

    @classmethod
    def of(cls, types):
        return cls(tuple(types))

    @classmethod
    def parse(cls, text):
        text = text.replace(" ", "")
        if text in ("", "0", "-", "smooth"):
            return cls(())
        comps = []
        for term in text.split("+"):
            m = _TERM_RE.match(term)
            if not m:
                raise ValueError(f"cannot parse Dynkin term {term!r} in {text!r}")
            mult = int(m.group(1)) if m.group(1) else 1
            if mult < 1:
                raise ValueError(f"multiplicity must be positive in {term!r}")
            r = int(m.group(4)) if m.group(4) is not None else None
            comps.extend([ADEType(m.group(2), int(m.group(3)), r)] * mult)
        return cls(tuple(comps))

    @property
    def rank(self):
        return sum(t.rank for t in self.components)

    @property
    def has_coindices(self):
        return any(t.coindex is not None for t in self.components)

    def base(self):
        return DynkinType(tuple(t.base() for t in self.components))

    def counter(self):
        return Counter(self.components)

    def matches(self, expected):
        """Equality, ignoring coindices unless ``expected`` records them."""
        if expected.has_coindices:
            return self.counter() == expected.counter()
        return self.base().counter() == expected.counter()

    def __str__(self):
        if not self.components:
            return "smooth"
        parts = []
        seen = []
        counts = Counter(self.components)
        for t in self.components:
            if t in seen:
                continue
            seen.append(t)
            n = counts[t]
            parts.append(f"{n if n > 1 else ''}{t}")
        return "+".join(parts)


def dynkin_parse(text):
    return DynkinType.parse(text)


def dynkin_rank(t):
    if isinstance(t, str):
        t = DynkinType.parse(t)
    return t.rank
