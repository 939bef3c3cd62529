"""Row reduction over a FiniteField.  Rows are sparse dicts {column: code}."""

from __future__ import annotations


def echelon(F, rows):
    """Reduced row echelon form; returns (pivot columns, rows) with monic pivots."""
    pivots = {}   # column -> row
    for row in rows:
        r = {c: v for c, v in row.items() if v}
        # pivot rows are fully reduced, so one pass clears every pivot column
        for c in [c for c in r if c in pivots]:
            f = F.neg(r[c])
            for cc, vv in pivots[c].items():
                s = F.add(r.get(cc, 0), F.mul(f, vv))
                if s:
                    r[cc] = s
                else:
                    r.pop(cc, None)
        if not r:
            continue
        lead = min(r)
        inv = F.inv(r[lead])
        r = {c: F.mul(v, inv) for c, v in r.items()}
        for c, prow in pivots.items():
            if lead in prow:
                f = F.neg(prow[lead])
                for cc, vv in r.items():
                    s = F.add(prow.get(cc, 0), F.mul(f, vv))
                    if s:
                        prow[cc] = s
                    else:
                        prow.pop(cc, None)
        pivots[lead] = r
    cols = sorted(pivots)
    return cols, [pivots[c] for c in cols]


def rank(F, rows, ncols=None):
    return len(echelon(F, rows)[0])


def nullspace(F, rows, ncols):
    """Basis of {v : row . v = 0 for every row} as dense lists of codes."""
    cols, red = echelon(F, rows)
    free = [c for c in range(ncols) if c not in set(cols)]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for pc, row in zip(cols, red):
            v[pc] = F.neg(row.get(fc, 0))
        basis.append(v)
    return basis
