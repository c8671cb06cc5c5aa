"""Sparse exact linear algebra over any field whose elements support
``+ - * /`` and truthiness (QScalar, CycloScalar, Fraction)."""

from __future__ import annotations


def rref(rows, columns):
    """Row-reduce sparse rows (dicts column -> value).

    ``columns`` fixes the pivot preference: earlier columns become pivots
    first.  Returns ``(pivot_rows, pivots)`` where ``pivot_rows[c]`` is the
    reduced row whose pivot is column ``c`` (pivot entry 1, zero in every
    other pivot column).
    """
    rank = {c: k for k, c in enumerate(columns)}
    basis: dict = {}
    for row in rows:
        r = {c: v for c, v in row.items() if v}
        # eliminate every existing pivot column
        while True:
            hits = [c for c in r if c in basis]
            if not hits:
                break
            lead = hits[0]
            piv = basis[lead]
            f = r[lead]
            for c, v in piv.items():
                nv = r.get(c)
                nv = -f * v if nv is None else nv - f * v
                if nv:
                    r[c] = nv
                else:
                    r.pop(c, None)
        if not r:
            continue
        lead = min(r, key=rank.__getitem__)
        inv = 1 / r[lead]
        r = {c: v * inv for c, v in r.items()}
        # back-substitute into older pivot rows
        for c0, prow in basis.items():
            f = prow.get(lead)
            if f:
                for c, v in r.items():
                    nv = prow.get(c)
                    nv = -f * v if nv is None else nv - f * v
                    if nv:
                        prow[c] = nv
                    else:
                        prow.pop(c, None)
        basis[lead] = r
    return basis, [c for c in columns if c in basis]


def rank(rows, columns) -> int:
    return len(rref(rows, columns)[0])


def inverse(matrix):
    """Inverse of a square dense matrix given as a list of lists."""
    n = len(matrix)
    rows = []
    for i, row in enumerate(matrix):
        r = {("a", j): v for j, v in enumerate(row) if v}
        r[("b", i)] = 1
        rows.append(r)
    cols = [("a", j) for j in range(n)] + [("b", j) for j in range(n)]
    basis, pivots = rref(rows, cols)
    if len(pivots) < n or any(p[0] != "a" for p in pivots):
        raise ArithmeticError("singular matrix")
    out = [[0] * n for _ in range(n)]
    for j in range(n):
        for c, v in basis[("a", j)].items():
            if c[0] == "b":
                out[j][c[1]] = v
    return out


def kernel(rows, columns):
    """Basis of {x : sum_c row[c] x[c] = 0 for every row} as dicts."""
    basis, pivots = rref(rows, columns)
    free = [c for c in columns if c not in basis]
    out = []
    for fcol in free:
        vec = {fcol: 1}
        for p in pivots:
            v = basis[p].get(fcol)
            if v:
                vec[p] = -v
        out.append(vec)
    return out
