"""Exact integer linear algebra: Smith normal form and Diophantine solving.

Everything here works on plain lists of Python ints, so there is no
overflow and no floating point.  Sizes are tiny (the compatibility
systems solved elsewhere are at most a few hundred unknowns), so the
classical SNF algorithm is more than fast enough.
"""

from __future__ import annotations


def identity_matrix(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        ai = a[i]
        for k in range(inner):
            aik = ai[k]
            if aik == 0:
                continue
            bk = b[k]
            oi = out[i]
            for j in range(cols):
                oi[j] += aik * bk[j]
    return out


def mat_transpose(a: list[list[int]]) -> list[list[int]]:
    return [list(col) for col in zip(*a)] if a else []


def rank(a: list[list[int]]) -> int:
    """Rank over the rationals, by fraction-free Gaussian elimination."""
    m = [row[:] for row in a]
    if not m:
        return 0
    rows, cols = len(m), len(m[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, rows):
            if m[i][c] != 0:
                f, g = m[r][c], m[i][c]
                m[i] = [f * m[i][j] - g * m[r][j] for j in range(cols)]
        r += 1
        if r == rows:
            break
    return r


def smith_normal_form(
    a: list[list[int]],
) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return (u, s, v) with u*a*v = s diagonal and u, v unimodular."""
    s = [row[:] for row in a]
    rows = len(s)
    cols = len(s[0]) if rows else 0
    u = identity_matrix(rows)
    v = identity_matrix(cols)

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):
        s[dst] = [x + f * y for x, y in zip(s[dst], s[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, f):
        for row in s:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    def negate_row(i):
        s[i] = [-x for x in s[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(rows, cols):
        # find a pivot of minimal absolute value in the remaining block
        piv = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = abs(s[i][j])
                if x and (best is None or x < best):
                    piv, best = (i, j), x
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, rows):
                if s[i][t]:
                    q = s[i][t] // s[t][t]
                    add_row(t, i, -q)
                    if s[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, cols):
                if s[t][j]:
                    q = s[t][j] // s[t][t]
                    add_col(t, j, -q)
                    if s[t][j]:
                        swap_cols(t, j)
                        dirty = True
        if s[t][t] < 0:
            negate_row(t)
        # enforce divisibility of later entries by the pivot
        bad = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if s[i][j] % s[t][t]:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            add_row(bad, t, 1)
            continue
        t += 1
    return u, s, v


def solve_diophantine(
    a: list[list[int]], b: list[int]
) -> tuple[list[int], list[list[int]]] | None:
    """Solve a*x = b over the integers.

    Returns (particular solution, basis of the homogeneous solution
    lattice) or None when no integer solution exists.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if rows == 0:
        return [0] * cols, identity_matrix(cols)
    u, s, v = smith_normal_form(a)
    ub = [sum(u[i][j] * b[j] for j in range(rows)) for i in range(rows)]
    z = [0] * cols
    free = []
    for i in range(cols):
        d = s[i][i] if i < rows else 0
        if d == 0:
            if i < rows and ub[i] != 0:
                return None
            free.append(i)
        else:
            if ub[i] % d:
                return None
            z[i] = ub[i] // d
    for i in range(cols, rows):
        if ub[i] != 0:
            return None
    x = [sum(v[i][j] * z[j] for j in range(cols)) for i in range(cols)]
    kernel = [[v[i][j] for i in range(cols)] for j in free]
    return x, kernel


def hermite_reduce(basis: list[list[int]]) -> list[list[int]]:
    """Row-style Hermite form of a lattice basis (pivots positive)."""
    rows = [row[:] for row in basis if any(row)]
    if not rows:
        return []
    cols = len(rows[0])
    out: list[list[int]] = []
    for c in range(cols):
        while True:
            live = [i for i in range(len(rows)) if rows[i][c] != 0]
            if len(live) <= 1:
                break
            live.sort(key=lambda i: abs(rows[i][c]))
            i0 = live[0]
            for i in live[1:]:
                q = rows[i][c] // rows[i0][c]
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[i0])]
            rows = [row for row in rows if any(row)]
        live = [i for i in range(len(rows)) if rows[i][c] != 0]
        if not live:
            continue
        pivot = rows.pop(live[0])
        if pivot[c] < 0:
            pivot = [-x for x in pivot]
        # clear this column in previously fixed rows
        for prev in out:
            q = prev[c] // pivot[c]
            if q:
                for j in range(cols):
                    prev[j] -= q * pivot[j]
        out.append(pivot)
    return out


def reduce_mod_lattice(x: list[int], basis: list[list[int]]) -> list[int]:
    """Canonical representative of x modulo the lattice spanned by basis."""
    h = hermite_reduce(basis)
    x = x[:]
    for row in h:
        c = next(j for j, val in enumerate(row) if val)
        q = x[c] // row[c]
        if q:
            x = [xi - q * ri for xi, ri in zip(x, row)]
    return x
