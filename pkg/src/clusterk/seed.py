"""Quantum seeds: compatible pairs (L, B), mutation, and seed bookkeeping.

A seed holds the current skew form L, the current exchange matrix B
(rows indexed by all variables, columns by the mutable prefix), display
labels, and the cluster variables as elements of a fixed ambient quantum
torus (the torus of the initial seed).  Mutation follows the standard
quantum exchange rule: the new variable is the two-term normalized
binomial in the current cluster, computed inside the ambient torus by an
exact division.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .intlinalg import mat_mul, mat_transpose, rank, reduce_mod_lattice, solve_diophantine
from .qtorus import (
    QuantumScalar,
    SkewForm,
    TorusElement,
    divide_exact,
)


class MutationError(ValueError):
    """Raised for invalid mutation requests (bad or frozen index)."""


class IncompatibleSeedError(ValueError):
    """Raised when the two signs of the L-mutation disagree."""


class RankError(ValueError):
    """Raised when an exchange matrix is too degenerate to complete."""


def _pos(x: int) -> int:
    return x if x > 0 else 0


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


class ExchangeMatrix:
    """Integer n x m exchange matrix; mutable directions are the first m."""

    __slots__ = ("rank", "mutable_count", "entries")

    def __init__(self, entries: Sequence[Sequence[int]], mutable_count: int | None = None):
        rows = tuple(tuple(int(x) for x in row) for row in entries)
        n = len(rows)
        m = len(rows[0]) if rows else 0
        if any(len(r) != m for r in rows):
            raise ValueError("ragged exchange matrix")
        if mutable_count is None:
            mutable_count = m
        if mutable_count != m or m > n:
            raise ValueError("columns must index the mutable prefix")
        # the principal block must be skew-symmetrizable; everything this
        # package builds is in fact skew-symmetric
        d = _skew_symmetrizer(rows, m)
        if d is None:
            raise ValueError("principal block is not skew-symmetrizable")
        self.rank = n
        self.mutable_count = m
        self.entries = rows

    def principal_block(self) -> list[list[int]]:
        return [list(self.entries[i][:self.mutable_count]) for i in range(self.mutable_count)]

    def column(self, k: int) -> tuple[int, ...]:
        return tuple(self.entries[i][k] for i in range(self.rank))

    def mutate(self, k: int) -> "ExchangeMatrix":
        n, m, b = self.rank, self.mutable_count, self.entries
        new = []
        for i in range(n):
            row = []
            for j in range(m):
                if i == k or j == k:
                    row.append(-b[i][j])
                else:
                    row.append(b[i][j] + _sign(b[i][k]) * _pos(b[i][k] * b[k][j]))
            new.append(row)
        return ExchangeMatrix(new, m)

    def __eq__(self, other):
        return (
            isinstance(other, ExchangeMatrix)
            and self.entries == other.entries
            and self.mutable_count == other.mutable_count
        )

    def __hash__(self):
        return hash((self.entries, self.mutable_count))

    def __repr__(self):
        return f"ExchangeMatrix({list(map(list, self.entries))})"


def _skew_symmetrizer(rows, m) -> Optional[list[int]]:
    """Positive diagonal d with d_i b_ij = -d_j b_ji on the principal block."""
    from fractions import Fraction

    d = [None] * m
    for start in range(m):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(m):
                bij, bji = rows[i][j], rows[j][i]
                if bij == 0 and bji == 0:
                    continue
                if bij == 0 or bji == 0 or _sign(bij) == _sign(bji):
                    return None
                val = d[i] * Fraction(-bij, bji)
                if d[j] is None:
                    d[j] = val
                    stack.append(j)
                elif d[j] != val:
                    return None
    scale = 1
    for x in d:
        scale = scale * x.denominator // _gcd(scale, x.denominator)
    out = [int(x * scale) for x in d]
    if any(x <= 0 for x in out):
        return None
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


@dataclass(frozen=True)
class CompatibilityReport:
    ok: bool
    d: Optional[int]


class QuantumSeed:
    """A quantum seed: current (L, B), labels, and ambient cluster variables."""

    __slots__ = ("form", "exchange", "labels", "variables")

    def __init__(
        self,
        form: SkewForm,
        exchange: ExchangeMatrix,
        labels: Sequence[str],
        variables: Sequence[TorusElement] | None = None,
    ):
        n = exchange.rank
        if form.rank != n:
            raise ValueError("form and exchange matrix rank disagree")
        if len(labels) != n:
            raise ValueError("need one label per variable")
        if variables is None:
            variables = [TorusElement.generator(form, i) for i in range(n)]
        variables = tuple(variables)
        if len(variables) != n:
            raise ValueError("need one variable per index")
        ambient = variables[0].form
        if any(v.form != ambient for v in variables):
            raise ValueError("variables live over different ambient tori")
        self.form = form
        self.exchange = exchange
        self.labels = tuple(str(x) for x in labels)
        self.variables = variables

    @property
    def rank(self) -> int:
        return self.exchange.rank

    @property
    def mutable_count(self) -> int:
        return self.exchange.mutable_count

    @property
    def ambient(self) -> SkewForm:
        return self.variables[0].form

    def frozen_indices(self) -> range:
        return range(self.mutable_count, self.rank)

    def __repr__(self):
        return f"QuantumSeed(labels={list(self.labels)})"


def check_compatibility(seed_or_pair, exchange: ExchangeMatrix | None = None) -> CompatibilityReport:
    """Check B^T L = (d I | 0) exactly and report d.

    Accepts either a QuantumSeed or an explicit (SkewForm, ExchangeMatrix)
    pair.  Failure is a report, never an exception.
    """
    if exchange is None:
        form, exchange = seed_or_pair.form, seed_or_pair.exchange
    else:
        form = seed_or_pair
    b = [list(row) for row in exchange.entries]
    lam = [list(row) for row in form.entries]
    prod = mat_mul(mat_transpose(b), lam)
    m, n = exchange.mutable_count, exchange.rank
    d = prod[0][0] if m else None
    if not d:
        return CompatibilityReport(False, None)
    for i in range(m):
        for j in range(n):
            want = d if i == j else 0
            if prod[i][j] != want:
                return CompatibilityReport(False, None)
    return CompatibilityReport(True, d)


def _lambda_mutation(form: SkewForm, exchange: ExchangeMatrix, k: int, eps: int) -> list[list[int]]:
    n = form.rank
    e = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n):
        e[i][k] = -1 if i == k else _pos(-eps * exchange.entries[i][k])
    lam = [list(row) for row in form.entries]
    return mat_mul(mat_transpose(e), mat_mul(lam, e))


def exchange_binomial(seed: QuantumSeed, k: int) -> TorusElement:
    """The two-monomial right side of the exchange relation at direction k,
    written over the ambient torus."""
    _validate_direction(seed, k)
    n = seed.rank
    col = seed.exchange.column(k)
    up = [-1 if i == k else _pos(col[i]) for i in range(n)]
    down = [-1 if i == k else _pos(-col[i]) for i in range(n)]
    amb = seed.ambient
    return TorusElement.monomial(amb, up) + TorusElement.monomial(amb, down)


def _validate_direction(seed: QuantumSeed, k: int):
    if not isinstance(k, int) or not 0 <= k < seed.rank:
        raise MutationError(f"direction {k} out of range for rank {seed.rank}")
    if k >= seed.mutable_count:
        raise MutationError(f"direction {k} is frozen")


def _normalized_cluster_monomial(seed: QuantumSeed, exponents: Sequence[int]) -> TorusElement:
    """The bar-normalized monomial in the current cluster variables, as an
    ambient torus element.  Exponents must be nonnegative."""
    prod = TorusElement.one(seed.ambient)
    for i, c in enumerate(exponents):
        for _ in range(c):
            prod = prod * seed.variables[i]
    lam = seed.form.entries
    norm = 0
    for i in range(len(exponents)):
        for j in range(i + 1, len(exponents)):
            norm += exponents[i] * exponents[j] * lam[i][j]
    return prod.shift_v(-norm)


def mutate(seed: QuantumSeed, k: int) -> QuantumSeed:
    """Mutation at direction k (0-based, mutable).

    B mutates by the standard rule; L by E^T L E, with the two sign
    choices of E required to agree; the cluster variable at k is replaced
    using the exchange binomial, evaluated in the ambient torus.
    """
    _validate_direction(seed, k)
    lam_plus = _lambda_mutation(seed.form, seed.exchange, k, +1)
    lam_minus = _lambda_mutation(seed.form, seed.exchange, k, -1)
    if lam_plus != lam_minus:
        raise IncompatibleSeedError(
            "L-mutation is sign-dependent; the pair (L, B) is not compatible"
        )
    new_form = SkewForm(lam_plus)
    new_exchange = seed.exchange.mutate(k)

    n = seed.rank
    col = seed.exchange.column(k)
    c_up = [_pos(col[i]) if i != k else 0 for i in range(n)]
    c_down = [_pos(-col[i]) if i != k else 0 for i in range(n)]
    e_k = [1 if i == k else 0 for i in range(n)]
    pairing = seed.form.pairing
    num = (
        _normalized_cluster_monomial(seed, c_up).shift_v(pairing(tuple(c_up), tuple(e_k)))
        + _normalized_cluster_monomial(seed, c_down).shift_v(pairing(tuple(c_down), tuple(e_k)))
    )
    new_var = divide_exact(num, seed.variables[k], side="right")

    variables = list(seed.variables)
    variables[k] = new_var
    labels = list(seed.labels)
    labels[k] = labels[k] + "'" if not labels[k].endswith("'") else labels[k][:-1]
    return QuantumSeed(new_form, new_exchange, labels, variables)


def canonical_form(seed: QuantumSeed) -> tuple:
    """Key invariant under simultaneous permutation of the mutable indices.

    Minimizes the serialized (B, L, variables) triple over all m!
    relabelings; frozen indices stay fixed.  Labels are display-only and
    do not enter the key.
    """
    from itertools import permutations

    n, m = seed.rank, seed.mutable_count
    b = seed.exchange.entries
    lam = seed.form.entries
    best = None
    for perm in permutations(range(m)):
        full = list(perm) + list(range(m, n))
        b_p = tuple(tuple(b[full[i]][perm[j]] for j in range(m)) for i in range(n))
        lam_p = tuple(tuple(lam[full[i]][full[j]] for j in range(n)) for i in range(n))
        vars_p = tuple(seed.variables[full[i]].key() for i in range(n))
        cand = (b_p, lam_p, vars_p)
        if best is None or cand < best:
            best = cand
    return best


# -- the GL_n quiver ---------------------------------------------------------


def gln_quiver_labels(n: int) -> list[str]:
    """Vertex order: (P_{1,1}, P_{1,0}, ..., P_{n-1,1}, P_{n-1,0}, P_{n,0}, P_{0,det})."""
    labels = []
    for k in range(1, n):
        labels.append(f"P_{{{k},1}}")
        labels.append(f"P_{{{k},0}}")
    labels.append(f"P_{{{n},0}}")
    labels.append("P_{0,det}")
    return labels


def build_quiver_gln(n: int) -> ExchangeMatrix:
    """Exchange matrix of the 2n-vertex (one frozen) GL_n quiver.

    Arrows: double arrows P_{k,1} => P_{k,0} for k <= n-1; P_{k,0} ->
    P_{k+1,1} for k <= n-2; P_{k+1,0} -> P_{k,1} for k <= n-1 (reading
    P_{n,0} -> P_{n-1,1} at the top end); P_{n-1,0} -> P_{n,0};
    P_{n-1,0} -> P_{0,det}; P_{0,det} -> P_{n,0}.
    """
    if n < 2:
        raise ValueError("the quiver is defined for n >= 2")
    labels = gln_quiver_labels(n)
    index = {lab: i for i, lab in enumerate(labels)}

    def p(k, l):
        return index[f"P_{{{k},{l}}}"]

    det = index["P_{0,det}"]
    total = 2 * n
    mutable = 2 * n - 1
    arrows: list[tuple[int, int, int]] = []
    for k in range(1, n):
        arrows.append((p(k, 1), p(k, 0), 2))
    for k in range(1, n - 1):
        arrows.append((p(k, 0), p(k + 1, 1), 1))
    for k in range(1, n):
        arrows.append((p(k + 1, 0), p(k, 1), 1))
    arrows.append((p(n - 1, 0), p(n, 0), 1))
    arrows.append((p(n - 1, 0), det, 1))
    arrows.append((det, p(n, 0), 1))

    b = [[0] * mutable for _ in range(total)]
    for src, dst, mult in arrows:
        if dst < mutable:
            b[src][dst] += mult
        if src < mutable:
            b[dst][src] -= mult
    return ExchangeMatrix(b, mutable)


# -- completing L from B -----------------------------------------------------


def complete_lambda(exchange: ExchangeMatrix, d: int) -> Optional[SkewForm]:
    """Find a skew-symmetric integer L with B^T L = (d I | 0), or None.

    The solution, when the lattice of solutions is positive-dimensional,
    is made deterministic by reducing a particular solution modulo a
    Hermite basis of the homogeneous lattice.
    """
    if d == 0:
        raise ValueError("d must be nonzero")
    n, m = exchange.rank, exchange.mutable_count
    b = [list(row) for row in exchange.entries]
    if any(all(b[i][j] == 0 for i in range(n)) for j in range(m)):
        return None
    if rank(b) < m:
        raise RankError("exchange matrix does not have full column rank")

    # unknowns: lambda_{ij} for i < j, in lexicographic order
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    pos = {p: t for t, p in enumerate(pairs)}

    rows = []
    rhs = []
    for j in range(m):  # row j of B^T L
        for c in range(n):
            coeff = [0] * len(pairs)
            for i in range(n):
                if b[i][j] == 0 or i == c:
                    continue
                if i < c:
                    coeff[pos[(i, c)]] += b[i][j]
                else:
                    coeff[pos[(c, i)]] -= b[i][j]
            rows.append(coeff)
            rhs.append(d if j == c else 0)

    sol = solve_diophantine(rows, rhs)
    if sol is None:
        return None
    x, kernel = sol
    x = reduce_mod_lattice(x, kernel)
    lam = [[0] * n for _ in range(n)]
    for (i, j), t in pos.items():
        lam[i][j] = x[t]
        lam[j][i] = -x[t]
    return SkewForm(lam)
