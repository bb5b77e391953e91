"""Dominant pairs: canonical W-orbit representatives in P^dual x P for GL_n.

A pair of integer n-vectors (lam, mu) is dominant when lam is weakly
decreasing and mu is weakly decreasing on every constant block of lam.
These index the simple objects, up to loop and Koszul shifts.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterator, Sequence

BRUTE_FORCE_GUARD = 10**8


@dataclass(frozen=True, order=True)
class DominantPair:
    lam: tuple[int, ...]
    mu: tuple[int, ...]

    def __post_init__(self):
        if len(self.lam) != len(self.mu):
            raise ValueError("lam and mu must have equal length")
        for i in range(len(self.lam) - 1):
            if self.lam[i] < self.lam[i + 1]:
                raise ValueError("lam is not weakly decreasing")
            if self.lam[i] == self.lam[i + 1] and self.mu[i] < self.mu[i + 1]:
                raise ValueError("mu is not dominant for the stabilizer of lam")

    @property
    def n(self) -> int:
        return len(self.lam)


def canonicalize(lam: Sequence[int], mu: Sequence[int]) -> DominantPair:
    """Sort the pair into its dominant representative.

    lam is sorted decreasingly and mu decreasingly within each lam-tie
    block, which is exactly the simultaneous-permutation orbit invariant.
    """
    if len(lam) != len(mu):
        raise ValueError("lam and mu must have equal length")
    cols = sorted(zip(lam, mu), key=lambda t: (-t[0], -t[1]))
    return DominantPair(tuple(c[0] for c in cols), tuple(c[1] for c in cols))


def _weakly_decreasing(n: int, lo: int, hi: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(hi, lo - 1, -1):
        for rest in _weakly_decreasing(n - 1, lo, first):
            yield (first,) + rest


def enumerate_box(n: int, lo: int, hi: int) -> list[DominantPair]:
    """All dominant pairs with every entry in [lo, hi], sorted, no duplicates."""
    if lo > hi:
        raise ValueError("need lo <= hi")
    out = []
    for lam in _weakly_decreasing(n, lo, hi):
        # block structure of lam: mu decreasing within blocks, free across
        blocks = []
        start = 0
        for i in range(1, n + 1):
            if i == n or lam[i] != lam[start]:
                blocks.append(i - start)
                start = i
        for mu_parts in product(*(_weakly_decreasing(size, lo, hi) for size in blocks)):
            mu = tuple(x for part in mu_parts for x in part)
            out.append(DominantPair(lam, mu))
    out.sort()
    return out


def orbit_count_bruteforce(n: int, lo: int, hi: int) -> int:
    """Independent oracle: count S_n-orbits on pairs by explicit partitioning.

    Enumerates the full box of (lam, mu) pairs and takes the minimum of
    each orbit under all n! simultaneous permutations; deliberately does
    not reuse canonicalize().
    """
    if lo > hi:
        raise ValueError("need lo <= hi")
    side = hi - lo + 1
    work = side ** (2 * n)
    for _ in range(n, 1, -1):
        work *= _
    if n > 4 or work > BRUTE_FORCE_GUARD:
        raise ValueError("box too large for the brute-force oracle")
    perms = list(permutations(range(n)))
    reps = set()
    values = range(lo, hi + 1)
    for lam in product(values, repeat=n):
        for mu in product(values, repeat=n):
            orbit_min = min(
                (tuple(lam[p] for p in perm), tuple(mu[p] for p in perm))
                for perm in perms
            )
            reps.add(orbit_min)
    return len(reps)


def label_to_pair(kind: str, n: int, k: int = 0, ell: int = 0) -> DominantPair:
    """Weight dictionary for simple labels (documented convention).

    Positive P_{k,l} maps to lam = (1^k, 0^{n-k}) and mu = (l^k, 0^{n-k});
    negative P_{-k,l} to lam = (0^{n-k}, (-1)^k), mu = (0^{n-k}, l^k);
    the determinant class to lam = 0, mu = (1^n); the unit to (0, 0).
    Used only for the injectivity cross-check of registry labels.
    """
    if kind == "unit":
        return DominantPair((0,) * n, (0,) * n)
    if kind == "det":
        return DominantPair((0,) * n, (1,) * n)
    if kind != "P":
        raise ValueError(f"unknown label kind {kind!r}")
    if not 1 <= abs(k) <= n:
        raise ValueError("need 1 <= |k| <= n")
    a = abs(k)
    if k > 0:
        return canonicalize((1,) * a + (0,) * (n - a), (ell,) * a + (0,) * (n - a))
    return canonicalize((0,) * (n - a) + (-1,) * a, (0,) * (n - a) + (ell,) * a)
