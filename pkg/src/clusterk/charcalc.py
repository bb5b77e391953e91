"""Truncated bigraded Euler characteristics of derived coordinate rings.

Gradings: p tracks the loop weight (p = q^(-1); a functional dual to t^k
carries p-exponent k) and u tracks the eta-weight (every dual generator
here has u-weight -1).  A cohomological degree of -1 turns a symmetric
factor 1/(1 - u^e p^w) into the exterior factor (1 - u^e p^w).

Internally a character keeps every u-level down to a floor exactly, with
full p-support; because all generators lower the u-degree, truncating in
u alone is exact, and the p-window is applied only when comparing or
dumping.  That is what makes the ratio and product checks below honest
equalities rather than approximations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


class TruncationUnsafeError(ValueError):
    """Raised when a generator list cannot be truncated exactly in u."""


@dataclass(frozen=True)
class GradedGenerator:
    loop_weight: int
    eta_weight: int
    cohomological_degree: int = 0

    def __post_init__(self):
        if self.cohomological_degree not in (0, -1):
            raise ValueError("cohomological degree must be 0 or -1")


class TruncatedCharacter:
    """Bigraded series, exact on every u-level >= u_floor."""

    __slots__ = ("u_floor", "coeffs")

    def __init__(self, u_floor: int, coeffs: dict[tuple[int, int], int] | None = None):
        self.u_floor = u_floor
        c = {}
        if coeffs:
            for (p, u), k in coeffs.items():
                if k and u >= u_floor:
                    c[(p, u)] = k
        self.coeffs = c

    @staticmethod
    def one(u_floor: int) -> "TruncatedCharacter":
        return TruncatedCharacter(u_floor, {(0, 0): 1})

    def __mul__(self, other: "TruncatedCharacter") -> "TruncatedCharacter":
        floor = max(self.u_floor, other.u_floor)
        out: dict[tuple[int, int], int] = {}
        for (p1, u1), k1 in self.coeffs.items():
            for (p2, u2), k2 in other.coeffs.items():
                u = u1 + u2
                if u < floor:
                    continue
                key = (p1 + p2, u)
                n = out.get(key, 0) + k1 * k2
                if n:
                    out[key] = n
                else:
                    del out[key]
        return TruncatedCharacter(floor, out)

    def __add__(self, other: "TruncatedCharacter") -> "TruncatedCharacter":
        floor = max(self.u_floor, other.u_floor)
        out = {k: v for k, v in self.coeffs.items() if k[1] >= floor}
        for key, v in other.coeffs.items():
            if key[1] < floor:
                continue
            n = out.get(key, 0) + v
            if n:
                out[key] = n
            else:
                out.pop(key, None)
        return TruncatedCharacter(floor, out)

    def __sub__(self, other: "TruncatedCharacter") -> "TruncatedCharacter":
        return self + other.scale(-1)

    def scale(self, k: int) -> "TruncatedCharacter":
        return TruncatedCharacter(self.u_floor, {key: k * v for key, v in self.coeffs.items()})

    def twist(self, p_shift: int, u_shift: int) -> "TruncatedCharacter":
        """Multiply by the monomial u^(u_shift) p^(p_shift)."""
        return TruncatedCharacter(
            self.u_floor + u_shift,
            {(p + p_shift, u + u_shift): v for (p, u), v in self.coeffs.items()},
        )

    def restrict(self, p_lo: int, p_hi: int, u_lo: int, u_hi: int = 0) -> dict[tuple[int, int], int]:
        return {
            (p, u): v
            for (p, u), v in self.coeffs.items()
            if p_lo <= p <= p_hi and u_lo <= u <= u_hi
        }

    def equal_on(self, other: "TruncatedCharacter", p_lo: int, p_hi: int,
                 u_lo: int, u_hi: int = 0) -> bool:
        return self.restrict(p_lo, p_hi, u_lo, u_hi) == other.restrict(p_lo, p_hi, u_lo, u_hi)

    def u_level(self, u: int) -> dict[int, int]:
        return {p: v for (p, uu), v in self.coeffs.items() if uu == u}

    def table(self, p_lo: int, p_hi: int, u_lo: int, u_hi: int = 0) -> list[tuple[int, int, int]]:
        """Sorted (p, u, coefficient) rows for dumps."""
        window = self.restrict(p_lo, p_hi, u_lo, u_hi)
        return sorted((p, u, v) for (p, u), v in window.items())


def _certify(gens: Iterable[GradedGenerator], degree: int):
    for g in gens:
        if g.cohomological_degree != degree:
            raise TruncationUnsafeError(
                f"generator {g} has cohomological degree {g.cohomological_degree}, expected {degree}"
            )
        if g.eta_weight > -1:
            raise TruncationUnsafeError(
                f"generator {g} has eta-weight {g.eta_weight} > -1; "
                "the u-truncation would not be exact"
            )


def sym_character(gens: Sequence[GradedGenerator], u_floor: int) -> TruncatedCharacter:
    """Product of geometric factors 1/(1 - u^e p^w), exact down to u_floor."""
    _certify(gens, 0)
    out = TruncatedCharacter.one(u_floor)
    for g in gens:
        factor: dict[tuple[int, int], int] = {}
        j = 0
        while j * g.eta_weight >= u_floor:
            factor[(j * g.loop_weight, j * g.eta_weight)] = 1
            j += 1
        out = out * TruncatedCharacter(u_floor, factor)
    return out


def ext_character(gens: Sequence[GradedGenerator], u_floor: int) -> TruncatedCharacter:
    """Product of exterior factors (1 - u^e p^w) from degree -1 generators."""
    _certify(gens, -1)
    out = TruncatedCharacter.one(u_floor)
    for g in gens:
        factor = {(0, 0): 1}
        if g.eta_weight >= u_floor:
            factor[(g.loop_weight, g.eta_weight)] = -1
        out = out * TruncatedCharacter(u_floor, factor)
    return out


def character_of(gens: Sequence[GradedGenerator], u_floor: int) -> TruncatedCharacter:
    """Mixed generator list: symmetric and exterior factors together."""
    sym = [g for g in gens if g.cohomological_degree == 0]
    ext = [g for g in gens if g.cohomological_degree == -1]
    return sym_character(sym, u_floor) * ext_character(ext, u_floor)


# -- the rank-one worked example ---------------------------------------------


def ring_generators(case: str, window: int) -> list[GradedGenerator]:
    """Dual-generator lists for the rank-one coordinate rings.

    'classical'     Sym of functionals on O       (weights 0..window)
    'sub_positive'  Sym of functionals on tO      (weights 1..window)
    'sub_mixed'     classical times one exterior generator dual to t^(-1)
    'derived'       classical times exterior functionals on K/O
    """
    sym_cl = [GradedGenerator(k, -1, 0) for k in range(window + 1)]
    if case == "classical":
        return sym_cl
    if case == "sub_positive":
        return [GradedGenerator(k, -1, 0) for k in range(1, window + 1)]
    if case == "sub_mixed":
        return sym_cl + [GradedGenerator(-1, -1, -1)]
    if case == "derived":
        return sym_cl + [GradedGenerator(-k, -1, -1) for k in range(1, window + 1)]
    raise ValueError(f"unknown case {case!r}")


def solve_monomial_twist(
    child: TruncatedCharacter, base: TruncatedCharacter, p_window: int
) -> Optional[tuple[int, int]]:
    """Solve child = (1 - u^b p^a) * base for (a, b), exactly.

    The candidate twist is read off the top u-level of base - child and
    then verified coefficientwise on every exactly-known level inside the
    p-window; None when no monomial twist fits.
    """
    diff = base - child
    if not diff.coeffs:
        return None
    top_u = max(u for (_, u) in diff.coeffs)
    level = diff.u_level(top_u)
    if len(level) != 1:
        return None
    ((a, coeff),) = level.items()
    if coeff != 1:
        return None
    b = top_u
    twisted = base.twist(a, b)
    check_floor = max(diff.u_floor, twisted.u_floor)
    if not diff.equal_on(twisted, -p_window, p_window, check_floor):
        return None
    return a, b


def verify_abelian_sequences(window: int = 20) -> dict:
    """Certify the two rank-one convolution factorizations on the window.

    Checks chi(sub_positive) = (1 - u^b p^a) chi(classical) with expected
    (a, b) = (0, -1), chi(sub_mixed) likewise with (-1, -1), and the
    product identity chi(derived) = chi(classical) * ext(K/O duals).
    Every comparison is an exact coefficient equality.
    """
    if window < 5:
        raise ValueError("window must be at least 5")
    floor = -window
    chi_cl = character_of(ring_generators("classical", window), floor)
    chi_pos = character_of(ring_generators("sub_positive", window), floor)
    chi_mix = character_of(ring_generators("sub_mixed", window), floor)
    chi_der = character_of(ring_generators("derived", window), floor)

    records = []
    t1 = solve_monomial_twist(chi_pos, chi_cl, window)
    records.append({
        "name": "character_factorization.positive_sub",
        "status": "pass" if t1 == (0, -1) else "fail",
        "twist": list(t1) if t1 else None,
        "expected": [0, -1],
    })
    t2 = solve_monomial_twist(chi_mix, chi_cl, window)
    records.append({
        "name": "character_factorization.mixed_sub",
        "status": "pass" if t2 == (-1, -1) else "fail",
        "twist": list(t2) if t2 else None,
        "expected": [-1, -1],
    })

    ext_part = ext_character(
        [GradedGenerator(-k, -1, -1) for k in range(1, window + 1)], floor
    )
    product_ok = chi_der.equal_on(chi_cl * ext_part, -window, window, floor)
    records.append({
        "name": "character_factorization.derived_product",
        "status": "pass" if product_ok else "fail",
    })

    # the two short exact sequences assign the same Euler characteristic
    # to their middle terms once the cohomological sign is applied; at the
    # character level this is the statement that both right-hand sides are
    # honest alternating sums of the classical character
    rhs1 = chi_cl - chi_cl.twist(0, -1)
    rhs2 = chi_cl - chi_cl.twist(-1, -1)
    seq_ok = chi_pos.equal_on(rhs1, -window, window, floor + 1) and chi_mix.equal_on(
        rhs2, -window, window, floor + 1
    )
    records.append({
        "name": "exact_sequence_euler_sums",
        "status": "pass" if seq_ok else "fail",
    })

    summary = {
        "pass": sum(r["status"] == "pass" for r in records),
        "fail": sum(r["status"] == "fail" for r in records),
    }
    return {
        "suite": "abelian_characters",
        "window": window,
        "records": records,
        "summary": summary,
        "characters": {
            "classical": chi_cl.table(-window, window, -5),
            "sub_positive": chi_pos.table(-window, window, -5),
            "sub_mixed": chi_mix.table(-window, window, -5),
        },
    }
