"""Exact arithmetic in quantum tori.

The coefficient ring is Z[v, v^-1] with v = q^(1/2).  A quantum torus of
rank n is determined by a skew-symmetric integer form L; its generators
satisfy X_i X_j = q^(L_ij) X_j X_i, i.e. v^(2 L_ij).  Elements are stored
as sums of bar-normalized monomials

    X^(a) = v^(-sum_{i<j} a_i a_j L_ij) X_1^{a_1} ... X_n^{a_n},

which are fixed by the bar involution v -> v^(-1) and multiply by

    X^(a) X^(b) = v^(L(a,b)) X^(a+b),   L(a,b) = sum_{i,j} a_i b_j L_ij.

All values are immutable; every operation returns a fresh object.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Optional

MAX_RANK = 64


class FormMismatchError(ValueError):
    """Raised when two torus elements live over different skew forms."""


class ExactDivisionError(ArithmeticError):
    """Raised when an exact quotient in the quantum torus does not exist."""


class QuantumScalar:
    """Element of Z[v, v^-1], stored sparsely as {v-exponent: coefficient}."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        c = {}
        if coeffs:
            for e, k in coeffs.items():
                if k:
                    c[int(e)] = int(k)
        self._c = c

    @staticmethod
    def zero() -> "QuantumScalar":
        return QuantumScalar()

    @staticmethod
    def one() -> "QuantumScalar":
        return QuantumScalar({0: 1})

    @staticmethod
    def of_int(k: int) -> "QuantumScalar":
        return QuantumScalar({0: k})

    @staticmethod
    def v_power(m: int, coeff: int = 1) -> "QuantumScalar":
        return QuantumScalar({m: coeff})

    def items(self):
        return self._c.items()

    def is_zero(self) -> bool:
        return not self._c

    def is_one(self) -> bool:
        return self._c == {0: 1}

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = QuantumScalar.of_int(other)
        if not isinstance(other, QuantumScalar):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __add__(self, other: "QuantumScalar") -> "QuantumScalar":
        if isinstance(other, int):
            other = QuantumScalar.of_int(other)
        c = dict(self._c)
        for e, k in other._c.items():
            n = c.get(e, 0) + k
            if n:
                c[e] = n
            else:
                c.pop(e, None)
        out = QuantumScalar.__new__(QuantumScalar)
        out._c = c
        return out

    def __neg__(self) -> "QuantumScalar":
        out = QuantumScalar.__new__(QuantumScalar)
        out._c = {e: -k for e, k in self._c.items()}
        return out

    def __sub__(self, other: "QuantumScalar") -> "QuantumScalar":
        return self + (-other)

    def __mul__(self, other) -> "QuantumScalar":
        if isinstance(other, int):
            other = QuantumScalar.of_int(other)
        if not isinstance(other, QuantumScalar):
            return NotImplemented
        c: dict[int, int] = {}
        for e1, k1 in self._c.items():
            for e2, k2 in other._c.items():
                e = e1 + e2
                n = c.get(e, 0) + k1 * k2
                if n:
                    c[e] = n
                else:
                    c.pop(e, None)
        out = QuantumScalar.__new__(QuantumScalar)
        out._c = c
        return out

    __rmul__ = __mul__

    def shift(self, m: int) -> "QuantumScalar":
        """Multiply by v^m."""
        out = QuantumScalar.__new__(QuantumScalar)
        out._c = {e + m: k for e, k in self._c.items()}
        return out

    def bar(self) -> "QuantumScalar":
        """Apply v -> v^(-1)."""
        out = QuantumScalar.__new__(QuantumScalar)
        out._c = {-e: k for e, k in self._c.items()}
        return out

    def at_one(self) -> int:
        """Specialize v = 1."""
        return sum(self._c.values())

    def is_nonnegative(self) -> bool:
        return all(k >= 0 for k in self._c.values())

    def min_exp(self) -> int:
        return min(self._c)

    def max_exp(self) -> int:
        return max(self._c)

    def as_v_power(self) -> Optional[tuple[int, int]]:
        """Return (exponent, coefficient) if this is c*v^m, else None."""
        if len(self._c) != 1:
            return None
        (e, k), = self._c.items()
        return e, k

    def divide_exact(self, other: "QuantumScalar") -> Optional["QuantumScalar"]:
        """Exact quotient self/other in Z[v, v^-1], or None."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero scalar")
        if self.is_zero():
            return QuantumScalar.zero()
        rem = dict(self._c)
        lead_e = max(other._c)
        lead_k = other._c[lead_e]
        span_self = self.max_exp() - self.min_exp()
        span_other = other.max_exp() - other.min_exp()
        max_steps = span_self - span_other + 1
        if max_steps <= 0:
            return None
        quot: dict[int, int] = {}
        for _ in range(max_steps):
            if not rem:
                break
            e = max(rem)
            k = rem[e]
            if k % lead_k:
                return None
            qe, qk = e - lead_e, k // lead_k
            quot[qe] = quot.get(qe, 0) + qk
            for oe, ok in other._c.items():
                te = qe + oe
                n = rem.get(te, 0) - qk * ok
                if n:
                    rem[te] = n
                else:
                    rem.pop(te, None)
        if rem:
            return None
        return QuantumScalar(quot)

    def key(self) -> tuple:
        return tuple(sorted(self._c.items()))

    def __repr__(self):
        return f"QuantumScalar({self!s})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c, reverse=True):
            k = self._c[e]
            if e == 0:
                term = str(k)
            else:
                ve = "v" if e == 1 else f"v^{e}"
                term = ve if k == 1 else ("-" + ve if k == -1 else f"{k}*{ve}")
            parts.append(term)
        s = " + ".join(parts)
        return s.replace("+ -", "- ")


class SkewForm:
    """Skew-symmetric integer form on Z^n; the commutation data of a torus."""

    __slots__ = ("rank", "entries")

    def __init__(self, entries: Iterable[Iterable[int]]):
        rows = tuple(tuple(int(x) for x in row) for row in entries)
        n = len(rows)
        if n > MAX_RANK:
            raise ValueError(f"rank {n} exceeds supported maximum {MAX_RANK}")
        if any(len(r) != n for r in rows):
            raise ValueError("skew form must be square")
        for i in range(n):
            for j in range(n):
                if rows[i][j] != -rows[j][i]:
                    raise ValueError(f"form is not skew-symmetric at ({i},{j})")
        self.rank = n
        self.entries = rows

    def pairing(self, a: tuple[int, ...], b: tuple[int, ...]) -> int:
        """The bilinear value sum_{i,j} a_i b_j L_ij."""
        total = 0
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            row = self.entries[i]
            total += ai * sum(bj * row[j] for j, bj in enumerate(b) if bj)
        return total

    def __eq__(self, other):
        return isinstance(other, SkewForm) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"SkewForm({list(map(list, self.entries))})"


class TorusElement:
    """Finite Z[v,v^-1]-combination of bar-normalized torus monomials."""

    __slots__ = ("form", "terms")

    def __init__(self, form: SkewForm, terms: Mapping[tuple[int, ...], QuantumScalar] | None = None):
        self.form = form
        t: dict[tuple[int, ...], QuantumScalar] = {}
        if terms:
            for a, c in terms.items():
                if not c.is_zero():
                    a = tuple(int(x) for x in a)
                    if len(a) != form.rank:
                        raise ValueError("exponent length does not match rank")
                    t[a] = c
        self.terms = t

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(form: SkewForm) -> "TorusElement":
        return TorusElement(form)

    @staticmethod
    def one(form: SkewForm) -> "TorusElement":
        return TorusElement(form, {(0,) * form.rank: QuantumScalar.one()})

    @staticmethod
    def monomial(form: SkewForm, exponent: Iterable[int],
                 scalar: QuantumScalar | int = 1) -> "TorusElement":
        if isinstance(scalar, int):
            scalar = QuantumScalar.of_int(scalar)
        return TorusElement(form, {tuple(int(x) for x in exponent): scalar})

    @staticmethod
    def generator(form: SkewForm, i: int) -> "TorusElement":
        e = [0] * form.rank
        e[i] = 1
        return TorusElement.monomial(form, e)

    # -- basic structure ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __eq__(self, other):
        if not isinstance(other, TorusElement):
            return NotImplemented
        return self.form == other.form and self.terms == other.terms

    def __hash__(self):
        return hash(self.key())

    def key(self) -> tuple:
        """Canonical hashable serialization (terms in sorted exponent order)."""
        return tuple((a, self.terms[a].key()) for a in sorted(self.terms))

    def _check_form(self, other: "TorusElement"):
        if self.form != other.form:
            raise FormMismatchError("torus elements live over different skew forms")

    # -- ring operations -------------------------------------------------

    def __add__(self, other: "TorusElement") -> "TorusElement":
        self._check_form(other)
        t = dict(self.terms)
        for a, c in other.terms.items():
            n = t.get(a)
            n = c if n is None else n + c
            if n.is_zero():
                t.pop(a, None)
            else:
                t[a] = n
        out = TorusElement.__new__(TorusElement)
        out.form, out.terms = self.form, t
        return out

    def __neg__(self) -> "TorusElement":
        out = TorusElement.__new__(TorusElement)
        out.form = self.form
        out.terms = {a: -c for a, c in self.terms.items()}
        return out

    def __sub__(self, other: "TorusElement") -> "TorusElement":
        return self + (-other)

    def __mul__(self, other) -> "TorusElement":
        if isinstance(other, (int, QuantumScalar)):
            return self.scale(other)
        if not isinstance(other, TorusElement):
            return NotImplemented
        self._check_form(other)
        pairing = self.form.pairing
        t: dict[tuple[int, ...], QuantumScalar] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(a, b))
                c = (ca * cb).shift(pairing(a, b))
                n = t.get(e)
                n = c if n is None else n + c
                if n.is_zero():
                    t.pop(e, None)
                else:
                    t[e] = n
        out = TorusElement.__new__(TorusElement)
        out.form, out.terms = self.form, t
        return out

    def __rmul__(self, other):
        if isinstance(other, (int, QuantumScalar)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c: QuantumScalar | int) -> "TorusElement":
        if isinstance(c, int):
            c = QuantumScalar.of_int(c)
        t = {}
        for a, ca in self.terms.items():
            n = ca * c
            if not n.is_zero():
                t[a] = n
        out = TorusElement.__new__(TorusElement)
        out.form, out.terms = self.form, t
        return out

    def shift_v(self, m: int) -> "TorusElement":
        """Multiply by the central scalar v^m."""
        out = TorusElement.__new__(TorusElement)
        out.form = self.form
        out.terms = {a: c.shift(m) for a, c in self.terms.items()}
        return out

    def inverse_monomial(self) -> "TorusElement":
        """Inverse, defined only for terms c*v^k X^(a) with c = +-1."""
        if len(self.terms) != 1:
            raise ExactDivisionError("only monomials are invertible")
        (a, c), = self.terms.items()
        vp = c.as_v_power()
        if vp is None or vp[1] not in (1, -1):
            raise ExactDivisionError("monomial coefficient is not a unit")
        e, k = vp
        inv = tuple(-x for x in a)
        # X^(a) X^(-a) = v^(L(a,-a)) = 1, so X^(a)^(-1) = X^(-a)
        return TorusElement.monomial(self.form, inv, QuantumScalar.v_power(-e, k))

    def power(self, n: int) -> "TorusElement":
        if n < 0:
            return self.inverse_monomial().power(-n)
        out = TorusElement.one(self.form)
        for _ in range(n):
            out = out * self
        return out

    # -- involutions and specializations ----------------------------------

    def bar(self) -> "TorusElement":
        """Bar involution v -> v^(-1); normalized monomials are fixed."""
        out = TorusElement.__new__(TorusElement)
        out.form = self.form
        out.terms = {a: c.bar() for a, c in self.terms.items()}
        return out

    def specialize_classical(self) -> dict[tuple[int, ...], int]:
        """Set v = 1: the commutative Laurent-polynomial image as {exp: int}."""
        out = {}
        for a, c in self.terms.items():
            k = c.at_one()
            if k:
                out[a] = k
        return out

    def has_nonnegative_coeffs(self) -> bool:
        return all(c.is_nonnegative() for c in self.terms.values())

    def exponent_bounds(self) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
        """Componentwise (min, max) over the support, or None when zero."""
        if not self.terms:
            return None
        exps = list(self.terms)
        lo = tuple(min(a[i] for a in exps) for i in range(self.form.rank))
        hi = tuple(max(a[i] for a in exps) for i in range(self.form.rank))
        return lo, hi

    def __repr__(self):
        return f"TorusElement({self!s})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for a in sorted(self.terms, reverse=True):
            c = self.terms[a]
            mono = "X^(%s)" % ",".join(map(str, a))
            if all(x == 0 for x in a):
                parts.append(str(c))
            elif c.is_one():
                parts.append(mono)
            elif len(c._c) == 1:
                parts.append(f"{c}*{mono}")
            else:
                parts.append(f"({c})*{mono}")
        return " + ".join(parts)


def detect_q_proportional(x: TorusElement, y: TorusElement) -> Optional[int]:
    """Return m with x = v^m * y exactly, or None.

    Applied to (a*b, b*a) this decides whether two classes q-commute and
    with which power.  Both arguments zero yields 0.
    """
    if x.form != y.form:
        raise FormMismatchError("torus elements live over different skew forms")
    if x.is_zero() and y.is_zero():
        return 0
    if x.is_zero() or y.is_zero():
        return None
    if set(x.terms) != set(y.terms):
        return None
    m = None
    for a, cx in x.terms.items():
        cy = y.terms[a]
        q = cx.divide_exact(cy)
        if q is None:
            return None
        vp = q.as_v_power()
        if vp is None or vp[1] != 1:
            return None
        if m is None:
            m = vp[0]
        elif m != vp[0]:
            return None
    return m


def _lex_leading(terms: dict) -> tuple[int, ...]:
    return max(terms)


def divide_exact(num: TorusElement, den: TorusElement, side: str = "right") -> TorusElement:
    """Exact quotient in the quantum torus.

    side="right" returns t with t*den = num; side="left" returns t with
    den*t = num.  Raises ExactDivisionError when no exact quotient exists.
    The search is leading-term elimination in lexicographic order, with a
    support box bound guaranteeing termination.
    """
    if num.form != den.form:
        raise FormMismatchError("torus elements live over different skew forms")
    if den.is_zero():
        raise ZeroDivisionError("division by zero torus element")
    if num.is_zero():
        return TorusElement.zero(num.form)
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")

    form = num.form
    nb = num.exponent_bounds()
    db = den.exponent_bounds()
    lo = tuple(a - b for a, b in zip(nb[0], db[1]))
    hi = tuple(a - b for a, b in zip(nb[1], db[0]))

    lead = _lex_leading(den.terms)
    lead_c = den.terms[lead]
    rem = num
    quot = TorusElement.zero(form)
    while not rem.is_zero():
        a = _lex_leading(rem.terms)
        t_exp = tuple(x - y for x, y in zip(a, lead))
        if any(t < l or t > h for t, l, h in zip(t_exp, lo, hi)):
            raise ExactDivisionError("no exact quotient (support bound exceeded)")
        twist = form.pairing(t_exp, lead) if side == "right" else form.pairing(lead, t_exp)
        t_c = rem.terms[a].divide_exact(lead_c.shift(twist))
        if t_c is None:
            raise ExactDivisionError("no exact quotient (coefficient not divisible)")
        t = TorusElement.monomial(form, t_exp, t_c)
        quot = quot + t
        rem = rem - (t * den if side == "right" else den * t)
    return quot
