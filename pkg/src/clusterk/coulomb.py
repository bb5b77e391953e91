"""Rank-one and rank-two Coulomb-branch data and the verification suites.

This module owns the concrete seeds (the GL_2 quantum seed with its
published coefficient and exchange matrices, and the rank-one seed with
one frozen vertex), the loop-shift fit that pins down how the grading
shift {m} acts on K-classes, the registry mapping simple-object labels
P_{k,l} to torus elements, and the relation suites that check every
exchange, commutation, and gluing identity as an exact identity of
quantum-torus elements.

Conventions fixed here and validated by the fit:

* generators satisfy X_i X_j = q^(L_ij) X_j X_i (q = v^2);
* the class of a cohomologically shifted object F[1] is -[F];
* the loop shift acts by [F{m}] = v^(shift_vexp * m) [F], with
  shift_vexp fitted (the value -2, i.e. {m} = q^(-m), is the unique
  consistent choice for the torus convention above);
* each simple class is pinned by one designated relation, up to a
  v-power times a frozen monomial which the builder solves for and
  records; every other relation instance is then a rigid check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .graph import is_acyclic, twist
from .qtorus import (
    ExactDivisionError,
    QuantumScalar,
    SkewForm,
    TorusElement,
    detect_q_proportional,
    divide_exact,
)
from .seed import (
    ExchangeMatrix,
    QuantumSeed,
    build_quiver_gln,
    canonical_form,
    check_compatibility,
    gln_quiver_labels,
    mutate,
)


class LoopShiftFitError(ValueError):
    """No candidate, or more than one candidate, survives the fit."""


class NoConsistentConventionError(ValueError):
    """The rank-one seed search found no commutation form that works."""


class RegistryError(ValueError):
    """A required normalization or label assignment has no solution."""


# -- labels -------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class SimpleLabel:
    """Label of a simple class: P_{k,l}, the determinant class, the unit,
    or the rank-one Koszul-shift unit."""

    kind: str  # "P", "det", "unit", "koszul"
    k: int = 0
    ell: int = 0

    def __post_init__(self):
        if self.kind not in ("P", "det", "unit", "koszul"):
            raise ValueError(f"unknown label kind {self.kind!r}")
        if self.kind == "P" and self.k == 0:
            raise ValueError("P labels need k != 0")

    def __str__(self):
        if self.kind == "P":
            return f"P_{{{self.k},{self.ell}}}"
        return {"det": "P_{0,det}", "unit": "1", "koszul": "K"}[self.kind]


def P(k: int, ell: int) -> SimpleLabel:
    if k == 0:
        return UNIT  # P_{0,l} is the unit for every l
    return SimpleLabel("P", k, ell)


DET = SimpleLabel("det")
UNIT = SimpleLabel("unit")
KOSZUL_UNIT = SimpleLabel("koszul")


# -- initial seeds ------------------------------------------------------------

# coefficient matrix of the GL_2 quantum seed, in the vertex order
# (P_{1,1}, P_{1,0}, P_{2,0}, P_{0,det})
GL2_LAMBDA = (
    (0, -2, -2, 2),
    (2, 0, 0, 2),
    (2, 0, 0, 4),
    (-2, -2, -4, 0),
)


def initial_seed_gl2() -> QuantumSeed:
    """The GL_2 quantum seed: rank 4, three mutable directions, d = -2."""
    form = SkewForm(GL2_LAMBDA)
    exchange = build_quiver_gln(2)
    return QuantumSeed(form, exchange, gln_quiver_labels(2))


# commutation templates among the initial GL_2 classes: (i, j, m) asserts
# X_i * X_j = X_j * X_i {m}
DEFAULT_FIT_RELATIONS = (
    (2, 1, 0),   # P_{2,0} with P_{1,0}: plain commutation
    (2, 0, -2),  # P_{2,0} with P_{1,1}
    (1, 0, -2),  # P_{1,0} with P_{1,1}
)

FIT_CANDIDATES = (-4, -2, -1, 1, 2, 4)  # v-exponents of {1}; odd = half-integer s


def fit_loop_shift(
    seed: QuantumSeed,
    relations: Sequence[tuple[int, int, int]] = DEFAULT_FIT_RELATIONS,
) -> int:
    """Fit the v-exponent of the unit loop shift from commutation relations.

    Each relation (i, j, m) says variables i and j commute up to a loop
    shift by m.  In the torus, X_i X_j = v^(2 L_ij) X_j X_i, so every
    candidate must satisfy candidate * m = 2 L_ij.  Returns the unique
    surviving candidate; raises when none or several survive.
    """
    lam = seed.form.entries
    survivors = []
    for cand in FIT_CANDIDATES:
        if all(cand * m == 2 * lam[i][j] for i, j, m in relations):
            survivors.append(cand)
    if not survivors:
        raise LoopShiftFitError("no loop-shift normalization is consistent")
    if len(survivors) > 1:
        raise LoopShiftFitError(
            f"loop-shift normalization is underdetermined: {survivors}"
        )
    return survivors[0]


def initial_seed_gl1(shift_vexp: Optional[int] = None) -> QuantumSeed:
    """The rank-one seed: one mutable vertex, one frozen (Koszul-shift unit).

    The exchange column encodes the single arrow frozen -> mutable.  The
    commutation form is found by a small search: both orders of the
    exchange product must equal unit + (integer loop shift of the frozen
    class).  Candidates are tried with |L_12| = 2 first, matching the
    d = -2 normalization of the GL_2 seed.
    """
    if shift_vexp is None:
        shift_vexp = fit_loop_shift(initial_seed_gl2())
    exchange = ExchangeMatrix([[0], [1]], 1)
    for lam12 in (2, -2, 1, -1):
        form = SkewForm([[0, lam12], [-lam12, 0]])
        seed = QuantumSeed(form, exchange, ("P_{1,0}", "K"))
        x1 = seed.variables[0]
        x1p = mutate(seed, 0).variables[0]
        unit = TorusElement.one(form)
        frozen = seed.variables[1]
        ok = True
        for prod in (x1 * x1p, x1p * x1):
            diff = prod - unit
            m = detect_q_proportional(diff, frozen)
            if m is None or m % shift_vexp:
                ok = False
                break
        if ok:
            return seed
    raise NoConsistentConventionError(
        "no commutation form makes the rank-one exchange identity hold"
    )


# -- relation words and instances ---------------------------------------------


@dataclass(frozen=True)
class Word:
    """An ordered product of simple classes with an overall loop shift.

    Factors are (label, power) with power in {1, -1}; inverse powers are
    meaningful only for the invertible (monomial) classes.
    """

    factors: tuple[tuple[SimpleLabel, int], ...]
    loop_shift: int = 0

    def labels(self) -> set[SimpleLabel]:
        return {lab for lab, _ in self.factors}

    def evaluate(self, registry: "SimpleClassRegistry") -> TorusElement:
        out = TorusElement.one(registry.form)
        for lab, power in self.factors:
            cls = registry.cls(lab)
            out = out * (cls if power == 1 else cls.inverse_monomial())
        return out.shift_v(registry.shift_vexp * self.loop_shift)

    def __str__(self):
        parts = []
        for lab, power in self.factors:
            parts.append(str(lab) + ("" if power == 1 else "^-1"))
        s = " * ".join(parts) if parts else "1"
        if self.loop_shift:
            s += f" {{{self.loop_shift}}}"
        return s


@dataclass(frozen=True)
class RelationInstance:
    """One K-theory identity: [lhs] = sum of [rhs words]."""

    name: str
    lhs: Word
    rhs: tuple[Word, ...]
    description: str = ""

    def labels(self) -> set[SimpleLabel]:
        out = set(self.lhs.labels())
        for w in self.rhs:
            out |= w.labels()
        return out

    def render(self) -> str:
        return f"{self.lhs} = " + " + ".join(str(w) for w in self.rhs)


def _w(*factors, shift: int = 0) -> Word:
    return Word(tuple((lab, 1) for lab in factors), shift)


def mut_instances(n: int, ell: int) -> list[RelationInstance]:
    """The two exchange sequences at the fan vertex P_{n,l} (here used at
    n = 2; parametric for completeness)."""
    return [
        RelationInstance(
            name=f"mut_n.fwd[l={ell}]",
            lhs=Word(((P(n, ell), 1), (DET, 1), (P(-1, -ell), 1)), n),
            rhs=(
                Word(((DET, 1), (P(n - 1, ell), 1)), -n),
                _w(P(n - 1, ell + 1)),
            ),
            description="fan-vertex exchange, forward order",
        ),
        RelationInstance(
            name=f"mut_n.rev[l={ell}]",
            lhs=Word(((P(-1, -ell), 1), (DET, 1), (P(n, ell), 1)), -n),
            rhs=(
                _w(P(n - 1, ell + 1)),
                Word(((P(n - 1, ell), 1), (DET, 1)), n),
            ),
            description="fan-vertex exchange, reverse order",
        ),
    ]


def old_instances(n: int, k: int, ell: int) -> list[RelationInstance]:
    """Exchange sequences at the interior vertices P_{k,l}, 1 <= k <= n-1."""
    return [
        RelationInstance(
            name=f"old.fwd[k={k},l={ell}]",
            lhs=Word(((P(k, ell + 1), 1), (P(k, ell - 1), 1)), -2 * k),
            rhs=(
                Word(((P(k - 1, ell), 1), (P(k + 1, ell), 1)), -1),
                _w(P(k, ell), P(k, ell)),
            ),
            description="interior exchange, forward order",
        ),
        RelationInstance(
            name=f"old.rev[k={k},l={ell}]",
            lhs=Word(((P(k, ell - 1), 1), (P(k, ell + 1), 1)), 2 * k),
            rhs=(
                _w(P(k, ell), P(k, ell)),
                Word(((P(k + 1, ell), 1), (P(k - 1, ell), 1)), 1),
            ),
            description="interior exchange, reverse order",
        ),
    ]


def commute_instances(ell: int) -> list[RelationInstance]:
    """The q-commutation isomorphisms among GL_2 simple classes."""
    data = [
        ("commute.top_fan", Word(((P(2, 0), 1), (P(1, ell), 1))),
         Word(((P(1, ell), 1), (P(2, 0), 1)), -2 * ell)),
        ("commute.bottom_fan", Word(((P(-2, 0), 1), (P(-1, ell), 1))),
         Word(((P(-1, ell), 1), (P(-2, 0), 1)), 2 * ell)),
        ("commute.top_adjacent", Word(((P(1, ell), 1), (P(1, ell + 1), 1))),
         Word(((P(1, ell + 1), 1), (P(1, ell), 1)), -2)),
        ("commute.bottom_adjacent", Word(((P(-1, ell), 1), (P(-1, ell + 1), 1))),
         Word(((P(-1, ell + 1), 1), (P(-1, ell), 1)), 2)),
        ("commute.vertical", Word(((P(1, ell), 1), (P(-1, -ell), 1))),
         Word(((P(-1, -ell), 1), (P(1, ell), 1)))),
        ("commute.diagonal", Word(((P(1, ell), 1), (P(-1, -ell + 1), 1))),
         Word(((P(-1, -ell + 1), 1), (P(1, ell), 1)))),
    ]
    return [
        RelationInstance(name=f"{name}[l={ell}]", lhs=lhs, rhs=(rhs,),
                         description="commutation up to loop shift")
        for name, lhs, rhs in data
    ]


def glue_instances(ell: int) -> list[RelationInstance]:
    """The four sequences gluing opposite strip vertices through the
    inverse frozen class."""
    return [
        RelationInstance(
            name=f"glue.1[l={ell}]",
            lhs=Word(((P(1, 1 + ell), 1), (P(-1, 1 - ell), 1), (DET, -1))),
            rhs=(_w(UNIT, shift=-1), _w(P(1, ell), P(-1, -ell))),
            description="strip gluing, first order",
        ),
        RelationInstance(
            name=f"glue.2[l={ell}]",
            lhs=Word(((DET, -1), (P(-1, 1 - ell), 1), (P(1, 1 + ell), 1))),
            rhs=(_w(P(-1, -ell), P(1, ell)), _w(UNIT, shift=1)),
            description="strip gluing, second order",
        ),
        RelationInstance(
            name=f"glue.3[l={ell}]",
            lhs=Word(((P(1, ell), 1), (P(-1, -1 - ell), 1), (DET, 1))),
            rhs=(_w(P(1, 1 + ell), P(-1, -ell)), _w(UNIT, shift=1)),
            description="strip gluing, third order",
        ),
        RelationInstance(
            name=f"glue.4[l={ell}]",
            lhs=Word(((DET, 1), (P(-1, -1 - ell), 1), (P(1, ell), 1))),
            rhs=(_w(UNIT, shift=-1), _w(P(-1, -ell), P(1, 1 + ell))),
            description="strip gluing, fourth order",
        ),
    ]


SUITES = ("mut_n", "old", "commute", "glue")


def suite_instances(suite: str, ell_window: int, n: int = 2) -> list[RelationInstance]:
    ells = range(-ell_window, ell_window + 1)
    if suite == "mut_n":
        return [inst for ell in ells for inst in mut_instances(n, ell)]
    if suite == "old":
        return [
            inst
            for k in range(1, n)
            for ell in ells
            for inst in old_instances(n, k, ell)
        ]
    if suite == "commute":
        return [inst for ell in ells for inst in commute_instances(ell)]
    if suite == "glue":
        return [inst for ell in ells for inst in glue_instances(ell)]
    raise ValueError(f"unknown suite {suite!r}")


# -- the registry -------------------------------------------------------------


@dataclass
class SimpleClassRegistry:
    """Map from simple labels to torus elements over the ambient GL_2 torus."""

    form: SkewForm
    shift_vexp: int
    frozen_index: int
    classes: dict[SimpleLabel, TorusElement] = field(default_factory=dict)
    normalizations: dict[SimpleLabel, dict] = field(default_factory=dict)
    clusters: list[tuple[QuantumSeed, tuple[SimpleLabel, ...]]] = field(default_factory=list)

    def cls(self, label: SimpleLabel) -> TorusElement:
        try:
            return self.classes[label]
        except KeyError:
            raise RegistryError(f"label {label} is not in the registry") from None

    def covers(self, labels) -> list[SimpleLabel]:
        return sorted((lab for lab in labels if lab not in self.classes), key=str)

    def frozen_class(self) -> TorusElement:
        return self.classes[DET]


def match_up_to_frozen(
    x: TorusElement, y: TorusElement, frozen_indices: Sequence[int]
) -> Optional[tuple[int, tuple[int, ...]]]:
    """Solve x = v^a * X^(c) * y with c supported on the frozen indices.

    Returns (a, c) or None.  Well-defined because cluster variables
    q-commute with frozen variables, so the frozen twist is a global
    v-power on the support.
    """
    if x.is_zero() or y.is_zero():
        return None
    lead_x = max(x.terms)
    lead_y = max(y.terms)
    delta = tuple(a - b for a, b in zip(lead_x, lead_y))
    if any(d and i not in frozen_indices for i, d in enumerate(delta)):
        return None
    shifted = TorusElement.monomial(x.form, delta) * y
    a = detect_q_proportional(x, shifted)
    if a is None:
        return None
    return a, delta


def _solve_designated(
    registry: SimpleClassRegistry, inst: RelationInstance, unknown: SimpleLabel
) -> TorusElement:
    """Solve a relation instance for the single unknown label in its lhs."""
    positions = [i for i, (lab, _) in enumerate(inst.lhs.factors) if lab == unknown]
    if len(positions) != 1 or inst.lhs.factors[positions[0]][1] != 1:
        raise RegistryError(f"{inst.name}: cannot solve for {unknown}")
    t = positions[0]
    rhs_sum = TorusElement.zero(registry.form)
    for w in inst.rhs:
        rhs_sum = rhs_sum + w.evaluate(registry)
    target = rhs_sum.shift_v(-registry.shift_vexp * inst.lhs.loop_shift)
    left = TorusElement.one(registry.form)
    for lab, power in inst.lhs.factors[:t]:
        cls = registry.cls(lab)
        left = left * (cls if power == 1 else cls.inverse_monomial())
    right = TorusElement.one(registry.form)
    for lab, power in inst.lhs.factors[t + 1:]:
        cls = registry.cls(lab)
        right = right * (cls if power == 1 else cls.inverse_monomial())
    try:
        if not right.is_monomial() or right.terms != TorusElement.one(registry.form).terms:
            target = divide_exact(target, right, side="right")
        if not left.is_monomial() or left.terms != TorusElement.one(registry.form).terms:
            target = divide_exact(target, left, side="left")
    except ExactDivisionError as exc:
        raise RegistryError(f"{inst.name}: no exact solution for {unknown}: {exc}") from exc
    return target


def _ladder(registry: SimpleClassRegistry, ell_window: int):
    """Pin the classes P_{+-1, l} for |l| <= ell_window, one designated
    relation each, in dependency order."""

    def pin(label: SimpleLabel, inst: RelationInstance):
        missing = registry.covers(inst.labels() - {label})
        if missing:
            raise RegistryError(f"{inst.name}: missing prerequisites {missing}")
        value = _solve_designated(registry, inst, label)
        registry.classes[label] = value
        registry.normalizations[label] = {
            "pinned_by": inst.name,
            "relation": inst.render(),
        }

    pin(P(-1, 0), mut_instances(2, 0)[0])
    if ell_window >= 1:
        pin(P(1, -1), old_instances(2, 1, 0)[0])
        pin(P(-1, 1), glue_instances(0)[0])
        pin(P(-1, -1), glue_instances(0)[2])
    for ell in range(1, ell_window):
        pin(P(1, ell + 1), glue_instances(ell)[0])
        pin(P(-1, -ell - 1), glue_instances(ell)[2])
        pin(P(-1, ell + 1), glue_instances(-ell)[0])
        pin(P(1, -ell - 1), glue_instances(-ell - 1)[2])


# -- labeled graph walk -------------------------------------------------------


def _next_label(removed: SimpleLabel, kept: list[SimpleLabel]) -> SimpleLabel:
    """The strip-and-fans adjacency rule: which simple labels the new
    vertex carries after mutating `removed` out of a cluster."""
    tops = sorted((l.ell for l in kept if l.kind == "P" and l.k == 1))
    bots = sorted((l.ell for l in kept if l.kind == "P" and l.k == -1))
    has_top_fan = any(l.kind == "P" and l.k == 2 for l in kept)
    has_bottom_fan = any(l.kind == "P" and l.k == -2 for l in kept)
    if has_top_fan and len(tops) == 1:
        return P(1, 2 * tops[0] - removed.ell)
    if has_bottom_fan and len(bots) == 1:
        return P(-1, 2 * bots[0] - removed.ell)
    if len(tops) == 2:
        if removed.kind == "P" and removed.k == -1:
            return P(2, 0)
        return P(-1, -min(tops))
    if len(bots) == 2:
        if removed.kind == "P" and removed.k == 1:
            return P(-2, 0)
        return P(1, -min(bots))
    if len(tops) == 1 and len(bots) == 1:
        x, y = tops[0], bots[0]
        if x + y == 0:
            cands = (P(1, x + 1), P(-1, y + 1))
        elif x + y == 1:
            cands = (P(1, x - 1), P(-1, y - 1))
        else:
            raise RegistryError(f"labels P_{{1,{x}}}, P_{{-1,{y}}} do not share a cluster")
        if removed not in cands:
            raise RegistryError(f"removed label {removed} inconsistent with edge")
        return cands[0] if removed == cands[1] else cands[1]
    raise RegistryError(f"no adjacency rule for kept labels {[str(l) for l in kept]}")


def _walk_and_match(registry: SimpleClassRegistry, depth: int, ell_window: int):
    """Breadth-first walk of the labeled exchange graph.

    Every cluster variable met along the way must agree with its registry
    class up to a v-power times a frozen monomial; the bottom-fan class
    P_{-2,0} is taken from the walk itself (no relation pins it) with the
    normalization produced by the mutation rule.
    """
    root = initial_seed_gl2()
    root_labels = (P(1, 1), P(1, 0), P(2, 0))
    frozen = [registry.frozen_index]

    def record_match(seed: QuantumSeed, pos: int, label: SimpleLabel):
        candidate = seed.variables[pos]
        if label not in registry.classes:
            if label == P(-2, 0):
                registry.classes[label] = candidate
                registry.normalizations[label] = {
                    "pinned_by": "graph walk (conventional normalization)",
                }
                return
            if label.kind == "P" and abs(label.k) == 1 and abs(label.ell) <= ell_window:
                raise RegistryError(f"in-window label {label} missing from ladder")
            return  # out of window: seen but not registered
        got = match_up_to_frozen(candidate, registry.classes[label], frozen)
        if got is None:
            raise RegistryError(
                f"cluster variable at {label} does not match its registry class"
            )
        rec = registry.normalizations.setdefault(label, {})
        rec.setdefault("frozen_twists", []).append(
            {"v_power": got[0], "frozen_exponent": list(got[1])}
        )

    seen: dict[tuple, tuple[SimpleLabel, ...]] = {}
    key0 = canonical_form(root)
    seen[key0] = root_labels
    registry.clusters.append((root, root_labels))
    for pos, lab in enumerate(root_labels):
        record_match(root, pos, lab)
    frontier = [(root, root_labels)]
    for _ in range(depth):
        next_frontier = []
        for seed, labels in frontier:
            for k in range(seed.mutable_count):
                kept = [labels[i] for i in range(seed.mutable_count) if i != k]
                new_label = _next_label(labels[k], kept)
                new_seed = mutate(seed, k)
                new_labels = tuple(
                    new_label if i == k else labels[i]
                    for i in range(seed.mutable_count)
                )
                key = canonical_form(new_seed)
                if key in seen:
                    if sorted(map(str, seen[key])) != sorted(map(str, new_labels)):
                        raise RegistryError(
                            "exchange graph labeling is inconsistent at "
                            f"{[str(l) for l in new_labels]}"
                        )
                    continue
                seen[key] = new_labels
                registry.clusters.append((new_seed, new_labels))
                for pos, lab in enumerate(new_labels):
                    record_match(new_seed, pos, lab)
                next_frontier.append((new_seed, new_labels))
        frontier = next_frontier


def build_registry(depth: int = 5, ell_window: int = 3) -> SimpleClassRegistry:
    """Build the registry of simple classes for the GL_2 torus.

    The ladder pins P_{+-1,l} for |l| <= ell_window through designated
    relations; the labeled graph walk to the given depth then checks every
    cluster variable against the pinned classes and contributes P_{-2,0}.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    seed = initial_seed_gl2()
    shift_vexp = fit_loop_shift(seed)
    registry = SimpleClassRegistry(
        form=seed.ambient, shift_vexp=shift_vexp, frozen_index=3
    )
    registry.classes[UNIT] = TorusElement.one(seed.ambient)
    registry.classes[P(1, 1)] = seed.variables[0]
    registry.classes[P(1, 0)] = seed.variables[1]
    registry.classes[P(2, 0)] = seed.variables[2]
    registry.classes[DET] = seed.variables[3]
    for lab in (P(1, 1), P(1, 0), P(2, 0), DET):
        registry.normalizations[lab] = {"pinned_by": "initial seed"}
    _ladder(registry, ell_window)
    _walk_and_match(registry, depth, ell_window)
    return registry


# -- suite evaluation ---------------------------------------------------------


def _instance_record(registry: SimpleClassRegistry, inst: RelationInstance) -> dict:
    missing = registry.covers(inst.labels())
    if missing:
        return {
            "name": inst.name,
            "relation": inst.render(),
            "status": "skip",
            "missing": [str(m) for m in missing],
        }
    lhs = inst.lhs.evaluate(registry)
    rhs = TorusElement.zero(registry.form)
    for w in inst.rhs:
        rhs = rhs + w.evaluate(registry)
    ok = lhs == rhs
    record = {
        "name": inst.name,
        "relation": inst.render(),
        "status": "pass" if ok else "fail",
        "lhs": str(lhs),
        "rhs": str(rhs),
    }
    if len(inst.rhs) == 1 and not ok:
        record["q_proportionality"] = detect_q_proportional(lhs, rhs)
    return record


def verify_relations(
    registry: SimpleClassRegistry, suite: str, ell_window: int = 2
) -> dict:
    """Run one suite over the window; exact pass/fail per instance.

    Instances whose labels are not covered by the registry become skip
    records listing the missing labels.
    """
    instances = suite_instances(suite, ell_window)
    records = [_instance_record(registry, inst) for inst in instances]
    summary = {
        "pass": sum(r["status"] == "pass" for r in records),
        "fail": sum(r["status"] == "fail" for r in records),
        "skip": sum(r["status"] == "skip" for r in records),
    }
    return {"suite": suite, "ell_window": ell_window, "instances": records,
            "summary": summary}


# -- rank-one suite -----------------------------------------------------------


def verify_abelian(shift_vexp: Optional[int] = None) -> dict:
    """Check the rank-one exchange identity in both orders.

    Each order must equal unit + (solved integer loop shift of the frozen
    Koszul-shift class); the two solved shifts are opposite, so the
    classical (v = 1) K-classes of the two products coincide.
    """
    seed = initial_seed_gl1(shift_vexp)
    if shift_vexp is None:
        shift_vexp = fit_loop_shift(initial_seed_gl2())
    x1 = seed.variables[0]
    x1p = mutate(seed, 0).variables[0]
    unit = TorusElement.one(seed.ambient)
    frozen = seed.variables[1]
    records = []
    shifts = []
    for name, prod in (("abelian.fwd", x1 * x1p), ("abelian.rev", x1p * x1)):
        diff = prod - unit
        vexp = detect_q_proportional(diff, frozen)
        ok = vexp is not None and vexp % shift_vexp == 0
        m = vexp // shift_vexp if ok else None
        shifts.append(m)
        records.append({
            "name": name,
            "relation": "P_{1,0} * P_{-1,0} = 1 + K{m}" if name.endswith("fwd")
            else "P_{-1,0} * P_{1,0} = 1 + K{m}",
            "status": "pass" if ok else "fail",
            "normalization_used": {"koszul_loop_shift": m},
            "lhs": str(prod),
        })
    classical_equal = (x1 * x1p).specialize_classical() == (x1p * x1).specialize_classical()
    opposite = None not in shifts and shifts[0] == -shifts[1]
    records.append({
        "name": "abelian.order_insensitive",
        "relation": "both orders have the same classical K-class",
        "status": "pass" if (classical_equal and opposite) else "fail",
        "shifts": shifts,
    })
    summary = {
        "pass": sum(r["status"] == "pass" for r in records),
        "fail": sum(r["status"] == "fail" for r in records),
        "skip": 0,
    }
    return {"suite": "abelian", "instances": records, "summary": summary}


# -- twist and duality --------------------------------------------------------


def dual_label(label: SimpleLabel) -> SimpleLabel:
    """Left-dual pattern on strip labels for n = 2: P_{1,l} goes to
    P_{-1,-l+2} and P_{-1,l} to P_{1,-l-1}, up to frozen powers."""
    if label.kind != "P" or abs(label.k) != 1:
        raise ValueError(f"dual pattern applies to strip labels, not {label}")
    if label.k == 1:
        return P(-1, -label.ell + 2)
    return P(1, -label.ell - 1)


def _find_cluster(registry: SimpleClassRegistry, labels: set[SimpleLabel]):
    for seed, labs in registry.clusters:
        if set(labs) == labels:
            return seed, labs
    return None


def verify_twist_duality(registry: SimpleClassRegistry) -> dict:
    """Check that source-mutation twists realize the left-dual pattern.

    Locates the cluster {P_{-1,-1}, P_{1,1}, P_{-1,0}}, twists it (three
    source mutations), and checks the landing cluster is {P_{1,0},
    P_{-1,1}, P_{1,-1}} class-by-class up to recorded frozen/v twists;
    then repeats the pattern on the other acyclic strip clusters whose
    expected duals are in the registry, and checks that twisting twice
    returns every class up to a frozen twist.
    """
    records = []
    frozen = [registry.frozen_index]
    main = _find_cluster(registry, {P(-1, -1), P(1, 1), P(-1, 0)})
    if main is None:
        return {
            "suite": "twist_duality",
            "instances": [{
                "name": "twist.locate",
                "status": "fail",
                "detail": "source cluster not found within walk depth",
            }],
            "summary": {"pass": 0, "fail": 1, "skip": 0},
        }

    checked_ells = set()
    for seed, labs in registry.clusters:
        if not all(l.kind == "P" and abs(l.k) == 1 for l in labs):
            continue
        acyclic, _ = is_acyclic(seed)
        if not acyclic:
            continue
        expected = [dual_label(l) for l in labs]
        if registry.covers(expected):
            continue
        twisted, sequence = twist(seed)
        is_main = set(labs) == {P(-1, -1), P(1, 1), P(-1, 0)}
        inst = {
            "name": "twist.cluster[%s]" % ",".join(str(l) for l in labs),
            "sequence_length": len(sequence),
            "source_labels": [str(l) for l in labs],
            "expected_duals": [str(l) for l in expected],
            "normalization_used": [],
        }
        ok = len(sequence) == seed.mutable_count
        for pos, lab in enumerate(labs):
            got = match_up_to_frozen(
                twisted.variables[pos], registry.cls(expected[pos]), frozen
            )
            if got is None:
                ok = False
                inst["normalization_used"].append(None)
            else:
                inst["normalization_used"].append(
                    {"v_power": got[0], "frozen_exponent": list(got[1])}
                )
                if lab.k == 1:
                    checked_ells.add(lab.ell)
        # twist twice: back to the start up to frozen twists
        double, _ = twist(twisted)
        for pos in range(seed.mutable_count):
            if match_up_to_frozen(double.variables[pos], seed.variables[pos], frozen) is None:
                ok = False
        inst["status"] = "pass" if ok else "fail"
        if is_main:
            inst["name"] = "twist.main_cluster"
        records.append(inst)

    coverage_ok = {-1, 0, 1} <= checked_ells
    records.append({
        "name": "twist.dual_pattern_coverage[l in -1..1]",
        "status": "pass" if coverage_ok else "fail",
        "checked_ells": sorted(checked_ells),
    })
    summary = {
        "pass": sum(r["status"] == "pass" for r in records),
        "fail": sum(r["status"] == "fail" for r in records),
        "skip": 0,
    }
    return {"suite": "twist_duality", "instances": records, "summary": summary}


# -- cross-checks used by the test suite --------------------------------------


def q_commuting_pairs(registry: SimpleClassRegistry) -> list[dict]:
    """All unordered pairs of P-type registry classes whose products are
    q-proportional, with the cluster co-membership check."""
    labels = sorted(
        (l for l in registry.classes if l.kind == "P"), key=lambda l: (l.k, l.ell)
    )
    cluster_sets = [set(labs) for _, labs in registry.clusters]
    out = []
    for i, a in enumerate(labels):
        for b in labels[i + 1:]:
            xy = registry.cls(a) * registry.cls(b)
            yx = registry.cls(b) * registry.cls(a)
            m = detect_q_proportional(xy, yx)
            if m is None:
                continue
            together = any(a in cs and b in cs for cs in cluster_sets)
            out.append({
                "pair": (str(a), str(b)),
                "v_power": m,
                "share_cluster": together,
            })
    return out
