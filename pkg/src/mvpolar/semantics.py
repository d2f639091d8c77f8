"""Models, formula evaluation, sequent truth and validity.

Two evaluation routes are kept deliberately separate.  `evaluate` walks
the formula tree and recomputes every concept from the definitions; it
is the reference implementation.  `ComplexAlgebra` tabulates the lattice
operations and the modal maps once and then works on concept indices,
which is what the validity search uses.  Tests compare the two.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Optional

from .context import Concept, ConceptLattice, enumerate_concepts
from .errors import CapabilityError, InputError, ResourceError, UsageError
from .frames import EnrichedContext
from .mvsets import MvSet
from .syntax import Formula, Sequent, axiom_catalogue

DEFAULT_VALUATION_BUDGET = 1_000_000


class Model:
    """An enriched context together with a concept for every atom."""

    __slots__ = ("frame", "valuation")

    def __init__(self, frame: EnrichedContext, valuation: Mapping[str, Concept]):
        base = frame.base
        checked = {}
        for name, c in valuation.items():
            if not isinstance(c, Concept):
                raise InputError(f"valuation of {name!r} is not a concept")
            if c.extent.algebra != base.algebra or c.extent.carrier != base.objects:
                raise InputError(f"valuation of {name!r} lives on the wrong object set")
            if base.up(c.extent) != c.intent or base.down(c.intent) != c.extent:
                raise InputError(f"valuation of {name!r} is not a stable pair")
            checked[name] = c
        self.frame = frame
        self.valuation = checked

    def __repr__(self):
        return f"Model({self.frame!r}, atoms={sorted(self.valuation)})"


def evaluate(model: Model, formula: Formula, _memo: Optional[dict] = None) -> Concept:
    """The concept a formula denotes, computed from the definitions."""
    memo = {} if _memo is None else _memo
    if formula in memo:
        return memo[formula]
    base = model.frame.base
    op = formula.op
    if op == "atom":
        try:
            out = model.valuation[formula.name]
        except KeyError:
            raise UsageError(f"no valuation for atom {formula.name!r}") from None
    elif op == "top":
        ext = MvSet.constant(base.algebra, base.objects, base.algebra.top)
        out = Concept(ext, base.up(ext))
    elif op == "bot":
        intn = MvSet.constant(base.algebra, base.attributes, base.algebra.top)
        out = Concept(base.down(intn), intn)
    elif op == "and":
        lhs = evaluate(model, formula.args[0], memo)
        rhs = evaluate(model, formula.args[1], memo)
        ext = lhs.extent.meet(rhs.extent)
        out = Concept(ext, base.up(ext))
    elif op == "or":
        lhs = evaluate(model, formula.args[0], memo)
        rhs = evaluate(model, formula.args[1], memo)
        intn = lhs.intent.meet(rhs.intent)
        out = Concept(base.down(intn), intn)
    elif op == "box":
        out = model.frame.box_op(evaluate(model, formula.args[0], memo))
    elif op == "dia":
        out = model.frame.diamond_op(evaluate(model, formula.args[0], memo))
    elif op == "rhd":
        out = model.frame.rhd_op(evaluate(model, formula.args[0], memo))
    elif op == "lhd":
        out = model.frame.lhd_op(evaluate(model, formula.args[0], memo))
    else:
        raise UsageError(f"unknown connective {op!r}")
    memo[formula] = out
    return out


def membership_degree(model: Model, obj: str, formula: Formula) -> int:
    """Degree to which an object belongs to the formula's extent."""
    return evaluate(model, formula).extent.value(obj)


def description_degree(model: Model, attr: str, formula: Formula) -> int:
    """Degree to which an attribute describes the formula's concept."""
    return evaluate(model, formula).intent.value(attr)


def truth_witness(model: Model, sequent: Sequent) -> Optional[dict]:
    """None when the sequent holds, else the first object that breaks it."""
    memo: dict = {}
    lhs = evaluate(model, sequent.lhs, memo).extent
    rhs = evaluate(model, sequent.rhs, memo).extent
    alg = lhs.algebra
    for k, name in enumerate(lhs.carrier):
        a, b = lhs.degrees[k], rhs.degrees[k]
        if alg.meet(a, b) != a:
            return {"object": name, "lhs_degree": a, "rhs_degree": b}
    return None


def sequent_true(model: Model, sequent: Sequent) -> bool:
    """Whether the left extent is pointwise below the right extent."""
    return truth_witness(model, sequent) is None


class ComplexAlgebra:
    """Concept lattice of a frame with the modal maps tabulated.

    Formulas are evaluated on concept indices, so after the one-time
    table construction each connective costs one lookup.
    """

    _OPS = (("box", "r_box", True), ("dia", "r_diamond", True), ("rhd", "r_rhd", False), ("lhd", "r_lhd", False))

    def __init__(self, frame: EnrichedContext, lattice: Optional[ConceptLattice] = None):
        self.frame = frame
        self.lattice = enumerate_concepts(frame.base) if lattice is None else lattice
        self.maps = {}
        fns = {"box": frame.box_op, "dia": frame.diamond_op, "rhd": frame.rhd_op, "lhd": frame.lhd_op}
        for op, slot, need in self._OPS:
            try:
                frame._require(slot, need_compatible=need)
            except CapabilityError:
                self.maps[op] = None
                continue
            fn = fns[op]
            self.maps[op] = tuple(self.lattice.index_of(fn(c)) for c in self.lattice)

    def __len__(self):
        return len(self.lattice)

    def _unary(self, op: str):
        table = self.maps[op]
        if table is None:
            slot, need = next((s, n) for o, s, n in self._OPS if o == op)
            self.frame._require(slot, need_compatible=need)
        return table

    def eval_indexed(self, formula: Formula, assignment: Mapping[str, int]) -> int:
        """Concept index of the formula under an atom-to-index assignment."""
        memo: dict = {}

        def go(f: Formula) -> int:
            if f in memo:
                return memo[f]
            if f.op == "atom":
                try:
                    v = assignment[f.name]
                except KeyError:
                    raise UsageError(f"no valuation for atom {f.name!r}") from None
            elif f.op == "top":
                v = self.lattice.top_index
            elif f.op == "bot":
                v = self.lattice.bottom_index
            elif f.op == "and":
                v = self.lattice.meet_table[go(f.args[0])][go(f.args[1])]
            elif f.op == "or":
                v = self.lattice.join_table[go(f.args[0])][go(f.args[1])]
            else:
                v = self._unary(f.op)[go(f.args[0])]
            memo[f] = v
            return v

        return go(formula)

    def sequent_holds(self, sequent: Sequent, assignment: Mapping[str, int]) -> bool:
        return self.lattice.order[self.eval_indexed(sequent.lhs, assignment)][
            self.eval_indexed(sequent.rhs, assignment)
        ]


@dataclass(frozen=True)
class ValidityVerdict:
    valid: bool
    countermodel: Optional[dict]
    valuations_checked: int
    lattice_size: int

    def __bool__(self):
        return self.valid


def sequent_valid(
    frame: EnrichedContext,
    sequent: Sequent,
    budget: int = DEFAULT_VALUATION_BUDGET,
    algebra: Optional[ComplexAlgebra] = None,
) -> ValidityVerdict:
    """Check the sequent under every valuation of its atoms.

    Valuations are scanned in lexicographic order over the lattice's
    concept indices, so the reported countermodel is deterministic: it is
    the first one in that order.
    """
    ca = ComplexAlgebra(frame) if algebra is None else algebra
    atoms = sequent.atoms()
    size = len(ca.lattice)
    total = size ** len(atoms)
    if total > budget:
        raise ResourceError(
            f"{total} valuations of {len(atoms)} atoms over {size} concepts exceed the budget of {budget}"
        )
    checked = 0
    for combo in itertools.product(range(size), repeat=len(atoms)):
        checked += 1
        assignment = dict(zip(atoms, combo))
        if not ca.sequent_holds(sequent, assignment):
            counter = {name: ca.lattice[i] for name, i in assignment.items()}
            return ValidityVerdict(False, counter, checked, size)
    return ValidityVerdict(True, None, checked, size)


@dataclass(frozen=True)
class RuleResult:
    name: str
    kind: str
    ok: bool
    detail: Optional[dict] = None


@dataclass(frozen=True)
class SoundnessReport:
    ran: bool
    reason: str
    results: tuple = ()

    @property
    def ok(self) -> bool:
        return self.ran and all(r.ok for r in self.results)

    def to_text(self) -> str:
        if not self.ran:
            return f"soundness suite refused to run: {self.reason}"
        lines = []
        for r in self.results:
            lines.append(f"{'PASS' if r.ok else 'FAIL'}  {r.kind:5}  {r.name}")
        lines.append(f"overall: {'PASS' if self.ok else 'FAIL'}")
        return "\n".join(lines)


def soundness_suite(frame: EnrichedContext, budget: int = DEFAULT_VALUATION_BUDGET) -> SoundnessReport:
    """Check every axiom and the two monotonicity rules on one frame.

    Frames whose relations fail the compatibility check get a report with
    ran=False: the modal operations are not concept-valued there, so
    passing or failing would be meaningless.
    """
    frame._require("r_box")
    frame._require("r_diamond")
    report = frame.compatibility
    if not report.ok:
        return SoundnessReport(False, report.describe())
    ca = ComplexAlgebra(frame)
    results = []
    for seq in axiom_catalogue():
        verdict = sequent_valid(frame, seq, budget=budget, algebra=ca)
        detail = None
        if not verdict.valid:
            detail = {name: repr(c) for name, c in verdict.countermodel.items()}
        results.append(RuleResult(str(seq), "axiom", verdict.valid, detail))
    size = len(ca.lattice)
    for op, label in (("box", "box preserves entailment"), ("dia", "dia preserves entailment")):
        table = ca.maps[op]
        bad = None
        for i in range(size):
            for j in range(size):
                if ca.lattice.order[i][j] and not ca.lattice.order[table[i]][table[j]]:
                    bad = {"below": repr(ca.lattice[i]), "above": repr(ca.lattice[j])}
                    break
            if bad:
                break
        results.append(RuleResult(label, "rule", bad is None, bad))
    return SoundnessReport(True, "", tuple(results))
