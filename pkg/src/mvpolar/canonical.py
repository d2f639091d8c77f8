"""Canonical-frame machinery over finite modal lattices.

A ModalLattice stands in for the algebra of formulas: a finite bounded
lattice with a meet-and-top preserving box map and a join-and-bottom
preserving diamond map.  Filters and ideals valued in a truth algebra
are enumerated exhaustively, the inverse modal transforms are computed
by their defining joins, and the canonical frame over the proper
filter/ideal pairs is built from the displayed sum formulas.  Both
displayed forms of each canonical relation are computed independently
and compared.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .algebra import TruthAlgebra
from .context import Concept, Context
from .errors import InputError, ResourceError, UsageError
from .frames import EnrichedContext
from .mvsets import MvRelation, MvSet
from .semantics import Model
from .syntax import Formula

DEFAULT_ENUMERATION_BUDGET = 1_000_000


class ModalLattice:
    """Finite bounded lattice with normal box and diamond maps."""

    __slots__ = ("elements", "leq", "join_table", "meet_table", "box_map", "dia_map", "atoms", "_index")

    def __init__(
        self,
        elements: Sequence[str],
        leq: Sequence[Sequence[bool]],
        box: Mapping[str, str],
        dia: Mapping[str, str],
        atoms: Sequence[str] = (),
    ):
        names = tuple(elements)
        if not names or len(set(names)) != len(names) or not all(isinstance(e, str) and e for e in names):
            raise InputError("lattice elements must be distinct nonempty names")
        n = len(names)
        rows = tuple(tuple(bool(v) for v in row) for row in leq)
        if len(rows) != n or any(len(row) != n for row in rows):
            raise InputError(f"leq must be a {n}x{n} matrix")
        self.elements = names
        self.leq = rows
        self._index = {e: i for i, e in enumerate(names)}
        self._validate_poset()
        self.join_table = self._bounds_table(upper=True)
        self.meet_table = self._bounds_table(upper=False)
        self.box_map = self._normalize_map("box", box)
        self.dia_map = self._normalize_map("dia", dia)
        self.atoms = tuple(atoms)
        for a in self.atoms:
            if a not in self._index:
                raise InputError(f"designated atom {a!r} is not a lattice element")
        self._validate_modalities()

    def _validate_poset(self):
        n = len(self.elements)
        leq = self.leq
        for i in range(n):
            if not leq[i][i]:
                raise InputError(f"leq is not reflexive at {self.elements[i]!r}")
        for i in range(n):
            for j in range(n):
                if i != j and leq[i][j] and leq[j][i]:
                    raise InputError(f"leq is not antisymmetric on {self.elements[i]!r}, {self.elements[j]!r}")
                if leq[i][j]:
                    for k in range(n):
                        if leq[j][k] and not leq[i][k]:
                            raise InputError(
                                f"leq is not transitive through {self.elements[j]!r}"
                            )

    def _bounds_table(self, upper: bool):
        n = len(self.elements)
        leq = self.leq
        table = []
        for i in range(n):
            row = []
            for j in range(n):
                if upper:
                    bounds = [k for k in range(n) if leq[i][k] and leq[j][k]]
                    best = [u for u in bounds if all(leq[u][k] for k in bounds)]
                else:
                    bounds = [k for k in range(n) if leq[k][i] and leq[k][j]]
                    best = [u for u in bounds if all(leq[k][u] for k in bounds)]
                if len(best) != 1:
                    kind = "join" if upper else "meet"
                    raise InputError(
                        f"elements {self.elements[i]!r} and {self.elements[j]!r} have no {kind}"
                    )
                row.append(best[0])
            table.append(tuple(row))
        return tuple(table)

    def _normalize_map(self, name: str, mapping: Mapping[str, str]):
        out = []
        for e in self.elements:
            if e not in mapping:
                raise InputError(f"{name} map misses element {e!r}")
            target = mapping[e]
            if target not in self._index:
                raise InputError(f"{name} map sends {e!r} to unknown element {target!r}")
            out.append(self._index[target])
        if len(mapping) != len(self.elements):
            extra = sorted(set(mapping) - set(self.elements))
            raise InputError(f"{name} map mentions unknown elements {extra}")
        return tuple(out)

    def _validate_modalities(self):
        n = len(self.elements)
        box, dia = self.box_map, self.dia_map
        if box[self.top_index] != self.top_index:
            raise InputError("box must send top to top")
        if dia[self.bottom_index] != self.bottom_index:
            raise InputError("dia must send bottom to bottom")
        for i in range(n):
            for j in range(n):
                if box[self.meet_table[i][j]] != self.meet_table[box[i]][box[j]]:
                    raise InputError(
                        f"box does not preserve the meet of {self.elements[i]!r} and {self.elements[j]!r}"
                    )
                if dia[self.join_table[i][j]] != self.join_table[dia[i]][dia[j]]:
                    raise InputError(
                        f"dia does not preserve the join of {self.elements[i]!r} and {self.elements[j]!r}"
                    )

    @property
    def bottom_index(self) -> int:
        return next(i for i in range(len(self.elements)) if all(self.leq[i]))

    @property
    def top_index(self) -> int:
        return next(i for i in range(len(self.elements)) if all(row[i] for row in self.leq))

    def __len__(self):
        return len(self.elements)

    def index(self, element: str) -> int:
        try:
            return self._index[element]
        except KeyError:
            raise UsageError(f"{element!r} is not a lattice element") from None

    def __repr__(self):
        return f"ModalLattice({list(self.elements)})"


def chain_modal_lattice(n: int, box: Optional[Mapping[str, str]] = None, dia=None, atoms=()) -> ModalLattice:
    """Chain e0 < e1 < ... with identity modalities unless given."""
    if n < 1:
        raise InputError("a chain needs at least one element")
    names = [f"e{i}" for i in range(n)]
    leq = [[i <= j for j in range(n)] for i in range(n)]
    ident = {e: e for e in names}
    return ModalLattice(names, leq, box if box is not None else ident, dia if dia is not None else ident, atoms)


def diamond_modal_lattice(box: Optional[Mapping[str, str]] = None, dia=None, atoms=()) -> ModalLattice:
    """Four elements: e0 below incomparable e1, e2 below e3."""
    names = ["e0", "e1", "e2", "e3"]
    leq = [
        [True, True, True, True],
        [False, True, False, True],
        [False, False, True, True],
        [False, False, False, True],
    ]
    ident = {e: e for e in names}
    return ModalLattice(names, leq, box if box is not None else ident, dia if dia is not None else ident, atoms)


def _is_filter(lattice: ModalLattice, algebra: TruthAlgebra, degrees) -> bool:
    if degrees[lattice.top_index] != algebra.top:
        return False
    meet = lattice.meet_table
    n = len(lattice)
    for i in range(n):
        for j in range(i, n):
            if degrees[meet[i][j]] != algebra.meet(degrees[i], degrees[j]):
                return False
    return True


def _is_ideal(lattice: ModalLattice, algebra: TruthAlgebra, degrees) -> bool:
    if degrees[lattice.bottom_index] != algebra.top:
        return False
    join = lattice.join_table
    n = len(lattice)
    for i in range(n):
        for j in range(i, n):
            if degrees[join[i][j]] != algebra.meet(degrees[i], degrees[j]):
                return False
    return True


@dataclass(frozen=True)
class MvFilter:
    """Meet-and-top preserving map from the lattice into the algebra."""

    lattice: ModalLattice
    algebra: TruthAlgebra
    degrees: tuple

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(self.algebra.check_value(v) for v in self.degrees))
        if len(self.degrees) != len(self.lattice):
            raise InputError("filter degrees must cover every lattice element")
        if not _is_filter(self.lattice, self.algebra, self.degrees):
            raise InputError("the map is not a filter: it must preserve meets and top")

    @property
    def proper(self) -> bool:
        return self.degrees[self.lattice.bottom_index] == self.algebra.bottom

    def value(self, element: str) -> int:
        return self.degrees[self.lattice.index(element)]


@dataclass(frozen=True)
class MvIdeal:
    """Map sending joins to meets with value 1 on bottom."""

    lattice: ModalLattice
    algebra: TruthAlgebra
    degrees: tuple

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(self.algebra.check_value(v) for v in self.degrees))
        if len(self.degrees) != len(self.lattice):
            raise InputError("ideal degrees must cover every lattice element")
        if not _is_ideal(self.lattice, self.algebra, self.degrees):
            raise InputError("the map is not an ideal: it must send joins to meets and bottom to 1")

    @property
    def proper(self) -> bool:
        return self.degrees[self.lattice.top_index] == self.algebra.bottom

    def value(self, element: str) -> int:
        return self.degrees[self.lattice.index(element)]


def _candidate_maps(lattice: ModalLattice, algebra: TruthAlgebra, budget: int):
    total = algebra.size ** len(lattice)
    if total > budget:
        raise ResourceError(
            f"{total} candidate maps over {len(lattice)} elements exceed the budget of {budget}"
        )
    return itertools.product(range(algebra.size), repeat=len(lattice))


def enumerate_filters(
    lattice: ModalLattice, algebra: TruthAlgebra, budget: int = DEFAULT_ENUMERATION_BUDGET
):
    """All filters, in lexicographic order of their degree tuples."""
    return tuple(
        MvFilter(lattice, algebra, degrees)
        for degrees in _candidate_maps(lattice, algebra, budget)
        if _is_filter(lattice, algebra, degrees)
    )


def enumerate_ideals(
    lattice: ModalLattice, algebra: TruthAlgebra, budget: int = DEFAULT_ENUMERATION_BUDGET
):
    """All ideals, in lexicographic order of their degree tuples."""
    return tuple(
        MvIdeal(lattice, algebra, degrees)
        for degrees in _candidate_maps(lattice, algebra, budget)
        if _is_ideal(lattice, algebra, degrees)
    )


def _diamond_inverse_degrees(f: MvFilter) -> tuple:
    lattice, algebra = f.lattice, f.algebra
    dia, leq = lattice.dia_map, lattice.leq
    return tuple(
        algebra.join_all(f.degrees[b] for b in range(len(lattice)) if leq[dia[b]][a])
        for a in range(len(lattice))
    )


def _box_inverse_degrees(i: MvIdeal) -> tuple:
    lattice, algebra = i.lattice, i.algebra
    box, leq = lattice.box_map, lattice.leq
    return tuple(
        algebra.join_all(i.degrees[b] for b in range(len(lattice)) if leq[a][box[b]])
        for a in range(len(lattice))
    )


def diamond_inverse(f: MvFilter) -> MvFilter:
    """Maps a to the join of f(b) over all b with dia(b) below a."""
    return MvFilter(f.lattice, f.algebra, _diamond_inverse_degrees(f))


def box_inverse(i: MvIdeal) -> MvIdeal:
    """Maps a to the join of i(b) over all b with a below box(b)."""
    return MvIdeal(i.lattice, i.algebra, _box_inverse_degrees(i))


@dataclass(frozen=True)
class CanonicalSurrogate:
    """Canonical frame over the proper filter/ideal pairs of a lattice."""

    lattice: ModalLattice
    algebra: TruthAlgebra
    filters: tuple
    ideals: tuple
    frame: EnrichedContext
    diamond_forms_agree: bool
    box_forms_agree: bool

    @property
    def incidence(self) -> MvRelation:
        return self.frame.base.incidence

    @property
    def r_box(self) -> MvRelation:
        return self.frame.r_box

    @property
    def r_diamond(self) -> MvRelation:
        return self.frame.r_diamond

    @property
    def compatibility(self):
        return self.frame.compatibility


def build_surrogate(
    lattice: ModalLattice, algebra: TruthAlgebra, budget: int = DEFAULT_ENUMERATION_BUDGET
) -> CanonicalSurrogate:
    """Canonical frame from the displayed sum formulas.

    Objects are the proper filters, attributes the proper ideals.  Each
    canonical relation is computed in both displayed forms (the direct
    sum and the one routed through the inverse transform); the surrogate
    records whether they agree everywhere.
    """
    filters = [f for f in enumerate_filters(lattice, algebra, budget) if f.proper]
    ideals = [i for i in enumerate_ideals(lattice, algebra, budget) if i.proper]
    if not filters or not ideals:
        raise InputError("the lattice has no proper filters or no proper ideals")
    otimes = algebra.otimes
    join_all = algebra.join_all
    n = len(lattice)
    box, dia = lattice.box_map, lattice.dia_map

    def sum_over(fd, gd):
        return join_all(otimes(fd[a], gd[a]) for a in range(n))

    incidence_rows = [[sum_over(f.degrees, i.degrees) for i in ideals] for f in filters]
    box_rows = [
        [sum_over(tuple(f.degrees[box[a]] for a in range(n)), i.degrees) for i in ideals]
        for f in filters
    ]
    box_alt = [
        [sum_over(f.degrees, _box_inverse_degrees(i)) for i in ideals] for f in filters
    ]
    dia_rows = [
        [sum_over(f.degrees, tuple(i.degrees[dia[a]] for a in range(n))) for f in filters]
        for i in ideals
    ]
    dia_alt = [
        [sum_over(_diamond_inverse_degrees(f), i.degrees) for f in filters] for i in ideals
    ]

    f_names = [f"f{k}" for k in range(len(filters))]
    i_names = [f"i{k}" for k in range(len(ideals))]
    base = Context(MvRelation(algebra, f_names, i_names, incidence_rows))
    frame = EnrichedContext(
        base,
        r_box=MvRelation(algebra, f_names, i_names, box_rows),
        r_diamond=MvRelation(algebra, i_names, f_names, dia_rows),
    )
    return CanonicalSurrogate(
        lattice,
        algebra,
        tuple(filters),
        tuple(ideals),
        frame,
        dia_rows == dia_alt,
        box_rows == box_alt,
    )


def canonical_model(surrogate: CanonicalSurrogate) -> Model:
    """Model whose valuation reads each designated atom off the filters and ideals."""
    lattice = surrogate.lattice
    if not lattice.atoms:
        raise InputError("the lattice designates no atoms")
    algebra = surrogate.algebra
    f_names = surrogate.frame.base.objects
    i_names = surrogate.frame.base.attributes
    valuation = {}
    for p in lattice.atoms:
        k = lattice.index(p)
        extent = MvSet(algebra, f_names, tuple(f.degrees[k] for f in surrogate.filters))
        intent = MvSet(algebra, i_names, tuple(i.degrees[k] for i in surrogate.ideals))
        valuation[p] = Concept(extent, intent)
    return Model(surrogate.frame, valuation)


def eval_in_lattice(lattice: ModalLattice, formula: Formula, assignment: Mapping[str, str]) -> str:
    """Interpret a formula as a lattice element under an atom assignment."""

    def go(f: Formula) -> int:
        if f.op == "atom":
            try:
                return lattice.index(assignment[f.name])
            except KeyError:
                raise UsageError(f"no assignment for atom {f.name!r}") from None
        if f.op == "top":
            return lattice.top_index
        if f.op == "bot":
            return lattice.bottom_index
        if f.op == "and":
            return lattice.meet_table[go(f.args[0])][go(f.args[1])]
        if f.op == "or":
            return lattice.join_table[go(f.args[0])][go(f.args[1])]
        if f.op == "box":
            return lattice.box_map[go(f.args[0])]
        if f.op == "dia":
            return lattice.dia_map[go(f.args[0])]
        raise UsageError(f"the lattice carries no interpretation for {f.op!r}")

    return lattice.elements[go(formula)]


@dataclass(frozen=True)
class LemmaCheck:
    name: str
    required: bool
    ok: bool
    failure_count: int = 0
    witnesses: tuple = ()


@dataclass(frozen=True)
class LemmaReport:
    lattice: ModalLattice
    algebra: TruthAlgebra
    checks: tuple

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks if c.required)

    def to_text(self) -> str:
        lines = []
        for c in self.checks:
            tag = "PASS" if c.ok else ("FAIL" if c.required else "fail (informative)")
            lines.append(f"{tag:18} {c.name}" + (f"  [{c.failure_count} witnesses]" if c.failure_count else ""))
        lines.append(f"overall (required items): {'PASS' if self.ok else 'FAIL'}")
        return "\n".join(lines)


_WITNESS_CAP = 10


class _Tally:
    def __init__(self, name: str, required: bool):
        self.name = name
        self.required = required
        self.count = 0
        self.witnesses = []

    def hit(self, witness: dict):
        self.count += 1
        if len(self.witnesses) < _WITNESS_CAP:
            self.witnesses.append(witness)

    def done(self) -> LemmaCheck:
        return LemmaCheck(self.name, self.required, self.count == 0, self.count, tuple(self.witnesses))


def lemma_suite(
    lattice: ModalLattice, algebra: TruthAlgebra, budget: int = DEFAULT_ENUMERATION_BUDGET
) -> LemmaReport:
    """Exhaustive checks of the transform and sum lemmas on one lattice.

    Properness preservation is reported informatively: it is only
    guaranteed for algebras of formulas, and arbitrary finite lattices
    can break it without contradicting anything.
    """
    filters = enumerate_filters(lattice, algebra, budget)
    ideals = enumerate_ideals(lattice, algebra, budget)
    n = len(lattice)
    leq, box, dia = lattice.leq, lattice.box_map, lattice.dia_map
    names = lattice.elements

    order_f = _Tally("filters preserve order", True)
    order_i = _Tally("ideals reverse order", True)
    closed_f = _Tally("filter closed under diamond-inverse", True)
    closed_i = _Tally("ideal closed under box-inverse", True)
    proper_f = _Tally("diamond-inverse preserves properness", False)
    proper_i = _Tally("box-inverse preserves properness", False)
    bound_f = _Tally("pointwise diamond bound", True)
    bound_i = _Tally("pointwise box bound", True)
    sum_dia = _Tally("diamond sum identity", True)
    sum_box = _Tally("box sum identity", True)

    def check_order(degrees, reverse: bool, tally: _Tally, label: str):
        for a in range(n):
            for b in range(n):
                if not leq[a][b]:
                    continue
                lo, hi = (degrees[b], degrees[a]) if reverse else (degrees[a], degrees[b])
                if algebra.meet(lo, hi) != lo:
                    tally.hit({label: degrees, "below": names[a], "above": names[b]})
                    return

    inv_f = {}
    for f in filters:
        check_order(f.degrees, False, order_f, "filter")
        g = _diamond_inverse_degrees(f)
        inv_f[f.degrees] = g
        if not _is_filter(lattice, algebra, g):
            closed_f.hit({"filter": f.degrees, "image": g})
        elif f.proper and g[lattice.bottom_index] != algebra.bottom:
            proper_f.hit({"filter": f.degrees, "image": g})
        for a in range(n):
            if not algebra.leq(f.degrees[a], g[dia[a]]):
                bound_f.hit({"filter": f.degrees, "element": names[a]})
                break

    inv_i = {}
    for i in ideals:
        check_order(i.degrees, True, order_i, "ideal")
        h = _box_inverse_degrees(i)
        inv_i[i.degrees] = h
        if not _is_ideal(lattice, algebra, h):
            closed_i.hit({"ideal": i.degrees, "image": h})
        elif i.proper and h[lattice.top_index] != algebra.bottom:
            proper_i.hit({"ideal": i.degrees, "image": h})
        for a in range(n):
            if not algebra.leq(i.degrees[a], h[box[a]]):
                bound_i.hit({"ideal": i.degrees, "element": names[a]})
                break

    otimes, join_all = algebra.otimes, algebra.join_all
    for f in filters:
        for i in ideals:
            direct = join_all(otimes(f.degrees[a], i.degrees[dia[a]]) for a in range(n))
            routed = join_all(otimes(inv_f[f.degrees][a], i.degrees[a]) for a in range(n))
            if direct != routed:
                sum_dia.hit({"filter": f.degrees, "ideal": i.degrees, "direct": direct, "routed": routed})
            direct = join_all(otimes(f.degrees[box[a]], i.degrees[a]) for a in range(n))
            routed = join_all(otimes(f.degrees[a], inv_i[i.degrees][a]) for a in range(n))
            if direct != routed:
                sum_box.hit({"filter": f.degrees, "ideal": i.degrees, "direct": direct, "routed": routed})

    checks = tuple(
        t.done()
        for t in (order_f, order_i, closed_f, proper_f, closed_i, proper_i, bound_f, bound_i, sum_dia, sum_box)
    )
    return LemmaReport(lattice, algebra, checks)
