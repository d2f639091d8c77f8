"""Seeded random generation of contexts, compatible frames and formulas.

Frames are sampled by drawing every degree uniformly and then repairing
the box and diamond relations to compatibility with the closure
operators; the repaired frame is re-checked and resampling is bounded.
"""

from __future__ import annotations

import random
from typing import Optional, Sequence

from .algebra import TruthAlgebra
from .context import Context
from .errors import ResourceError
from .frames import EnrichedContext, compatible_box_closure, compatible_diamond_closure
from .mvsets import MvRelation
from .syntax import BOT, TOP, Formula, atom

DEFAULT_SEED = 2026
_REPAIR_RETRIES = 5


def random_relation(rng: random.Random, algebra: TruthAlgebra, source, target) -> MvRelation:
    rows = [[rng.randrange(algebra.size) for _ in target] for _ in source]
    return MvRelation(algebra, source, target, rows)


def random_context(
    rng: random.Random, algebra: TruthAlgebra, n_objects: int, n_attributes: int
) -> Context:
    objects = [f"a{i + 1}" for i in range(n_objects)]
    attributes = [f"x{j + 1}" for j in range(n_attributes)]
    return Context(random_relation(rng, algebra, objects, attributes))


def random_compatible_frame(
    rng: random.Random,
    algebra: TruthAlgebra,
    n_objects: int,
    n_attributes: int,
    with_rhd: bool = False,
    with_lhd: bool = False,
) -> EnrichedContext:
    """Random frame whose box and diamond relations pass the compatibility check."""
    base = random_context(rng, algebra, n_objects, n_attributes)
    objects, attributes = base.objects, base.attributes
    for _ in range(_REPAIR_RETRIES):
        r_box = compatible_box_closure(base, random_relation(rng, algebra, objects, attributes))
        r_diamond = compatible_diamond_closure(base, random_relation(rng, algebra, attributes, objects))
        frame = EnrichedContext(
            base,
            r_box=r_box,
            r_diamond=r_diamond,
            r_rhd=random_relation(rng, algebra, objects, objects) if with_rhd else None,
            r_lhd=random_relation(rng, algebra, attributes, attributes) if with_lhd else None,
        )
        if frame.compatibility.ok:
            return frame
    raise ResourceError("could not repair a sampled frame to compatibility")


def random_formula(rng: random.Random, atoms: Sequence[str], max_depth: int) -> Formula:
    """Uniformly shaped random formula over the given atom names."""
    if max_depth <= 0 or rng.random() < 0.2:
        leaves: list = [TOP, BOT] + [atom(a) for a in atoms]
        return leaves[rng.randrange(len(leaves))]
    op = rng.choice(("and", "or", "box", "dia", "rhd", "lhd"))
    if op in ("and", "or"):
        return Formula(op, (random_formula(rng, atoms, max_depth - 1), random_formula(rng, atoms, max_depth - 1)))
    return Formula(op, (random_formula(rng, atoms, max_depth - 1),))


def make_rng(seed: Optional[int]) -> random.Random:
    return random.Random(DEFAULT_SEED if seed is None else seed)
