import itertools

import pytest

from mvpolar import (
    InputError,
    ResourceError,
    UsageError,
    boolean_algebra,
    evaluate,
    lukasiewicz_chain,
    membership_degree,
    parse_formula,
)
from mvpolar.canonical import (
    ModalLattice,
    MvFilter,
    MvIdeal,
    box_inverse,
    build_surrogate,
    canonical_model,
    chain_modal_lattice,
    diamond_inverse,
    diamond_modal_lattice,
    enumerate_filters,
    enumerate_ideals,
    eval_in_lattice,
    lemma_suite,
)

B = boolean_algebra()
L3 = lukasiewicz_chain(3)


def test_poset_validation():
    with pytest.raises(InputError, match="reflexive"):
        ModalLattice(["a"], [[False]], {"a": "a"}, {"a": "a"})
    with pytest.raises(InputError, match="antisymmetric"):
        ModalLattice(
            ["a", "b"], [[True, True], [True, True]], {"a": "a", "b": "b"}, {"a": "a", "b": "b"}
        )
    with pytest.raises(InputError, match="transitive"):
        ModalLattice(
            ["a", "b", "c"],
            [[True, True, False], [False, True, True], [False, False, True]],
            {e: e for e in "abc"},
            {e: e for e in "abc"},
        )
    with pytest.raises(InputError, match="join|meet"):
        ModalLattice(
            ["a", "b"], [[True, False], [False, True]], {"a": "a", "b": "b"}, {"a": "a", "b": "b"}
        )
    with pytest.raises(InputError):
        ModalLattice(["a", "a"], [[True, True], [True, True]], {"a": "a"}, {"a": "a"})
    with pytest.raises(InputError):
        ModalLattice(["a"], [[True, True]], {"a": "a"}, {"a": "a"})


def test_modality_validation():
    with pytest.raises(InputError, match="top to top"):
        chain_modal_lattice(2, box={"e0": "e1", "e1": "e0"})
    with pytest.raises(InputError, match="bottom to bottom"):
        chain_modal_lattice(2, dia={"e0": "e1", "e1": "e1"})
    with pytest.raises(InputError, match="meet"):
        diamond_modal_lattice(box={"e0": "e3", "e1": "e1", "e2": "e2", "e3": "e3"})
    with pytest.raises(InputError, match="join"):
        diamond_modal_lattice(dia={"e0": "e0", "e1": "e1", "e2": "e2", "e3": "e0"})
    with pytest.raises(InputError):
        chain_modal_lattice(2, box={"e0": "e0"})
    with pytest.raises(InputError):
        chain_modal_lattice(2, box={"e0": "e0", "e1": "e1", "zz": "e0"})
    with pytest.raises(InputError):
        chain_modal_lattice(2, box={"e0": "weird", "e1": "e1"})
    with pytest.raises(InputError):
        chain_modal_lattice(2, atoms=("nope",))
    with pytest.raises(InputError):
        chain_modal_lattice(0)


def test_lattice_accessors():
    lat = diamond_modal_lattice()
    assert len(lat) == 4
    assert lat.bottom_index == 0 and lat.top_index == 3
    assert lat.index("e2") == 2
    with pytest.raises(UsageError):
        lat.index("e9")
    assert lat.join_table[1][2] == 3 and lat.meet_table[1][2] == 0


def naive_filters(lattice, algebra):
    out = []
    n = len(lattice)
    for degrees in itertools.product(range(algebra.size), repeat=n):
        if degrees[lattice.top_index] != algebra.top:
            continue
        if all(
            degrees[lattice.meet_table[i][j]] == algebra.meet(degrees[i], degrees[j])
            for i in range(n)
            for j in range(n)
        ):
            out.append(degrees)
    return out


def naive_ideals(lattice, algebra):
    out = []
    n = len(lattice)
    for degrees in itertools.product(range(algebra.size), repeat=n):
        if degrees[lattice.bottom_index] != algebra.top:
            continue
        if all(
            degrees[lattice.join_table[i][j]] == algebra.meet(degrees[i], degrees[j])
            for i in range(n)
            for j in range(n)
        ):
            out.append(degrees)
    return out


def test_enumeration_matches_naive_definition():
    for lat in (chain_modal_lattice(2), chain_modal_lattice(3), diamond_modal_lattice()):
        for alg in (B, L3):
            assert [f.degrees for f in enumerate_filters(lat, alg)] == naive_filters(lat, alg)
            assert [i.degrees for i in enumerate_ideals(lat, alg)] == naive_ideals(lat, alg)


def test_frozen_filter_counts():
    two = chain_modal_lattice(2)
    assert len(enumerate_filters(two, L3)) == 3
    assert [f.degrees for f in enumerate_filters(two, L3) if f.proper] == [(0, 2)]
    assert len(enumerate_filters(two, B)) == 2
    assert [i.degrees for i in enumerate_ideals(two, L3) if i.proper] == [(2, 0)]
    assert len([f for f in enumerate_filters(diamond_modal_lattice(), L3) if f.proper]) == 5


def test_filter_and_ideal_validation():
    two = chain_modal_lattice(2)
    with pytest.raises(InputError):
        MvFilter(two, L3, (0, 1))
    with pytest.raises(InputError):
        MvFilter(two, L3, (2,))
    with pytest.raises(InputError):
        MvIdeal(two, L3, (1, 0))
    f = MvFilter(two, L3, (2, 2))
    assert not f.proper and f.value("e0") == 2


def test_identity_modalities_fix_the_transforms():
    for lat in (chain_modal_lattice(3), diamond_modal_lattice()):
        for f in enumerate_filters(lat, L3):
            assert diamond_inverse(f).degrees == f.degrees
        for i in enumerate_ideals(lat, L3):
            assert box_inverse(i).degrees == i.degrees


def test_enumeration_budget():
    with pytest.raises(ResourceError):
        enumerate_filters(chain_modal_lattice(7), lukasiewicz_chain(10))


def test_boolean_two_chain_surrogate_frozen():
    sur = build_surrogate(chain_modal_lattice(2), B)
    assert len(sur.filters) == 1 and len(sur.ideals) == 1
    assert sur.incidence.rows == ((0,),)
    assert sur.r_box.rows == ((0,),) and sur.r_diamond.rows == ((0,),)
    assert sur.diamond_forms_agree and sur.box_forms_agree
    assert sur.compatibility.ok


def test_surrogates_agree_and_are_compatible():
    cases = [
        (chain_modal_lattice(3), L3),
        (diamond_modal_lattice(), L3),
        (diamond_modal_lattice(), B),
        (
            chain_modal_lattice(
                3, box={"e0": "e0", "e1": "e0", "e2": "e2"}, dia={"e0": "e0", "e1": "e2", "e2": "e2"}
            ),
            L3,
        ),
    ]
    for lat, alg in cases:
        sur = build_surrogate(lat, alg)
        assert sur.diamond_forms_agree and sur.box_forms_agree
        assert sur.compatibility.ok
        assert sur.r_box.source == sur.frame.base.objects
        assert sur.r_diamond.source == sur.frame.base.attributes


def test_one_chain_has_no_canonical_frame():
    with pytest.raises(InputError, match="proper"):
        build_surrogate(chain_modal_lattice(1), L3)


def test_lemma_suite_passes_where_expected():
    for lat in (chain_modal_lattice(2), chain_modal_lattice(3), diamond_modal_lattice()):
        for alg in (B, L3):
            report = lemma_suite(lat, alg)
            assert report.ok
            assert len(report.checks) == 10
            assert sum(1 for c in report.checks if c.required) == 8
            assert "overall (required items): PASS" in report.to_text()


def test_properness_checks_are_informative_only():
    lat = chain_modal_lattice(2, box={"e0": "e1", "e1": "e1"})
    report = lemma_suite(lat, L3)
    assert report.ok
    by_name = {c.name: c for c in report.checks}
    broken = by_name["box-inverse preserves properness"]
    assert not broken.ok and not broken.required
    assert broken.failure_count > 0 and broken.witnesses
    assert "fail (informative)" in report.to_text()


def test_canonical_model_requires_atoms():
    sur = build_surrogate(chain_modal_lattice(2), L3)
    with pytest.raises(InputError, match="atoms"):
        canonical_model(sur)


TRUTH_FORMS = (
    "top",
    "bot",
    "e1",
    "box e1",
    "dia e1",
    "e1 & e2",
    "e1 | e2",
    "box (e1 & e2)",
    "dia (e1 | e2)",
    "box dia e1",
    "e1 & box e2",
    "dia e1 | box (e1 | e2)",
)


@pytest.mark.parametrize(
    "lattice,algebra",
    [
        (chain_modal_lattice(3, atoms=("e0", "e1", "e2")), L3),
        (chain_modal_lattice(2, atoms=("e0", "e1")), B),
        (
            chain_modal_lattice(
                3,
                box={"e0": "e0", "e1": "e0", "e2": "e2"},
                dia={"e0": "e0", "e1": "e2", "e2": "e2"},
                atoms=("e0", "e1", "e2"),
            ),
            L3,
        ),
        (diamond_modal_lattice(atoms=("e1", "e2")), L3),
        (
            diamond_modal_lattice(
                box={"e0": "e2", "e1": "e3", "e2": "e2", "e3": "e3"},
                dia={"e0": "e0", "e1": "e3", "e2": "e2", "e3": "e3"},
                atoms=("e1", "e2"),
            ),
            L3,
        ),
    ],
)
def test_truth_lemma_fragment(lattice, algebra):
    sur = build_surrogate(lattice, algebra)
    model = canonical_model(sur)
    ident = {a: a for a in lattice.atoms}
    for text in TRUTH_FORMS:
        formula = parse_formula(text)
        if any(a not in lattice.atoms for a in formula.atoms()):
            continue
        k = lattice.index(eval_in_lattice(lattice, formula, ident))
        concept = evaluate(model, formula)
        assert concept.extent.degrees == tuple(f.degrees[k] for f in sur.filters)
        assert concept.intent.degrees == tuple(i.degrees[k] for i in sur.ideals)
        first = sur.frame.base.objects[0]
        assert membership_degree(model, first, formula) == sur.filters[0].degrees[k]


def test_eval_in_lattice_rejects_what_it_cannot_interpret():
    lat = chain_modal_lattice(2, atoms=("e1",))
    assert eval_in_lattice(lat, parse_formula("box e1 & top"), {"e1": "e1"}) == "e1"
    assert eval_in_lattice(lat, parse_formula("bot | e1"), {"e1": "e0"}) == "e0"
    with pytest.raises(UsageError):
        eval_in_lattice(lat, parse_formula("rhd e1"), {"e1": "e1"})
    with pytest.raises(UsageError):
        eval_in_lattice(lat, parse_formula("zz"), {"e1": "e1"})
