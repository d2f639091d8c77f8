import json

import pytest

from mvpolar import CapabilityError, InputError, UsageError
from mvpolar.market import (
    TYPICALITY_KINDS,
    basket_category,
    box_refinement_analysis,
    firm_category,
    load_arena,
    market_category,
    typicality_analysis,
)

ALG3 = {"kind": "lukasiewicz", "size": 3}


def write_arena(tmp_path, name="arena.json", **overrides):
    data = {
        "labels": {"I": "activity of firm a on market x"},
        "algebra": ALG3,
        "objects": ["a", "b"],
        "attributes": ["x", "y"],
        "I": [[2, 1], [1, 0]],
    }
    data.update(overrides)
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def test_firm_category_frozen(tmp_path):
    arena = load_arena(write_arena(tmp_path))
    c = firm_category(arena, "a")
    assert c.extent.degrees == (2, 1)
    assert c.intent.degrees == (2, 1)
    incidence = arena.frame.base.incidence
    assert list(c.intent.degrees) == [incidence.value("a", x) for x in arena.markets]


def test_market_category_frozen(tmp_path):
    arena = load_arena(write_arena(tmp_path))
    c = market_category(arena, "y")
    assert c.extent.degrees == (1, 0)
    assert c.intent.degrees == (2, 2)


def test_basket_category_frozen(tmp_path):
    arena = load_arena(write_arena(tmp_path))
    c = basket_category(arena, {"x": 1, "y": 2})
    assert c.extent.degrees == (1, 0)
    assert c.intent.degrees == (2, 2)
    assert basket_category(arena, {"y": 2}).extent.degrees == (1, 0)
    with pytest.raises(UsageError):
        basket_category(arena, {"z": 1})
    with pytest.raises(UsageError):
        basket_category(arena, {"x": 9})


def test_crisp_singleton_basket_is_the_market_category(tmp_path):
    arena = load_arena(write_arena(tmp_path))
    for market in arena.markets:
        assert basket_category(arena, {market: 2}) == market_category(arena, market)


def test_dominating_firm_gets_top_extent_degree(tmp_path):
    arena = load_arena(write_arena(tmp_path))
    incidence = arena.frame.base.incidence
    for target in arena.firms:
        c = firm_category(arena, target)
        for k, firm in enumerate(arena.firms):
            dominates = all(
                arena.algebra.leq(incidence.value(target, x), incidence.value(firm, x))
                for x in arena.markets
            )
            assert (c.extent.degrees[k] == arena.algebra.top) == dominates


def test_typicality_rhd_frozen(tmp_path):
    arena = load_arena(write_arena(tmp_path, R_rhd=[[2, 1], [2, 2]]))
    report = typicality_analysis(arena, "rhd_over_concept", firm_category(arena, "a"))
    raw = report.listings[0]
    assert raw.entries == (("a", 2, "1"), ("b", 1, "1/2"))
    assert report.listings[1].entries == (("a", 2, "1"), ("b", 1, "1/2"))
    assert "the raw degree map is already stable" in report.notes
    assert report.query["kind"] == "rhd_over_concept"


def test_typicality_lhd_identity_frozen(tmp_path):
    arena = load_arena(write_arena(tmp_path, R_lhd=[[2, 0], [0, 2]]))
    report = typicality_analysis(arena, "lhd_over_concept", firm_category(arena, "a"))
    assert report.listings[0].entries == (("x", 1, "1/2"), ("y", 0, "0"))
    assert report.listings[1].entries == (("a", 2, "1"), ("b", 2, "1"))
    assert "the raw degree map is already stable" in report.notes


def test_typicality_validation(tmp_path):
    arena = load_arena(write_arena(tmp_path))
    seed = firm_category(arena, "a")
    with pytest.raises(UsageError):
        typicality_analysis(arena, "sideways", seed)
    with pytest.raises(CapabilityError):
        typicality_analysis(arena, TYPICALITY_KINDS[0], seed)


def test_box_refinement_with_incidence_relation_is_identity(tmp_path):
    arena = load_arena(write_arena(tmp_path, R_box=[[2, 1], [1, 0]]))
    report = box_refinement_analysis(arena, "a")
    target = firm_category(arena, "a")
    assert report.listings[0].entries == (("x", 2, "1"), ("y", 1, "1/2"))
    assert tuple(d for _, d, _ in report.listings[1].entries) == target.extent.degrees
    assert "R_box(b, x)" in report.listings[1].formula


def test_box_refinement_with_all_top_relation(tmp_path):
    arena = load_arena(write_arena(tmp_path, R_box=[[2, 2], [2, 2]]))
    report = box_refinement_analysis(arena, "a")
    assert tuple(d for _, d, _ in report.listings[1].entries) == (2, 2)
    assert tuple(d for _, d, _ in report.listings[2].entries) == (1, 0)


def test_quantization_frozen_log(tmp_path):
    path = write_arena(
        tmp_path,
        I=[[1.0, 0.45], [0.5, 0.0]],
        R_box=[[1.0, 0.5], [0.5, 0.0]],
        quantize={"chain_size": 3},
    )
    arena = load_arena(path)
    assert arena.algebra.size == 3 and arena.algebra.kind == "lukasiewicz"
    assert arena.frame.base.incidence.rows == ((2, 1), (1, 0))
    assert arena.quantization["chain_size"] == 3
    assert arena.quantization["values_total"] == 8
    assert arena.quantization["values_changed"] == 1
    assert arena.quantization["max_error"] == pytest.approx(0.05)
    note = arena.notes()[0]
    assert "quantized 1 of 8 raw values onto a 3-element chain" in note
    assert "0.05" in note


def test_quantized_arena_may_restate_its_algebra(tmp_path):
    path = write_arena(tmp_path, I=[[1.0, 0.5], [0.5, 0.0]], quantize={"chain_size": 3})
    assert load_arena(path).quantization["values_changed"] == 0
    bad = write_arena(
        tmp_path,
        name="bad.json",
        algebra={"kind": "goedel", "size": 3},
        I=[[1.0, 0.5], [0.5, 0.0]],
        quantize={"chain_size": 3},
    )
    with pytest.raises(InputError, match="lukasiewicz"):
        load_arena(bad)


def test_load_arena_validation(tmp_path):
    no_labels = tmp_path / "n.json"
    no_labels.write_text(json.dumps({"algebra": ALG3, "objects": ["a"], "attributes": ["x"], "I": [[1]]}))
    with pytest.raises(InputError, match="labels"):
        load_arena(str(no_labels))
    with pytest.raises(InputError, match="unknown relation slots"):
        load_arena(write_arena(tmp_path, labels={"Z": "zap"}))
    with pytest.raises(InputError, match="chain_size"):
        load_arena(write_arena(tmp_path, quantize={}))
    with pytest.raises(InputError, match="chain_size"):
        load_arena(write_arena(tmp_path, quantize={"chain_size": 1}))
    with pytest.raises(InputError, match="chain_size"):
        load_arena(write_arena(tmp_path, quantize={"chain_size": True}))
    with pytest.raises(InputError, match="outside"):
        load_arena(write_arena(tmp_path, I=[[1.2, 0.0], [0.0, 0.0]], quantize={"chain_size": 3}))
    with pytest.raises(InputError, match="numbers"):
        load_arena(write_arena(tmp_path, I=[["hi", 0.0], [0.0, 0.0]], quantize={"chain_size": 3}))
    as_list = tmp_path / "l.json"
    as_list.write_text("[]")
    with pytest.raises(InputError, match="object"):
        load_arena(str(as_list))


def test_incompatible_box_relation_loads_with_warning(tmp_path):
    path = tmp_path / "half.json"
    path.write_text(
        json.dumps(
            {
                "labels": {},
                "algebra": ALG3,
                "objects": ["a"],
                "attributes": ["x"],
                "I": [[1]],
                "R_box": [[0]],
            }
        )
    )
    arena = load_arena(str(path))
    assert arena.warnings == ("R_box failed the compatibility check; box analyses are disabled",)
    assert arena.warnings[0] in arena.notes()
    with pytest.raises(CapabilityError):
        box_refinement_analysis(arena, "a")


def test_report_shapes(tmp_path):
    arena = load_arena(write_arena(tmp_path, R_box=[[2, 1], [1, 0]]))
    report = box_refinement_analysis(arena, "a")
    payload = report.to_json_dict()
    assert set(payload) == {"query", "listings", "notes"}
    assert payload["query"] == {"operation": "box_refinement_analysis", "firm": "a"}
    entry = payload["listings"][0]["entries"][0]
    assert set(entry) == {"element", "degree", "value"}
    text = report.to_text()
    assert text.startswith("query: operation=box_refinement_analysis firm=a")
    assert 'note: I is read as "activity of firm a on market x"' in text
    assert "  x  1" in text
