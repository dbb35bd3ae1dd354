import json
from pathlib import Path

import pytest

from lexcontrast import data_path
from lexcontrast.contrast import load_field_map, load_lexicon
from lexcontrast.corpus import read_vertical
from lexcontrast.index import build_index
from lexcontrast.report import cross_corpus_report, render_json, render_text, report_dict
from lexcontrast.sketch import load_grammar

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(scope="module")
def samples():
    ca = read_vertical(data_path("sample_cna.vert"), "CNA")
    cb = read_vertical(data_path("sample_xin.vert"), "XIN")
    return ca, build_index(ca), cb, build_index(cb)


@pytest.fixture(scope="module")
def tools():
    return load_grammar(data_path("sketch.grammar")), load_lexicon(data_path("markers.tsv"))


def make(samples, tools, node_a="谈判", node_b="协商", swap_corpora=False, field_map="default"):
    ca, ia, cb, ib = samples
    if swap_corpora:
        ca, ia, cb, ib = cb, ib, ca, ia
    fm = load_field_map(data_path("fields.tsv")) if field_map == "default" else field_map
    return report_dict(cross_corpus_report(ca, ia, cb, ib, node_a, node_b, *tools, fm))


def test_text_matches_golden(samples, tools):
    assert render_text(make(samples, tools)) == (GOLDEN / "report.txt").read_text(encoding="utf-8")


def test_json_matches_golden(samples, tools):
    assert render_json(make(samples, tools)) == (GOLDEN / "report.json").read_text(encoding="utf-8")


def test_text_and_json_carry_the_same_numbers(samples, tools):
    doc = json.loads((GOLDEN / "report.json").read_text(encoding="utf-8"))
    text = (GOLDEN / "report.txt").read_text(encoding="utf-8")
    for k in doc["keyness"]:
        assert f"{k['log_likelihood']:.2f}" in text
    for c in doc["contrasts"]:
        for r in c["only_a"] + c["only_b"]:
            assert f"{r['nf']:.2f}" in text


def test_repeat_runs_identical(samples, tools):
    assert render_json(make(samples, tools)) == render_json(make(samples, tools))


def test_section_order(samples, tools):
    text = render_text(make(samples, tools))
    heads = [text.index(h) for h in ("== Keyness", "== Event profiles", "== Contrast tables", "== Semantic fields")]
    assert heads == sorted(heads)


@pytest.mark.parametrize("fm", [None, {}])
def test_no_field_map_omits_section(samples, tools, fm):
    doc = make(samples, tools, field_map=fm)
    assert "semantic_fields" not in doc
    assert "Semantic fields" not in render_text(doc)


def test_swapping_nodes_mirrors_contrasts(samples, tools):
    ab, ba = make(samples, tools), make(samples, tools, "协商", "谈判")
    assert [k["word"] for k in ba["keyness"]] == ["协商", "谈判"]
    assert ba["keyness"][::-1] == ab["keyness"]
    for x, y in zip(ab["contrasts"], ba["contrasts"]):
        assert x["only_a"] == y["only_b"] and x["only_b"] == y["only_a"]
        assert [r["collocate"] for r in x["common"]] == [r["collocate"] for r in y["common"]]


def test_swapping_corpora_flips_directions(samples, tools):
    ab, ba = make(samples, tools), make(samples, tools, swap_corpora=True)
    flip = {"+": "-", "-": "+", "=": "="}
    for x, y in zip(ab["keyness"], ba["keyness"]):
        assert y["direction"] == flip[x["direction"]]
        assert y["log_likelihood"] == x["log_likelihood"]
        assert y["significance"] == x["significance"]
