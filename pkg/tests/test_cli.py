import json

import pytest

from tambara import serialize as ser
from tambara.cli import main
from tambara.functor import check_axioms, mod_map_morphism
from tambara.ideals import enumerate_ideals
from tambara.spectrum import build_radid_frame, full_report, nakaoka_spectrum
from tambara.workspace import (WorkspaceError, builtin_workspace, load_workspace, parse_workspace,
                               run_suite)

from conftest import fixtures


def _ws(doc):
    return parse_workspace(json.dumps(doc))


def test_constant_workspace_loads_and_passes():
    ws = _ws({"functors": {"t": "constant zmod 6 over C2"}})
    assert check_axioms(ws.functor("t")).ok


def test_non_associative_group_rejected_with_witness():
    bad = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(WorkspaceError, match="witness triple"):
        _ws({"groups": {"G": {"table": bad}}})


def test_empty_workspace_has_no_jobs():
    ws = _ws({})
    assert ws.jobs == [] and ws.functor_names == []


def test_parse_error_has_position():
    with pytest.raises(WorkspaceError, match="line 2, column"):
        parse_workspace('{"functors":\n')


@pytest.mark.parametrize("doc,match", [
    ({"functors": {"a": "product a a"}}, "cyclic"),
    ({"functors": {"a": "constant zmod 6 over D4"}}, "D4"),
    ({"functors": {"a": "frobnicate 3"}}, "cannot parse"),
    ({"ideals": {"i": {"functor": "missing", "generators": []}}}, "unknown functor"),
    ({"functors": {"a": "constant zmod 6 over C2"}, "ideals": {"i": {"functor": "a", "levels": {"0": [0, 3]}}}},
     "not a Tambara ideal"),
    ({"bogus": {}}, "unknown workspace sections"),
    ({"jobs": [{"verb": "explode"}]}, "unknown verb"),
])
def test_validation_errors(doc, match):
    with pytest.raises(WorkspaceError, match=match):
        _ws(doc)


def test_mini_language_forms():
    ws = _ws({
        "groups": {"Z2": {"table": [[0, 1], [1, 0]]}},
        "rings": {"R": "polyquot zmod 3 t2=2t", "F": "gf 4"},
        "functors": {
            "a": "constant R over Z2", "b": "fixedpoint F over C2 frobenius",
            "c": "burnside-c2-mod 5", "d": "product e e", "e": "constant zmod 2 over C2",
            "q": "quotient c by i", "r": "reduction c",
        },
        "ideals": {"i": {"functor": "c", "generators": [[0, 1]]}},
        "morphisms": {"m": {"construct": "quotient", "source": "c", "ideal": "i"},
                      "p": {"construct": "projection", "source": "d", "index": 1}},
    })
    assert ws.functor("a").levels[0].size == 9
    assert ws.functor("b").levels[1].size == 2
    assert ws.functor("q").is_zero()
    assert ws.morphism("p").is_valid()
    assert ws.functor("c").builtin


def test_explicit_functor_tables_roundtrip_through_workspace():
    t = fixtures()["burnside3"]
    d = ser.functor_json(t)
    ws = _ws({"functors": {"u": {"group": "C2", "levels": d["levels"], "res": d["res"], "tr": d["tr"],
                                 "nm": d["nm"], "conj": d["conj"]}}})
    u = ws.functor("u")
    assert not u.builtin and check_axioms(u).ok
    assert u.nm == t.nm


def _artifacts():
    fx = fixtures()
    t = fx["z6-c2"]
    f, s, rep = full_report(t)
    return {"group": t.group, "ring": t.levels[0], "functor": fx["f2-s3"], "functor2": fx["burnside9"],
            "ideal": enumerate_ideals(t)[1], "frame": f, "spectrum": s, "spectral_report": rep,
            "axiom_report": check_axioms(t), "morphism": mod_map_morphism(t, fx["f2-c2"])}


@pytest.mark.parametrize("kind", sorted(_artifacts()))
def test_emit_load_emit_is_byte_identical(kind):
    fx = fixtures()
    obj = _artifacts()[kind]
    text = ser.emit(obj)
    again = ser.emit(ser.loads(text, {t.name: t for t in fx.values()}))
    assert again == text
    assert json.loads(text)["kind"]


def test_run_report_roundtrip():
    report, _ = run_suite(builtin_workspace(), "axioms", ["z6-c2"])
    text = ser.dumps(report)
    assert ser.emit(ser.loads(text)) == text


def test_json_keys_sorted_and_spectrum_schema():
    text = ser.emit(nakaoka_spectrum(fixtures()["z6-c2"]))
    d = json.loads(text)
    assert {"primes", "opens", "basis"} <= set(d)
    assert text == ser.dumps(json.loads(text))
    assert list(d) == sorted(d)


def test_frame_dot_has_canonical_nodes():
    dot = ser.emit(build_radid_frame(fixtures()["z6-c2"]), "dot")
    nodes = [l for l in dot.splitlines() if "[label=" in l]
    assert [n.split()[0] for n in nodes] == ["n0", "n1", "n2", "n3"]
    assert dot.count("->") == 4


def test_unknown_kind_and_format():
    with pytest.raises(ser.SerializationError):
        ser.load_artifact({"kind": "teapot"})
    with pytest.raises(ser.SerializationError):
        ser.emit(fixtures()["z6-c2"], "dot")
    with pytest.raises(ser.SerializationError):
        ser.emit(fixtures()["z6-c2"], "yaml")


def test_suite_errors():
    with pytest.raises(WorkspaceError, match="unknown suite"):
        run_suite(None, "everything")
    ws = _ws({"functors": {"t": "constant zmod 2 over C2"}})
    with pytest.raises(WorkspaceError, match="morphism"):
        run_suite(ws, "functoriality")


def test_spectrum_suite_on_z6():
    report, arts = run_suite(builtin_workspace(), "spectrum", ["z6-c2"])
    sec = report["functors"]["z6-c2"]["spectrum"]
    assert report["ok"] and sec["points"] == 2 and sec["discrete"]
    assert {"z6-c2.frame.dot", "z6-c2.frame.json", "z6-c2.spectrum.json"} <= set(arts)


def test_corrupted_functor_fails_axioms_suite(tmp_path):
    t = fixtures()["z6-c2"]
    d = ser.functor_json(t)
    d["nm"]["1,0"][2] = 5
    doc = {"functors": {"bad": {"group": "C2", "levels": d["levels"], "res": d["res"], "tr": d["tr"],
                                "nm": d["nm"], "conj": d["conj"]}}}
    p = tmp_path / "ws.json"
    p.write_text(json.dumps(doc))
    report, _ = run_suite(load_workspace(p), "axioms")
    sec = report["functors"]["bad"]["axioms"]
    assert not report["ok"]
    failing = [a for a in sec["axioms"] if a["status"] == "fail"]
    assert failing and failing[0]["witness"]
    assert main(["suite", "axioms", "--workspace", str(p), "--out", str(tmp_path / "o")]) == 1


def test_cli_verbs(tmp_path, capsys):
    assert main(["check", "--functor", "z6-c2", "--format", "text"]) == 0
    assert "PASS T3" in capsys.readouterr().out
    assert main(["spectrum", "--functor", "constant zmod 6 over C2"]) == 0
    assert json.loads(capsys.readouterr().out)["kind"] == "spectrum"
    assert main(["frame", "--functor", "z4-c2", "--format", "dot", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "z4-c2.frame.dot").read_text().startswith("digraph")
    assert main(["ideals", "--functor", "burnside9"]) == 0
    assert len(json.loads(capsys.readouterr().out)["ideals"]) == 6
    assert main(["map", "--morphism", "z4-c2.reduction"]) == 0
    assert json.loads(capsys.readouterr().out)["homeomorphism"] is True
    assert main(["check", "--functor", "nonsense words"]) == 2


def test_cli_run_jobs(tmp_path):
    doc = {"functors": {"t": "constant zmod 6 over C2"},
           "jobs": [{"verb": "spectrum", "functors": ["t"]}, {"verb": "suite", "suite": "axioms"}]}
    p = tmp_path / "ws.json"
    p.write_text(json.dumps(doc))
    out = tmp_path / "out"
    assert main(["run", "--workspace", str(p), "--out", str(out)]) == 0
    assert (out / "t.spectrum.json").exists() and (out / "report.json").exists()
    empty = tmp_path / "empty.json"
    empty.write_text("{}")
    assert main(["run", "--workspace", str(empty), "--out", str(tmp_path / "none")]) == 0
    assert not (tmp_path / "none").exists()


def test_missing_workspace_file(tmp_path):
    assert main(["check", "--workspace", str(tmp_path / "nope.json")]) == 2


def test_parallel_matches_serial(tmp_path):
    a = tmp_path / "a"
    b = tmp_path / "b"
    assert main(["suite", "spectrum", "--out", str(a)]) == 0
    assert main(["suite", "spectrum", "--out", str(b), "--jobs", "3"]) == 0
    for f in sorted(a.iterdir()):
        assert f.read_bytes() == (b / f.name).read_bytes()
