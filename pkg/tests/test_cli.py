import json
import random
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

import clonedual.clone_algebra as ca
from clonedual.checks import random_algebra, random_space, random_tower, random_uniform_map, run_suite
from clonedual.cli import explain, main
from clonedual.clone_algebra import FinAlgebra, Labeling
from clonedual.duality import random_hom
from clonedual.errors import SchemaError
from clonedual.fileformat import dumps, emit, ingest, loads
from clonedual.finspace import FinSpace
from clonedual.partition import Partition


def doc(kind, payload, version="1"):
    return json.dumps({"format_version": version, "kind": kind, "payload": payload})


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


def test_ingest_space(tmp_path):
    x = ingest(write(tmp_path, "x.json", doc("space", {"points": 3, "generators": [[0, 0, 1]]})))
    assert isinstance(x, FinSpace)
    assert x.finest == Partition.from_blocks(3, [[0, 1], [2]])


def test_ingest_algebra(tmp_path):
    a = ingest(write(tmp_path, "a.json", doc("algebra", {"index": 3, "kernel": [0, 0, 1]})))
    assert a == FinAlgebra(3, Partition.from_labels([0, 0, 1]))


def test_ingest_canonicalizes_labels():
    x = loads(doc("space", {"points": 3, "generators": [[7, 7, 2]]}))
    assert x.generators[0].block_id == (0, 0, 1)


def test_non_surjective_bond_names_the_bond():
    with pytest.raises(SchemaError, match="bond 1"):
        loads(doc("tower", {"levels": [1, 2, 3], "bonds": [[0, 0], [0, 0, 0]]}))


@pytest.mark.parametrize("text, where", [
    ("{", "line 1"),
    (doc("space", {"points": 3, "generators": [[0, 0, 1]]}, version="2"), "format_version"),
    (doc("widget", {}), "kind"),
    (doc("space", {"points": 3}), "generators"),
    (doc("space", {"points": 3, "generators": [[0, -1, 1]]}), "payload/generators/0/1"),
    (doc("space", {"points": 3, "generators": [[0, 1]]}), "generators/0"),
    (doc("algebra", {"index": 3, "kernel": [0]}), "kernel"),
    (doc("map", {"source": {"points": 3, "generators": [[0, 0, 1]]},
                 "target": {"points": 2, "generators": [[0, 1]]},
                 "values": [0, 1, 1]}), "generator 0"),
])
def test_schema_errors_locate_the_problem(text, where):
    with pytest.raises(SchemaError, match=where):
        loads(text)


@settings(max_examples=40)
@given(seed=st.integers(0, 10**6))
def test_round_trip(tmp_path_factory, seed):
    rng = random.Random(seed)
    x, y = random_space(rng, 5), random_space(rng, 5)
    a, b = random_algebra(rng, 5), random_algebra(rng, 5)
    objects = [x, a, random_tower(rng, 3, 3), random_uniform_map(rng, x, y), random_hom(rng, a, b)]
    path = tmp_path_factory.mktemp("rt") / "obj.json"
    for obj in objects:
        emit(obj, path)
        assert ingest(path) == obj
        assert loads(dumps(obj)) == obj


def test_run_suite_examples():
    assert run_suite("duality-thm-1.2", 7, "small")["summary"]["failed"] == 0
    assert run_suite("galois-thm-2.6", 7, "small")["summary"]["failed"] == 0
    with pytest.raises(KeyError):
        run_suite("nosuch", 7, "small")


def test_report_is_deterministic(capsys):
    outputs = []
    for _ in range(2):
        assert main(["check", "density-thm-2.4", "--seed", "3"]) == 0
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1]
    report = json.loads(outputs[0])
    assert report["seed"] == 3
    assert [c["check_id"] for c in report["checks"]] == sorted(c["check_id"] for c in report["checks"])


def test_report_file(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["check", "set-equality", "--report", str(out)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(out.read_text())["summary"] == {"total": 1, "passed": 1, "failed": 0}


def _broken_pair_inject(labelings):
    # Drops the last argument, so the kernel can be too coarse.
    return Labeling(tuple(labelings[0].labels))


def test_failure_injection_exits_one(monkeypatch, capsys):
    monkeypatch.setattr(ca, "pair_inject", _broken_pair_inject)
    assert main(["check", "e-ell-generate"]) == 1
    report = json.loads(capsys.readouterr().out)
    entry = report["checks"][0]
    assert entry["verdict"] == "fail" and entry["counterexample"]


def test_unknown_suite_exits_two(capsys):
    assert main(["check", "nosuch"]) == 2
    assert "unknown suite" in capsys.readouterr().err


def test_bad_flag_exits_two():
    with pytest.raises(SystemExit) as exc:
        main(["check", "all", "--budget", "huge"])
    assert exc.value.code == 2


def test_inspect(tmp_path, capsys):
    path = write(tmp_path, "t.json", doc("tower", {"levels": [1, 2], "bonds": [[0, 0]]}))
    assert main(["inspect", str(path)]) == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["kind"] == "tower" and summary["lpc_equals_pc"]

    bad = write(tmp_path, "bad.json", "{\"format_version\": 1")
    assert main(["inspect", str(bad)]) == 2
    assert main(["inspect", str(tmp_path / "missing.json")]) == 2


def test_explain():
    assert "PC(L) is dense in LPC(L)" in explain("density-2.4")
    assert "F_N" in explain("density-2.4")
    assert "are inverses" in explain("unit-counit")


def test_explain_unknown_exits_two(capsys):
    assert main(["explain", "bogus"]) == 2
    assert main(["explain", "unit-counit"]) == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "clonedual", "explain", "set-equality"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.startswith("set-equality")
