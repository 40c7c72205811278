"""Acceptance criteria, one test each, at full budget and with wall-clock limits.

Every criterion records a PASS/FAIL line; ``conftest.py`` prints them after
the run.  ``python tests/test_acceptance.py`` runs the same file standalone.
"""

import json
import subprocess
import sys
import time

import pytest

import clonedual.clone_algebra as ca
from clonedual.checks import run_suite
from clonedual.cli import main
from clonedual.clone_algebra import Labeling

SEED = 20260415
RESULTS: dict[int, str] = {}

CRITERIA = [
    (1, "partition lattice laws", "partition-lattice", 5.0),
    (2, "E_l generate: kernel of pair_inject is the meet", "e-ell-generate", 5.0),
    (3, "unit dense, injective/bijective iff separated, counit iso", "duality-thm-1.2", 30.0),
    (4, "naturality and unit-counit identities", "duality-thm-1.3", 30.0),
    (5, "closure D equals topological closure", "closure-thm-2.2", 30.0),
    (6, "PC(L) and H(Z(L)) homeomorphic", "galois-thm-2.6", 60.0),
    (7, "gamma/delta inverse and density", "density-thm-2.4", 60.0),
    (8, "LPC = PC at truncation; supercomplete iff separated", "supercomplete-thm-2.8", 30.0),
    (9, "set equality through two-valued functions", "set-equality", 5.0),
]


def record(number, name, ok, detail):
    RESULTS[number] = f"{'PASS' if ok else 'FAIL'} criterion {number:2d}: {name} ({detail})"


@pytest.mark.parametrize("number, name, suite, limit", CRITERIA, ids=[c[2] for c in CRITERIA])
def test_criterion(number, name, suite, limit):
    start = time.perf_counter()
    report = run_suite(suite, SEED, "full")
    elapsed = time.perf_counter() - start
    failed = [c for c in report["checks"] if c["verdict"] != "pass"]
    instances = sum(c["instances"] for c in report["checks"])
    ok = not failed and elapsed < limit
    record(number, name, ok, f"{instances} instances, {elapsed:.2f}s of {limit:.0f}s")
    assert not failed, failed
    assert elapsed < limit


def _broken_pair_inject(labelings):
    return Labeling(tuple(labelings[0].labels))


def test_criterion_10_cli_contract(tmp_path, monkeypatch, capsys):
    reports = []
    for run in range(2):
        proc = subprocess.run(
            [sys.executable, "-m", "clonedual", "check", "all", "--seed", str(SEED),
             "--report", str(tmp_path / f"r{run}.json")],
            capture_output=True, check=False)
        assert proc.returncode == 0, proc.stderr
        reports.append((tmp_path / f"r{run}.json").read_bytes())
    identical = reports[0] == reports[1]

    monkeypatch.setattr(ca, "pair_inject", _broken_pair_inject)
    injected = main(["check", "e-ell-generate", "--seed", str(SEED)])
    monkeypatch.undo()
    injected_report = json.loads(capsys.readouterr().out)

    bad = tmp_path / "bad.json"
    bad.write_text('{"format_version": "1", "kind": "tower", '
                   '"payload": {"levels": [2, 2], "bonds": [[0, 0]]}}', encoding="utf-8")
    malformed = main(["inspect", str(bad)])

    ok = identical and injected == 1 and malformed == 2
    record(10, "CLI determinism and exit codes", ok,
           f"identical={identical}, injected exit={injected}, malformed exit={malformed}")
    assert identical
    assert injected == 1 and injected_report["summary"]["failed"] == 1
    assert malformed == 2


if __name__ == "__main__":
    code = pytest.main([__file__, "-q", "-p", "no:cacheprovider"])
    sys.exit(code)
