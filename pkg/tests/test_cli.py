"""CLI paths against golden outputs.

Set TLINT_REGEN_GOLDEN=1 to rewrite the golden files after an intended change.
"""

import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from tlint.cli import run

GOLDEN = Path(__file__).parent / "golden"

CASES = {
    "tl-diagrams-3": (["tl", "diagrams", "--n", "3"], 0),
    "tl-mult-e1-e2e1": (["tl", "mult", "--n", "3", "--a", "1", "--b", "2,1"], 0),
    "tl-mult-beta3": (["tl", "mult", "--n", "2", "--a", "1", "--b", "1", "--beta", "3"], 0),
    "tl-jw-3": (["tl", "jw", "--n", "3"], 0),
    "tl-gram-4-0": (["tl", "gram", "--n", "4", "--d", "0"], 0),
    "tl-repmat-3-1": (["tl", "repmat", "--n", "3", "--d", "1", "--word", "1"], 0),
    "tl-repmat-3-full": (["tl", "repmat", "--n", "3", "--d", "full", "--word", "2", "--beta", "2"], 0),
    "tl-transfer-2": (["tl", "transfer", "--n", "2"], 0),
    "tl-transfer-3-beta": (["tl", "transfer", "--n", "3", "--beta", "7/2"], 0),
    "tl-commutator-3": (["tl", "commutator", "--n", "3"], 0),
    "tl-commutator-3-mutate": (["tl", "commutator", "--n", "3", "--mutate"], 3),
    "tl-identity-points-3": (["tl", "identity-points", "--n", "3", "--beta", "3"], 0),
    "tl-identity-points-0": (["tl", "identity-points", "--n", "4", "--beta", "0"], 0),
    "tl-hamiltonian-hbeta-3": (["tl", "hamiltonian", "--n", "3", "--ham", "hbeta"], 0),
    "tl-hamiltonian-h0-beta": (["tl", "hamiltonian", "--n", "3", "--ham", "h0", "--beta", "5"], 0),
    "tl-minpoly-3": (["tl", "minpoly", "--n", "3"], 0),
    "tl-minpoly-4-beta": (["tl", "minpoly", "--n", "4", "--beta", "-2"], 0),
    "tl-centralizer-3": (["tl", "centralizer", "--n", "3", "--beta", "7"], 0),
    "tl-polyint-3": (["tl", "polyint", "--n", "3"], 0),
    "tl-polyint-4-beta": (["tl", "polyint", "--n", "4", "--beta", "3"], 0),
    "tl-scan-3-hbeta": (["tl", "scan", "--n", "3", "--ham", "hbeta", "--betas", "0,2,3"], 0),
    "ev-transfer-2": (["ev", "transfer", "--n", "2"], 0),
    "ev-spectrum-3": (["ev", "spectrum", "--n", "3"], 0),
    "ev-idempotents-3": (["ev", "idempotents", "--n", "3"], 0),
    "ev-verify-conjecture-12": (["ev", "verify-conjecture", "--max-n", "12"], 0),
}

TEXT_CASES = {
    "text-tl-transfer-2": ["tl", "transfer", "--n", "2"],
    "text-ev-spectrum-3": ["ev", "spectrum", "--n", "3"],
    "text-tl-minpoly-3": ["tl", "minpoly", "--n", "3"],
}

USAGE_ERRORS = [
    ["tl", "transfer"],
    ["tl", "transfer", "--n", "3", "--beta", "x/y"],
    ["tl", "minpoly", "--n", "3", "--ham", "hbeta", "--beta", "0"],
    ["ev", "verify-conjecture", "--max-n", "500"],
    ["tl", "gram", "--n", "4", "--d", "1"],
    ["tl", "nosuch"],
]


def invoke(argv, cache_dir=None):
    out = io.StringIO()
    extra = ["--cache-dir", str(cache_dir)] if cache_dir else ["--no-cache"]
    code = run(argv + extra, stdout=out)
    return code, out.getvalue()


def check_golden(name, text):
    path = GOLDEN / name
    if os.environ.get("TLINT_REGEN_GOLDEN") == "1":
        GOLDEN.mkdir(exist_ok=True)
        path.write_text(text)
    assert path.exists(), f"missing golden file {path}"
    assert text == path.read_text()


@pytest.mark.parametrize("name", sorted(CASES))
def test_json_golden(name):
    argv, want_code = CASES[name]
    code, text = invoke(argv + ["--json"])
    assert code == want_code
    doc = json.loads(text)
    assert doc["schema"] == 1 and doc["command"] == " ".join(argv[:2])
    check_golden(name + ".json", text)


@pytest.mark.parametrize("name", sorted(TEXT_CASES))
def test_text_golden(name):
    code, text = invoke(TEXT_CASES[name])
    assert code == 0
    check_golden(name + ".txt", text)


@pytest.mark.parametrize("argv", USAGE_ERRORS)
def test_usage_errors_exit_2(argv):
    code, _ = invoke(argv)
    assert code == 2


def test_cached_result_is_identical_and_self_heals(tmp_path):
    argv = ["tl", "minpoly", "--n", "3", "--json"]
    code, first = invoke(argv, tmp_path)
    entries = list(tmp_path.glob("*.json"))
    assert code == 0 and len(entries) == 1
    assert invoke(argv, tmp_path) == (0, first)
    entries[0].write_text("{ truncated")
    assert invoke(argv, tmp_path) == (0, first)
    assert json.loads(entries[0].read_text())["payload"] == json.loads(first)["result"]


def test_no_cache_writes_nothing(tmp_path):
    code = run(["tl", "diagrams", "--n", "2", "--no-cache", "--cache-dir", str(tmp_path)], stdout=io.StringIO())
    assert code == 0 and not list(tmp_path.iterdir())


def test_environment_cache_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("TLINT_CACHE_DIR", str(tmp_path))
    assert run(["tl", "diagrams", "--n", "2"], stdout=io.StringIO()) == 0
    assert len(list(tmp_path.glob("*.json"))) == 1


def test_threads_do_not_change_output():
    a = invoke(["ev", "verify-conjecture", "--max-n", "10", "--json"])
    b = invoke(["ev", "verify-conjecture", "--max-n", "10", "--json", "--threads", "2"])
    assert a == b
    c = invoke(["tl", "scan", "--n", "3", "--betas", "1,2", "--json", "--threads", "2"])
    d = invoke(["tl", "scan", "--n", "3", "--betas", "1,2", "--json"])
    assert c == d


def test_console_entry_point(tmp_path):
    env = dict(os.environ, TLINT_CACHE_DIR=str(tmp_path))
    proc = subprocess.run([sys.executable, "-m", "tlint.cli", "tl", "commutator", "--n", "3", "--mutate", "--json"],
                          capture_output=True, text=True, env=env)
    assert proc.returncode == 3
    assert json.loads(proc.stdout)["result"]["ok"] is False
