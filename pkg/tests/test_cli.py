import json
import subprocess
import sys

import pytest

from degreelab.cli import main
from degreelab.graph import TargetSpec, contains_subgraph, degree_sequence, from_graph6
from degreelab.potential import PotentialDecision
from degreelab.sequence import parse_sequence
from degreelab.sigma import SigmaResult


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_exit_codes(capsys):
    code, out, err = run(capsys, "check", "5^1,3^5")
    assert code == 0
    assert "graphical" in out and err == ""
    code, out, _ = run(capsys, "check", "3,3,1,1")
    assert code == 1
    assert "k=2" in out
    code, out, _ = run(capsys, "check", "3,3,3,2")
    assert code == 1
    assert "odd" in out
    code, _, err = run(capsys, "check", "3,,4")
    assert code == 2
    assert "error" in err


def test_check_json(capsys):
    code, out, _ = run(capsys, "check", "3,3,1,1", "--json")
    obj = json.loads(out)
    assert code == 1
    assert obj == {"sequence": "3^2,1^2", "graphical": False, "sum": 8, "failure": "erdos-gallai", "failure_index": 2}


def test_usage_errors(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "check")[0] == 2
    assert run(capsys, "sigma", "5", "3", "4")[0] == 2
    assert run(capsys, "sigma", "5", "3", "6", "--workers", "0")[0] == 2
    assert run(capsys, "potential", "4,4,4,4,4", "5", "5")[0] == 2
    assert run(capsys, "verify-theorem1", "5", "2", "6")[0] == 2


def test_realize_outputs_graph6(capsys):
    code, out, _ = run(capsys, "realize", "4^5")
    assert code == 0
    assert out.strip() == "D~{"
    code, out, _ = run(capsys, "realize", "2,2,2,2", "--all", "backtrack")
    assert len(out.split()) == 3
    code, out2, _ = run(capsys, "realize", "2,2,2,2", "--all", "swap")
    assert set(out2.split()) == set(out.split())
    for line in out.split():
        assert degree_sequence(from_graph6(line)).terms == (2, 2, 2, 2)
    assert run(capsys, "realize", "3,3,1,1")[0] == 1
    assert run(capsys, "realize", "0^9", "--all", "backtrack")[0] == 2


def test_potential(capsys):
    code, out, err = run(capsys, "potential", "5,3,3,3,3,3", "5", "3")
    assert code == 0 and err == ""
    assert "yes" in out
    code, out, _ = run(capsys, "potential", "4,4,2,2,2", "5", "3")
    assert code == 1
    assert "no" in out
    code, out, _ = run(capsys, "potential", "3,1,1,1", "5", "3")
    assert code == 1
    assert "only 4 vertices" in out
    code, _, _ = run(capsys, "potential", "4^5", "5", "4", "--budget-nodes", "2")
    assert code == 3


def test_potential_json_round_trip(capsys):
    code, out, _ = run(capsys, "potential", "4^2,3^4", "5", "3", "--json")
    assert code == 0
    d = PotentialDecision.from_json(out)
    assert d.is_yes
    assert d.sequence == parse_sequence("4^2,3^4")
    assert contains_subgraph(d.witness, TargetSpec.family(5, 3).graph) is not None


@pytest.mark.parametrize("m, k, n, sigma", [(5, 3, 6, 20), (5, 4, 5, 16), (4, 3, 8, 16)])
def test_sigma(capsys, m, k, n, sigma):
    code, out, err = run(capsys, "sigma", str(m), str(k), str(n))
    assert code == 0 and err == ""
    assert f"= {sigma}" in out
    assert "conjecture holds" in out


def test_sigma_json_and_cache(capsys, tmp_path):
    cache = tmp_path / "c.jsonl"
    code, out, _ = run(capsys, "sigma", "5", "3", "6", "--json", "--cache", str(cache))
    assert code == 0
    res = SigmaResult.from_json(out)
    assert res.sigma == 20
    assert res.witness.sum == 18
    assert cache.exists()
    code, out2, _ = run(capsys, "sigma", "5", "3", "6", "--json", "--cache", str(cache))
    assert SigmaResult.from_json(out2).dumps(timing=False) == res.dumps(timing=False)


def test_sigma_out_of_range_label(capsys):
    code, out, _ = run(capsys, "sigma", "5", "2", "6")
    assert code == 0
    assert "out-of-range" in out


def test_sigma_budget_exit(capsys):
    code, out, _ = run(capsys, "sigma", "5", "3", "7", "--budget-nodes", "1", "--json")
    assert code == 3
    obj = json.loads(out)
    assert obj["status"] == "inconclusive"
    assert obj["progress"]["undecided"]


def test_verify_theorem1(capsys):
    code, out, _ = run(capsys, "verify-theorem1", "5", "3", "6")
    assert code == 0
    assert "5^2,2^4" in out
    assert "verified" in out
    code, out, _ = run(capsys, "verify-theorem1", "5", "3", "9", "--json")
    obj = json.loads(out)
    assert code == 0
    assert obj["checks"]["d_unique"] is None


def test_conjecture_scan(capsys):
    code, out, _ = run(capsys, "conjecture-scan", "--m", "5", "--k", "2", "3", "4", "--n", "6", "--json")
    assert code == 0
    rows = {r["k"]: r for r in json.loads(out)["results"]}
    assert rows[2]["status"] == "out-of-range"
    assert rows[3]["status"] == rows[4]["status"] == "holds"
    assert rows[3]["sigma"] == 20
    assert run(capsys, "conjecture-scan", "--m", "4", "--k", "4", "--n", "4")[0] == 2


def test_verify_paper_small(capsys):
    code, out, err = run(capsys, "verify-paper", "--max-n", "5")
    assert code == 0 and err == ""
    lines = [l for l in out.splitlines() if l.startswith("[")]
    assert len(lines) == 8
    assert "skipped" in out
    assert "seed 0" in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "degreelab", "check", "2,2,2"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert proc.stderr == ""
