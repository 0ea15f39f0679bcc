import json
import subprocess
import sys

import pytest

from redvar.cli import JobSpec, caps_from_env, main, run
from redvar.io import InputError, dumps

A1 = {"type": "A", "rank": 1}
A2 = {"type": "A", "rank": 2}


def write(tmp_path, doc, name="in.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc) if not isinstance(doc, str) else doc)
    return str(path)


def call(capsys, *argv):
    code = main(list(argv))
    return code, json.loads(capsys.readouterr().out)


def test_check_reports_overlap(tmp_path, capsys):
    f = write(tmp_path, {"root_system": A1, "polytope": {"vertices": [[-1], [2]]}})
    code, out = call(capsys, "check", f)
    assert code == 1 and not out["ok"]
    assert "interiors_overlap" in {e["code"] for e in out["failures"]}


def test_check_accepts_admissible(tmp_path, capsys):
    f = write(tmp_path, {"root_system": A1, "polytope": {"vertices": [[-2], [2]]}})
    code, out = call(capsys, "check", f)
    assert code == 0 and out["ok"]


def test_hilbert(tmp_path, capsys):
    f = write(tmp_path, {"root_system": A1, "polytope": {"vertices": [[0], [2]]}})
    assert call(capsys, "hilbert", f, "--n", "1") == (0, {"H": [1, 14]})


def test_degenerate(tmp_path, capsys):
    doc = {"root_system": A1, "polytope": {"vertices": [[-2], [2]]}, "marks": [[0], [1], [2]],
           "heights": [{"point": [0], "h": -1}, {"point": [1], "h": 0}, {"point": [2], "h": 0}]}
    code, out = call(capsys, "degenerate", write(tmp_path, doc))
    assert code == 0
    assert sorted(out["cells"]) == [[[-2], [0]], [[0], [2]]]


def test_group_output_shape(tmp_path, capsys):
    f = write(tmp_path, {"root_system": A1, "polytope": {"vertices": [[-2], [2]]}})
    code, out = call(capsys, "aut", f)
    assert code == 0
    assert out["aut_characters"] == {"free_rank": 1, "torsion": [2]}
    assert out["K_delta"] == [0]


def test_pair_groups(tmp_path, capsys):
    doc = {"root_system": A1, "polytope": {"vertices": [[0], [2]]}, "marks": [[0], [2]]}
    code, out = call(capsys, "pair-groups", write(tmp_path, doc))
    assert code == 0
    assert out["L"] == {"free_rank": 0, "torsion": []}
    assert out["K"] == {"free_rank": 0, "torsion": [2]}


def test_fiber_polytope_and_rep(tmp_path, capsys):
    doc = {"root_system": A1, "polytope": {"vertices": [[0], [2]]}, "marks": [[0], [1], [2]]}
    code, out = call(capsys, "fiber-polytope", write(tmp_path, doc))
    assert code == 0 and sorted(out["gkz"]) == [[1, 2, 1], [2, 0, 2]]
    code, out = call(capsys, "rep", "tensor", write(tmp_path, {"root_system": A2, "lambda": [1, 0], "mu": [0, 1]}))
    assert code == 0
    assert out["decomposition"] == [{"weight": [0, 0], "multiplicity": 1}, {"weight": [1, 1], "multiplicity": 1}]


def test_exit_codes(tmp_path, capsys):
    assert call(capsys, "check", write(tmp_path, "{not json"))[0] == 2
    assert call(capsys, "check", str(tmp_path / "missing.json"))[0] == 2
    assert call(capsys, "check", write(tmp_path, {"root_system": A1}))[0] == 2
    assert call(capsys, "check", write(tmp_path, {"root_system": A1, "polytope": {"vertices": [["x"]]}}))[0] == 2
    assert run(JobSpec("nope", "x.json"))[0] == 2
    doc = {"root_system": A1, "polytope": {"vertices": [[-2], [2]]}, "marks": [[0], [1], [2]]}
    code, out = call(capsys, "strata", write(tmp_path, doc), "--cap", "1")
    assert code == 1 and out["errors"][0]["code"] == "ModuliError"


def test_bad_gamma_is_validation_failure(tmp_path, capsys):
    doc = {"root_system": A1, "cells": [{"id": "a", "vertices": [[-2], [0]]}, {"id": "b", "vertices": [[0], [2]]}],
           "marks": [[-2], [0], [2]],
           "cell_heights": {"a": [{"point": [-2], "h": 0}, {"point": [0], "h": 0}],
                            "b": [{"point": [0], "h": 0}, {"point": [2], "h": 0}]},
           "gamma": [{"face": [[0]], "gamma": [5, 0]}]}
    code, out = call(capsys, "degenerate", write(tmp_path, doc))
    assert code == 1 and not out["ok"]


def test_caps_env():
    assert caps_from_env("weyl=10,strata=3")["strata"] == 3
    with pytest.raises(InputError):
        caps_from_env("bogus=1")


@pytest.mark.parametrize("command,doc", [
    ("aut", {"root_system": A2, "polytope": {"vertices": [[1, 1], [2, -1], [-1, 2], [-1, -1], [1, -2], [-2, 1]]}}),
    ("cohomology", {"root_system": A1, "cells": [{"vertices": [[0], [2]]}], "marks": [[-2], [-1], [0], [1], [2]]}),
    ("strata", {"root_system": A1, "polytope": {"vertices": [[-1], [1]]}, "marks": [[0], [1]]}),
    ("rep", {"root_system": A2, "lambda": [1, 1]}),
])
def test_deterministic_and_round_trips(tmp_path, command, doc):
    f = write(tmp_path, doc)
    argv = [sys.executable, "-m", "redvar.cli", command] + (["char"] if command == "rep" else []) + [f]
    runs = [subprocess.run(argv, capture_output=True, check=False) for _ in range(2)]
    assert runs[0].returncode == 0, runs[0].stdout
    assert runs[0].stdout == runs[1].stdout
    data = json.loads(runs[0].stdout)
    assert dumps(data) + "\n" == runs[0].stdout.decode()


def test_table_and_svg(tmp_path, capsys):
    f = write(tmp_path, {"root_system": A1, "polytope": {"vertices": [[-2], [2]]}, "marks": [[0], [1], [2]],
                         "heights": [{"point": [0], "h": -1}, {"point": [1], "h": 0}, {"point": [2], "h": 0}]})
    svg = tmp_path / "out.svg"
    assert main(["degenerate", f, "--format", "table", "--svg", str(svg)]) == 0
    assert "cells" in capsys.readouterr().out
    assert svg.read_text().startswith("<svg")
