import json
import subprocess
import sys

import pytest

from hilbert49.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_field_trace(capsys):
    code, out = run(capsys, "field", "--trace", "14", "--format", "json")
    assert code == EXIT_OK
    assert json.loads(out.out)["count"] == 15


def test_field_element(capsys):
    code, out = run(capsys, "field", "--element=-w+2", "--format", "json")
    data = json.loads(out.out)
    assert code == EXIT_OK and data["norm"] in ("7", 7) and data["totally_positive"]


def test_ideal(capsys):
    code, out = run(capsys, "ideal", "2", "--format", "json")
    data = json.loads(out.out)
    assert code == EXIT_OK and data["rho_LK"] == 2 and data["divisor_sum_s"] == 2


def test_ideal_divisible_by_p(capsys):
    code, out = run(capsys, "ideal", "7", "--format", "json")
    assert json.loads(out.out)["s"] is None


def test_cusps(capsys):
    code, out = run(capsys, "ideal", "--cusps")
    assert code == EXIT_OK and "8" in out.out


def test_expand_roundtrip(capsys):
    from hilbert49.eisenstein import build_F
    from hilbert49.qseries import from_interchange
    code, out = run(capsys, "expand", "--series", "F1", "--trace-bound", "10", "--style", "interchange")
    assert code == EXIT_OK
    text = out.out.split("\n", 1)[1]
    assert from_interchange(text) == build_F(1, 10)


def test_rep(capsys):
    code, out = run(capsys, "rep", "--k", "0,4,8", "--format", "json")
    data = json.loads(out.out)
    assert data["order"] == 336 and data["invariant_dimensions"] == {"0": 1, "4": 1, "8": 3}


def test_relation_insufficient(capsys):
    code, out = run(capsys, "relation", "--trace-bound", "10")
    assert code == EXIT_FAIL and "insufficient" in out.out


def test_toric_facets(capsys):
    code, out = run(capsys, "toric", "--facets", "--format", "json")
    assert code == EXIT_OK and all(f["ok"] for f in json.loads(out.out)["facets"])


def test_toric_intersections(capsys):
    code, out = run(capsys, "toric", "--intersections", "--format", "json")
    data = json.loads(out.out)
    assert data["L^3"] == "12" and data["(K-E/2)^3"] == "36"


def test_dims(capsys):
    code, out = run(capsys, "dims", "--group", "gamma-1", "--k", "8", "--format", "json")
    (row,) = json.loads(out.out)["rows"]
    assert (row["cusp"], row["total"]) == (4, 5)


def test_verify_only(capsys):
    code, out = run(capsys, "verify-all", "--only", "cusps", "trace_tables")
    assert code == EXIT_OK and "2/2 checks passed" in out.out


def test_usage_errors(capsys):
    assert main(["field", "--element", "w^2+x"]) == EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == EXIT_USAGE


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "hilbert49", "ideal", "--cusps"], capture_output=True, text=True)
    assert r.returncode == 0 and "8" in r.stdout
