import json

import pytest

from somos5 import cli
from somos5.census import (DensityRow, Method, census, classify_prime,
                           default_checkpoints, density_table)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_examples():
    c5, c7 = classify_prime(5), classify_prime(7)
    assert c5.method is Method.CURVE_ORDER and c5.divides
    assert c5.ord_P == 2 * c5.ord_R
    assert not c7.divides and c7.ord_P == c7.ord_R
    c2 = classify_prime(2)
    assert c2.method is Method.DIRECT_SCAN and c2.ord_P is None and c2.divides
    assert not classify_prime(17).divides


def test_small_rows():
    rows = density_table([10, 100, 1000])
    assert [(r.x, r.pi, r.pi_prime) for r in rows] == [(10, 4, 3), (100, 25, 12), (1000, 168, 83)]
    assert rows[0].ratio_str == "0.750000"
    assert rows[2].ratio_str == "0.494048"
    assert DensityRow(1, 0, 0).ratio == 0.0


def test_rows_ignore_order_and_duplicates():
    assert density_table([100, 10, 100]) == density_table([10, 100])
    assert density_table([]) == []
    with pytest.raises(ValueError):
        density_table([100], cap=50)


def test_parallel_matches_serial():
    assert census(3000, jobs=2, block=50) == census(3000)


def test_default_checkpoints():
    assert default_checkpoints(1000) == [10, 100, 1000]
    assert default_checkpoints(5000) == [10, 100, 1000, 5000]


def test_density_csv_deterministic(capsys):
    first = run(capsys, "density", "--limit", "1000", "--format", "csv")
    second = run(capsys, "density", "--limit", "1000", "--format", "csv")
    assert first == second
    code, out, _ = first
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "x,pi,pi_prime,ratio"
    assert lines[-1] == "1000,168,83,0.494048"


def test_density_checkpoints_json(capsys):
    code, out, _ = run(capsys, "density", "--limit", "1e3", "--checkpoints", "10,1e2",
                       "--format", "json")
    assert code == 0
    assert json.loads(out) == [{"x": 10, "pi": 4, "pi_prime": 3, "ratio": "0.750000"},
                               {"x": 100, "pi": 25, "pi_prime": 12, "ratio": "0.480000"}]


def test_density_over_cap_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["density", "--limit", "100", "--cap", "10"])
    assert exc.value.code == 2


def test_prime_formats(capsys):
    code, out, _ = run(capsys, "prime", "5", "--format", "csv")
    assert code == 0
    header, row = out.splitlines()
    assert header == "p,method,ord_P,ord_R,divides"
    assert row.startswith("5,curve,") and row.endswith("True")
    code, out, _ = run(capsys, "prime", "17", "--format", "json")
    assert json.loads(out) == {"p": 17, "method": "scan", "ord_P": None, "ord_R": None,
                               "divides": False}
    code, _, err = run(capsys, "prime", "15")
    assert code == 2 and "not prime" in err


def test_theory_json(capsys):
    code, out, _ = run(capsys, "theory", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["density"] == "5087/10752"
    assert rep["counts"] == [3754, 4036, 365, 36]
    assert rep["mu_zero"] == "1/57344"


def test_theory_mismatch_exit_code(monkeypatch, capsys):
    monkeypatch.setitem(cli.EXPECTED, "I3_order", 8191)
    code, _, err = run(capsys, "theory")
    assert code == 1 and "MISMATCH" in err


def test_dump_group(capsys):
    code, out, _ = run(capsys, "theory", "--dump-group", "3")
    rows = out.splitlines()
    assert code == 0 and len(rows) == 8192
    assert all(len(r.split(",")) == 6 for r in rows[:10])


def test_emit_f8(capsys):
    code, out, _ = run(capsys, "theory", "--emit-f8")
    assert code == 0 and len(out.split()) == 65


def test_verify_group(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "group")
    assert code == 0
    assert "ker order 64: pass" in out


def test_verify_unknown_suite():
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "--suite", "nope"])
    assert exc.value.code == 2
