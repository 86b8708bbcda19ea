import csv
import io
import json
import math

import pytest

from deco import cli, corrw, spectra

S = "0.7071067811865476"
HADAMARD_INIT = ["--init", f"{S},0", f"0,{S}"]


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_golden_match_exit_zero(capsys):
    code, _, err = run(capsys, "matrix", "--coin", "hadamard", *HADAMARD_INIT, "--n", "3", "--kind", "AP", "--golden")
    assert code == 0, err


def test_golden_mismatch_exit_three(capsys):
    code, _, _ = run(capsys, "matrix", "--coin", "hadamard", "--init", "e-1", "--n", "3", "--kind", "a0", "--golden")
    assert code == cli.EXIT_GOLDEN


def test_two_site_identical_files(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert cli.main(["matrix", "--coin", "gudder-sorkin", "--init", "e-1", "--n", "4", "--kind", "A0", "--out", str(a)]) == 0
    assert cli.main(["matrix", "--two-site", "--n", "4", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert cli.main(["matrix", "--coin", "gudder-sorkin", "--init", "e-1", "--n", "4", "--format", "csv", "--out", str(a)]) == 0
    assert cli.main(["matrix", "--two-site", "--n", "4", "--format", "csv", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize(
    "argv",
    [
        ["matrix", "--coin", "1,0", "0,0", "0,0", "1,0"],
        ["matrix", "--coin", "0.5,0", "0.5,0", "0.5,0", "-0.5,0"],
        ["matrix", "--coin", "spin"],
        ["matrix", "--init", "1,0", "1,0"],
        ["matrix", "--n", "13"],
        ["matrix", "--kind", "apx:1", "--n", "2"],
        ["entropy", "--p", "0.5"],
        ["entropy", "--p", "1.0", "--p0", "0.5"],
        ["scan", "--n-range", "0:3"],
    ],
)
def test_validation_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == cli.EXIT_INPUT
    assert err.startswith("error:")


def test_entropy_a1_three_bits(capsys):
    code, out, _ = run(capsys, "entropy", "--kind", "A1", "--coin", "hadamard", *HADAMARD_INIT, "--n", "3")
    data = json.loads(out)
    assert code == 0 and data["entropy_bits"] == pytest.approx(3.0, abs=1e-12)
    assert data["method"] == "closed-form"


def test_entropy_direct_mode(capsys):
    code, out, _ = run(capsys, "entropy", "--kind", "A0", "--p", "0.7", "--p0", "0.3", "--n", "2")
    assert code == 0
    assert json.loads(out)["entropy_bits"] == pytest.approx(0.98145, abs=5e-6)


def test_entropy_oracle_method_tag(capsys):
    code, out, _ = run(capsys, "entropy", "--kind", "b", "--n", "5", "--oracle", "--format", "csv")
    row = list(csv.DictReader(io.StringIO(out)))[0]
    assert code == 0 and row["method"] == "spectral"
    params = corrw.from_coin(cli.parse_coin(["hadamard"]), cli.DEFAULT_INIT)
    assert float(row["entropy_bits"]) == pytest.approx(spectra.exact_entropy_B(params, 5).value, abs=1e-9)


def test_spectrum_oracle_matches_default(capsys):
    _, a, _ = run(capsys, "spectrum", "--kind", "AP", "--n", "3", "--oracle")
    _, b, _ = run(capsys, "spectrum", "--kind", "AP", "--n", "3")
    da, db = json.loads(a), json.loads(b)
    assert da["method"] == "spectral" and db["method"] == "closed-form"

    def expand(d):
        vals = []
        for e in d["eigenvalues"]:
            vals += [e["value"]] * e["multiplicity"]
        return sorted(vals)

    assert max(abs(x - y) for x, y in zip(expand(da), expand(db))) < 1e-9


def test_oracle_cap_exit_four(capsys):
    code, _, _ = run(capsys, "spectrum", "--kind", "a1", "--n", "11", "--oracle")
    assert code == cli.EXIT_ORACLE


def test_scan_columns(capsys):
    code, out, _ = run(capsys, "scan", "--coin", "hadamard", *HADAMARD_INIT, "--n-range", "10,100,1000")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and [r["n"] for r in rows] == ["10", "100", "1000"]
    assert list(rows[0])[:7] == ["n", "S_A0", "S_AP", "S_A1", "S_B", "H_rw", "H_qw"]
    for r in rows:
        assert float(r["S_A0"]) == pytest.approx(1.0, abs=1e-12)
        assert r["A0_deficit_over_bias2"] == ""
    s_a1 = [float(r["S_A1"]) for r in rows]
    assert s_a1 == pytest.approx([10, 100, 1000], abs=1e-9)


def test_scan_a1_linear(capsys):
    code, out, _ = run(capsys, "scan", "--p", "0.7", "--p0", "0.3", "--n-range", "1:6")
    vals = [float(r["S_A1"]) for r in csv.DictReader(io.StringIO(out))]
    c = -(0.7 * math.log2(0.7) + 0.3 * math.log2(0.3))
    assert all(abs((b - a) - c) < 1e-12 for a, b in zip(vals, vals[1:]))


def test_scan_entropy_table(capsys):
    code, out, _ = run(capsys, "scan", "--p", "0.7", "--p0", "0.3", "--n-range", "100:1600:300", "--table")
    assert code == 0
    assert "quantity,leading,claimed_slope,fitted_slope,ratio_at_max,matches" in out


def test_qw_dump(capsys):
    code, out, _ = run(capsys, "qw", "--n", "2", *HADAMARD_INIT)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert [float(r["probability"]) for r in rows] == pytest.approx([0.25, 0.5, 0.25], abs=1e-12)
    code, out, _ = run(capsys, "qw", "--n", "2", "--rw", "--p", "0.7", "--p0", "0.3")
    assert out.splitlines()[0] == "n,j,pL,pR,total"


def test_byte_identical_runs(tmp_path):
    paths = [tmp_path / f"{i}.csv" for i in range(2)]
    for p in paths:
        assert cli.main(["scan", "--n-range", "2:40:7", "--out", str(p)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_parse_n_range():
    assert cli.parse_n_range("1:7:3") == [1, 4, 7]
    assert cli.parse_n_range("10,100") == [10, 100]


def test_verify_default_passes(tmp_path):
    out = tmp_path / "verify.txt"
    assert cli.main(["verify", "--large-n", "2000", "--out", str(out)]) == 0
    text = out.read_text()
    sections = [line for line in text.splitlines() if line.startswith("[")]
    assert len(sections) >= 12
    assert not any(line.startswith("[FAIL]") for line in sections)
    assert "ConstantMismatch" in text


def test_verify_reproducible(tmp_path):
    outs = [tmp_path / f"v{i}.txt" for i in range(2)]
    for o in outs:
        assert cli.main(["verify", "--seed", "42", "--random-coins", "50", "--large-n", "2000", "--out", str(o)]) == 0
    assert outs[0].read_text() == outs[1].read_text()


def test_verify_catches_sign_flip(monkeypatch, tmp_path):
    def flipped(params, n):
        delta = -corrw.endpoint_bias(params, n)
        return 0.5 * (1 + delta), 0.5 * (1 - delta)

    monkeypatch.setattr(corrw, "endpoint_marginals", flipped)
    out = tmp_path / "verify.txt"
    assert cli.main(["verify", "--random-coins", "3", "--large-n", "1000", "--out", str(out)]) == cli.EXIT_VERIFY
    assert "[FAIL] endpoint marginals" in out.read_text()


def test_explicit_coin_with_negative_entries(capsys):
    code, out, err = run(capsys, "entropy", "--coin", "0.6,0", "0.8,0", "0.8,0", "-0.6,0", "--init", "e-1", "--n", "4", "--kind", "a1")
    assert code == 0, err
    c = -(0.36 * math.log2(0.36) + 0.64 * math.log2(0.64))
    assert json.loads(out)["entropy_bits"] == pytest.approx(4 * c, abs=1e-9)
