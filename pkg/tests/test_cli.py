import json

import pytest

from sumprod.cli import main


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_gen_monomials(tmp_path, capsys):
    path = tmp_path / "m.txt"
    assert main(["gen", "--family", "monomials", "--ambient", "p=2", "--n", "10", "--out", str(path)]) == 0
    lines = [ln for ln in path.read_text().splitlines() if not ln.startswith("#")]
    assert lines[0] == "field: p=2" and len(lines) == 12
    assert "# rng: numpy.PCG64" in path.read_text()


def test_seed_env_fallback(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("SUMPROD_SEED", "17")
    _, a, _ = run(capsys, "gen", "--family", "random_poly", "--ambient", "p=3", "--n", "8")
    _, b, _ = run(capsys, "gen", "--family", "random_poly", "--ambient", "p=3", "--n", "8", "--seed", "17")
    assert a == b and "# seed: 17" in a
    monkeypatch.setenv("SUMPROD_SEED", "x")
    assert run(capsys, "gen", "--family", "random_poly", "--ambient", "p=3")[0] == 2


def _gen(tmp_path, name, *extra):
    path = tmp_path / name
    assert main(["gen", "--out", str(path), *extra]) == 0
    return str(path)


def test_analyze_orders_and_jobs(tmp_path, capsys):
    a = _gen(tmp_path, "b.txt", "--family", "monomials", "--ambient", "p=2", "--n", "10")
    b = _gen(tmp_path, "a.txt", "--family", "constants", "--ambient", "p=2,e=2,modulus=1,1,1")
    rc, serial, _ = run(capsys, "analyze", "--in", a, "--in", b)
    assert rc == 0
    rows = serial.strip().split("\n")
    assert rows[1].startswith("constants,") and rows[2].startswith("monomials,field: p=2,11,56,21,")
    rc, parallel, _ = run(capsys, "analyze", "--in", b, "--in", a, "--jobs", "2")
    assert rc == 0 and parallel == serial
    rc, js, _ = run(capsys, "analyze", "--in", a, "--format", "json")
    assert json.loads(js)[0]["chain_len"] == 11


def test_certify_deterministic(tmp_path, capsys):
    src = _gen(tmp_path, "m.txt", "--family", "monomials", "--ambient", "p=2", "--n", "10")
    b1, b2 = tmp_path / "b1", tmp_path / "b2"
    assert main(["certify", "--in", src, "--out", str(b1)]) == 0
    assert main(["certify", "--in", src, "--out", str(b2)]) == 0
    assert b1.read_bytes() == b2.read_bytes()
    rc, out, _ = run(capsys, "recheck", "--in", str(b1))
    assert rc == 0 and out.rstrip().endswith("status: PASS")


def test_recheck_detects_tampering(tmp_path, capsys):
    src = _gen(tmp_path, "m.txt", "--family", "monomials", "--ambient", "p=2", "--n", "6")
    bundle = tmp_path / "b"
    main(["certify", "--in", src, "--out", str(bundle)])
    text = bundle.read_text()
    assert "\nsumset_size: 22\n" in text
    bundle.write_text(text.replace("\nsumset_size: 22\n", "\nsumset_size: 21\n"))
    assert run(capsys, "recheck", "--in", str(bundle))[0] == 1


def test_exit_codes(tmp_path, capsys):
    with pytest.raises(SystemExit) as info:
        main(["verify", "nonsense"])
    assert info.value.code == 2
    one = tmp_path / "one.txt"
    one.write_text("field: p=2\nt\n")
    assert run(capsys, "analyze", "--in", str(one))[0] == 2
    dup = tmp_path / "dup.txt"
    dup.write_text("field: p=2\n1\n1\n")
    rc, _, err = run(capsys, "certify", "--in", str(dup))
    assert rc == 2 and "line 3" in err
    big = _gen(tmp_path, "big.txt", "--family", "interval", "--ambient", "p=2", "--degree", "6")
    assert run(capsys, "analyze", "--in", big, "--max-size", "32")[0] == 3
    assert run(capsys, "analyze", "--in", str(tmp_path / "missing.txt"))[0] == 2


def test_verify_balls_json(capsys):
    rc, out, _ = run(capsys, "verify", "balls", "--format", "json")
    doc = json.loads(out)
    assert rc == 0 and doc["failed"] == 0 and doc["suite"] == "balls"


@pytest.mark.slow
def test_verify_all(capsys):
    rc, out, _ = run(capsys, "verify", "all")
    assert rc == 0, out
    assert "0 failed" in out
