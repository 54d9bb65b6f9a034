import pytest

from ftnsim.cli import main

CFG = """\
[quick]
scheme = uncoded
alpha = 1.0
N = 256
snr_db = 6
min_bit_errors = 10
max_bits = 5000
"""


def test_run_and_errorfree_roundtrip(tmp_path, capsys):
    cfg = tmp_path / "sweep.cfg"
    cfg.write_text(CFG.replace("snr_db = 6", "snr_db = 0,6"))
    out = tmp_path / "out.csv"
    assert main(["run", str(cfg), "--out", str(out), "--seed", "9"]) == 0
    captured = capsys.readouterr()
    assert "quick" in captured.out
    assert main(["errorfree", str(out), "--threshold", "0.01"]) == 0
    line = capsys.readouterr().out.strip()
    scheme, snr = line.split(",")
    assert scheme == "quick"
    assert 0.0 < float(snr) < 6.0


def test_run_config_error_exit_code(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("[s]\nwat = 1\n")
    assert main(["run", str(cfg), "--out", str(tmp_path / "o.csv")]) == 2


def test_errorfree_missing_file_exit_code(tmp_path):
    assert main(["errorfree", str(tmp_path / "nope.csv")]) == 2


def test_errorfree_not_bracketed_exit_code(tmp_path, capsys):
    cfg = tmp_path / "sweep.cfg"
    cfg.write_text(CFG.replace("snr_db = 6", "snr_db = 30"))
    out = tmp_path / "out.csv"
    assert main(["run", str(cfg), "--out", str(out)]) == 0
    assert main(["errorfree", str(out)]) == 3
    assert "bracket" in capsys.readouterr().err


def test_selftest_passes(capsys):
    assert main(["selftest"]) == 0
    out = capsys.readouterr().out
    assert out.count("[PASS]") == 4
    assert "[FAIL]" not in out


def test_requires_subcommand():
    with pytest.raises(SystemExit):
        main([])
