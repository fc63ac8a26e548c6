from housedl.cli import main

CONFIG = """
[experiment]
kind = custom
n = 30
trials = 2
seed = 17

[grid]
p_list = 8, 16
theta_list = 0.5
"""


def test_run_subcommand(tmp_path, capsys):
    cfg = tmp_path / "sweep.cfg"
    cfg.write_text(CONFIG)
    out = tmp_path / "out"
    assert main(["run", str(cfg), "--out-dir", str(out)]) == 0
    assert (out / "custom.csv").exists()
    assert (out / "custom.svg").exists()
    captured = capsys.readouterr()
    assert "custom.csv" in captured.out


def test_run_seed_override_changes_output(tmp_path):
    cfg = tmp_path / "sweep.cfg"
    cfg.write_text(CONFIG)
    out1, out2, out3 = (tmp_path / d for d in ("a", "b", "c"))
    main(["run", str(cfg), "--out-dir", str(out1)])
    main(["run", str(cfg), "--out-dir", str(out2), "--seed", "99"])
    main(["run", str(cfg), "--out-dir", str(out3)])
    a = (out1 / "custom.csv").read_bytes()
    b = (out2 / "custom.csv").read_bytes()
    c = (out3 / "custom.csv").read_bytes()
    assert a != b
    assert a == c


def test_plot_subcommand(tmp_path):
    cfg = tmp_path / "sweep.cfg"
    cfg.write_text(CONFIG)
    out = tmp_path / "out"
    main(["run", str(cfg), "--out-dir", str(out)])
    replot = tmp_path / "replot"
    assert main(["plot", str(out / "custom.csv"), "--out-dir", str(replot)]) == 0
    assert (replot / "custom.svg").exists()


def test_threads_flag_gives_same_rows(tmp_path):
    cfg = tmp_path / "sweep.cfg"
    cfg.write_text(CONFIG)
    out1, out2 = tmp_path / "st", tmp_path / "mt"
    main(["run", str(cfg), "--out-dir", str(out1)])
    main(["run", str(cfg), "--out-dir", str(out2), "--threads", "4"])
    assert (out1 / "custom.csv").read_bytes() == (out2 / "custom.csv").read_bytes()


def test_bad_config_exits_nonzero(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("[experiment]\nn = 10\n")
    assert main(["run", str(cfg)]) == 2
    assert "error:" in capsys.readouterr().err


def test_missing_config_exits_nonzero(tmp_path, capsys):
    assert main(["run", str(tmp_path / "nope.cfg")]) == 2
    assert "error:" in capsys.readouterr().err


def test_bad_csv_exits_nonzero(tmp_path, capsys):
    path = tmp_path / "junk.csv"
    path.write_text("not,a,results,file\n")
    assert main(["plot", str(path)]) == 2
    assert "error:" in capsys.readouterr().err
