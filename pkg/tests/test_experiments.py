"""Config parsing, runners, CLI exit codes, and byte-level reproducibility."""

import json
import os

import pytest
from gmpy2 import mpq

from volterra_lab.cli import main
from volterra_lab.errors import BadConfig, ExactBlowup
from volterra_lab.experiments.config import RunConfig, load_config, parse_kv
from volterra_lab.experiments.runners import (
    cmd_orbit,
    cmd_rpt,
    cmd_sixpoints,
    cmd_theorem_demo,
    cmd_verify_props,
)


def test_parse_kv():
    text = "a = 1\n# comment\nb= 2/5  # trailing\n\nc =x y\n"
    assert parse_kv(text) == {"a": "1", "b": "2/5", "c": "x y"}
    with pytest.raises(BadConfig):
        parse_kv("novalue\n")
    with pytest.raises(BadConfig):
        parse_kv("= 3\n")
    with pytest.raises(BadConfig):
        parse_kv("a = 1\na = 2\n")


def test_run_config_validation():
    with pytest.raises(BadConfig):
        RunConfig(command="nope")
    with pytest.raises(BadConfig):
        RunConfig(command="orbit", backend="float")
    with pytest.raises(BadConfig):
        RunConfig(command="orbit", precision_start=2)
    with pytest.raises(BadConfig):
        RunConfig(command="orbit", precision_start=256, precision_cap=128)
    cfg = RunConfig(command="orbit", params={"steps": "0x10", "eps": "1/7"})
    assert cfg.get_int("steps", 1) == 16
    assert cfg.get_rat("eps", "0") == mpq(1, 7)
    assert cfg.get_bool("missing", True) is True
    assert next(iter(cfg.policy().ladder())) == 128


def test_load_config_precedence(tmp_path):
    path = tmp_path / "c.conf"
    path.write_text("seed = 5\nsteps = 7\nout = filedir\n")
    cfg = load_config("orbit", path=str(path), seed=9, out_dir=None)
    assert cfg.seed == 9            # flag wins
    assert cfg.out_dir == "filedir"  # file fills the gap
    assert cfg.params == {"steps": "7"}  # reserved keys are peeled off
    with pytest.raises(BadConfig):
        load_config("orbit", path=str(tmp_path / "missing.conf"))


def test_get_point_forms():
    cfg = RunConfig(command="orbit", params={"a": "1/2, 1/4, 1/4", "b": "1/2 1/4 1/4"})
    assert cfg.get_point("a", None).coords == cfg.get_point("b", None).coords


def test_orbit_exact_fixed_points(tmp_path):
    cfg = RunConfig(command="orbit", backend="exact", out_dir=str(tmp_path),
                    params={"start": "1/3,1/3,1/3", "steps": "100", "svg": "false"})
    rep = cmd_orbit(cfg)
    assert rep["status"] == "pass" and rep["rows"] == 101
    assert rep["phi_first"] == rep["phi_last"]
    csv = (tmp_path / "orbit.csv").read_text().splitlines()
    assert csv[0] == "step,x,y,z,phi"
    assert csv[1] == "0,0.333333333333,0.333333333333,0.333333333333,0.037037037037"
    assert csv[1].split(",", 1)[1] == csv[-1].split(",", 1)[1]


def test_orbit_exact_blowup(tmp_path):
    cfg = RunConfig(command="orbit", backend="exact", out_dir=str(tmp_path),
                    params={"steps": "200"})
    with pytest.raises(ExactBlowup):
        cmd_orbit(cfg)


def test_orbit_interval_certified(tmp_path):
    cfg = RunConfig(command="orbit", out_dir=str(tmp_path), params={"steps": "60"})
    rep = cmd_orbit(cfg)
    assert rep["status"] == "pass"
    assert rep["phi_nonincreasing_violations"] == 0
    assert rep["phi_first"] == "0.035000000000"
    csv = (tmp_path / "orbit.csv").read_text().splitlines()
    assert csv[1].startswith("0,0.400000000000,0.350000000000,0.250000000000,")
    phis = [float(line.rsplit(",", 1)[1]) for line in csv[1:]]
    assert all(b <= a + 1e-12 for a, b in zip(phis, phis[1:]))
    assert (tmp_path / "orbit.svg").read_text().startswith("<svg")


def test_verify_props_small(tmp_path):
    cfg = RunConfig(command="verify-props", seed=11, out_dir=str(tmp_path),
                    params={"samples": "60", "hit_samples": "5"})
    rep = cmd_verify_props(cfg)
    assert rep["status"] == "pass"
    assert rep["violations"] == 0 and rep["undecided"] == 0
    names = [s["name"] for s in rep["sweeps"]]
    assert names == ["growth-bounds", "potential-decay", "potential-decay",
                     "side-transit", "corner-dwell", "vertex-hit"]


def test_rpt_two_chain_exact(tmp_path):
    cfg = RunConfig(command="rpt", seed=3, out_dir=str(tmp_path),
                    params={"tournament": "two-chain", "d": "3",
                            "samples": "2000", "tolerance": "1/20"})
    rep = cmd_rpt(cfg)
    assert rep["status"] == "pass"
    assert rep["exact"] == ["255/256", "1/256"]
    csv = (tmp_path / "rpt.csv").read_text().splitlines()
    assert csv[0] == "candidate,exact,exact_decimal,mc,mc_decimal"
    assert csv[1].startswith("1,255/256,0.996093750000,")


def test_rpt_three_cycle_uniform(tmp_path):
    cfg = RunConfig(command="rpt", seed=8, out_dir=str(tmp_path),
                    params={"d": "5", "samples": "3000", "tolerance": "1/20"})
    rep = cmd_rpt(cfg)
    assert rep["exact"] == ["1/3", "1/3", "1/3"]
    assert rep["status"] == "pass"


def test_rpt_edges_and_budget(tmp_path):
    cfg = RunConfig(command="rpt", out_dir=str(tmp_path),
                    params={"tournament": "edges", "n": "3",
                            "edges": "1>2 2>3 3>1", "d": "2", "samples": "500",
                            "tolerance": "1/10"})
    assert cmd_rpt(cfg)["exact"] == ["1/3", "1/3", "1/3"]
    bad = RunConfig(command="rpt", out_dir=str(tmp_path),
                    params={"tournament": "edges", "n": "2", "edges": "1-2"})
    with pytest.raises(BadConfig):
        cmd_rpt(bad)


def test_sixpoints_defaults(tmp_path):
    cfg = RunConfig(command="sixpoints", out_dir=str(tmp_path))
    rep = cmd_sixpoints(cfg)
    assert rep["status"] == "pass"
    assert rep["d0"] == 38
    assert rep["empirical_depth"] == 13
    assert rep["covered_fraction"] == {"num": "1", "den": "1"}
    assert all(rep["points_close"])
    blob = json.loads((tmp_path / "sixpoints.json").read_text())
    assert blob["triple"]["a"]["offset"] == 13


def test_theorem_demo_small(tmp_path):
    cfg = RunConfig(command="theorem-demo", out_dir=str(tmp_path),
                    params={"d0_log2_threshold": "-60", "window": "10",
                            "crosscheck_depth": "6", "d0_cap": "100"})
    rep = cmd_theorem_demo(cfg)
    assert rep["status"] == "pass"
    assert rep["d0"] == 25 and rep["window"] == {"d_lo": 26, "d_hi": 35}
    assert rep["meets"] == 10 and rep["undecided"] == 0
    assert rep["part_bound"]["ok"] and rep["crosscheck"]["ok"]
    sizes = [t["sizes"] for t in rep["tournaments"]]
    assert sizes[0] == [150, 150, 700] and len(sizes) == 6
    assert all(s[0] <= 300 and s[1] <= 300 and min(s) >= 1 for s in sizes)
    for e in rep["per_d"]:
        assert float(e["p_lo"]) <= float(e["p_hi"])
        assert float(e["p_lo"]) >= 0.7


def test_theorem_demo_shallow_window_fails_honestly(tmp_path):
    cfg = RunConfig(command="theorem-demo", out_dir=str(tmp_path),
                    params={"d0_log2_threshold": "-8192", "window": "5",
                            "crosscheck_depth": "6", "d0_cap": "400"})
    rep = cmd_theorem_demo(cfg)
    assert rep["status"] == "violation"
    assert rep["meets"] == 0 and rep["crosscheck"]["ok"]


def test_cli_exit_codes(tmp_path):
    assert main(["rpt", "--seed", "3", "--out", str(tmp_path / "a")]) == 0
    conf = tmp_path / "strict.conf"
    conf.write_text("tolerance = 0\nsamples = 999\n")
    assert main(["rpt", "--config", str(conf), "--seed", "3",
                 "--out", str(tmp_path / "b")]) == 1
    assert main(["orbit", "--precision-start", "8", "--precision-cap", "8",
                 "--out", str(tmp_path / "c")]) == 2
    assert main(["rpt", "--config", str(tmp_path / "missing.conf")]) == 3
    with pytest.raises(SystemExit) as exc:
        main(["not-a-command"])
    assert exc.value.code == 3


def test_reports_are_reproducible(tmp_path):
    outs = []
    for sub in ("one", "two"):
        d = tmp_path / sub
        cfg = RunConfig(command="orbit", out_dir=str(d), params={"steps": "40"})
        cmd_orbit(cfg)
        cfg2 = RunConfig(command="rpt", seed=5, out_dir=str(d),
                         params={"samples": "1500", "tolerance": "1/10"})
        cmd_rpt(cfg2)
        outs.append(d)
    for name in ("orbit.csv", "orbit.svg", "orbit.json", "rpt.csv", "rpt.json"):
        a = (outs[0] / name).read_bytes()
        b = (outs[1] / name).read_bytes()
        assert a == b, name


def test_plot_alias_sets_svg(tmp_path):
    rc = main(["plot", "--out", str(tmp_path)])
    assert rc == 0
    assert (tmp_path / "orbit.svg").exists()
