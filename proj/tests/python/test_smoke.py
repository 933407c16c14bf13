import math
import os
import subprocess

import pytest

import rlnc_delay as rd


def test_plateau_overhead():
    s = rd.avg_transmissions(K=60, q=2, epsilon=0.1, omega_max=30)
    assert abs(s["avg_overhead"] - 8.45) <= 0.01
    assert s["lower_bound"] < s["avg_transmissions"] < s["upper_bound"]


def test_small_cdf():
    d = rd.overhead_distribution(K=2, q=2, epsilon=0.5, omega_max=1)
    assert d["cdf"][1] == pytest.approx(0.22265625, abs=1e-15)
    assert d["outage"] == pytest.approx(0.77734375, abs=1e-15)
    assert sum(d["pmf"]) == pytest.approx(d["cdf"][-1], abs=1e-12)


def test_rank_functions():
    assert rd.full_rank_prob(2, 2, 2) == pytest.approx(0.375)
    assert rd.rank_distribution(2, 2, 1) == pytest.approx([0.25, 0.75])
    assert rd.systematic_full_rank_prob(2, 2, 2, 1) == pytest.approx(2 / 3)


def test_bounds_and_errors():
    lo, hi = rd.decoding_delay_bounds(2, 30, 0.1)
    assert lo == pytest.approx(100 / 3)
    assert hi <= rd.lucani_upper_bound(2, 30, 0.1) * (1 + 1e-14)
    with pytest.raises(rd.UnboundedDelayError):
        rd.decoding_delay_bounds(2, 30, 1.0)
    with pytest.raises(ValueError):
        rd.avg_transmissions(K=0, q=2, epsilon=0.1, omega_max=3)


def test_simulation_matches_theory():
    r = rd.simulate(K=10, q=4, epsilon=0.2, omega_max=5, scheme="sys", generations=20000, seed=3)
    t = rd.avg_transmissions(K=10, q=4, epsilon=0.2, omega_max=5, scheme="sys")
    assert abs(r["avg_transmissions"] - t["avg_transmissions"]) < 4 * r["std_error"]
    assert sum(r["histogram"]) + r["outage_count"] == 20000
    again = rd.simulate(K=10, q=4, epsilon=0.2, omega_max=5, scheme="sys", generations=20000, seed=3, threads=4)
    assert again == r


@pytest.mark.skipif(not os.environ.get("RLNC_DELAY_EXE"), reason="CLI not built")
def test_cli_round_trip(tmp_path):
    out = tmp_path / "t.csv"
    subprocess.run(
        [os.environ["RLNC_DELAY_EXE"], "theory", "--K", "60", "--epsilon", "0.1", "--omega-max", "30",
         "--scheme", "nonsys", "--out", str(out)],
        check=True,
    )
    lines = out.read_text().splitlines()
    assert lines[0] == "# rlnc-delay v1"
    row = dict(zip(lines[1].split(","), lines[2].split(",")))
    assert math.isclose(float(row["avg_overhead"]), 8.4519, abs_tol=1e-4)
    bad = subprocess.run([os.environ["RLNC_DELAY_EXE"], "figure", "fig8"], capture_output=True)
    assert bad.returncode == 2
