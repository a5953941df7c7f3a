"""Exit criteria for the package, one test per criterion.

Each test records a PASS/FAIL line that is printed in the pytest terminal
summary under "acceptance criteria".
"""
import csv
import io
import itertools
import time

import numpy as np
import pytest
from scipy import integrate

from riskdist.cli import run
from riskdist.counterex import verify_median_counterexample, verify_mode_counterexample
from riskdist.dists import Beta, LogitNormal, ProbitNormal, mirror
from riskdist.mapping import (
    mc_of,
    mcmap_beta,
    mcmap_logitnorm,
    mcmap_probitnorm,
    mirror_solution,
)
from riskdist.specfun import reg_inc_beta, std_normal_cdf, std_normal_quantile


def _random_members(rng, per_family):
    out = []
    for _ in range(per_family):
        out.append(Beta(float(np.exp(rng.uniform(np.log(0.3), np.log(20)))),
                        float(np.exp(rng.uniform(np.log(0.3), np.log(20))))))
        out.append(LogitNormal(float(rng.uniform(-3, 3)), float(np.exp(rng.uniform(np.log(0.1), np.log(3))))))
        out.append(ProbitNormal(float(rng.uniform(-2, 2)), float(np.exp(rng.uniform(np.log(0.1), np.log(3))))))
    return out


def test_1_closed_form_anchors(criterion):
    t0 = time.perf_counter()
    cases = [((0.5, 5 / 6), (1, 1)), ((0.5, 53 / 70), (2, 2)), ((0.25, 11 / 14), (1, 3))]
    errs = [np.max(np.abs(np.subtract(mcmap_beta(*mc).params.params, ab))) for mc, ab in cases]
    elapsed = time.perf_counter() - t0
    criterion("1 closed-form beta anchors", f"max err {max(errs):.2e} (tol 1e-6), {elapsed:.2f}s (< 1s)")
    assert max(errs) <= 1e-6
    assert elapsed < 1.0


def test_2_round_trip_suite(criterion):
    t0 = time.perf_counter()
    worst = {}
    points = (
        [("beta", Beta(a, b), mcmap_beta, 1e-6) for a, b in itertools.product([0.5, 1, 2, 5], repeat=2)]
        + [("probitnorm", ProbitNormal(mu, s), mcmap_probitnorm, 1e-6)
           for mu, s in itertools.product([-2, -1, 0], [0.25, 0.5, 1, 2])]
        + [("logitnorm", LogitNormal(mu, s), mcmap_logitnorm, 1e-5)
           for mu, s in itertools.product([-2, -1, 0], [0.25, 0.5, 1, 2])]
    )
    failures = []
    for fam, d, solver, tol in points:
        r = solver(*mc_of(d))
        err = float(np.max(np.abs(np.subtract(r.params.params, d.params))))
        worst[fam] = max(worst.get(fam, 0.0), err)
        if not r.converged or err > tol:
            failures.append((d, err))
    elapsed = time.perf_counter() - t0
    detail = ", ".join(f"{k} {v:.1e}" for k, v in worst.items())
    criterion("2 round-trip suite", f"{len(points)} points; worst {detail}; {elapsed:.1f}s (< 60s)")
    assert not failures, failures
    assert elapsed < 60.0


def test_3_identity_check(criterion):
    rng = np.random.default_rng(2024)
    members = _random_members(rng, 34)[:100]
    worst = 0.0
    for d in members:
        m, c = mc_of(d)
        # second moment from an unrelated integrator
        I2 = integrate.quad(lambda x: float(d.cdf(x)) ** 2, 0, 1, epsabs=1e-13, epsrel=1e-13, limit=500)[0]
        worst = max(worst, abs(m * (1 - m) * c + 0.5 * m * m + 0.5 * I2 - 0.5))
    criterion("3 identity m(1-m)c + m^2/2 + I2/2 = 1/2", f"100 points, max dev {worst:.2e} (tol 1e-8)")
    assert worst <= 1e-8


@pytest.fixture(scope="module")
def desk_grid_csv(tmp_path_factory):
    """Reduced figure grid via the CLI: 3 m x 3 c x 3 families at se 0.001."""
    path = tmp_path_factory.mktemp("grid") / "desk.csv"
    t0 = time.perf_counter()
    code = run(["grid", "--se", "0.001", "--seed", "20240815", "--out", str(path)], out=io.StringIO())
    assert code == 0
    return path, time.perf_counter() - t0


def test_4_figure_reproduction_desk_scale(criterion, desk_grid_csv):
    path, elapsed = desk_grid_csv
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    conv = [r for r in rows if r["converged"] == "true"]
    worst = max(max(abs(float(r["dm"])), abs(float(r["dc"]))) for r in conv) if conv else float("inf")
    criterion("4 simulated |dm|, |dc| <= 0.005",
              f"{len(conv)}/{len(rows)} converged, max err {worst:.4f}, {elapsed:.1f}s")
    assert len(rows) == 27 and len(conv) == 27
    assert worst <= 0.005


def test_5_mirror_properties(criterion):
    rng = np.random.default_rng(7)
    members = _random_members(rng, 20)
    dc = dm = sol = 0.0
    for d in members:
        m, c = mc_of(d)
        mm, cm = mc_of(mirror(d))
        dc = max(dc, abs(cm - c))
        dm = max(dm, abs(mm - (1 - m)))
        ms, cs = mc_of(mirror_solution(m, c, d))
        sol = max(sol, abs(ms - (1 - m)), abs(cs - c))
    criterion("5 mirror properties", f"60 members; |dc| {dc:.1e}, |dm| {dm:.1e}, solution {sol:.1e} (tol 1e-8)")
    assert dc <= 1e-8 and dm <= 1e-8 and sol <= 1e-8


def test_6_appendix_counterexamples(criterion):
    t0 = time.perf_counter()
    reports = [verify_mode_counterexample(a) for a in (0.1, 0.2, 0.3, 0.4)]
    reports += [verify_median_counterexample(a) for a in (0.05, 0.1, 0.2)]
    ok = [
        abs(r.stat1 - 0.5) <= 1e-4 and abs(r.stat2 - 0.5) <= 1e-4
        and abs(r.c1 - r.c2) <= 1e-8 and r.sup_cdf_diff >= 0.01 and r.verified
        for r in reports
    ]
    elapsed = time.perf_counter() - t0
    criterion("6 mode/median counterexamples", f"{sum(ok)}/{len(ok)} verified, {elapsed:.2f}s")
    assert all(ok)


def test_7_special_function_accuracy(criterion):
    p = np.concatenate([np.geomspace(1e-6, 0.5, 50_000), 1 - np.geomspace(1e-6, 0.5, 50_000)])
    rt = float(np.max(np.abs(std_normal_cdf(std_normal_quantile(p)) - p)))
    ab = np.geomspace(0.1, 50, 25)
    x = np.linspace(0, 1, 101)
    A, B, X = np.meshgrid(ab, ab, x, indexing="ij")
    refl = float(np.max(np.abs(reg_inc_beta(X, A, B) + reg_inc_beta(1 - X, B, A) - 1)))
    criterion("7 special functions", f"Phi round-trip {rt:.1e} (1e-10), beta reflection {refl:.1e} (1e-12)")
    assert rt <= 1e-10
    assert refl <= 1e-12


def test_8_grid_determinism(criterion, desk_grid_csv, tmp_path):
    path, _ = desk_grid_csv
    again = tmp_path / "again.csv"
    parallel = tmp_path / "parallel.csv"
    base = ["grid", "--se", "0.001", "--seed", "20240815"]
    assert run(base + ["--out", str(again)], out=io.StringIO()) == 0
    assert run(base + ["--out", str(parallel), "--jobs", "3"], out=io.StringIO()) == 0
    same = path.read_bytes() == again.read_bytes() == parallel.read_bytes()
    criterion("8 grid determinism", "repeat run and --jobs 3 byte-identical" if same else "CSV differs")
    assert same


@pytest.mark.full_grid
def test_4_full_grid(criterion, tmp_path):
    path = tmp_path / "full.csv"
    assert run(["grid", "--full", "--se", "0.001", "--seed", "20240815", "--out", str(path)],
               out=io.StringIO()) == 0
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    conv = [r for r in rows if r["converged"] == "true"]
    within = sum(max(abs(float(r["dm"])), abs(float(r["dc"]))) <= 0.005 for r in conv)
    frac = within / len(rows)
    criterion("4 (full) full grid", f"{len(conv)}/{len(rows)} converged, {frac:.2%} of cells within 0.005 (>= 99%)")
    assert frac >= 0.99
