"""Acceptance criteria, one test per criterion at its stated tolerance.

Every criterion prints a ``[PASS]``/``[FAIL]`` line (also collected in the
pytest terminal summary). Run standalone with ``python tests/test_acceptance.py``.
Seeds are fixed constants chosen before any run.
"""
import contextlib
import io
import math
import time

import numpy as np

from stable_cauchy.cli import main as cli_main
from stable_cauchy.config import RunConfig, SemigroupConfig
from stable_cauchy.diagnostics import (
    empirical_max_jump_prob,
    grid_bias_allowance,
    log_predicted_prob,
    marginal_gof,
)
from stable_cauchy.noise import (
    Box,
    NoisePath,
    empirical_char_fn,
    evaluate_white_noise,
    generate_subordinated_paths,
    generate_white_noise_jumps,
    truncation_bias,
)
from stable_cauchy.rng import RngState
from stable_cauchy.spectral import SemigroupSpec, sandwich_check, scheme_scale, marginal_scale, simulate_mild_solution
from stable_cauchy.special import c_ratio, sphere_moment, sphere_total_mass

SEED = 20240601


def _quiet(argv):
    with contextlib.redirect_stdout(io.StringIO()), contextlib.redirect_stderr(io.StringIO()):
        return cli_main(argv)


def criterion_1():
    start = time.perf_counter()
    wrong, inconclusive = [], 0
    for alpha in (0.5, 1.0, 1.3, 1.5, 1.9):
        for d in range(1, 6):
            code = _quiet(["check-existence", "--alpha", str(alpha), "--model", "powerlaw",
                           "--dim", str(d), "--T", "1", "--s-min", "1e-8"])
            expected = 0 if alpha * d < 4 else 10
            inconclusive += code == 11
            if code != expected:
                wrong.append((alpha, d, code))
    elapsed = time.perf_counter() - start
    ok = not wrong and inconclusive == 0 and elapsed < 30
    return ok, f"25 cells, mismatches={wrong}, inconclusive={inconclusive}, {elapsed:.1f}s"


def _beta_points(n):
    radii = (0.25, 0.5, 1.0, 1.5, 2.0)
    pts = []
    for j, r in enumerate(radii):
        u = np.cos(np.arange(1, n + 1) * (j + 1.0)) + 0.1
        pts.append(r * u / np.linalg.norm(u))
    return pts


def criterion_2():
    start = time.perf_counter()
    failures, worst = [], -np.inf
    cfg_id = 0
    for n in (1, 2, 5):
        for alpha in (0.7, 1.0, 1.5):
            for t in (0.5, 1.0):
                inc = generate_subordinated_paths(n, alpha, [0.0, t], RngState(SEED, 200).substream(cfg_id),
                                                  1_000_000).increments[:, 0, :]
                for beta in _beta_points(n):
                    e = empirical_char_fn(inc, beta)
                    target = math.exp(-t * np.linalg.norm(beta) ** alpha)
                    z = max(abs(e.value.real - target) / e.se_real, abs(e.value.imag) / e.se_imag)
                    worst = max(worst, z)
                    if z > 3:
                        failures.append((n, alpha, t, round(float(np.linalg.norm(beta)), 2), round(z, 2)))
                cfg_id += 1
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 120
    return ok, f"18 configs x 5 points, worst |z|={worst:.2f}, failures={failures}, {elapsed:.1f}s"


def criterion_3():
    start = time.perf_counter()
    alpha, eps, reps = 1.5, 1e-3, 10_000
    dom = Box.unit(1)
    base = RngState(SEED, 300)
    wn = np.empty(reps)
    for j in range(reps):
        jumps = generate_white_noise_jumps(dom, alpha, 1.0, eps, base.substream(j))
        wn[j] = evaluate_white_noise(jumps, 1.0, dom)
    sub = generate_subordinated_paths(1, alpha, [0.0, 1.0], RngState(SEED, 301), 1_000_000).increments[:, 0, 0]
    rows, ok = [], True
    for beta in (0.5, 1.0, 2.0):
        e1, e2 = empirical_char_fn(wn, beta), empirical_char_fn(sub, beta)
        bias = float(truncation_bias(beta, alpha, eps))
        band = 3 * math.hypot(e1.se_real, e2.se_real) + bias
        gap = abs(e1.value.real - e2.value.real)
        band_i = 3 * math.hypot(e1.se_imag, e2.se_imag) + bias
        gap_i = abs(e1.value.imag - e2.value.imag)
        ok &= gap <= band and gap_i <= band_i
        rows.append(f"b={beta}: |d|={gap:.4f}<= {band:.4f}")
    elapsed = time.perf_counter() - start
    ok &= elapsed < 120
    return bool(ok), "; ".join(rows) + f"; {elapsed:.1f}s"


def criterion_4():
    start = time.perf_counter()
    worst_norm, worst_m2 = 0.0, 0.0
    for alpha in (0.2, 0.5, 1.0, 1.5, 1.9):
        for n in range(1, 101):
            worst_norm = max(worst_norm, abs(sphere_total_mass(n, alpha) * sphere_moment(n, alpha) - 1))
    for n in range(1, 101):
        worst_m2 = max(worst_m2, abs(sphere_moment(n, 2.0) - 1.0 / n))
    elapsed = time.perf_counter() - start
    ok = worst_norm <= 1e-10 and worst_m2 <= 1e-12 and elapsed < 1
    return ok, f"max|r*m-1|={worst_norm:.2e}, max|m2-1/n|={worst_m2:.2e}, {elapsed:.3f}s"


def criterion_5a():
    start = time.perf_counter()
    spec = SemigroupSpec.power_law(1.0, 1.0, truncation=16)
    rows, ok = [], True
    for alpha in (1.0, 1.5):
        for m, n in ((1, 4), (1, 16), (8, 16)):
            r = sandwich_check(spec, alpha, 1.0, m, n, 100_000, RngState(SEED, 500).substream(m * 100 + n + int(alpha * 10)))
            ok &= r.ordered(3.0)
            rows.append(f"a={alpha},({m},{n}): {r.lower:.4f}<={r.estimate:.4f}<={r.upper:.4f}")
    elapsed = time.perf_counter() - start
    ok &= elapsed < 60
    return bool(ok), "; ".join(rows) + f"; {elapsed:.1f}s"


def criterion_5b():
    # block constant for n - m = 1000 uses a block of 1001 coordinates
    c1000 = c_ratio(1001, 1.5)
    return abs(c1000 - 1) < 0.01, f"c_1000 at alpha=1.5 is {c1000:.6f}, |c_1000-1|={abs(c1000 - 1):.4f} (required < 0.01)"


def criterion_6():
    start = time.perf_counter()
    n, alpha, T, c, dt = 3, 1.5, 1.0, 5.0, 1e-4
    p, se, _ = empirical_max_jump_prob(n, alpha, T, c, dt, 10_000, RngState(SEED, 600))
    pred = math.exp(log_predicted_prob(n, alpha, T, c))
    band = 3 * float(se[0]) + grid_bias_allowance(n, alpha, T, c, dt)
    ok_emp = abs(float(p[0]) - pred) <= band
    logs = [log_predicted_prob(k, alpha, T, 10.0) for k in (1, 10, 100, 1000)]
    monotone = all(b < a for a, b in zip(logs, logs[1:]))
    tail = log_predicted_prob(100_000, alpha, T, 10.0)
    ok_tail = tail < math.log(1e-6)
    elapsed = time.perf_counter() - start
    ok = ok_emp and monotone and ok_tail and elapsed < 300
    return ok, (f"P_emp={float(p[0]):.4f} vs {pred:.4f} band {band:.4f}; monotone={monotone}; "
                f"P(n=1e5)=exp({tail:.1f}); {elapsed:.1f}s")


def criterion_7():
    start = time.perf_counter()
    lam, alpha, T = 1.0, 1.2, 1.0
    spec = SemigroupSpec.explicit([lam])
    factors = {1e-2: 100, 1e-3: 10, 1e-4: 1}
    fine_steps = 10_000
    fine_grid = np.linspace(0.0, T, fine_steps + 1)
    finals = {dt: [] for dt in factors}
    paths, block = 20_000, 1000
    for b in range(paths // block):
        fine = generate_subordinated_paths(1, alpha, fine_grid, RngState(SEED, 700).substream(b), block)
        for dt, f in factors.items():
            inc = fine.increments.reshape(block, fine_steps // f, f, 1).sum(axis=2)
            grid = fine_grid[::f]
            finals[dt].append(simulate_mild_solution(spec, NoisePath(fine.representation, grid, inc, alpha)).final)
    sigma = marginal_scale(lam, alpha, T)
    gaps, reports = [], []
    for dt in sorted(factors, reverse=True):
        grid = fine_grid[::factors[dt]]
        rep = marginal_gof(np.concatenate(finals[dt]), [lam], alpha, grid)
        reports.append(rep)
        gaps.append(abs(scheme_scale(lam, alpha, grid) - sigma))
    decreasing = all(b < a for a, b in zip(gaps, gaps[1:]))
    ok = all(r.passed for r in reports) and decreasing
    elapsed = time.perf_counter() - start
    ok &= elapsed < 180
    detail = "; ".join(
        f"dt={dt:g}: scale gap {g:.2e}, max excess {r.max_excess():+.4f}"
        for dt, g, r in zip(sorted(factors, reverse=True), gaps, reports)
    )
    return bool(ok), detail + f"; decreasing={decreasing}; {elapsed:.1f}s"


def criterion_8(tmp_dir):
    from pathlib import Path

    tmp_dir = Path(tmp_dir)
    cfg = RunConfig(alpha=1.5, semigroup=SemigroupConfig(dim=2), horizon=1.0, dt=1e-3,
                    galerkin_n=16, paths=32, seed=SEED)
    cfg_path = tmp_dir / "run.yaml"
    cfg.save(cfg_path)
    outputs = {}
    for threads in (1, 4, 16):
        out = tmp_dir / f"threads_{threads}"
        code = _quiet(["simulate", "--config", str(cfg_path), "--output-dir", str(out), "--threads", str(threads)])
        if code != 0:
            return False, f"simulate exited {code} with {threads} threads"
        outputs[threads] = {p.name: p.read_bytes() for p in sorted(out.glob("*.csv"))}
    same = outputs[1] == outputs[4] == outputs[16] and len(outputs[1]) == 32
    return same, f"{len(outputs[1])} CSVs byte-identical across 1/4/16 threads: {same}"


# ---------------------------------------------------------------------------
# pytest wrappers


def test_criterion_1_phase_diagram(acceptance_record):
    ok, detail = criterion_1()
    assert acceptance_record("1 phase diagram", ok, detail), detail


def test_criterion_2_charfn_law(acceptance_record):
    ok, detail = criterion_2()
    assert acceptance_record("2 characteristic-function law", ok, detail), detail


def test_criterion_3_representation_agreement(acceptance_record):
    ok, detail = criterion_3()
    assert acceptance_record("3 representation agreement", ok, detail), detail


def test_criterion_4_sphere_identities(acceptance_record):
    ok, detail = criterion_4()
    assert acceptance_record("4 sphere-moment identities", ok, detail), detail


def test_criterion_5_sandwich_ordering(acceptance_record):
    ok, detail = criterion_5a()
    assert acceptance_record("5 sandwich ordering", ok, detail), detail


def test_criterion_5_block_constant_tends_to_one(acceptance_record):
    ok, detail = criterion_5b()
    assert acceptance_record("5 block constant |c_1000 - 1| < 0.01", ok, detail), detail


def test_criterion_6_jump_tail_law(acceptance_record):
    ok, detail = criterion_6()
    assert acceptance_record("6 jump-tail law", ok, detail), detail


def test_criterion_7_marginal_solution_law(acceptance_record):
    ok, detail = criterion_7()
    assert acceptance_record("7 marginal solution law", ok, detail), detail


def test_criterion_8_determinism(acceptance_record, tmp_path):
    ok, detail = criterion_8(tmp_path)
    assert acceptance_record("8 determinism across threads", ok, detail), detail


if __name__ == "__main__":
    import tempfile

    checks = [
        ("1 phase diagram", criterion_1),
        ("2 characteristic-function law", criterion_2),
        ("3 representation agreement", criterion_3),
        ("4 sphere-moment identities", criterion_4),
        ("5 sandwich ordering", criterion_5a),
        ("5 block constant |c_1000 - 1| < 0.01", criterion_5b),
        ("6 jump-tail law", criterion_6),
        ("7 marginal solution law", criterion_7),
    ]
    for label, fn in checks:
        ok, detail = fn()
        print(f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}", flush=True)
    with tempfile.TemporaryDirectory() as d:
        ok, detail = criterion_8(d)
        print(f"[{'PASS' if ok else 'FAIL'}] 8 determinism across threads: {detail}")
