"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the lines also show up
under plain ``pytest``.
"""
import json
import math
import time

import numpy as np
import pytest

import oracles
from cohbound.cli import main
from cohbound.coherence import bound_alpha, bound_improved, bound_report, build_profile
from cohbound.ensembles import (
    dft_matrix,
    gen_etf,
    gen_gaussian,
    gen_graph_gft,
    gen_partial_dct,
    gen_partial_dft,
    random_connected_graph,
)
from cohbound.experiments import run_recovery_trials
from cohbound.linalg import column_normalize, gram, write_matrix
from cohbound.recovery import exhaustive_l0_oracle, omp_reconstruct
from cohbound.twobases import cross_profile, l0_bound_two_bases

# relative slack for comparing fractional bounds that are equal in exact
# arithmetic (e.g. mu = 1, where every bound is 1)
ULP_SLACK = 1e-12
ETF_SIZES = (3, 7, 9, 15, 19, 21, 27, 31, 37, 45)  # 2M-1 prime, = 1 mod 4, 2M <= 96


@pytest.fixture
def verdict(capsys):
    def emit(tag, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {tag}: {detail}")
        assert ok, f"{tag}: {detail}"

    return emit


def mc_json(tmp_path, name, *argv):
    out = tmp_path / name
    code = main(["mc", *argv, "--out", str(out)])
    assert code == 0
    return out.read_bytes()


def chain_violations(report):
    """(k_max violations, fractional violations) of improved >= alpha >= standard."""
    s, a, i = report.standard, report.alpha, report.improved
    k_bad = not (i.k_max >= a.k_max >= s.k_max)
    f_bad = not (i.fractional >= a.fractional * (1 - ULP_SLACK) and a.fractional >= s.fractional * (1 - ULP_SLACK))
    return int(k_bad), int(f_bad)


def test_ac01_etf_equality(tmp_path, verdict):
    start = time.perf_counter()
    path = tmp_path / "etf.csv"
    write_matrix(path, gen_etf(9))
    assert main(["bounds", "--matrix", str(path), "--out", str(tmp_path / "r.json")]) == 0
    elapsed = time.perf_counter() - start
    r = json.loads((tmp_path / "r.json").read_text())
    fr = [r[name]["fractional"] for name in ("standard", "alpha", "improved")]
    ok = all(abs(f - 2.5616) <= 1e-3 for f in fr) and abs(r["mu"] - 0.242536) <= 1e-6 and elapsed < 1.0
    verdict("AC1 ETF(9x18) equality", ok, f"mu={r['mu']:.6f} bounds={[round(f, 6) for f in fr]} t={elapsed:.2f}s")


def test_ac02_gaussian_statistics(tmp_path, verdict):
    start = time.perf_counter()
    summary = json.loads(mc_json(tmp_path, "g.json", "--ensemble", "gaussian", "--rows", "70", "--cols", "80",
                                 "--trials", "200", "--seed", "7", "--mode", "bound-stats"))
    elapsed = time.perf_counter() - start
    std = summary["mean"]["standard"]["fractional"]
    imp = summary["mean"]["improved"]["fractional"]
    ok = 1.55 <= std <= 1.80 and 2.00 <= imp <= 2.70 and elapsed < 120
    verdict("AC2 Gaussian 70x80 stats", ok,
            f"standard {std:.4f} (sd {summary['sd']['standard']['fractional']:.3f}), "
            f"improved {imp:.4f} (sd {summary['sd']['improved']['fractional']:.3f}), t={elapsed:.1f}s")


@pytest.mark.parametrize(
    "tag, ensemble, paper_std, paper_imp",
    [("AC3 partial DFT 124x128", "partial_dft", 16.9068, 19.8323),
     ("AC4 partial DCT 124x128", "partial_dct", 9.7849, 12.1354)],
)
def test_ac03_ac04_partial_transforms(tmp_path, verdict, tag, ensemble, paper_std, paper_imp):
    start = time.perf_counter()
    summary = json.loads(mc_json(tmp_path, "s.json", "--ensemble", ensemble, "--rows", "124", "--cols", "128",
                                 "--trials", "50", "--seed", "7", "--mode", "bound-stats"))
    elapsed = time.perf_counter() - start
    std = summary["mean"]["standard"]["fractional"]
    imp = summary["mean"]["improved"]["fractional"]
    ok = abs(std - paper_std) <= 0.1 * paper_std and abs(imp - paper_imp) <= 0.1 * paper_imp and elapsed < 300
    verdict(tag, ok, f"standard {std:.4f} (paper {paper_std}), improved {imp:.4f} (paper {paper_imp}), "
                     f"t={elapsed:.1f}s")


def test_ac05_recovery_guarantee(tmp_path, verdict):
    start = time.perf_counter()
    summary = json.loads(mc_json(tmp_path, "r.json", "--ensemble", "partial_dft", "--rows", "124", "--cols", "128",
                                 "--trials", "10000", "--seed", "7", "--mode", "recovery",
                                 "--k-from-bound", "improved", "--threads", "4"))
    elapsed = time.perf_counter() - start
    ok = summary["failures"] == 0 and summary["successes"] == 10000 and elapsed < 600
    verdict("AC5 recovery at improved k_max", ok,
            f"K={summary['sparsity']} failures={summary['failures']}/10000 t={elapsed:.1f}s")


def _ensemble_sample(i, rng):
    kind = ("gaussian", "partial_dft", "partial_dct", "etf", "graph_gft")[i % 5]
    if kind == "etf":
        return kind, gen_etf(ETF_SIZES[(i // 5) % len(ETF_SIZES)])
    if kind == "graph_gft":
        n = int(rng.integers(8, 67))
        g = random_connected_graph(n, float(rng.uniform(0.05, 0.3)), seed=i)
        missing = rng.choice(n, size=int(rng.integers(2, 4)), replace=False)
        return kind, gen_graph_gft(g.with_missing(missing))
    n = int(rng.integers(8, 97))
    m = int(rng.integers(2, min(n, 64) + 1))
    gen = {"gaussian": gen_gaussian, "partial_dft": gen_partial_dft, "partial_dct": gen_partial_dct}[kind]
    return kind, gen(m, n, i)


def test_ac06_bound_ordering(verdict):
    rng = np.random.default_rng(606)
    k_bad = f_bad = 0
    per_kind = {}
    done = 0
    i = 0
    while done < 500:
        try:
            kind, a = _ensemble_sample(i, rng)
        except ValueError:
            # e.g. a partial DCT row set that zeroes a column; draw again
            i += 1
            continue
        kb, fb = chain_violations(bound_report(a))
        k_bad += kb
        f_bad += fb
        per_kind[kind] = per_kind.get(kind, 0) + fb
        done += 1
        i += 1
    ok = k_bad == 0 and f_bad == 0
    verdict("AC6 bound ordering chain", ok,
            f"500 matrices: k_max violations {k_bad}, fractional violations {f_bad} by ensemble {per_kind}")


def test_ac07_direct_check_oracle(verdict):
    rng = np.random.default_rng(707)
    mismatches = 0
    for _ in range(200):
        n = int(rng.integers(2, 9))
        m = int(rng.integers(1, n + 1))
        g = gram(column_normalize(rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))))
        p = build_profile(g)
        mags = np.abs(g).tolist()
        for cap in range(1, n):
            # k_max under cap K equals K exactly when the inequality holds for 1..K
            expect_alpha = oracles.k_max_by_scan(lambda k: oracles.alpha_holds(mags, k), cap)
            mismatches += bound_alpha(p, cap).k_max != expect_alpha
            for mode in ("paper", "exhaustive"):
                expect = oracles.k_max_by_scan(lambda k: oracles.improved_holds(mags, k, mode), cap)
                mismatches += bound_improved(p, cap, mode).k_max != expect
    verdict("AC7 direct-check oracle", mismatches == 0, f"200 Grams (N<=8), mismatches {mismatches}")


def test_ac08_omp_vs_l0(verdict):
    cases = agree = 0
    for seed in range(100):
        a = gen_gaussian(6, 10, seed)
        kmax = bound_report(a).standard.k_max
        rng = np.random.default_rng(10_000 + seed)
        for k in range(1, kmax + 1):
            for _ in range(10):
                x = np.zeros(10)
                x[rng.choice(10, k, replace=False)] = rng.standard_normal(k)
                y = a @ x
                cases += 1
                agree += omp_reconstruct(a, y, k).estimate.support == exhaustive_l0_oracle(a, y, k).support
    verdict("AC8 OMP vs exhaustive l0", cases > 0 and agree == cases, f"{agree}/{cases} supports agree")


def test_ac09_two_bases(verdict):
    flat = l0_bound_two_bases(cross_profile(np.eye(16), dft_matrix(16)))
    same = l0_bound_two_bases(cross_profile(np.eye(16), np.eye(16)))
    verdict("AC9 two-bases bound", flat.k_max == 3 and same.k_max == 0,
            f"identity+DFT k_max={flat.k_max}, identity+identity k_max={same.k_max}")


def test_ac10_random_graphs(verdict):
    rng = np.random.default_rng(1010)
    chain_k = chain_f = failures = skipped = 0
    ks = []
    for gi in range(20):
        graph = random_connected_graph(64, 0.1, seed=gi)
        missing = rng.choice(64, size=2, replace=False)
        a = gen_graph_gft(graph.with_missing(missing))
        report = bound_report(a)
        kb, fb = chain_violations(report)
        chain_k += kb
        chain_f += fb
        k = report.improved.k_max
        ks.append(k)
        if k < 1:
            skipped += 1
            continue
        failures += run_recovery_trials(a, k, 1000, master_seed=gi).failures
    ok = chain_k == 0 and chain_f == 0 and failures == 0
    verdict("AC10 random 64-vertex graphs", ok,
            f"k_max chain violations {chain_k}, fractional chain violations {chain_f}, "
            f"recovery failures {failures} over K={ks} (graphs with K=0: {skipped})")


def test_ac11_determinism(tmp_path, verdict):
    base = ["--ensemble", "gaussian", "--rows", "30", "--cols", "40", "--trials", "40", "--seed", "11",
            "--mode", "bound-stats"]
    rec = ["--ensemble", "partial_dft", "--rows", "50", "--cols", "64", "--trials", "300", "--seed", "11",
           "--mode", "recovery", "--k-from-bound", "improved"]
    same = True
    for argv in (base, rec):
        outs = [mc_json(tmp_path, f"o{t}.json", *argv, "--threads", str(t)) for t in (1, 2, 4, 1)]
        same &= all(o == outs[0] for o in outs)
    verdict("AC11 determinism across --threads", same, "bound-stats and recovery JSON byte-identical" if same
            else "outputs differ")
