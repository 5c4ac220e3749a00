"""Acceptance criteria, one test per criterion.

Each test records a one-line verdict that is printed in the terminal summary
(see ``conftest.py``) and also echoed with ``print`` for ``pytest -s``.
"""

import resource
import time
from contextlib import contextmanager

import pytest

from conftest import ACCEPTANCE
from qlink.braid import conjugate, parse_braid, random_braid, stabilize
from qlink.engine import alexander, closure_trace, invariant, links_gould_qm1, verify_theorem
from qlink.hopfcheck import SIGN_TOLERANCE, TOLERANCE, check_framing, check_yang_baxter, run_all
from qlink.laurent import normalize_or_zero
from qlink.operators import kron_all
from qlink.oracle import alexander_oracle
from qlink.ribbon import build_lg_qm1_ribbon, build_sl2_ribbon, interleave_permutation

MODELS = {"sl2": build_sl2_ribbon, "lg1": lambda: build_lg_qm1_ribbon(1),
          "lg2": lambda: build_lg_qm1_ribbon(2), "lg3": lambda: build_lg_qm1_ribbon(3)}


@contextmanager
def verdict(k: int):
    """Record criterion ``k``; the body sets ``box[0]`` to a detail string."""
    box = ["no detail"]
    try:
        yield box
    except BaseException:
        ACCEPTANCE[k] = (False, box[0])
        print(f"[FAIL] criterion {k}: {box[0]}")
        raise
    ACCEPTANCE[k] = (True, box[0])
    print(f"[PASS] criterion {k}: {box[0]}")


def random_small(k: int):
    """Seeded braid with at most 4 strands and 12 crossings."""
    return random_braid(2 + k % 3, k % 13, 5000 + k)


@pytest.fixture(scope="module")
def corpus_braids(corpus):
    return [b for _, b, _ in corpus]


def test_1_oracle_equivalence(corpus_braids):
    with verdict(1) as box:
        braids = corpus_braids + [random_small(k) for k in range(50)]
        assert len(corpus_braids) >= 25
        assert all(b.strands <= 4 and len(b) <= 12 for b in braids)
        t0 = time.perf_counter()
        bad = [b for b in braids if normalize_or_zero(alexander(b)) != alexander_oracle(b)]
        dt = time.perf_counter() - t0
        box[0] = f"{len(braids) - len(bad)}/{len(braids)} braids match the Burau oracle in {dt:.2f}s (limit 10s)"
        assert not bad, bad
        assert dt < 10


def test_2_theorem_exact(corpus_braids):
    with verdict(2) as box:
        t0 = time.perf_counter()
        checked, bad = 0, []
        for b in corpus_braids:
            for n in (1, 2, 3):
                if n * b.strands > 12:
                    continue
                checked += 1
                if not verify_theorem(b, n).equal_exact:
                    bad.append((b.render(), n))
        dt = time.perf_counter() - t0
        box[0] = f"LG(n,1)(tau,-1) == Delta(tau^2)^n exactly on {checked - len(bad)}/{checked} (braid, n) pairs in {dt:.1f}s (limit 300s)"
        assert not bad, bad
        assert dt < 300


def _markov_pairs(model: str, count: int = 30):
    max_strands = 3 if model == "lg3" else 4
    for k in range(count):
        b = random_braid(2 + k % (max_strands - 1), 3 + k % 8, 9000 + k)
        sign = 1 if k % 2 else -1
        if k % 3 == 0:
            yield b, stabilize(b, sign)
        else:
            yield b, conjugate(b, 1 + k % (b.strands - 1), sign)


def test_3_markov_invariance():
    with verdict(3) as box:
        bad = []
        for name, build in MODELS.items():
            rib = build()
            for b, moved in _markov_pairs(name):
                x, y = invariant(b, rib).scalar, invariant(moved, rib).scalar
                if normalize_or_zero(x) != normalize_or_zero(y):
                    bad.append((name, b.render(), moved.render()))
        box[0] = f"30 (braid, move) pairs x {len(MODELS)} models, {len(bad)} changes"
        assert not bad, bad


def test_4_proportionality(corpus_braids):
    with verdict(4) as box:
        bad = []
        for name, build in MODELS.items():
            rib = build()
            for b in corpus_braids:
                if closure_trace(b, rib).scalar_multiple_of_identity() is None:
                    bad.append((name, b.render()))
        box[0] = f"{len(corpus_braids)} corpus braids x {len(MODELS)} models, {len(bad)} non-scalar traces"
        assert not bad, bad


def test_5_yang_baxter_and_framing():
    with verdict(5) as box:
        ribs = [build() for build in MODELS.values()]
        results = {r.name: (check_yang_baxter(r), check_framing(r)) for r in ribs}
        box[0] = "exact YBE and framing: " + ", ".join(f"{k}={'ok' if all(v) else 'FAIL'}" for k, v in results.items())
        assert all(all(v) for v in results.values())


def test_6_hopf_checks():
    with verdict(6) as box:
        results = {r.check: r for r in run_all(seed=0, samples=20)}
        numeric = ["U_relations", "DH_conjugation", "Dsigma_conjugation"]
        box[0] = ", ".join(f"{k}={results[k].max_residual:.1e}" for k in numeric + ["ratio_formula", "ratio_sign_s"])
        for k in numeric:
            assert results[k].samples == 20 and results[k].max_residual < TOLERANCE
        assert results["ratio_formula"].samples == 50
        assert results["ratio_formula"].max_residual < TOLERANCE
        assert results["ratio_sign_s"].max_residual < SIGN_TOLERANCE
        assert all(r.passed for r in results.values())


def test_7_structural_factorization():
    with verdict(7) as box:
        base = build_lg_qm1_ribbon(1).braiding
        same = {n: build_lg_qm1_ribbon(n).braiding == kron_all([base] * n).reindex(interleave_permutation(n)) for n in (2, 3)}
        box[0] = "lg(n) braiding == permuted tensor power of lg(1): " + ", ".join(f"n={n}:{v}" for n, v in same.items())
        assert all(same.values())


def test_8_performance_envelope():
    with verdict(8) as box:
        b = parse_braid("6; 1 -2 3 -4 5 1 -2 3 -4 5")
        t0 = time.perf_counter()
        one = links_gould_qm1(b, 2, workers=1)
        dt = time.perf_counter() - t0
        eight = links_gould_qm1(b, 2, workers=8)
        peak = max(resource.getrusage(who).ru_maxrss for who in (resource.RUSAGE_SELF, resource.RUSAGE_CHILDREN))
        peak_mb = peak / 1024
        box[0] = f"n=2, l=6 in {dt:.1f}s (limit 60s), peak RSS {peak_mb:.0f}MB (limit 2048MB), workers 1 vs 8 identical: {one == eight}"
        assert not one.is_zero()
        assert one == eight and one.to_json() == eight.to_json()
        assert dt < 60 and peak_mb < 2048
