"""Acceptance gate: the package's headline guarantees, run end to end.

Each test prints one PASS/FAIL line (visible even under pytest capture)
so a full run doubles as a checklist.
"""

import itertools
import json
import os
import time

import numpy as np

from rankshot.channel import ChannelConfig, apply_channel, lift, lift_multishot, sample_channel
from rankshot.decoder import multistage_decode, oracle_decode_multishot
from rankshot.experiment import (
    ExperimentConfig,
    records_to_csv,
    run_experiment,
    trial_seeds,
)
from rankshot.fields import ExtensionField, PrimeField
from rankshot.gabidulin import GabidulinCode
from rankshot.linalg import rank, rank_batch, rref
from rankshot.multilevel import special_situation
from rankshot.outer import OuterCode
from rankshot.reduction import reconstruct, reduce_received

TINY_SPEC_DOC = json.dumps({
    "field": {"q": 2, "M": 3, "modulus": [1, 1, 0, 1]},
    "N": 3,
    "K": 2,
    "Ks": [2, 1, 0],
    "n": 2,
    "points": [1, 2, 4],
    "outers": [{"n": 2, "k": 1}, {"n": 2, "k": 1}],
}, sort_keys=True)


def _report(capsys, num, name, ok, extra=""):
    tail = f"  ({extra})" if extra else ""
    with capsys.disabled():
        print(f"\nACCEPTANCE {num} [{name}]: {'PASS' if ok else 'FAIL'}{tail}")


def _rref_key(Y, q):
    R, piv = rref(Y, q)
    return R[: len(piv)].tobytes(), tuple(piv)


def test_criterion_1_lifting_doubles_rank_distance(capsys):
    """Extended subspace distance of lifted tuples is exactly twice the
    extended rank distance, across >= 10^4 random pairs."""
    ok, extra = False, ""
    try:
        t0 = time.perf_counter()
        pairs_checked = 0
        for q, M, N in [(2, 3, 3), (3, 2, 2)]:
            field = ExtensionField(PrimeField(q), degree=M)
            rng = np.random.default_rng(q * 1000 + M)
            n_shots = 2
            for _ in range(6000):
                ds = dr = 0
                for _ in range(n_shots):
                    u = tuple(int(x) for x in rng.integers(0, field.size, N))
                    v = tuple(int(x) for x in rng.integers(0, field.size, N))
                    dr += rank((field.underline(u) - field.underline(v)) % q, q)
                    # independent route: lifted spans are N-dimensional, so
                    # d_S = 2*(rank of the stacked bases) - 2N
                    stacked = np.vstack([lift(field, u), lift(field, v)])
                    ds += 2 * (rank(stacked, q) - N)
                assert ds == 2 * dr, (q, M, N, u, v)
                pairs_checked += 1
        elapsed = time.perf_counter() - t0
        assert pairs_checked >= 10_000
        assert elapsed < 10.0, f"took {elapsed:.1f}s"
        ok, extra = True, f"{pairs_checked} pairs, {elapsed:.1f}s"
    finally:
        _report(capsys, 1, "lifting doubles rank distance", ok, extra)


def test_criterion_2_inner_codes_are_mrd(capsys):
    """Exhaustive minimum rank distance of every small inner code meets
    the Singleton bound N - K + 1 with equality."""
    ok, extra = False, ""
    try:
        t0 = time.perf_counter()
        field = ExtensionField(PrimeField(2), degree=3)
        checked = []
        for N in (2, 3):
            for K in range(1, N + 1):
                code = GabidulinCode(field, N, K)
                best = min(
                    rank(field.underline(code.encode(msg)), 2)
                    for msg in itertools.product(range(8), repeat=K)
                    if any(msg)
                )
                assert best == N - K + 1, (N, K, best)
                checked.append((N, K))
        elapsed = time.perf_counter() - t0
        assert elapsed < 5.0, f"took {elapsed:.1f}s"
        ok, extra = True, f"{len(checked)} codes, {elapsed:.2f}s"
    finally:
        _report(capsys, 2, "inner codes are MRD", ok, extra)


def test_criterion_3_cardinality_formulas_agree(capsys):
    """Exhaustive enumeration, the per-level sum, and the closed-form
    count all give the same code size."""
    ok, extra = False, ""
    try:
        spec, logq_closed = special_situation(q=2, M=3, N=3, K=2, n=2, d=4)
        assert spec.chain.ks == (2, 1, 0)
        assert [o.k for o in spec.outers] == [1, 1]
        enumerated = len(spec.codewords())
        assert enumerated == 64
        assert 2 ** spec.cardinality_logq() == 64
        assert 2 ** logq_closed == 64
        _, logq_big = special_situation(q=2, M=4, N=4, K=2, n=3, d=4)
        assert logq_big == 20
        ok, extra = True, "64 = 2^6 three ways; larger preset gives 2^20"
    finally:
        _report(capsys, 3, "cardinality formulas agree", ok, extra)


def test_criterion_4_design_distance_lower_bound(capsys):
    """Exhaustive pairwise extended rank distance over the tiny code is
    at least the design value 4; the true minimum is reported."""
    ok, extra = False, ""
    try:
        t0 = time.perf_counter()
        spec, _ = special_situation(q=2, M=3, N=3, K=2, n=2, d=4)
        und = spec.codeword_underlines()
        size = und.shape[0]
        best = None
        for i in range(size - 1):
            diff = (und[i + 1:] - und[i]) % 2
            dist = np.zeros(diff.shape[0], dtype=np.int64)
            for j in range(spec.n):
                dist += rank_batch(diff[:, j], 2)
            lo = int(dist.min())
            best = lo if best is None else min(best, lo)
        elapsed = time.perf_counter() - t0
        assert best >= spec.design_distance() == 4
        assert elapsed < 10.0, f"took {elapsed:.1f}s"
        ok, extra = True, f"true minimum = {best}, design = 4, {elapsed:.2f}s"
    finally:
        _report(capsys, 4, "design distance lower bound", ok, extra)


def test_criterion_5_oracle_guarantee_within_budget(capsys):
    """1000 seeded trials per (rho, tau) point with rho + 2*tau <= 3:
    the oracle decoder never fails."""
    ok, extra = False, ""
    try:
        t0 = time.perf_counter()
        grid = tuple(
            (rho, tau)
            for tau in range(0, 2)
            for rho in range(0, 4)
            if rho + 2 * tau <= 3
        )
        assert grid == ((0, 0), (1, 0), (2, 0), (3, 0), (0, 1), (1, 1))
        cfg = ExperimentConfig(
            spec_doc=TINY_SPEC_DOC, grid=grid, split="uniform",
            trials=1000, master_seed=20260825, decoders=("oracle",),
        )
        records = run_experiment(cfg)
        failures = [r for r in records if not r.success]
        elapsed = time.perf_counter() - t0
        assert len(records) == 6000
        assert not failures, f"{len(failures)} oracle failures inside budget"
        assert elapsed < 120.0, f"took {elapsed:.1f}s"
        ok, extra = True, f"6000 trials, 0 failures, {elapsed:.1f}s"
    finally:
        _report(capsys, 5, "oracle guarantee within budget", ok, extra)


def test_criterion_6_reduction_soundness(capsys):
    """1000 reductions per shape class rebuild the received row space
    bit-exactly (identical reduced row echelon bases)."""
    ok, extra = False, ""
    try:
        field = ExtensionField(PrimeField(2), degree=3)
        rng = np.random.default_rng(606)
        quota = 1000
        # keyed by (mu > 0, delta > 0); received matrices of any height are
        # legal inputs, and heights above N are what make mu = 0, delta > 0
        # reachable
        counts = {(False, False): 0, (True, False): 0,
                  (False, True): 0, (True, True): 0}
        attempts = 0
        while min(counts.values()) < quota and attempts < 80000:
            attempts += 1
            rows = int(rng.integers(2, 6))
            y = rng.integers(0, 2, (rows, 6))
            triple = reduce_received(field, y)
            cls = (triple.mu > 0, triple.delta > 0)
            if counts[cls] >= quota:
                continue
            assert _rref_key(reconstruct(triple), 2) == _rref_key(y, 2)
            counts[cls] += 1
        assert all(c == quota for c in counts.values()), counts
        ok, extra = True, f"4 classes x {quota} draws, bit-exact"
    finally:
        _report(capsys, 6, "reduction soundness", ok, extra)


def test_criterion_7_multistage_correctness(capsys):
    """(a) clean-channel round trip of every codeword; (b) whenever every
    stage's inner decisions disagree with the transmitted level in at most
    floor((d_H - 1)/2) shots, the output equals the transmitted messages;
    (c) multistage vs oracle frame error rates over rho + 2*tau in 0..5."""
    ok, extra = False, ""
    table_lines = []
    try:
        spec, _ = special_situation(q=2, M=3, N=3, K=2, n=2, d=4)

        # (a) zero adversity, all 64 codewords
        for msgs, word in spec.codewords():
            res = multistage_decode(lift_multishot(spec.field, word), spec)
            assert res.ok and [tuple(m) for m in res.messages] == \
                [tuple(m) for m in msgs]

        # (b) + (c) over a seeded sweep
        radii = [(o.d_min - 1) // 2 for o in spec.outers]
        contrib_cache = {}
        grid = tuple(
            (rho, tau)
            for tau in range(0, 3)
            for rho in range(0, 6)
            if rho + 2 * tau <= 5
        )
        trials = 200
        premise_hits = 0
        fer = {}
        for gi, (rho, tau) in enumerate(grid):
            fails = {"oracle": 0, "multistage": 0}
            for ti in range(trials):
                msg_rng, chan_seed = trial_seeds(741, gi, ti)
                msgs = spec.random_messages(msg_rng)
                word = spec.encode(msgs)
                xs = lift_multishot(spec.field, word)
                c = ChannelConfig(rho=rho, tau=tau, n=2, seed=chan_seed,
                                  N=3, T=6, q=2)
                ys = apply_channel(sample_channel(c), xs, 2)

                if oracle_decode_multishot(ys, spec) != word:
                    fails["oracle"] += 1

                res = multistage_decode(ys, spec)
                got = None if not res.ok else [tuple(m) for m in res.messages]
                if got != [tuple(m) for m in msgs]:
                    fails["multistage"] += 1

                key = tuple(tuple(m) for m in msgs)
                if key not in contrib_cache:
                    contrib_cache[key] = spec.level_contributions(msgs)
                contribs = contrib_cache[key]
                truth_counts = [
                    sum(1 for j in range(spec.n)
                        if res.inner_leaders[i][j] != contribs[i][j])
                    for i in range(len(res.inner_leaders))
                ]
                if len(truth_counts) == spec.m and all(
                    c <= r for c, r in zip(truth_counts, radii)
                ):
                    premise_hits += 1
                    assert got == [tuple(m) for m in msgs], (
                        f"inner decisions within radius but output wrong: "
                        f"rho={rho} tau={tau} trial={ti} counts={truth_counts}"
                    )
            fer[(rho, tau)] = {d: fails[d] / trials for d in fails}

        assert premise_hits > 500  # the guarantee was exercised, not vacuous

        table_lines.append(f"{'rho':>4} {'tau':>4} {'rho+2tau':>9} "
                           f"{'oracle_fer':>11} {'multistage_fer':>15}")
        for (rho, tau) in grid:
            table_lines.append(
                f"{rho:>4} {tau:>4} {rho + 2 * tau:>9} "
                f"{fer[(rho, tau)]['oracle']:>11.3f} "
                f"{fer[(rho, tau)]['multistage']:>15.3f}"
            )
        ok = True
        extra = f"64 round trips; guarantee held on {premise_hits} qualifying trials"
    finally:
        _report(capsys, 7, "multistage correctness", ok, extra)
        if table_lines:
            with capsys.disabled():
                print("  multistage vs oracle FER "
                      f"({200} trials/point, tiny 2-shot code):")
                for line in table_lines:
                    print("   ", line)


def test_criterion_8_algebraic_decoders_match_exhaustive(capsys):
    """Inside the bounded-distance radius the fast decoders agree with
    exhaustive search everywhere, for both code families."""
    ok, extra = False, ""
    try:
        field = ExtensionField(PrimeField(2), degree=3)

        # inner: N=3, K=1 corrects any rank-1 error pattern
        code = GabidulinCode(field, 3, 1)
        rank_le_1 = [
            e for e in itertools.product(range(8), repeat=3)
            if rank(field.underline(e), 2) <= 1
        ]
        assert len(rank_le_1) == 50  # zero + 7 column patterns x 7 multipliers
        inner_checked = 0
        for m in range(8):
            word = code.encode((m,))
            for err in rank_le_1:
                noisy = field.vec_add(word, err)
                via_search = code.decode_bounded(noisy)
                via_algebra = code.decode_bounded(noisy, method="algebraic")
                assert via_search == via_algebra == word, (m, err)
                inner_checked += 1

        # outer: [3, 1, 3] handles 2e + f <= 2
        rs = OuterCode(field, 3, 1)
        outer_checked = 0
        for m in range(8):
            word = rs.encode((m,))
            patterns = [((), ())]
            patterns += [((), (i,)) for i in range(3)]
            patterns += [((), (i, j)) for i in range(3) for j in range(i + 1, 3)]
            patterns += [(((i, v),), ()) for i in range(3) for v in range(1, 8)]
            for errs, erased in patterns:
                noisy = list(word)
                for i, v in errs:
                    noisy[i] = field.add(noisy[i], v)
                for i in erased:
                    noisy[i] = 0
                got_search = rs.decode(tuple(noisy), erasures=erased)
                got_algebra = rs.decode(tuple(noisy), erasures=erased,
                                        method="algebraic")
                assert got_search == got_algebra == (m,), (m, errs, erased)
                outer_checked += 1

        ok = True
        extra = f"{inner_checked} inner + {outer_checked} outer patterns"
    finally:
        _report(capsys, 8, "algebraic decoders match exhaustive", ok, extra)


def test_criterion_9_byte_identical_outputs(capsys):
    """Repeated runs of one config, serial or maximally parallel, emit
    byte-identical CSV."""
    ok, extra = False, ""
    try:
        cfg = ExperimentConfig(
            spec_doc=TINY_SPEC_DOC, grid=((0, 0), (1, 1)), split="uniform",
            trials=25, master_seed=99, decoders=("oracle", "multistage"),
        )
        base = records_to_csv(run_experiment(cfg, workers=1))
        again = records_to_csv(run_experiment(cfg, workers=1))
        workers = max(2, min(4, os.cpu_count() or 2))
        parallel = records_to_csv(run_experiment(cfg, workers=workers))
        assert base == again == parallel
        assert base.encode() == parallel.encode()
        ok, extra = True, f"serial x2 and workers={workers} identical"
    finally:
        _report(capsys, 9, "byte-identical outputs", ok, extra)
