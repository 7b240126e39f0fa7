"""Adversary: sequence construction, ratio bound, phased duels, generators."""

import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from risethresh.adversary import (
    AdversarySequence,
    build_sequence,
    default_alpha,
    default_epsilon,
    fuzz_instance,
    greedy_trap,
    run_adversary,
    theoretical_U,
)
from risethresh.curves import MEDIUM_MIN, RATIO, threshold, threshold_integral
from risethresh.engine import Decision, FirstFit, RisingThreshold


class AlwaysReject:
    alg_id = "reject-all"
    terminated = False

    def offer(self, size, index=None):
        return Decision(action="reject")


class AlwaysAccept:
    alg_id = "accept-all"
    terminated = False

    def offer(self, size, index=None):
        return Decision(action="accept", bin=1)


# ------------------------------------------------------------ build_sequence

def test_single_bin_sequence():
    seq = build_sequence(1, 1 / 8)
    assert seq.epsilon == default_epsilon(1) == 1 / 64
    assert seq.s == (0.5 + 1 / 64, 1.0)


def test_two_bin_sequence_sits_on_the_flat_part():
    seq = build_sequence(2, 1 / 16)
    eps = 1 / 256
    assert seq.s == (0.5 + eps, 0.5 + eps, 1.0)


def test_eighth_size_matches_exponential_branch():
    seq = build_sequence(8, 1 / 64)
    x = 5 / 8 + 1 / 64
    assert seq.s[5] == pytest.approx((2 * math.e) ** (x - 1) + seq.epsilon,
                                     rel=1e-14)


def test_sequence_parameter_errors():
    with pytest.raises(ValueError):
        build_sequence(0, 0.0)
    with pytest.raises(ValueError):
        build_sequence(3, -0.01)
    with pytest.raises(ValueError):
        build_sequence(3, 0.34)        # above 1/n
    with pytest.raises(ValueError):
        build_sequence(3, 0.1, epsilon=0.0)
    with pytest.raises(ValueError):
        build_sequence(1, 1 / 8, epsilon=0.6)   # 0.5 + 0.6 > 1
    with pytest.raises(ValueError):
        build_sequence(4, 1 / 4)       # last sample hits 1, nudge overflows


@settings(max_examples=60, deadline=None)
@given(n=st.integers(1, 40), frac=st.floats(0.0, 0.999))
def test_sequence_invariants(n, frac):
    # near alpha = 1/n the default nudge can push the last sample past 1,
    # which build_sequence refuses by contract; stay inside its domain
    assume(threshold((n - 1) / n + frac / n) + default_epsilon(n) <= 1.0)
    seq = build_sequence(n, frac / n)
    s = seq.s
    assert len(s) == n + 1
    assert s[0] > 0.5
    assert all(a <= b for a, b in zip(s, s[1:]))
    assert s[-1] == 1.0


# ------------------------------------------------------------- theoretical_U

def test_bound_is_exactly_half_for_tiny_runs():
    one = theoretical_U(build_sequence(1, 1 / 8))
    assert one.value == 0.5 and one.argmax == 1
    two = theoretical_U(build_sequence(2, 1 / 16))
    assert two.value == 0.5 and two.argmax == 1


def test_bound_excludes_perturbation():
    a = theoretical_U(build_sequence(5, 0.02, epsilon=1e-9))
    b = theoretical_U(build_sequence(5, 0.02, epsilon=1e-3))
    assert a.value == b.value and a.argmax == b.argmax


def test_bound_beats_ratio_with_margin():
    for n in (3, 4, 5, 7, 10, 20, 50, 100, 557, 1000, 2000):
        got = theoretical_U(build_sequence(n, default_alpha(n)))
        assert got.value <= RATIO - 1 / (52 * n), n


def test_bound_without_offset_stays_below_ratio():
    for n in (1, 2, 3, 5, 10, 31, 100, 500):
        got = theoretical_U(build_sequence(n, 0.0))
        assert got.value <= RATIO + 1e-12, n


def test_prefix_loads_stay_under_the_integral():
    # with the duel offset, partial ideal loads never exceed the curve area
    for n in (3, 10, 100, 1000):
        seq = build_sequence(n, default_alpha(n))
        prefix = 0.0
        for j in range(1, n + 1):
            prefix += seq.ideal(j)
            assert prefix / n <= threshold_integral(j / n) + 1e-12, (n, j)
        assert prefix / n <= RATIO - 1 / (52 * n), n


# ------------------------------------------------------------- run_adversary

def test_duel_always_reject():
    t = run_adversary(3, AlwaysReject())
    assert t.alg == "reject-all"
    assert t.j == 0 and t.det_gain == 0.0 and t.ratio == 0.0
    assert len(t.phases) == 1
    assert t.phases[0].issued == 3 and not t.phases[0].accepted
    assert t.opt_value == pytest.approx(3 * (0.5 + default_epsilon(3)), abs=1e-15)


def test_duel_overclaiming_acceptor_is_an_error():
    with pytest.raises(RuntimeError):
        run_adversary(2, AlwaysAccept())


def test_duel_greedy_baseline():
    t = run_adversary(2, FirstFit(2))
    assert t.j == 2
    assert t.det_gain == pytest.approx(1 + 2 / 256, abs=1e-15)
    assert t.opt_value == 2.0
    assert t.ratio == pytest.approx(0.50390625, abs=1e-15)


def test_duel_rising_threshold_two_bins():
    t = run_adversary(2, RisingThreshold(2))
    assert t.j == 1
    assert t.ratio == 0.5
    assert [(p.index, p.issued, p.accepted) for p in t.phases] == [
        (1, 1, True), (2, 2, False)]


def test_duel_rising_threshold_hundred_bins():
    t = run_adversary(100, RisingThreshold(100))
    # thresholds stay at 1/2 through phase 59, then outrun the offers
    assert t.j == 59
    assert t.det_gain == pytest.approx(59 * (0.5 + 1 / 640000), abs=1e-9)
    assert t.ratio == pytest.approx(0.5893671120688609, abs=1e-12)
    u = theoretical_U(build_sequence(100, default_alpha(100)))
    assert t.ratio <= u.value + t.epsilon


def test_duel_ratio_never_beats_the_bound():
    for n in (1, 2, 3, 5, 10, 40):
        algs = [FirstFit(n)]
        if n >= 2:
            algs.append(RisingThreshold(n))
        for alg in algs:
            t = run_adversary(n, alg)
            u = theoretical_U(build_sequence(n, default_alpha(n)))
            assert t.ratio <= u.value + t.epsilon + 1e-15, (n, t.alg)


class AcceptTwiceThenStop:
    alg_id = "stub"

    def __init__(self):
        self.offers = 0
        self.terminated = False

    def offer(self, size, index=None):
        self.offers += 1
        self.terminated = self.offers >= 2
        return Decision(action="accept", bin=self.offers)


def test_duel_counts_post_termination_offers_as_rejections():
    stub = AcceptTwiceThenStop()
    t = run_adversary(2, stub)
    assert t.j == 2
    assert [(p.index, p.issued, p.accepted) for p in t.phases] == [
        (1, 1, True), (2, 1, True), (3, 2, False)]
    assert stub.offers == 2      # the closing phase never reached offer()
    assert t.opt_value == 2.0


# ---------------------------------------------------------------- greedy_trap

def test_greedy_trap_shape():
    inst = greedy_trap(2, 0.01)
    assert inst.items == (0.51, 0.51, 1.0, 1.0)
    assert inst.opt_certificate == 2.0
    assert inst.meta["generator"] == "greedy_trap"


def test_greedy_trap_parameter_errors():
    for bad_eps in (0.0, 0.5, -0.2):
        with pytest.raises(ValueError):
            greedy_trap(2, bad_eps)
    with pytest.raises(ValueError):
        greedy_trap(0, 0.01)


def test_greedy_trap_halves_firstfit():
    n = 50
    inst = greedy_trap(n, 0.001)
    ff = FirstFit(n)
    for i, s in enumerate(inst.items):
        ff.offer(s, index=i)
    gain = ff.snapshot().gains()["total"] * n
    assert gain == pytest.approx(n * 0.501, abs=1e-9)
    assert gain / inst.opt_certificate == pytest.approx(0.501, abs=1e-12)


def test_greedy_trap_spares_rising_threshold():
    n = 50
    inst = greedy_trap(n, 0.001)
    eng = RisingThreshold(n)
    for i, s in enumerate(inst.items):
        if eng.terminated:
            break
        eng.offer(s, index=i)
    ratio = eng.snapshot().gains()["total"] * n / inst.opt_certificate
    assert ratio >= RATIO - 3 / n


# -------------------------------------------------------------- fuzz_instance

def test_fuzz_all_large():
    inst = fuzz_instance(2, 5, {"large": 1.0}, seed=3)
    assert len(inst.items) == 5
    assert all(0.5 < s <= 1.0 for s in inst.items)


def test_fuzz_medium_only():
    inst = fuzz_instance(4, 20, {"medium": 2.5}, seed=9)
    assert all(MEDIUM_MIN <= s <= 0.5 for s in inst.items)


def test_fuzz_small_only():
    inst = fuzz_instance(4, 20, {"small": 1}, seed=11)
    assert all(0.0 < s < MEDIUM_MIN for s in inst.items)


def test_fuzz_reproducible():
    a = fuzz_instance(3, 30, {"small": 1, "medium": 1, "large": 2}, seed=77)
    b = fuzz_instance(3, 30, {"small": 1, "medium": 1, "large": 2}, seed=77)
    assert a == b
    c = fuzz_instance(3, 30, {"small": 1, "medium": 1, "large": 2}, seed=78)
    assert c.items != a.items


def test_fuzz_meta_records_generator_inputs():
    inst = fuzz_instance(3, 4, {"large": 1}, seed=5)
    assert inst.meta == {
        "generator": "fuzz",
        "n": 3,
        "length": 4,
        "mix": {"small": 0.0, "medium": 0.0, "large": 1.0},
        "seed": 5,
    }
    assert inst.opt_certificate is None


def test_fuzz_parameter_errors():
    with pytest.raises(ValueError):
        fuzz_instance(2, 5, {"huge": 1.0}, seed=0)
    with pytest.raises(ValueError):
        fuzz_instance(2, 5, {"large": -1.0}, seed=0)
    with pytest.raises(ValueError):
        fuzz_instance(2, 5, {}, seed=0)
    with pytest.raises(ValueError):
        fuzz_instance(2, -1, {"large": 1.0}, seed=0)
    with pytest.raises(ValueError):
        fuzz_instance(0, 5, {"large": 1.0}, seed=0)


def test_fuzz_zero_length():
    inst = fuzz_instance(2, 0, {"large": 1.0}, seed=0)
    assert inst.items == ()
