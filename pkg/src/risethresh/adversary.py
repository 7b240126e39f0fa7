"""Hard-instance generators and the adaptive phased duel.

The duel issues items in phases of identical sizes read off the rising
threshold curve, shifted a hair above what the policy under attack is
about to demand. A phase ends at the first acceptance or after n
rejections; the run ends at the first fully rejected phase. Whatever
the driven algorithm does, its gain is capped near the theoretical
ratio bound; an offline packer fills every bin with the rejected size.

greedy_trap is the classic two-act stream that punishes eager
acceptance of barely-large items; fuzz_instance draws seeded random
streams with a configurable small/medium/large mix.
"""

from dataclasses import dataclass

import numpy as np

from .curves import MEDIUM_MIN, threshold
from .instances import Instance

CLASS_NAMES = ("small", "medium", "large")


def default_epsilon(n):
    """Tie-break perturbation 1/(64 n^2): positive, below every margin under test."""
    return 1.0 / (64.0 * n * n)


def default_alpha(n):
    """Phase offset 1/(8 n) used by the duel."""
    return 1.0 / (8.0 * n)


@dataclass(frozen=True)
class AdversarySequence:
    n: int
    alpha: float
    epsilon: float
    s: tuple                     # n+1 non-decreasing sizes, s[-1] == 1

    def ideal(self, i):
        """Size of phase i with the perturbation removed (1-based)."""
        if i == self.n + 1:
            return 1.0
        return threshold((i - 1) / self.n + self.alpha)


@dataclass(frozen=True)
class RatioBound:
    value: float
    argmax: int                  # smallest maximizing phase count


@dataclass(frozen=True)
class Phase:
    index: int                   # 1-based phase number
    issued: int                  # items offered this phase, <= n
    accepted: bool


@dataclass(frozen=True)
class AdversaryTranscript:
    alg: str
    n: int
    alpha: float
    epsilon: float
    phases: tuple
    j: int                       # number of accepting phases
    det_gain: float              # total size accepted, unnormalized
    opt_value: float             # n times the size every bin could hold
    ratio: float

    def to_dict(self):
        return {
            "alg": self.alg,
            "n": self.n,
            "alpha": self.alpha,
            "epsilon": self.epsilon,
            "phases": [
                {"phase": p.index, "issued": p.issued, "accepted": p.accepted}
                for p in self.phases
            ],
            "j": self.j,
            "det_gain": self.det_gain,
            "opt_value": self.opt_value,
            "ratio": self.ratio,
        }


def build_sequence(n, alpha, epsilon=None):
    """Phase sizes: threshold curve sampled at (i-1)/n + alpha, nudged up
    by epsilon, closed with a final size of 1.

    epsilon defaults to 1/(64 n^2). The nudge must keep the last sampled
    size at most 1; alpha must lie in [0, 1/n] so every sample point is
    a legal fill fraction.
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError("bin count must be a positive integer, got %r" % (n,))
    if not 0.0 <= alpha <= 1.0 / n:
        raise ValueError("offset must lie in [0, 1/n], got %r" % (alpha,))
    if epsilon is None:
        epsilon = default_epsilon(n)
    if epsilon <= 0.0:
        raise ValueError("perturbation must be positive, got %r" % (epsilon,))
    body = [threshold((i - 1) / n + alpha) + epsilon for i in range(1, n + 1)]
    if body[-1] > 1.0:
        raise ValueError(
            "perturbation %r pushes the last size above 1" % (epsilon,))
    return AdversarySequence(n=n, alpha=alpha, epsilon=epsilon,
                             s=tuple(body) + (1.0,))


def theoretical_U(seq):
    """Best ratio any algorithm can force against the sequence.

    Stopping after j accepting phases yields gain at most the sum of the
    first j sizes while every bin could instead hold the next size, so
    the bound is the max over j of that quotient. Evaluated on the ideal
    curve samples (perturbation removed): the nudge exists only to break
    acceptance ties in the driven algorithm's favor, and excluding it
    keeps the closed-form values exact. Ties report the smallest j.
    """
    n = seq.n
    best = 0.0
    arg = 0
    prefix = 0.0
    for j in range(1, n + 2):
        # ratio for stopping right before phase j: prefix holds phases < j
        value = (prefix / n) / seq.ideal(j)
        if value > best:
            best = value
            arg = j - 1
        if j <= n:
            prefix += seq.ideal(j)
    return RatioBound(value=best, argmax=arg)


def run_adversary(n, algorithm, alpha=None, epsilon=None):
    """Drive an online algorithm through the phase protocol.

    Phase i issues up to n copies of s(i); it stops at the first
    acceptance. The run stops at the first fully rejected phase, with a
    final phase of full-size items as the closer. The driven algorithm
    is observed through accept/reject decisions only; once it has
    terminated its run, remaining offers count as rejections.
    """
    if alpha is None:
        alpha = default_alpha(n)
    seq = build_sequence(n, alpha, epsilon)
    phases = []
    stream_index = 0
    j = 0
    det_gain = 0.0
    for i in range(1, n + 2):
        size = seq.s[i - 1]
        issued = 0
        accepted = False
        for _ in range(n):
            issued += 1
            stream_index += 1
            if getattr(algorithm, "terminated", False):
                continue
            decision = algorithm.offer(size, index=stream_index - 1)
            if decision.action == "accept":
                accepted = True
                break
        phases.append(Phase(index=i, issued=issued, accepted=accepted))
        if not accepted:
            opt_value = n * size
            ratio = det_gain / opt_value
            return AdversaryTranscript(
                alg=getattr(algorithm, "alg_id", type(algorithm).__name__),
                n=n, alpha=alpha, epsilon=seq.epsilon, phases=tuple(phases),
                j=j, det_gain=det_gain, opt_value=opt_value, ratio=ratio,
            )
        j += 1
        det_gain += size
    # n+1 accepting phases would need n+1 half-exceeding items in n bins
    raise RuntimeError("algorithm reported acceptances beyond bin capacity")


def greedy_trap(n, epsilon):
    """n barely-large items, then n full-size items; packing the latter is n."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError("bin count must be a positive integer, got %r" % (n,))
    if not 0.0 < epsilon < 0.5:
        raise ValueError("overshoot must lie in (0, 1/2), got %r" % (epsilon,))
    items = (0.5 + epsilon,) * n + (1.0,) * n
    return Instance(
        n=n,
        items=items,
        opt_certificate=float(n),
        meta={"generator": "greedy_trap", "n": n, "epsilon": epsilon},
    )


def fuzz_instance(n, length, mix, seed):
    """Seeded random stream; sizes drawn per class, uniform within band.

    mix maps class names (small, medium, large) to non-negative weights;
    missing names weigh zero. Per item the generator draws one class,
    then one uniform variate for the size, so streams are reproducible
    from (n, length, mix, seed) alone.
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError("bin count must be a positive integer, got %r" % (n,))
    if not isinstance(length, int) or isinstance(length, bool) or length < 0:
        raise ValueError("length must be a non-negative integer, got %r" % (length,))
    unknown = set(mix) - set(CLASS_NAMES)
    if unknown:
        raise ValueError("unknown classes in mix: %s" % (sorted(unknown),))
    weights = np.array([float(mix.get(name, 0.0)) for name in CLASS_NAMES])
    if (weights < 0).any() or weights.sum() <= 0.0:
        raise ValueError("mix weights must be non-negative and not all zero")
    probs = weights / weights.sum()
    rng = np.random.default_rng(seed)
    items = []
    for _ in range(length):
        cls = rng.choice(CLASS_NAMES, p=probs)
        u = float(rng.random())
        if cls == "small":
            size = MEDIUM_MIN * u
            if size <= 0.0:        # random() can return exactly 0.0
                size = MEDIUM_MIN / 2
        elif cls == "medium":
            size = MEDIUM_MIN + (0.5 - MEDIUM_MIN) * u
        else:
            size = 1.0 - u / 2
        items.append(size)
    return Instance(
        n=n,
        items=tuple(items),
        opt_certificate=None,
        meta={
            "generator": "fuzz",
            "n": n,
            "length": length,
            "mix": {name: float(mix.get(name, 0.0)) for name in CLASS_NAMES},
            "seed": int(seed),
        },
    )
