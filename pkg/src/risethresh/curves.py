"""Closed-form curves and constants for the rising-threshold policy.

Everything here is scalar float math on exact formulas; the grid sweeps
that certify the inequalities between these functions live in validate.py.
"""

import math

# log(2e) = 1 + log 2; the acceptance threshold is flat at 1/2 until the
# fill fraction reaches RATIO, then grows like (2e)**(x-1).
_LOG_2E = 1.0 + math.log(2.0)

#: competitive ratio of the policy, 1 / (1 + ln 2)
RATIO = 1.0 / _LOG_2E

#: marked-mass constant: (1 + (2/3) ln(4/3)) * RATIO - 2/3
BUDGET_CONST = (1.0 + (2.0 / 3.0) * math.log(4.0 / 3.0)) * RATIO - 2.0 / 3.0

#: smallest size treated as medium: (2/3) c / (2/3 - RATIO + c), c = BUDGET_CONST
MEDIUM_MIN = (2.0 / 3.0) * BUDGET_CONST / (2.0 / 3.0 - RATIO + BUDGET_CONST)


def threshold(x):
    """Acceptance threshold for large items at fill fraction x in [0, 1]."""
    if not 0.0 <= x <= 1.0:
        raise ValueError("fill fraction must lie in [0, 1], got %r" % (x,))
    if x <= RATIO:
        return 0.5
    return math.exp((x - 1.0) * _LOG_2E)


def threshold_integral(x):
    """Integral of threshold() from 0 to x, closed form, x in [0, 1]."""
    if not 0.0 <= x <= 1.0:
        raise ValueError("fill fraction must lie in [0, 1], got %r" % (x,))
    if x <= RATIO:
        return 0.5 * x
    return RATIO * math.exp((x - 1.0) * _LOG_2E)


def threshold_inverse(c):
    """Fill fraction at which the threshold reaches c, for c in (1/2, 1]."""
    if not 0.5 < c <= 1.0:
        raise ValueError("threshold value must lie in (1/2, 1], got %r" % (c,))
    return 1.0 + RATIO * math.log(c)


def _capped_gain_closed(c):
    # closed form without the domain check; validate.py sweeps it on [1/2, 1]
    return c - RATIO * c * math.log(2.0 * c)


def capped_gain(c):
    """Best-possible gain per bin against a stream capped at size c in (1/2, 1]."""
    if not 0.5 < c <= 1.0:
        raise ValueError("cap must lie in (1/2, 1], got %r" % (c,))
    return _capped_gain_closed(c)


def _surplus_closed(c):
    return RATIO * c * math.log(2.0 * c)


def surplus(c):
    """Gap c - capped_gain(c), for c in (1/2, 1]."""
    if not 0.5 < c <= 1.0:
        raise ValueError("cap must lie in (1/2, 1], got %r" % (c,))
    return _surplus_closed(c)


def mark_budget(x):
    """Max fraction of bins allowed to hold marked items of size >= x.

    Defined on [MEDIUM_MIN, 1/2]: BUDGET_CONST / x up to 1/3, then the
    linear ramp 9 * BUDGET_CONST * (1 - 2x) down to 0 at 1/2.
    """
    if not MEDIUM_MIN <= x <= 0.5:
        raise ValueError("size must lie in [MEDIUM_MIN, 1/2], got %r" % (x,))
    if x <= 1.0 / 3.0:
        return BUDGET_CONST / x
    return 9.0 * BUDGET_CONST * (1.0 - 2.0 * x)


def mark_budget_slope(x):
    """Derivative of mark_budget; undefined at the kink x = 1/3."""
    if not MEDIUM_MIN <= x <= 0.5:
        raise ValueError("size must lie in [MEDIUM_MIN, 1/2], got %r" % (x,))
    if x == 1.0 / 3.0:
        raise ValueError("mark_budget is not differentiable at x = 1/3")
    if x < 1.0 / 3.0:
        return -BUDGET_CONST / (x * x)
    return -18.0 * BUDGET_CONST


def pile(x):
    """Stacking level max{2/3, 2x} reached by piling items of size x in (0, 1/2]."""
    if not 0.0 < x <= 0.5:
        raise ValueError("size must lie in (0, 1/2], got %r" % (x,))
    return max(2.0 / 3.0, 2.0 * x)


def transfer(a, b):
    """Credit (a + b - 1/2) * (mark_budget(b) - mark_budget(a)).

    Both arguments must lie in [MEDIUM_MIN, 1/2]; nonnegative when b <= a.
    """
    if not MEDIUM_MIN <= a <= 0.5:
        raise ValueError("first size must lie in [MEDIUM_MIN, 1/2], got %r" % (a,))
    if not MEDIUM_MIN <= b <= 0.5:
        raise ValueError("second size must lie in [MEDIUM_MIN, 1/2], got %r" % (b,))
    return (a + b - 0.5) * (mark_budget(b) - mark_budget(a))
