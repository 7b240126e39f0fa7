"""Exact offline optimum for packing sized items into n unit bins.

Profit equals size, so the offline problem is multiple subset-sum
maximization: choose a subset of the items and a feasible assignment
to bins that maximizes the total packed size. exact_opt solves it by
depth-first branch and bound; check_certificate validates a claimed
optimum, with or without an explicit assignment.
"""

from dataclasses import dataclass, field

VALUE_TOL = 1e-9       # absolute tolerance on load comparisons
PRUNE_TOL = 1e-12      # keeps ties from reopening equal-value subtrees
DEFAULT_NODE_BUDGET = 10_000_000


@dataclass(frozen=True)
class OptResult:
    value: float                     # total packed size
    assignment: dict = field(default_factory=dict)  # item index -> 1-based bin
    exact: bool = True               # False: node budget hit, value is a lower bound
    nodes: int = 0                   # search nodes expanded


@dataclass(frozen=True)
class CertificateCheck:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def _validate_instance(sizes, n):
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError("bin count must be a positive integer, got %r" % (n,))
    for s in sizes:
        if not 0.0 < s <= 1.0:
            raise ValueError("size must lie in (0, 1], got %r" % (s,))


def upper_bound(sizes, n):
    """min(n, sum of sizes): every packing fits under both caps."""
    _validate_instance(sizes, n)
    return min(float(n), float(sum(sizes)))


def exact_opt(sizes, n, node_budget=DEFAULT_NODE_BUDGET):
    """Maximum total size packable into n unit bins.

    Items are searched largest-first; each is tried in every open bin
    with room (ascending), then in the next empty bin, then rejected.
    Empty bins are interchangeable, so a new bin may open only while
    every bin below it is occupied. A subtree is cut when the packed
    value plus min(remaining sizes, remaining capacity) cannot beat the
    incumbent; among equal-value optima the first one found is kept.

    If the node budget runs out the incumbent is returned with
    exact=False; it is still a feasible packing.
    """
    _validate_instance(sizes, n)
    if not isinstance(node_budget, int) or isinstance(node_budget, bool) or node_budget < 1:
        raise ValueError("node budget must be a positive integer, got %r" % (node_budget,))

    m = len(sizes)
    if m == 0:
        return OptResult(value=0.0, assignment={}, exact=True, nodes=0)

    order = sorted(range(m), key=lambda i: (-sizes[i], i))
    vals = [float(sizes[i]) for i in order]
    suffix = [0.0] * (m + 1)
    for i in range(m - 1, -1, -1):
        suffix[i] = suffix[i + 1] + vals[i]

    nbins = min(n, m)                # more bins than items can never help
    cap = float(nbins)
    loads = [0.0] * nbins
    choice = [0] * m                 # 0 = reject, b = 1-based bin, in sorted order
    best = {"value": 0.0, "choice": choice[:]}   # rejecting all is feasible
    state = {"nodes": 0, "within_budget": True}

    def dfs(pos, open_bins, packed):
        if not state["within_budget"]:
            return
        state["nodes"] += 1
        if state["nodes"] > node_budget:
            state["within_budget"] = False
            return
        if pos == m:
            if packed > best["value"] + PRUNE_TOL:
                best["value"] = packed
                best["choice"] = choice[:]
            return
        if packed + min(suffix[pos], cap - packed) <= best["value"] + PRUNE_TOL:
            return
        s = vals[pos]
        limit = min(open_bins + 1, nbins)
        for b in range(1, limit + 1):
            if loads[b - 1] + s <= 1.0:
                choice[pos] = b
                loads[b - 1] += s
                dfs(pos + 1, max(open_bins, b), packed + s)
                loads[b - 1] -= s
        choice[pos] = 0
        dfs(pos + 1, open_bins, packed)

    dfs(0, 0, 0.0)
    picked = best["choice"]
    assignment = {order[i]: picked[i] for i in range(m) if picked[i] > 0}
    value = float(sum(sizes[i] for i in assignment))
    return OptResult(value=value, assignment=assignment,
                     exact=state["within_budget"], nodes=state["nodes"])


def check_certificate(sizes, n, claimed_opt, assignment=None):
    """Validate a claimed offline optimum.

    With an assignment: every referenced bin must stay within capacity
    (the first overfull bin is named in the reason) and the packed value
    must match the claim within VALUE_TOL. Without one: the claim must
    not exceed upper_bound, and on instances small enough to solve it
    must match exact_opt.
    """
    _validate_instance(sizes, n)
    m = len(sizes)
    if assignment is not None:
        loads = {}
        for i, b in assignment.items():
            if not isinstance(i, int) or isinstance(i, bool) or not 0 <= i < m:
                raise ValueError("assignment names unknown item %r" % (i,))
            if not isinstance(b, int) or isinstance(b, bool) or not 1 <= b <= n:
                raise ValueError("assignment names unknown bin %r" % (b,))
            loads[b] = loads.get(b, 0.0) + float(sizes[i])
        for b in sorted(loads):
            if loads[b] > 1.0:
                return CertificateCheck(
                    ok=False,
                    reason="bin %d overfull: load %.12g exceeds 1" % (b, loads[b]),
                )
        value = sum(loads.values())
        if abs(value - claimed_opt) > VALUE_TOL:
            return CertificateCheck(
                ok=False,
                reason="assignment packs %.12g, claim is %.12g" % (value, claimed_opt),
            )
        return CertificateCheck(ok=True)

    if claimed_opt < -VALUE_TOL:
        return CertificateCheck(ok=False, reason="claim is negative")
    bound = upper_bound(sizes, n)
    if claimed_opt > bound + VALUE_TOL:
        return CertificateCheck(
            ok=False,
            reason="claim %.12g exceeds upper bound %.12g" % (claimed_opt, bound),
        )
    if m <= 24 and n <= 6:
        res = exact_opt(sizes, n)
        if res.exact and abs(res.value - claimed_opt) > VALUE_TOL:
            return CertificateCheck(
                ok=False,
                reason="claim %.12g, optimum is %.12g" % (claimed_opt, res.value),
            )
    return CertificateCheck(ok=True)
