"""Run reports: transcripts, terminal diagnostics, and guarantee checks.

Everything here is a pure function of the engine's final snapshot plus
the instance, so rerunning a report over the same inputs reproduces it
byte for byte. Serialization is sorted-key JSON; the CSV schema is the
fixed column tuple CSV_COLUMNS.
"""

import csv
import json
from dataclasses import dataclass

from .curves import MEDIUM_MIN, RATIO, mark_budget, pile, threshold_integral, transfer
from .engine import FirstFit, RisingThreshold
from .marked import MarkedSet
from .oracle import exact_opt

CSV_COLUMNS = ("n", "alg", "gain", "opt", "ratio", "b_L", "b_MS", "b_Mstar",
               "b_Sstar", "mt_D", "level_star", "thr_M", "T_star")

DEFAULT_SLACK_CONSTANT = 3.0

EXACT_TOL = 1e-12        # slack for checks that hold exactly, up to rounding


def make_engine(alg, n):
    if alg == "rta":
        return RisingThreshold(n)
    if alg == "firstfit":
        return FirstFit(n)
    raise ValueError("unknown algorithm %r" % (alg,))


def _min_marked_single(snapshot):
    """Smallest medium sitting alone in a marked single bin, or None."""
    sizes = [b.sizes[0] for b in snapshot.bins if b.label == "MS"]
    return min(sizes) if sizes else None


def _min_stacked_medium(snapshot):
    """Smallest medium in the homogeneous stacking bins, or None."""
    sizes = [min(b.sizes) for b in snapshot.bins
             if b.label in ("MT2", "MT3", "MT4") and b.sizes]
    return min(sizes) if sizes else None


def diagnostics(snapshot):
    """Terminal-state quantities driving the gain guarantees.

    mt_D: smallest marked size about to exhaust its budget, if any.
    level_star: guaranteed per-bin load on the stacking bins, capped at
    1 - MEDIUM_MIN while small-item bins exist, and 1 when nothing is
    tight. thr_M and T_star: the large-bin load floor and the gain
    pushed into large bins by mediums that failed to pair with them;
    T_star is 0 whenever its guard fails.
    """
    marked = MarkedSet(snapshot.n)
    for size in snapshot.marked:
        marked.insert(size)
    mt = marked.min_tight()
    have_sstar = snapshot.counts.get("Sstar", 0) > 0
    if mt is None:
        level = 1.0
    elif have_sstar:
        level = min(pile(mt), 1.0 - MEDIUM_MIN)
    else:
        level = pile(mt)
    min_ms = _min_marked_single(snapshot)
    thr = None if min_ms is None else min(1.0 - min_ms, 0.5 + MEDIUM_MIN)
    t_star = 0.0
    if min_ms is not None and mt is not None and min_ms > max(mt, 1.0 / 3.0):
        t_star = transfer(min_ms, mt)
    return {
        "mt_D": mt,
        "level_star": level,
        "thr_M": thr,
        "T_star": t_star,
        "min_MS": min_ms,
        "min_Mstar": _min_stacked_medium(snapshot),
    }


def lemma_checks(snapshot, slack_constant=DEFAULT_SLACK_CONSTANT):
    """Guarantee checks on a finished run; failures are findings.

    Each entry is {id, holds, margin}; margin is None when the check's
    precondition does not apply (vacuously true). The asymptotic
    guarantees hide an O(1/n) term, checked here with slack
    slack_constant / n.
    """
    n = snapshot.n
    slack = slack_constant / n
    gains = snapshot.gains()
    fractions = snapshot.fractions()
    b_large = fractions["b_Lplus"]
    checks = []

    margin = gains["g_L"] - (threshold_integral(b_large) - slack)
    checks.append({"id": "large-gain-curve", "holds": margin >= 0.0,
                   "margin": margin})

    min_ms = _min_marked_single(snapshot)
    if min_ms is None:
        checks.append({"id": "marked-gain", "holds": True, "margin": None})
        checks.append({"id": "marked-fraction", "holds": True, "margin": None})
    else:
        margin = gains["g_MS"] - min_ms * fractions["b_MS"]
        checks.append({"id": "marked-gain", "holds": margin >= -EXACT_TOL,
                       "margin": margin})
        margin = mark_budget(min_ms) - fractions["b_MS"]
        checks.append({"id": "marked-fraction", "holds": margin >= -EXACT_TOL,
                       "margin": margin})

    if snapshot.counts.get("E", 0) == 0:
        covered = (b_large + fractions["b_MS"] + fractions["b_Mstar"]
                   + fractions["b_Sstar"])
        margin = covered - (1.0 - 1.0 / n)
        checks.append({"id": "terminal-coverage", "holds": margin >= -EXACT_TOL,
                       "margin": margin})
        margin = gains["total"] - (RATIO - slack)
        checks.append({"id": "terminal-gain", "holds": margin >= 0.0,
                       "margin": margin})
    else:
        checks.append({"id": "terminal-coverage", "holds": True, "margin": None})
        checks.append({"id": "terminal-gain", "holds": True, "margin": None})

    if snapshot.counts.get("E", 0) > 0 and b_large <= RATIO - 1.0 / n:
        margin = -float(snapshot.rejected)
        checks.append({"id": "all-accepted", "holds": snapshot.rejected == 0,
                       "margin": margin})
    else:
        checks.append({"id": "all-accepted", "holds": True, "margin": None})
    return checks


@dataclass(frozen=True)
class RunReport:
    alg: str
    n: int
    items: int                   # stream length of the instance
    offered: int                 # items actually offered before termination
    accepted: int
    rejected: int
    terminated: bool
    gain: float                  # total packed size, unnormalized
    gains: dict
    fractions: dict
    diagnostics: object          # None for engines without labeled bins
    checks: tuple
    opt: object                  # certificate or solved optimum, if known
    ratio: object

    def to_dict(self):
        return {
            "alg": self.alg,
            "n": self.n,
            "items": self.items,
            "offered": self.offered,
            "accepted": self.accepted,
            "rejected": self.rejected,
            "terminated": self.terminated,
            "gain": self.gain,
            "gains": self.gains,
            "fractions": self.fractions,
            "diagnostics": self.diagnostics,
            "checks": list(self.checks),
            "opt": self.opt,
            "ratio": self.ratio,
        }


def _resolve_opt(instance):
    if instance.opt_certificate is not None:
        return instance.opt_certificate
    if len(instance.items) <= 24 and instance.n <= 6:
        result = exact_opt(instance.items, instance.n)
        if result.exact:
            return result.value
    return None


def run_stream(algorithm, instance, slack_constant=DEFAULT_SLACK_CONSTANT):
    """Offer the instance items in order; stop early if the run closes.

    Returns (transcript rows, RunReport). Rows record one decision per
    offered item.
    """
    if algorithm.n != instance.n:
        raise ValueError("algorithm has %d bins, instance wants %d"
                         % (algorithm.n, instance.n))
    rows = []
    for i, size in enumerate(instance.items):
        if getattr(algorithm, "terminated", False):
            break
        decision = algorithm.offer(size, index=i)
        rows.append({
            "i": i,
            "size": size,
            "action": decision.action,
            "bin": decision.bin,
            "label_before": decision.label_before,
            "label_after": decision.label_after,
            "side_effects": list(decision.side_effects),
        })
    snapshot = algorithm.snapshot()
    labeled = bool(snapshot.counts)    # engines without bin labels skip checks
    gain = snapshot.total_load()
    opt = _resolve_opt(instance)
    ratio = gain / opt if opt else None
    return rows, RunReport(
        alg=snapshot.alg,
        n=snapshot.n,
        items=len(instance.items),
        offered=snapshot.offered,
        accepted=snapshot.accepted,
        rejected=snapshot.rejected,
        terminated=snapshot.terminated,
        gain=gain,
        gains=snapshot.gains(),
        fractions=snapshot.fractions() if labeled else None,
        diagnostics=diagnostics(snapshot) if labeled else None,
        checks=tuple(lemma_checks(snapshot, slack_constant)) if labeled else (),
        opt=opt,
        ratio=ratio,
    )


def report_row(report):
    """Flatten a RunReport into the fixed CSV schema."""
    diag = report.diagnostics or {}
    frac = report.fractions or {}
    return {
        "n": report.n,
        "alg": report.alg,
        "gain": report.gain,
        "opt": report.opt,
        "ratio": report.ratio,
        "b_L": frac.get("b_Lplus"),
        "b_MS": frac.get("b_MS"),
        "b_Mstar": frac.get("b_Mstar"),
        "b_Sstar": frac.get("b_Sstar"),
        "mt_D": diag.get("mt_D"),
        "level_star": diag.get("level_star"),
        "thr_M": diag.get("thr_M"),
        "T_star": diag.get("T_star"),
    }


def duel_row(transcript, snapshot):
    """Flatten an adversary duel into the fixed CSV schema."""
    labeled = bool(snapshot.counts)
    frac = snapshot.fractions() if labeled else {}
    diag = diagnostics(snapshot) if labeled else {}
    return {
        "n": transcript.n,
        "alg": transcript.alg,
        "gain": transcript.det_gain,
        "opt": transcript.opt_value,
        "ratio": transcript.ratio,
        "b_L": frac.get("b_Lplus"),
        "b_MS": frac.get("b_MS"),
        "b_Mstar": frac.get("b_Mstar"),
        "b_Sstar": frac.get("b_Sstar"),
        "mt_D": diag.get("mt_D"),
        "level_star": diag.get("level_star"),
        "thr_M": diag.get("thr_M"),
        "T_star": diag.get("T_star"),
    }


def write_csv(path, rows):
    """Rows restricted to CSV_COLUMNS, None rendered as empty cell."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow(["" if row[c] is None else row[c]
                             for c in CSV_COLUMNS])


def dumps_report(report):
    return json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n"


def write_report(path, report):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_report(report))


def write_transcript(path, rows):
    """One JSON object per line, fixed separators: replayable, diffable."""
    with open(path, "w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(json.dumps(row, sort_keys=True, separators=(",", ":")))
            fh.write("\n")
