"""Live-state invariant auditor for engine runs (test-side oracle).

Re-derives every structural invariant from scratch after each offer:
label content rules, capacity, single A-bin, marked-set domination and
the MS subset-of-D relation, termination condition, the label transition
graph, large-acceptance thresholds, and monotonicity of the minimum
tight size. Collects violations instead of raising so a fuzz campaign
reports everything at once.
"""

from collections import Counter

from risethresh.curves import MEDIUM_MIN, threshold
from risethresh.items import LARGE, MEDIUM_SUBTYPES, SMALL, classify

ALLOWED_TRANSITIONS = {
    ("E", "A"), ("E", "MS"), ("E", "MT2"), ("E", "MT3"), ("E", "MT4"),
    ("E", "Lplus"), ("A", "A"), ("A", "MS"), ("A", "Sstar"), ("MS", "Lplus"),
    ("MT2", "MT2"), ("MT3", "MT3"), ("MT4", "MT4"),
    ("Sstar", "Sstar"), ("Lplus", "Lplus"),
}


def _within(inner, outer):
    inner_c = Counter(inner)
    outer_c = Counter(outer)
    return all(outer_c[k] >= v for k, v in inner_c.items())


class Auditor:
    def __init__(self, engine):
        self.engine = engine
        self.large_accepts = 0
        self.last_mt = None
        self.mt_was_set = False
        self.violations = []

    def note(self, cond, msg):
        if not cond:
            self.violations.append(msg)

    def after_offer(self, size, dec):
        eng = self.engine
        cls = classify(size)

        if dec.action == "accept":
            if cls == LARGE:
                self.large_accepts += 1
                self.note(size >= threshold(self.large_accepts / eng.n),
                          "large accept %d below threshold: %r" % (self.large_accepts, size))
            pair = (dec.label_before, dec.label_after)
            self.note(pair in ALLOWED_TRANSITIONS, "illegal transition %r" % (pair,))
        else:
            self.note(cls == LARGE, "non-large item rejected: %r" % (size,))
            self.note(dec.bin is None and dec.label_before is None
                      and dec.label_after is None, "reject decision carries placement")

        a_count = 0
        for b in eng.bins:
            self.note(b.load <= 1.0, "bin %d over capacity: %r" % (b.index, b.load))
            self.note(abs(b.load - sum(it.size for it in b.items)) < 1e-12,
                      "bin %d cached load drifted" % b.index)
            labs = [classify(it.size) for it in b.items]
            lab = b.label
            if lab == "E":
                self.note(not b.items, "E-bin %d not empty" % b.index)
            elif lab == "A":
                a_count += 1
                self.note(all(c == SMALL for c in labs), "A-bin %d holds non-small" % b.index)
                self.note(b.load < MEDIUM_MIN, "A-bin %d load >= MEDIUM_MIN" % b.index)
            elif lab == "MS":
                self.note(len(b.items) == 1 and labs[0] in MEDIUM_SUBTYPES,
                          "MS-bin %d content rule" % b.index)
            elif lab in MEDIUM_SUBTYPES:
                self.note(len(b.items) >= 1 and all(c == lab for c in labs),
                          "%s-bin %d content rule" % (lab, b.index))
            elif lab == "Sstar":
                self.note(len(b.items) >= 1 and all(c == SMALL for c in labs),
                          "Sstar-bin %d content rule" % b.index)
            elif lab == "Lplus":
                self.note(sum(1 for c in labs if c == LARGE) == 1,
                          "Lplus-bin %d large count" % b.index)
            else:
                self.note(False, "unknown label %r on bin %d" % (lab, b.index))
        self.note(a_count <= 1, "more than one A-bin")

        self.note(eng.marked.dominated(), "marked set lost domination")
        ms_sizes = [b.items[0].size for b in eng.bins if b.label == "MS"]
        lplus_meds = [it.size for b in eng.bins if b.label == "Lplus"
                      for it in b.items if classify(it.size) in MEDIUM_SUBTYPES]
        d = list(eng.marked.sizes)
        self.note(_within(ms_sizes, d), "MS sizes not a sub-multiset of D")
        self.note(_within(d, ms_sizes + lplus_meds),
                  "D exceeds MS plus Lplus mediums")

        self.note(eng.terminated == (eng.empty_bins() == 0), "termination flag mismatch")
        self.note(eng.offered == eng.accepted + eng.rejected, "offer counters drifted")

        mt = eng.marked.min_tight()
        if self.mt_was_set:
            self.note(mt is not None, "minimum tight size vanished")
            if mt is not None:
                self.note(mt <= self.last_mt, "minimum tight size increased")
        if mt is not None:
            self.mt_was_set = True
            self.last_mt = mt


def drive(engine, sizes):
    """Offer sizes until termination or stream end, auditing each step."""
    auditor = Auditor(engine)
    decisions = []
    for i, s in enumerate(sizes):
        if engine.terminated:
            break
        dec = engine.offer(s, index=i)
        auditor.after_offer(s, dec)
        decisions.append(dec)
    return decisions, auditor.violations
