"""Online engines: the rising-threshold policy and the FirstFit baseline.

Both expose offer(size, index) -> Decision plus snapshot(); a run is
strictly sequential and deterministic, so identical streams replay to
identical transcripts. Tie-breaking is lowest bin index everywhere a
choice exists; capacity tests are exact (load + size <= 1, no slack).
"""

import bisect
from dataclasses import dataclass

from .curves import MEDIUM_MIN, threshold
from .items import LARGE, SMALL, Item, classify, is_medium
from .marked import MarkedSet

LABELS = ("E", "A", "Sstar", "MS", "MT2", "MT3", "MT4", "Lplus")

ACCEPT = "accept"
REJECT = "reject"


@dataclass(frozen=True)
class Decision:
    action: str                  # accept | reject
    bin: object = None           # 1-based bin index on accept
    label_before: object = None
    label_after: object = None
    side_effects: tuple = ()


@dataclass(frozen=True)
class BinView:
    index: int
    label: object
    sizes: tuple
    load: float
    provenance: tuple            # per item: stream index, None, or merged parts


@dataclass(frozen=True)
class Snapshot:
    alg: str
    n: int
    terminated: bool
    bins: tuple                  # of BinView
    marked: tuple                # ascending marked sizes
    counts: dict                 # label -> bin count (rta only)
    offered: int
    accepted: int
    rejected: int

    def gains(self):
        """Per-bin normalized gains by label group."""
        tot = g_l = g_lp = g_ms = g_mst = g_ss = g_a = 0.0
        for b in self.bins:
            s = sum(b.sizes)
            tot += s
            if b.label == "Lplus":
                g_lp += s
                g_l += sum(x for x in b.sizes if x > 0.5)
            elif b.label == "MS":
                g_ms += s
            elif b.label in ("MT2", "MT3", "MT4"):
                g_mst += s
            elif b.label == "Sstar":
                g_ss += s
            elif b.label == "A":
                g_a += s
        n = self.n
        return {
            "total": tot / n,
            "g_L": g_l / n,
            "g_Lplus": g_lp / n,
            "g_MS": g_ms / n,
            "g_Mstar": g_mst / n,
            "g_Sstar": g_ss / n,
            "g_A": g_a / n,
        }

    def fractions(self):
        """Bin-count fractions by label; labels missing from counts are 0."""
        c = self.counts
        n = self.n
        mstar = c.get("MT2", 0) + c.get("MT3", 0) + c.get("MT4", 0)
        return {
            "b_Lplus": c.get("Lplus", 0) / n,
            "b_MS": c.get("MS", 0) / n,
            "b_Mstar": mstar / n,
            "b_Sstar": c.get("Sstar", 0) / n,
            "b_E": c.get("E", 0) / n,
            "b_A": c.get("A", 0) / n,
        }

    def total_load(self):
        return sum(sum(b.sizes) for b in self.bins)


class _Bin:
    __slots__ = ("index", "label", "items", "load")

    def __init__(self, index):
        self.index = index
        self.label = "E"
        self.items = []
        self.load = 0.0

    def put(self, item):
        self.items.append(item)
        self.load += item.size

    def view(self):
        return BinView(
            index=self.index,
            label=self.label,
            sizes=tuple(it.size for it in self.items),
            load=self.load,
            provenance=tuple(it.parts if it.parts is not None else it.index
                             for it in self.items),
        )


class RisingThreshold:
    """The threshold policy over n >= 2 unit bins."""

    alg_id = "rta"

    def __init__(self, n):
        if not isinstance(n, int) or n < 2:
            raise ValueError("bin count must be an integer >= 2, got %r" % (n,))
        self.n = n
        self.bins = [_Bin(i) for i in range(1, n + 1)]
        self.marked = MarkedSet(n)
        self.terminated = False
        self.offered = 0
        self.accepted = 0
        self.rejected = 0
        # E-bins are always consumed lowest-first, so the remaining ones are
        # the contiguous suffix starting at _e_next
        self._e_next = 1
        self._lplus = []
        self._ms = []
        self._sstar = []
        self._mt = {"MT2": [], "MT3": [], "MT4": []}
        self._a = None

    # ------------------------------------------------------------- state

    def empty_bins(self):
        return self.n - (self._e_next - 1)

    def large_count(self):
        return len(self._lplus)

    def _take_empty(self):
        idx = self._e_next
        self._e_next += 1
        return self.bins[idx - 1]

    def _first_fit(self, indices, size):
        for idx in indices:
            if self.bins[idx - 1].load + size <= 1.0:
                return self.bins[idx - 1]
        return None

    # ------------------------------------------------------------- offer

    def offer(self, size, index=None):
        if self.terminated:
            raise RuntimeError("offer on a terminated run")
        cls = classify(size)
        self.offered += 1
        item = Item(size=size, index=index)

        if cls == LARGE:
            dec = self._offer_large(item)
        elif cls == SMALL:
            dec = self._offer_small(item)
        else:
            dec = self._offer_medium(item, cls)

        effects = dec.side_effects
        if self.empty_bins() == 0 and not self.terminated:
            self.terminated = True
            effects = effects + ("Terminated",)
        if dec.action == ACCEPT:
            self.accepted += 1
        else:
            self.rejected += 1
        return Decision(dec.action, dec.bin, dec.label_before, dec.label_after, effects)

    def _offer_large(self, item):
        floor = threshold((len(self._lplus) + 1) / self.n)
        if item.size < floor:
            return Decision(REJECT)
        target = self._first_fit(self._ms, item.size)
        if target is not None:
            before = "MS"
            self._ms.remove(target.index)
            # the stored medium item stays marked; only the label moves
        else:
            target = self._take_empty()
            before = "E"
        target.label = "Lplus"
        target.put(item)
        bisect.insort(self._lplus, target.index)
        return Decision(ACCEPT, target.index, before, "Lplus")

    def _offer_medium(self, item, subtype):
        target = self._first_fit(self._lplus, item.size)
        if target is not None:
            target.put(item)
            return Decision(ACCEPT, target.index, "Lplus", "Lplus")
        if self.marked.within_budget(item.size):
            target = self._take_empty()
            target.label = "MS"
            target.put(item)
            bisect.insort(self._ms, target.index)
            self.marked.insert(item.size)
            return Decision(ACCEPT, target.index, "E", "MS", ("Marked",))
        target = self._first_fit(self._mt[subtype], item.size)
        if target is not None:
            target.put(item)
            return Decision(ACCEPT, target.index, subtype, subtype)
        target = self._take_empty()
        target.label = subtype
        target.put(item)
        bisect.insort(self._mt[subtype], target.index)
        return Decision(ACCEPT, target.index, "E", subtype)

    def _offer_small(self, item):
        target = self._first_fit(self._lplus, item.size)
        if target is not None:
            target.put(item)
            return Decision(ACCEPT, target.index, "Lplus", "Lplus")
        target = self._first_fit(self._sstar, item.size)
        if target is not None:
            target.put(item)
            return Decision(ACCEPT, target.index, "Sstar", "Sstar")
        if self._a is not None:
            abin = self.bins[self._a - 1]
            # load < MEDIUM_MIN and size < MEDIUM_MIN, so this always fits
            abin.put(item)
            if abin.load >= MEDIUM_MIN:
                return self._close_a_bin(abin)
            return Decision(ACCEPT, abin.index, "A", "A")
        target = self._take_empty()
        target.label = "A"
        target.put(item)
        self._a = target.index
        return Decision(ACCEPT, target.index, "E", "A")

    def _close_a_bin(self, abin):
        # total small load reached the medium range [MEDIUM_MIN, 2*MEDIUM_MIN)
        self._a = None
        if self.marked.within_budget(abin.load):
            merged = Item(size=abin.load,
                          parts=tuple(it.index for it in abin.items))
            abin.items = [merged]
            abin.label = "MS"
            bisect.insort(self._ms, abin.index)
            self.marked.insert(merged.size)
            return Decision(ACCEPT, abin.index, "A", "MS", ("MergedAbin", "Marked"))
        abin.label = "Sstar"
        bisect.insort(self._sstar, abin.index)
        return Decision(ACCEPT, abin.index, "A", "Sstar", ("RelabeledAtoSstar",))

    # ---------------------------------------------------------- snapshot

    def snapshot(self):
        counts = {lab: 0 for lab in LABELS}
        for b in self.bins:
            counts[b.label] += 1
        return Snapshot(
            alg=self.alg_id,
            n=self.n,
            terminated=self.terminated,
            bins=tuple(b.view() for b in self.bins),
            marked=self.marked.sizes,
            counts=counts,
            offered=self.offered,
            accepted=self.accepted,
            rejected=self.rejected,
        )


class FirstFit:
    """Lowest-index first-fit baseline over n >= 1 unit bins; never terminates."""

    alg_id = "firstfit"

    def __init__(self, n):
        if not isinstance(n, int) or n < 1:
            raise ValueError("bin count must be a positive integer, got %r" % (n,))
        self.n = n
        self.bins = [_Bin(i) for i in range(1, n + 1)]
        for b in self.bins:
            b.label = None
        self.terminated = False
        self.offered = 0
        self.accepted = 0
        self.rejected = 0

    def offer(self, size, index=None):
        if self.terminated:
            raise RuntimeError("offer on a terminated run")
        classify(size)  # domain check only
        self.offered += 1
        for b in self.bins:
            if b.load + size <= 1.0:
                b.put(Item(size=size, index=index))
                self.accepted += 1
                return Decision(ACCEPT, b.index)
        self.rejected += 1
        return Decision(REJECT)

    def snapshot(self):
        return Snapshot(
            alg=self.alg_id,
            n=self.n,
            terminated=False,
            bins=tuple(b.view() for b in self.bins),
            marked=(),
            counts={},
            offered=self.offered,
            accepted=self.accepted,
            rejected=self.rejected,
        )
