"""Instance: an ordered item stream with an optional packing certificate.

The JSON form is the interchange format between the generators, the CLI,
and the report layer; serialization is deterministic (sorted keys, fixed
two-space indent) so identical instances produce identical bytes.
"""

import json
from dataclasses import dataclass, field

from .oracle import upper_bound


@dataclass(frozen=True)
class Instance:
    n: int
    items: tuple
    opt_certificate: object = None   # claimed offline optimum, if known
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 1:
            raise ValueError("bin count must be a positive integer, got %r" % (self.n,))
        object.__setattr__(self, "items", tuple(float(s) for s in self.items))
        for s in self.items:
            if not 0.0 < s <= 1.0:
                raise ValueError("size must lie in (0, 1], got %r" % (s,))
        if self.opt_certificate is not None:
            cert = float(self.opt_certificate)
            bound = upper_bound(self.items, self.n)
            if not 0.0 <= cert <= bound + 1e-9:
                raise ValueError(
                    "certificate %r outside [0, %r]" % (cert, bound))
            object.__setattr__(self, "opt_certificate", cert)

    def to_dict(self):
        return {
            "n": self.n,
            "items": list(self.items),
            "opt_certificate": self.opt_certificate,
            "meta": self.meta,
        }

    @classmethod
    def from_dict(cls, data):
        extra = set(data) - {"n", "items", "opt_certificate", "meta"}
        if extra:
            raise ValueError("unknown instance fields: %s" % (sorted(extra),))
        return cls(
            n=data["n"],
            items=tuple(data["items"]),
            opt_certificate=data.get("opt_certificate"),
            meta=dict(data.get("meta") or {}),
        )

    def dumps(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def save(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.dumps())

    @classmethod
    def load(cls, path):
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))
