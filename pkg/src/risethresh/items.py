"""Item classification and the item record used by the engine."""

from dataclasses import dataclass

from .curves import MEDIUM_MIN

LARGE = "large"
SMALL = "small"
MT2 = "MT2"
MT3 = "MT3"
MT4 = "MT4"

MEDIUM_SUBTYPES = (MT2, MT3, MT4)

_THIRD = 1.0 / 3.0


def classify(size):
    """Class label for a size in (0, 1].

    large (1/2, 1]; medium [MEDIUM_MIN, 1/2] split into MT2 (1/3, 1/2],
    MT3 (1/4, 1/3], MT4 [MEDIUM_MIN, 1/4]; small (0, MEDIUM_MIN).
    """
    if not 0.0 < size <= 1.0:
        raise ValueError("size must lie in (0, 1], got %r" % (size,))
    if size > 0.5:
        return LARGE
    if size >= MEDIUM_MIN:
        if size > _THIRD:
            return MT2
        if size > 0.25:
            return MT3
        return MT4
    return SMALL


def category(label):
    """Collapse a class label to large / medium / small."""
    if label in MEDIUM_SUBTYPES:
        return "medium"
    if label in (LARGE, SMALL):
        return label
    raise ValueError("unknown class label %r" % (label,))


def is_medium(label):
    return label in MEDIUM_SUBTYPES


@dataclass(frozen=True)
class Item:
    """One stored item; merged items carry the stream indices they absorbed."""

    size: float
    index: object = None        # stream position, None for direct offers
    parts: object = None        # tuple of stream indices when merged

    @property
    def origin(self):
        return "merged" if self.parts is not None else "stream"
