"""Bit-plane sharing: seven masked copies of an image, rebuilt by bitwise OR."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from ._backend import kernels
from .errors import DimensionMismatch, DuplicateShareIndex
from .image import RasterImage

#: Keep-masks for shares 1..7. Bit 8 (0x80) is present in all of them.
SHARE_MASKS = (0xD5, 0xAB, 0xCF, 0xB2, 0xD9, 0xB6, 0xEC)
N_SHARES = len(SHARE_MASKS)
FULL = 0xFF


def keep_mask(index: int) -> int:
    if not 1 <= index <= N_SHARES:
        raise ValueError(f"share index must be in 1..{N_SHARES}, got {index}")
    return SHARE_MASKS[index - 1]


@dataclass(frozen=True)
class Share:
    index: int
    image: RasterImage

    @property
    def mask(self) -> int:
        return keep_mask(self.index)


@dataclass(frozen=True)
class SubsetReport:
    subset: frozenset
    union_mask: int

    @property
    def complete(self) -> bool:
        return self.union_mask == FULL

    @property
    def missing_bits(self) -> list[int]:
        """1-based bit positions (1 = LSB) absent from the union."""
        return [b + 1 for b in range(8) if not self.union_mask >> b & 1]

    def as_dict(self) -> dict:
        return {
            "subset": sorted(self.subset),
            "union_mask": f"0x{self.union_mask:02X}",
            "complete": self.complete,
            "missing_bits": self.missing_bits,
        }


def subset_report(indices) -> SubsetReport:
    indices = frozenset(indices)
    union = 0
    for i in indices:
        union |= keep_mask(i)
    return SubsetReport(indices, union)


def make_shares(stego: RasterImage) -> list[Share]:
    return [
        Share(i, RasterImage(kernels.mask_channels(stego.array, m)))
        for i, m in enumerate(SHARE_MASKS, start=1)
    ]


def reconstruct(shares: Sequence[Share]) -> tuple[RasterImage, SubsetReport]:
    """OR the shares together and report which bit planes were covered."""
    if not shares:
        raise ValueError("at least one share is required")
    seen = set()
    for s in shares:
        if s.index in seen:
            raise DuplicateShareIndex(f"share {s.index} given more than once")
        seen.add(s.index)
    size = shares[0].image.shape
    for s in shares[1:]:
        if s.image.shape != size:
            raise DimensionMismatch(
                f"share {s.index} is {s.image.width}x{s.image.height}, expected {size[0]}x{size[1]}"
            )
    merged = kernels.or_stack([s.image.array for s in shares])
    return RasterImage(merged), subset_report(seen)


def verify_threshold() -> list[SubsetReport]:
    """Union mask and completeness for all 127 non-empty share subsets."""
    ids = range(1, N_SHARES + 1)
    return [subset_report(c) for k in ids for c in combinations(ids, k)]


def min_guaranteed_size(reports=None) -> int:
    """Smallest k such that every subset of size >= k is complete."""
    reports = verify_threshold() if reports is None else reports
    k = N_SHARES
    for size in range(N_SHARES, 0, -1):
        if all(r.complete for r in reports if len(r.subset) == size):
            k = size
        else:
            break
    return k
