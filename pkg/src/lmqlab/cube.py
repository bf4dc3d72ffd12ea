"""Points of the boolean cube {-1,+1}^n and their Hamming geometry.

Coordinates are 1-based throughout the package. A point is stored as a
bit mask so that flips, distances and enumeration reduce to integer
arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

ENUMERATION_CAP = 24


class DimensionMismatch(ValueError):
    """Raised when cube values of different dimensions are combined."""


@dataclass(frozen=True, slots=True)
class CubePoint:
    """A point of {-1,+1}^n.

    Bit (n - j) of ``mask`` is 1 iff coordinate j equals +1, i.e. masks
    ascend in lexicographic order of the coordinate tuple with -1 < +1.
    """

    n: int
    mask: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"dimension must be a positive integer, got {self.n}")
        if not 0 <= self.mask < (1 << self.n):
            raise ValueError(f"mask {self.mask} out of range for dimension {self.n}")

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "CubePoint":
        mask = 0
        for b in bits:
            if b not in (-1, 1):
                raise ValueError(f"cube entries must be -1 or +1, got {b!r}")
            mask = (mask << 1) | (b == 1)
        return cls(len(bits), mask)

    @classmethod
    def from_string(cls, text: str) -> "CubePoint":
        """Parse a point from a string over {'+','-'}, e.g. "+-+" = (+1,-1,+1)."""
        if not text or any(c not in "+-" for c in text):
            raise ValueError(f"point string must be non-empty over '+'/'-', got {text!r}")
        mask = 0
        for c in text:
            mask = (mask << 1) | (c == "+")
        return cls(len(text), mask)

    def bit(self, j: int) -> int:
        """Value (+1 or -1) of coordinate j, 1-based."""
        if not 1 <= j <= self.n:
            raise ValueError(f"coordinate {j} out of range 1..{self.n}")
        return 1 if (self.mask >> (self.n - j)) & 1 else -1

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple(self.bit(j) for j in range(1, self.n + 1))

    def to_string(self) -> str:
        return "".join("+" if (self.mask >> (self.n - j)) & 1 else "-" for j in range(1, self.n + 1))

    def flip(self, j: int) -> "CubePoint":
        if not 1 <= j <= self.n:
            raise ValueError(f"coordinate {j} out of range 1..{self.n}")
        return CubePoint(self.n, self.mask ^ (1 << (self.n - j)))

    def hamming(self, other: "CubePoint") -> int:
        if self.n != other.n:
            raise DimensionMismatch(f"dimensions differ: {self.n} vs {other.n}")
        return (self.mask ^ other.mask).bit_count()

    def __repr__(self) -> str:
        return f"CubePoint({self.to_string()!r})"


def hamming_distance(x: CubePoint, y: CubePoint) -> int:
    """Number of coordinates where x and y differ."""
    return x.hamming(y)


def flip(x: CubePoint, j: int) -> CubePoint:
    """Copy of x with coordinate j negated."""
    return x.flip(j)


def in_ball(z: CubePoint, anchors: Iterable[CubePoint], q: int) -> bool:
    """True iff some anchor lies within Hamming distance q of z.

    Empty anchor collections yield False.
    """
    if q < 0:
        raise ValueError(f"radius must be non-negative, got {q}")
    return any(z.hamming(a) <= q for a in anchors)


def masks_at_distance(mask: int, n: int, r: int) -> Iterator[int]:
    """All masks at Hamming distance exactly r from the given n-bit mask."""
    for positions in combinations(range(n), r):
        m = mask
        for p in positions:
            m ^= 1 << p
        yield m


def enumerate_cube(n: int, cap: int = ENUMERATION_CAP) -> Iterator[CubePoint]:
    """Yield all 2^n points in lexicographic order of coordinates (-1 < +1).

    Refuses dimensions above ``cap`` so exhaustive loops stay at desk scale.
    """
    if n < 1:
        raise ValueError(f"dimension must be a positive integer, got {n}")
    if n > cap:
        raise ValueError(f"dimension {n} exceeds enumeration cap {cap}")
    for mask in range(1 << n):
        yield CubePoint(n, mask)
