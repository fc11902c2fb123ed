"""Exact half-integer quantum numbers and the index ranges built from them.

Spin labels (j, mu, k, m, ...) are stored as doubled signed integers so that
sums, differences and Kronecker-delta index tests are exact: no half-integer
ever touches floating point. Everything here is an immutable value type and
safe to share between workers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering

# Hard cap on the photon number accepted anywhere in the library. Beyond this
# the dense numerics dominate cost long before the indexing does.
MAX_PHOTON_NUMBER = 4096


@total_ordering
@dataclass(frozen=True)
class HalfInt:
    """A half-integer n/2 represented by its doubled value ``twice = n``."""

    twice: int

    def __post_init__(self):
        if not isinstance(self.twice, int) or isinstance(self.twice, bool):
            raise TypeError(f"twice must be a plain int, got {type(self.twice).__name__}")

    @property
    def is_integral(self) -> bool:
        """True when the value is a whole number (twice is even)."""
        return self.twice % 2 == 0

    def __add__(self, other: "HalfInt") -> "HalfInt":
        if not isinstance(other, HalfInt):
            return NotImplemented
        return HalfInt(self.twice + other.twice)

    def __sub__(self, other: "HalfInt") -> "HalfInt":
        if not isinstance(other, HalfInt):
            return NotImplemented
        return HalfInt(self.twice - other.twice)

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice)

    def __abs__(self) -> "HalfInt":
        return HalfInt(abs(self.twice))

    def __lt__(self, other: "HalfInt") -> bool:
        if not isinstance(other, HalfInt):
            return NotImplemented
        return self.twice < other.twice

    def __float__(self) -> float:
        return self.twice / 2.0

    def __str__(self) -> str:
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"


@dataclass(frozen=True)
class SpinRange:
    """The ordered ladder -j, -j+1, ..., +j of magnetic quantum numbers."""

    j: HalfInt

    def __post_init__(self):
        if self.j.twice < 0:
            raise ValueError(f"total spin must be nonnegative, got {self.j}")

    def __len__(self) -> int:
        return self.j.twice + 1

    def __iter__(self):
        j2 = self.j.twice
        return (HalfInt(t) for t in range(-j2, j2 + 1, 2))

    def __getitem__(self, i: int) -> HalfInt:
        n = len(self)
        if i < 0:
            i += n
        if not 0 <= i < n:
            raise IndexError(f"index {i} out of range for 2j+1 = {n}")
        return HalfInt(-self.j.twice + 2 * i)

    def __contains__(self, mu) -> bool:
        if not isinstance(mu, HalfInt):
            return False
        j2 = self.j.twice
        return -j2 <= mu.twice <= j2 and (mu.twice - j2) % 2 == 0

    def index(self, mu: HalfInt) -> int:
        """Position of mu in the ladder; raises if mu is not a member."""
        if mu not in self:
            raise ValueError(f"mu = {mu} not in the spin-{self.j} range")
        return (mu.twice + self.j.twice) // 2


def from_photon_number(n_photons: int) -> HalfInt:
    """Total spin j = N/2 for N photons split over the two input modes."""
    if not isinstance(n_photons, int) or isinstance(n_photons, bool):
        raise TypeError("photon number must be an int")
    if n_photons < 0:
        raise ValueError(f"photon number must be nonnegative, got {n_photons}")
    if n_photons > MAX_PHOTON_NUMBER:
        raise ValueError(
            f"photon number {n_photons} exceeds the supported maximum {MAX_PHOTON_NUMBER}"
        )
    return HalfInt(n_photons)


def k_of(j: HalfInt, mu: HalfInt) -> HalfInt:
    """Effective spin k = (j+mu)/2 of the lossy-arm occupation ``j+mu``.

    Exact by construction: j+mu is a whole number for any mu in the spin-j
    ladder, so halving it lands back on a half-integer.
    """
    if not (-j.twice <= mu.twice <= j.twice):
        raise ValueError(f"mu = {mu} outside [-{j}, {j}]")
    total = j.twice + mu.twice
    if total % 2 != 0:
        raise ValueError(f"mu = {mu} does not belong to the spin-{j} ladder")
    return HalfInt(total // 2)
