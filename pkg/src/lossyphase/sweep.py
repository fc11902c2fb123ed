"""Minimum-detectable-phase curves over photon number and their landmarks.

Every point uses the closed-form sharpness, so a scan to N in the thousands
stays cheap; the density-matrix machinery is deliberately not on this path.
Points are evaluated independently, making the scan trivially parallel, and
the assembled results are deterministic for identical inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .loss import channel_from_loss
from .povm import holevo, sharpness_closed
from .states import optimal_amplitudes

DEFAULT_MAX_PHOTONS = 1000


@dataclass(frozen=True)
class CurvePoint:
    """One photon number with its phase uncertainty and the two reference lines."""

    n: int
    delta_phi: float
    shot_noise: float
    heisenberg: float


@dataclass(frozen=True)
class SweepResult:
    """A scanned curve plus the located optimum and sub-shot-noise edge.

    ``n_opt`` and ``n_subshot_max`` are None when the feature is not pinned
    down inside the scanned range (minimum still falling at the top of the
    scan, or no sub-shot-noise point at all).
    """

    loss: float
    points: tuple
    n_opt: int | None
    n_subshot_max: int | None


def _delta_phi(n: int, loss_channel, normalized: bool) -> float:
    state = optimal_amplitudes(n)
    return holevo(sharpness_closed(state, loss_channel, normalized=normalized)).min_detectable_phase


def curve(
    loss: float,
    n_min: int = 1,
    n_max: int = DEFAULT_MAX_PHOTONS,
    normalized: bool = False,
) -> SweepResult:
    """Scan delta-phi over every integer photon number in [n_min, n_max].

    Divergent points are carried through as explicit infinities; no photon
    number is ever dropped from the scan.
    """
    if n_min < 1 or n_min > n_max:
        raise ValueError(f"need 1 <= n_min <= n_max, got {n_min}:{n_max}")
    ch = channel_from_loss(loss)
    points = []
    for n in range(n_min, n_max + 1):
        points.append(
            CurvePoint(
                n=n,
                delta_phi=_delta_phi(n, ch, normalized),
                shot_noise=1.0 / math.sqrt(n),
                heisenberg=math.tan(math.pi / (n + 2)),
            )
        )
    points = tuple(points)
    return SweepResult(
        loss=ch.loss,
        points=points,
        n_opt=_locate_n_opt(points, n_max),
        n_subshot_max=_locate_subshot_max(points, n_max),
    )


def _argmin_index(points) -> int:
    best = 0
    for i in range(1, len(points)):
        if points[i].delta_phi < points[best].delta_phi:
            best = i
    return best


def _locate_n_opt(points, n_max: int) -> int | None:
    # A minimum sitting at the top of the scan means the curve is still
    # falling there; report that as not-in-range rather than as an optimum.
    best = _argmin_index(points)
    if points[best].n == n_max:
        return None
    return points[best].n


def _locate_subshot_max(points, n_max: int) -> int | None:
    sub = {i for i, p in enumerate(points) if p.delta_phi < p.shot_noise}
    if not sub:
        return None
    anchor = _argmin_index(points)
    if anchor not in sub:
        anchor = min(sub, key=lambda i: points[i].delta_phi)
    right = anchor
    while right + 1 in sub:
        right += 1
    if points[right].n == n_max:
        return None
    return points[right].n


def find_n_opt(loss: float, n_max: int = DEFAULT_MAX_PHOTONS, normalized: bool = False) -> int | None:
    """Photon number minimizing delta-phi, ties broken toward smaller N."""
    return curve(loss, 1, n_max, normalized=normalized).n_opt


def find_subshot_bound(
    loss: float,
    n_max: int = DEFAULT_MAX_PHOTONS,
    normalized: bool = False,
) -> int | None:
    """Largest N of the sub-shot-noise stretch around the curve's minimum."""
    return curve(loss, 1, n_max, normalized=normalized).n_subshot_max


def nopt_vs_loss(loss_grid, n_max: int = DEFAULT_MAX_PHOTONS, normalized: bool = False):
    """(loss, n_opt) pairs over an ascending grid of loss values."""
    grid = [float(x) for x in loss_grid]
    for a, b in zip(grid, grid[1:]):
        if b <= a:
            raise ValueError("loss grid must be strictly ascending")
    return [(loss, find_n_opt(loss, n_max, normalized=normalized)) for loss in grid]
