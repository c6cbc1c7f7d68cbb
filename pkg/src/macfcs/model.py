"""Channel geometry, source entropies, and distributed source-coding checks.

The physical layer is a distance/path-loss model: the power gain between
nodes i and t is ``kappa * d_it**(-eta)`` and every receiver adds
independent Gaussian noise.  Sources enter all strategy evaluations only
through their entropic summary (conditional entropies and the shared
information), so a joint probability table is reduced to that triple up
front.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np

from .errors import InvalidPMF, SelfLink

_SYM_ATOL = 1e-9


@dataclass(frozen=True)
class Topology:
    """Node distances, path loss, receiver noises and transmit-power limits.

    Nodes are indexed 0..n-1 with the destination last; the first n-1
    nodes are sources with power limits ``power_limits[i]``.
    """

    distances: np.ndarray
    kappa: float
    eta: float
    noise: np.ndarray
    power_limits: np.ndarray

    def __post_init__(self):
        d = np.array(self.distances, dtype=float)
        noise = np.array(self.noise, dtype=float)
        limits = np.array(self.power_limits, dtype=float)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise ValueError("distances must be a square matrix")
        n = d.shape[0]
        if n < 3:
            raise ValueError("need at least two sources and a destination")
        if not np.allclose(d, d.T, rtol=0.0, atol=_SYM_ATOL):
            raise ValueError("distances must be symmetric")
        off = d[~np.eye(n, dtype=bool)]
        if np.any(off <= 0.0) or not np.all(np.isfinite(off)):
            raise ValueError("off-diagonal distances must be positive and finite")
        if not (self.kappa > 0.0 and math.isfinite(self.kappa)):
            raise ValueError("kappa must be positive")
        if not (self.eta > 0.0 and math.isfinite(self.eta)):
            raise ValueError("eta must be positive")
        if noise.shape != (n,) or np.any(noise <= 0.0):
            raise ValueError("noise must give a positive variance per node")
        if limits.shape != (n - 1,) or np.any(limits < 0.0):
            raise ValueError("power_limits must give a nonnegative power per source node")
        object.__setattr__(self, "distances", d)
        object.__setattr__(self, "noise", noise)
        object.__setattr__(self, "power_limits", limits)

    @classmethod
    def from_coordinates(cls, coordinates, kappa: float, eta: float,
                         noise, power_limits) -> "Topology":
        """Build the canonical distance-matrix form from node coordinates."""
        pts = np.array(coordinates, dtype=float)
        if pts.ndim != 2:
            raise ValueError("coordinates must be a 2-D array of node positions")
        diff = pts[:, None, :] - pts[None, :, :]
        d = np.sqrt(np.sum(diff * diff, axis=-1))
        return cls(d, kappa, eta, noise, power_limits)

    @property
    def node_count(self) -> int:
        return self.distances.shape[0]

    @property
    def source_count(self) -> int:
        return self.node_count - 1

    @property
    def destination(self) -> int:
        return self.node_count - 1

    def gain(self, i: int, t: int) -> float:
        """Power gain kappa * d_it**(-eta) of the link from node i to node t."""
        if i == t:
            raise SelfLink(f"node {i} has no link to itself")
        d = self.distances[i, t]
        return self.kappa * d ** (-self.eta)

    def with_power_limits(self, power_limits) -> "Topology":
        return replace(self, power_limits=np.asarray(power_limits, dtype=float))


@dataclass(frozen=True)
class SourceTriple:
    """Entropic summary of the two correlated sources, in bits.

    ``h1_given_2`` and ``h2_given_1`` are the private conditional
    entropies; ``common`` is the shared information between the sources.
    """

    h1_given_2: float
    h2_given_1: float
    common: float

    def __post_init__(self):
        for field in ("h1_given_2", "h2_given_1", "common"):
            v = getattr(self, field)
            if not (v >= 0.0 and math.isfinite(v)):
                raise ValueError(f"{field} must be a nonnegative finite number of bits")

    @property
    def h1(self) -> float:
        return self.h1_given_2 + self.common

    @property
    def h2(self) -> float:
        return self.h2_given_1 + self.common

    @property
    def joint(self) -> float:
        return self.h1_given_2 + self.h2_given_1 + self.common


@dataclass(frozen=True)
class JointPMF:
    """Joint probability table p(s1, s2) over finite source alphabets."""

    probabilities: np.ndarray

    def __post_init__(self):
        p = np.array(self.probabilities, dtype=float)
        if p.ndim != 2 or p.size == 0:
            raise InvalidPMF("probabilities must form a non-empty 2-D table")
        if np.any(p < 0.0) or not np.all(np.isfinite(p)):
            raise InvalidPMF("probabilities must be nonnegative and finite")
        mass = float(p.sum())
        if abs(mass - 1.0) > 1e-12:
            raise InvalidPMF(f"total mass is {mass!r}, expected 1")
        object.__setattr__(self, "probabilities", p)


def _entropy_bits(p: np.ndarray) -> float:
    p = p[p > 0.0]
    return float(-np.sum(p * np.log2(p)))


def triple_from_pmf(pmf) -> SourceTriple:
    """Reduce a joint pmf to (H(S1|S2), H(S2|S1), I(S1;S2)) in bits."""
    if not isinstance(pmf, JointPMF):
        pmf = JointPMF(pmf)
    p = pmf.probabilities
    h_joint = _entropy_bits(p.ravel())
    h1 = _entropy_bits(p.sum(axis=1))
    h2 = _entropy_bits(p.sum(axis=0))
    return SourceTriple(
        h1_given_2=max(0.0, h_joint - h2),
        h2_given_1=max(0.0, h_joint - h1),
        common=max(0.0, h1 + h2 - h_joint),
    )


class SlepianWolfCheck(NamedTuple):
    feasible: bool
    slack_r1: float
    slack_r2: float
    slack_sum: float


def slepian_wolf_feasible(triple: SourceTriple, r1: float, r2: float) -> SlepianWolfCheck:
    """Check the distributed source-coding rate constraints.

    Rates are sufficient when r1 covers the first source's private
    entropy, r2 covers the second's, and the sum covers the joint
    entropy; the three inequalities are non-strict.
    """
    if r1 < 0.0 or r2 < 0.0:
        raise ValueError("rates must be nonnegative")
    slack_r1 = r1 - triple.h1_given_2
    slack_r2 = r2 - triple.h2_given_1
    slack_sum = (r1 + r2) - triple.joint
    feasible = slack_r1 >= 0.0 and slack_r2 >= 0.0 and slack_sum >= 0.0
    return SlepianWolfCheck(feasible, slack_r1, slack_r2, slack_sum)
